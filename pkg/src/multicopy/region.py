"""
Feasibility regions of the sufficient conditions in the (x, y) square.

For a class with coefficient k (4s² for M_s, t for M(K_s)) the condition
xy ≤ k(1-x)(1-y) holds exactly below the curve

	y = k(1-x) / (x + k(1-x)),

which starts at y = 1 on x = 0 and ends at y = 0 on x = 1. Points on the curve
count as feasible.
"""

import logging
import math
from pathlib import Path
from typing import Iterable, List, TextIO, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from src.discrimination.class_parameter import ClassParameter
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["x", "y_boundary", "class", "param"]
CSV_FLOAT_FORMAT = "%.12g"


class RegionRow(BaseModel):
	"""
	One point of a boundary curve.

	Attributes:
		x (float): Grid abscissa in [0, 1].
		y_boundary (float): Largest feasible y at this x.
		feasible_below (bool): True when (x, y_boundary) itself satisfies the condition.
	"""
	model_config = ConfigDict(frozen=True)

	x: float
	y_boundary: float
	feasible_below: bool


def boundary_values(class_parameter: ClassParameter, xs: np.ndarray) -> np.ndarray:
	"""Vectorized boundary y(x); x = 0 with k = 0 gives 1."""
	k = class_parameter.coefficient
	xs = np.asarray(xs, dtype=float)
	denominator = xs + k * (1.0 - xs)
	with np.errstate(divide="ignore", invalid="ignore"):
		ys = np.where(denominator > 0.0, k * (1.0 - xs) / denominator, 1.0)
	return np.clip(ys, 0.0, 1.0)


def region_boundary(class_parameter: ClassParameter, grid_points: int) -> List[RegionRow]:
	"""
	Sample the boundary curve on a uniform grid of [0, 1], endpoints included.

	Args:
		class_parameter (ClassParameter): M_s or M(K_s).
		grid_points (int): Number of grid points, at least 2.

	Returns:
		List[RegionRow]: Rows in ascending x.
	"""
	if isinstance(grid_points, bool) or not isinstance(grid_points, (int, np.integer)) or grid_points < 2:
		raise InvalidParameterError(f"grid must be an integer ≥ 2, got {grid_points!r}")
	xs = np.linspace(0.0, 1.0, int(grid_points))
	ys = boundary_values(class_parameter, xs)
	return [
		RegionRow(x=float(x), y_boundary=float(y), feasible_below=class_parameter.condition(float(x), float(y)))
		for x, y in zip(xs, ys)
	]


def interior_origin_margin(class_parameter: ClassParameter) -> float:
	"""
	Side of the largest square [0, r]² inside the feasible region.

	The corner (r, r) lies on the boundary, so r = √k(1 - r), i.e.
	r = √k/(1 + √k); 0 for the POVM class.
	"""
	root = math.sqrt(class_parameter.coefficient)
	return root / (1.0 + root)


def caption_parameters() -> List[ClassParameter]:
	"""
	The parameters of the reference feasibility plots: M_s at s ∈ {0, 1/4, 1/2}
	and M(K_s) at t ∈ {0, 1/4, 1}, i.e. (s, t) ∈ {(0, 0), (2/5, 1/4), (1/2, 1)}.
	"""
	return [
		ClassParameter.ms(0.0),
		ClassParameter.ms(0.25),
		ClassParameter.ms(0.5),
		ClassParameter.mks(0.0),
		ClassParameter.mks(0.25),
		ClassParameter.mks(1.0),
	]


def region_frame(class_parameter: ClassParameter, grid_points: int) -> pd.DataFrame:
	"""The boundary rows as a DataFrame with the CSV columns; param holds s."""
	rows = region_boundary(class_parameter, grid_points)
	return pd.DataFrame({
		"x": [row.x for row in rows],
		"y_boundary": [row.y_boundary for row in rows],
		"class": class_parameter.kind.value,
		"param": class_parameter.s,
	}, columns=CSV_COLUMNS)


def write_region_csv(
		class_parameters: Iterable[ClassParameter],
		grid_points: int,
		target: Union[str, Path, TextIO],
) -> pd.DataFrame:
	"""
	Write the boundary curves of one or more classes to a CSV file.

	Args:
		class_parameters (Iterable[ClassParameter]): Curves to write, in order.
		grid_points (int): Grid size per curve.
		target (Union[str, Path, TextIO]): Path or open text stream.

	Returns:
		pd.DataFrame: The frame that was written.
	"""
	frame = pd.concat(
		[region_frame(class_parameter, grid_points) for class_parameter in class_parameters],
		ignore_index=True,
	)
	frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT)
	logger.info("---REGION CSV: %d rows---", len(frame))
	return frame
