"""
Module defining the measurement-class parameter and the sufficient conditions.

Two one-parameter families of measurement classes are supported: M_s with
s ∈ [0, 1/2] and M(K_s) parameterized by t ∈ [0, 1] with s = √t/(1+t).
Both reduce to the class of POVMs at s = 0.
"""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from src.config.settings import CONDITION_TOL
from src.errors import InvalidParameterError

# Admissible slack on inputs that come out of floating-point arithmetic.
RANGE_SLACK = 1e-12


class ClassKind(str, Enum):
	MS = "ms"
	MKS = "mks"


def derived_s(t: float) -> float:
	"""s = √t/(1+t), the M_s-style parameter paired with t."""
	if not 0.0 <= t <= 1.0:
		raise InvalidParameterError(f"t must lie in [0, 1], got {t}")
	return math.sqrt(t) / (1.0 + t)


def required_t(s: float) -> float:
	"""
	Inverse of derived_s on [0, 1]: the t with √t/(1+t) = s.

	Args:
		s (float): s ∈ [0, 1/2].

	Returns:
		float: ((1 - √(1-4s²))/(2s))², and 0 for s = 0.
	"""
	if not 0.0 <= s <= 0.5:
		raise InvalidParameterError(f"s must lie in [0, 1/2], got {s}")
	if s == 0.0:
		return 0.0
	# (1 - √(1-4s²))/(2s) written without the cancellation at small s.
	root = 2.0 * s / (1.0 + math.sqrt(max(1.0 - 4.0 * s * s, 0.0)))
	return min(root * root, 1.0)


def _unit_interval(value: float, name: str) -> float:
	if not -RANGE_SLACK <= value <= 1.0 + RANGE_SLACK:
		raise InvalidParameterError(f"{name} must lie in [0, 1], got {value}")
	return min(max(value, 0.0), 1.0)


def _within(lhs: float, rhs: float) -> bool:
	# Relative slack only: with a zero parameter the condition is exactly xy ≤ 0.
	return lhs <= rhs * (1.0 + CONDITION_TOL)


def thm1_condition(x: float, y: float, s: float) -> bool:
	"""
	Sufficient condition for perfect discrimination by M_s: xy ≤ 4s²(1-x)(1-y).

	Args:
		x (float): Tr ρ₁ᴬρ₂ᴬ ∈ [0, 1].
		y (float): Tr ρ₁ᴮρ₂ᴮ ∈ [0, 1].
		s (float): s ∈ [0, 1/2].

	Returns:
		bool: True when the inequality holds up to a relative 1e-12.
	"""
	x, y = _unit_interval(x, "x"), _unit_interval(y, "y")
	if not 0.0 <= s <= 0.5:
		raise InvalidParameterError(f"s must lie in [0, 1/2], got {s}")
	return _within(x * y, 4.0 * s * s * (1.0 - x) * (1.0 - y))


def thm2_condition(x: float, y: float, t: float) -> bool:
	"""Sufficient condition for perfect discrimination by M(K_s): xy ≤ t(1-x)(1-y)."""
	x, y = _unit_interval(x, "x"), _unit_interval(y, "y")
	if not 0.0 <= t <= 1.0:
		raise InvalidParameterError(f"t must lie in [0, 1], got {t}")
	return _within(x * y, t * (1.0 - x) * (1.0 - y))


class ClassParameter(BaseModel):
	"""
	The measurement class targeted by a discrimination task.

	Attributes:
		kind (ClassKind): "ms" for M_s, "mks" for M(K_s).
		s (float): The class parameter; derived from t for M(K_s).
		t (Optional[float]): The cone parameter of M(K_s), None for M_s.
	"""
	model_config = ConfigDict(frozen=True)

	kind: ClassKind
	s: float
	t: Optional[float] = None

	@model_validator(mode="after")
	def _validate(self) -> "ClassParameter":
		if self.kind is ClassKind.MS:
			if self.t is not None:
				raise InvalidParameterError("M_s is parameterized by s only")
			if not 0.0 <= self.s <= 0.5:
				raise InvalidParameterError(f"s must lie in [0, 1/2], got {self.s}")
		else:
			if self.t is None:
				raise InvalidParameterError("M(K_s) needs t")
			if abs(self.s - derived_s(self.t)) > 1e-12:
				raise InvalidParameterError(f"s={self.s} does not match √t/(1+t) for t={self.t}")
		return self

	@classmethod
	def ms(cls, s: float) -> "ClassParameter":
		return cls(kind=ClassKind.MS, s=float(s))

	@classmethod
	def mks(cls, t: float) -> "ClassParameter":
		return cls(kind=ClassKind.MKS, s=derived_s(float(t)), t=float(t))

	@property
	def coefficient(self) -> float:
		"""The factor k in xy ≤ k(1-x)(1-y): 4s² for M_s, t for M(K_s)."""
		return 4.0 * self.s * self.s if self.kind is ClassKind.MS else float(self.t)

	@property
	def is_zero(self) -> bool:
		return self.coefficient == 0.0

	def condition(self, x: float, y: float) -> bool:
		"""Evaluate the sufficient condition of this class at (x, y)."""
		if self.kind is ClassKind.MS:
			return thm1_condition(x, y, self.s)
		return thm2_condition(x, y, self.t)

	def describe(self) -> str:
		if self.kind is ClassKind.MS:
			return f"M_s(s={self.s:.12g})"
		return f"M(K_s)(t={self.t:.12g}, s={self.s:.12g})"


class MinimalParameters(BaseModel):
	"""
	Smallest parameters at which the sufficient conditions hold for (x, y).

	Attributes:
		t_min (Optional[float]): xy/((1-x)(1-y)); None when no finite value works.
		s_min (Optional[float]): √t_min/2.
		ms_admissible (bool): s_min ≤ 1/2, i.e. some M_s is guaranteed to work.
		mks_admissible (bool): t_min ≤ 1, i.e. some M(K_s) is guaranteed to work.
	"""
	model_config = ConfigDict(frozen=True)

	t_min: Optional[float]
	s_min: Optional[float]
	ms_admissible: bool
	mks_admissible: bool


def minimal_parameters(x: float, y: float) -> MinimalParameters:
	"""
	Invert the sufficient conditions: the least s (M_s) and t (M(K_s)) that work.

	Both conditions share the ratio xy/((1-x)(1-y)), so t_min is that ratio and
	s_min = √t_min / 2.
	"""
	x, y = _unit_interval(x, "x"), _unit_interval(y, "y")
	numerator = x * y
	denominator = (1.0 - x) * (1.0 - y)
	if numerator == 0.0:
		return MinimalParameters(t_min=0.0, s_min=0.0, ms_admissible=True, mks_admissible=True)
	if denominator == 0.0:
		return MinimalParameters(t_min=None, s_min=None, ms_admissible=False, mks_admissible=False)
	t_min = numerator / denominator
	s_min = math.sqrt(t_min) / 2.0
	return MinimalParameters(
		t_min=t_min,
		s_min=s_min,
		ms_admissible=s_min <= 0.5 + CONDITION_TOL,
		mks_admissible=t_min <= 1.0 + CONDITION_TOL,
	)
