"""
Module for the number of copies needed to discriminate two pure states.

Two distinct non-orthogonal pure states σ₁, σ₂ with overlap c = Tr σ₁σ₂ are
split over a bipartition as σ₁⊗ⁿ ⊗ σ₁⊗ⁿ vs σ₂⊗ⁿ ⊗ σ₂⊗ⁿ, so that x = y = cⁿ.
Since cⁿ → 0, the sufficient condition of any class with a positive parameter
eventually holds; for the POVM class (parameter 0) it never does.
"""

import logging
import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from src.config.settings import COPY_SEARCH_CAP
from src.discrimination.class_parameter import ClassParameter, required_t
from src.errors import InvalidParameterError, SearchCapExceededError, ZeroParameterError

logger = logging.getLogger(__name__)

POSSIBLE = "Possible for finite n"
IMPOSSIBLE = "Impossible"


class MultiCopyInstance(BaseModel):
	"""
	A pair of non-trivial copies to discriminate.

	Attributes:
		overlap (float): c = Tr σ₁σ₂ ∈ [0, 1); c = 0 is the orthogonal edge case.
		class_parameter (ClassParameter): The class the measurement must belong to.
	"""
	model_config = ConfigDict(frozen=True)

	overlap: float
	class_parameter: ClassParameter

	@field_validator("overlap")
	@classmethod
	def _check_overlap(cls, value: float) -> float:
		if not 0.0 <= value < 1.0:
			raise InvalidParameterError(f"overlap must lie in [0, 1), got {value}")
		return value


class CopyCount(BaseModel):
	model_config = ConfigDict(frozen=True)

	n: int
	total_copies: int


def copy_threshold(class_parameter: ClassParameter) -> float:
	"""
	The value cⁿ must reach: 2s/(1+2s) for M_s, √t/(1+√t) for M(K_s).

	Both are √k/(1+√k) with k the condition coefficient.
	"""
	root = math.sqrt(class_parameter.coefficient)
	return root / (1.0 + root)


def _holds(class_parameter: ClassParameter, c: float, n: int) -> bool:
	x = c ** n
	return class_parameter.condition(x, x)


def min_copies(instance: MultiCopyInstance, cap: int = COPY_SEARCH_CAP) -> CopyCount:
	"""
	Smallest n for which the class condition holds at x = y = cⁿ.

	The closed-form threshold gives a starting guess; the result is then moved
	with the raw condition until it holds at n and fails at n - 1.

	Args:
		instance (MultiCopyInstance): The overlap and class.
		cap (int): Largest admissible n.

	Returns:
		CopyCount: n and the total number of copies 2n.

	Raises:
		ZeroParameterError: When the class parameter is 0 and c > 0.
		SearchCapExceededError: When n would exceed cap.
	"""
	c = instance.overlap
	class_parameter = instance.class_parameter
	if c == 0.0:
		return CopyCount(n=1, total_copies=2)
	if class_parameter.is_zero:
		raise ZeroParameterError(
			f"no finite number of copies works for {class_parameter.describe()} at overlap {c:.12g}"
		)

	n = max(1, math.ceil(math.log(copy_threshold(class_parameter)) / math.log(c)))
	if n > cap:
		raise SearchCapExceededError(f"n ≈ {n} exceeds the search cap {cap}")
	while n > 1 and _holds(class_parameter, c, n - 1):
		n -= 1
	while not _holds(class_parameter, c, n):
		n += 1
		if n > cap:
			raise SearchCapExceededError(f"no n ≤ {cap} satisfies the condition at overlap {c:.12g}")
	logger.debug("min_copies(c=%.12g, %s) = %d", c, class_parameter.describe(), n)
	return CopyCount(n=n, total_copies=2 * n)


class CopyTableRow(BaseModel):
	"""
	One line of the finite-copy table.

	Attributes:
		measurement_class (str): POVM, M_s, M(K_s) or SEP*.
		parameter (str): The parameter used for the class.
		status (str): "Possible for finite n" or "Impossible".
		n (Optional[int]): The minimal n, when possible.
		upper_bound (bool): True when n only bounds the true minimum from above.
	"""
	model_config = ConfigDict(frozen=True)

	measurement_class: str
	parameter: str
	status: str
	n: Optional[int] = None
	upper_bound: bool = False


def _row(label: str, class_parameter: ClassParameter, c: float, cap: int, upper_bound: bool = False) -> CopyTableRow:
	parameter = class_parameter.describe()
	try:
		count = min_copies(MultiCopyInstance(overlap=c, class_parameter=class_parameter), cap=cap)
	except ZeroParameterError:
		return CopyTableRow(measurement_class=label, parameter=parameter, status=IMPOSSIBLE)
	except SearchCapExceededError:
		return CopyTableRow(measurement_class=label, parameter=parameter, status=POSSIBLE)
	return CopyTableRow(
		measurement_class=label,
		parameter=parameter,
		status=POSSIBLE,
		n=count.n,
		upper_bound=upper_bound,
	)


def finite_copy_table(c: float, s: float, cap: int = COPY_SEARCH_CAP) -> List[CopyTableRow]:
	"""
	Whether non-trivial copies with overlap c are perfectly distinguishable in
	each measurement class, and with how many copies.

	M(K_s) uses t = required_t(s). SEP* is reported through M(K_{1/2}), which it
	contains, so its n is an upper bound.

	Args:
		c (float): Single-copy overlap ∈ [0, 1).
		s (float): Class parameter ∈ [0, 1/2].
		cap (int): Search cap passed to min_copies.

	Returns:
		List[CopyTableRow]: Rows for POVM, M_s, M(K_s) and SEP*.
	"""
	if not 0.0 <= c < 1.0:
		raise InvalidParameterError(f"overlap must lie in [0, 1), got {c}")
	return [
		_row("POVM", ClassParameter.ms(0.0), c, cap),
		_row("M_s", ClassParameter.ms(s), c, cap),
		_row("M(K_s)", ClassParameter.mks(required_t(s)), c, cap),
		_row("SEP*", ClassParameter.mks(1.0), c, cap, upper_bound=True),
	]
