"""
Direct scan of the multi-copy condition.

The scan evaluates the raw sufficient condition at x = y = cⁿ for n = 1, 2, ...
and stops at the first success. It backs min_copies, which only uses the
closed-form threshold to jump close to the answer.
"""

import logging
from typing import Optional

from src.discrimination.class_parameter import ClassParameter
from src.errors import InvalidParameterError

logger = logging.getLogger(__name__)


def scan_min_copies(c: float, class_parameter: ClassParameter, cap: int) -> Optional[int]:
	"""
	Find the least n ≤ cap such that x = y = cⁿ satisfies the class condition.

	Args:
		c (float): Single-copy overlap Tr σ₁σ₂ ∈ [0, 1).
		class_parameter (ClassParameter): M_s or M(K_s).
		cap (int): Largest n tried.

	Returns:
		Optional[int]: The first n that works, or None when none up to cap does.
	"""
	if not 0.0 <= c < 1.0:
		raise InvalidParameterError(f"overlap must lie in [0, 1), got {c}")
	if cap < 1:
		raise InvalidParameterError(f"cap must be positive, got {cap}")
	for n in range(1, cap + 1):
		x = c ** n
		if x == 0.0 and c > 0.0:
			# cⁿ underflowed; every later power evaluates the same way.
			logger.warning("overlap %.12g underflows at n=%d; scan stopped", c, n)
			return None
		if class_parameter.condition(x, x):
			return n
	return None
