"""
Spectral quantities behind the cone zoo: nege, sco, the PPT spectrum of pure
states, and the PSD test.

For a nonzero bipartite v with Schmidt coefficients λ₁ ≥ … ≥ λ_d of v/‖v‖,
the spectrum of Γ(|v><v|)/‖v‖² is {±λ_iλ_j : i < j} ∪ {λ_k²}, padded with
zeros, so ‖v‖²·sco(v) = nege(Γ(|v><v|)).
"""

import itertools

import numpy as np

from src.config.settings import NEGATIVE_EIGENVALUE_CUTOFF, PSD_TOL, ZERO_NORM_TOL
from src.errors import DimensionError, ZeroVectorError
from src.linalg.operators import HermitianOperator, PureStateVector
from src.linalg.tensor import eig_hermitian, schmidt


def nege(operator: HermitianOperator) -> float:
	"""
	Absolute value of the most negative eigenvalue, 0 when there is none.

	Args:
		operator (HermitianOperator): Any Hermitian operator.

	Returns:
		float: |λ_min| if λ_min < -1e-12, else 0.
	"""
	smallest = float(eig_hermitian(operator).values[-1])
	return -smallest if smallest < -NEGATIVE_EIGENVALUE_CUTOFF else 0.0


def sco(vector: PureStateVector) -> float:
	"""
	Product λ₁λ₂ of the two largest Schmidt coefficients of v/‖v‖.

	The zero vector gives 0, as do vectors with a single Schmidt coefficient.
	"""
	if not vector.is_bipartite:
		raise DimensionError("sco needs a bipartite vector")
	if vector.norm() <= ZERO_NORM_TOL:
		return 0.0
	coefficients = schmidt(vector).coefficients
	if coefficients.shape[0] < 2:
		return 0.0
	return float(coefficients[0] * coefficients[1])


def ppt_pure_spectrum(vector: PureStateVector) -> np.ndarray:
	"""
	Predicted spectrum of Γ(|v><v|)/‖v‖², sorted in descending order.

	Args:
		vector (PureStateVector): A nonzero bipartite vector.

	Returns:
		np.ndarray: {±λ_iλ_j}_{i<j} ∪ {λ_k²} padded with zeros to d_A·d_B entries.
	"""
	if not vector.is_bipartite:
		raise DimensionError("the PPT spectrum needs a bipartite vector")
	if vector.norm() <= ZERO_NORM_TOL:
		raise ZeroVectorError("the PPT spectrum of the zero vector is undefined")
	lam = schmidt(vector).coefficients
	values = [l * l for l in lam]
	for i, j in itertools.combinations(range(lam.shape[0]), 2):
		values.extend((lam[i] * lam[j], -lam[i] * lam[j]))
	values.extend([0.0] * (vector.dim - len(values)))
	return np.sort(np.asarray(values))[::-1]


def is_psd(operator: HermitianOperator) -> bool:
	"""True when the smallest eigenvalue is at least -1e-10."""
	return bool(eig_hermitian(operator).values[-1] >= -PSD_TOL)
