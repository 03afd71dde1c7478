"""
Module for dense bipartite linear algebra in the GPTDiscrim application.

This module provides tensor products, the partial transpose Γ on Bob's
system, a descending Hermitian eigensolver, and the Schmidt decomposition of
bipartite vectors. All functions are pure and operate on the immutable types
of src.linalg.operators.
"""

import logging
from typing import NamedTuple, Tuple, Union

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from src.config.settings import ZERO_NORM_TOL
from src.errors import DimensionError, KindMismatchError, ZeroVectorError
from src.linalg.operators import ComplexArray, HermitianOperator, PureStateVector

logger = logging.getLogger(__name__)

Tensorable = Union[HermitianOperator, PureStateVector]


class Eigensystem(NamedTuple):
	"""Eigenvalues in descending order with matching orthonormal eigenvector columns."""
	values: np.ndarray
	vectors: np.ndarray


class SchmidtDecomposition(BaseModel):
	"""
	Schmidt decomposition v/‖v‖ = Σ_k λ_k left_k ⊗ right_k of a bipartite vector.

	Attributes:
		coefficients (np.ndarray): λ_1 ≥ … ≥ λ_d ≥ 0 with d = min(d_A, d_B).
		left_vectors (np.ndarray): Row k is left_k in H_A (carries the global phase).
		right_vectors (np.ndarray): Row k is right_k in H_B.
		norm (float): ‖v‖ of the decomposed input.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	coefficients: np.ndarray
	left_vectors: ComplexArray
	right_vectors: ComplexArray
	norm: float

	def reconstruct(self) -> np.ndarray:
		"""Rebuild the unit vector Σ λ_k left_k ⊗ right_k."""
		return sum(
			lam * np.kron(left, right)
			for lam, left, right in zip(self.coefficients, self.left_vectors, self.right_vectors)
		)


def kron(a: Tensorable, b: Tensorable) -> Tensorable:
	"""
	Tensor product with the row-major convention i = i_A·d_B + i_B.

	The whole space of `a` becomes Alice's system and the whole space of `b`
	becomes Bob's, so composite operands are accepted as well.

	Args:
		a (Tensorable): Left factor.
		b (Tensorable): Right factor, of the same kind as `a`.

	Returns:
		Tensorable: A bipartite operator or vector with dims (dim a, dim b).
	"""
	if isinstance(a, HermitianOperator) and isinstance(b, HermitianOperator):
		return HermitianOperator(entries=np.kron(a.entries, b.entries), dims=(a.dim, b.dim))
	if isinstance(a, PureStateVector) and isinstance(b, PureStateVector):
		return PureStateVector(
			amplitudes=np.kron(a.amplitudes, b.amplitudes),
			dims=(a.dim, b.dim),
			normalized=a.normalized and b.normalized,
		)
	raise KindMismatchError(f"cannot tensor {type(a).__name__} with {type(b).__name__}")


def partial_transpose_matrix(matrix: np.ndarray, d_a: int, d_b: int) -> np.ndarray:
	"""Transpose the B indices of a (d_A·d_B)-square array."""
	tensor = np.asarray(matrix).reshape(d_a, d_b, d_a, d_b)
	return tensor.transpose(0, 3, 2, 1).reshape(d_a * d_b, d_a * d_b)


def partial_transpose(operator: HermitianOperator) -> HermitianOperator:
	"""
	Apply Γ = id ⊗ transposition with respect to the stored B basis.

	Args:
		operator (HermitianOperator): A bipartite operator.

	Returns:
		HermitianOperator: Γ(operator), again Hermitian.
	"""
	if not operator.is_bipartite:
		raise DimensionError("partial transpose needs a bipartite operator")
	d_a, d_b = operator.dims
	return operator.with_entries(partial_transpose_matrix(operator.entries, d_a, d_b))


def eigh_descending(matrix: np.ndarray) -> Eigensystem:
	"""Eigen-decompose a Hermitian ndarray, largest eigenvalue first."""
	values, vectors = scipy.linalg.eigh(matrix)
	return Eigensystem(values=values[::-1].copy(), vectors=vectors[:, ::-1].copy())


def eig_hermitian(operator: HermitianOperator) -> Eigensystem:
	"""
	Eigen-decompose a Hermitian operator.

	Hermiticity is guaranteed by HermitianOperator's validator, so a
	non-Hermitian matrix never reaches the solver.

	Args:
		operator (HermitianOperator): The operator to decompose.

	Returns:
		Eigensystem: Real eigenvalues in descending order and orthonormal eigenvector columns.
	"""
	return eigh_descending(operator.entries)


def schmidt_matrix(amplitudes: np.ndarray, d_a: int, d_b: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
	"""SVD of the d_A×d_B coefficient matrix: (singular values, left rows, right rows)."""
	left, singular, right = np.linalg.svd(np.asarray(amplitudes).reshape(d_a, d_b), full_matrices=False)
	return singular, left.T, right


def schmidt(vector: PureStateVector) -> SchmidtDecomposition:
	"""
	Compute the Schmidt decomposition of a nonzero bipartite vector.

	The coefficients are those of v/‖v‖ in descending order; for degenerate
	coefficients the vectors are determined only up to a unitary on the block.

	Args:
		vector (PureStateVector): A bipartite vector, v ≠ 0.

	Returns:
		SchmidtDecomposition: Coefficients and left/right orthonormal vectors.
	"""
	if not vector.is_bipartite:
		raise DimensionError("Schmidt decomposition needs a bipartite vector")
	norm = vector.norm()
	if norm <= ZERO_NORM_TOL:
		raise ZeroVectorError("the zero vector has no Schmidt decomposition")
	d_a, d_b = vector.dims
	singular, left, right = schmidt_matrix(vector.amplitudes / norm, d_a, d_b)
	return SchmidtDecomposition(
		coefficients=np.clip(singular, 0.0, None),
		left_vectors=left,
		right_vectors=right,
		norm=norm,
	)
