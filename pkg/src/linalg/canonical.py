"""
Module for the 2×2 canonical reduction of two separable pure states.

Given ρ₁ = |a₁><a₁| ⊗ |b₁><b₁| and ρ₂ = |a₂><a₂| ⊗ |b₂><b₂| on H_A ⊗ H_B,
this module finds local orthonormal bases in which

	ρ₁ = |0><0| ⊗ |0><0|,
	ρ₂ = [[1-α₁, β₁], [β₁, α₁]] ⊗ [[1-α₂, β₂], [β₂, α₂]],  β_i = √(α_i(1-α_i)),

padded with zeros on the remaining basis vectors. Overlap phases are rotated
away so that every entry of the canonical block is real.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from src.config.settings import DECOMPOSITION_TOL, NORMALIZATION_TOL
from src.errors import DimensionError, IdenticalStatesError
from src.linalg.operators import ComplexArray, HermitianOperator, PureStateVector

logger = logging.getLogger(__name__)

# α below this counts as parallel local states.
PARALLEL_TOL = 1e-12
# Residual norms below this are rounding noise; the local states are parallel.
RESIDUAL_TOL = 1e-15


def _qubit_state(alpha: float) -> np.ndarray:
	return np.array([math.sqrt(1.0 - alpha), math.sqrt(alpha)])


def canonical_states_block(alpha1: float, alpha2: float) -> Tuple[np.ndarray, np.ndarray]:
	"""Return the 4×4 real matrices ρ₁, ρ₂ of the canonical form."""
	e0 = np.array([1.0, 0.0])
	first = np.kron(e0, e0)
	second = np.kron(_qubit_state(alpha1), _qubit_state(alpha2))
	return np.outer(first, first), np.outer(second, second)


class CanonicalForm(BaseModel):
	"""
	Parameters and local bases of the canonical 2×2 reduction.

	Attributes:
		alpha1 (float): 1 - |<a₁|a₂>|².
		alpha2 (float): 1 - |<b₁|b₂>|².
		beta1 (float): √(α₁(1-α₁)).
		beta2 (float): √(α₂(1-α₂)).
		gamma (float): α₁ + α₂.
		xi (Optional[float]): β₁β₂/(α₁α₂) when α₁α₂ > 0.
		basis_a (np.ndarray): Unitary whose columns are the canonical A basis in user coordinates.
		basis_b (np.ndarray): Same for B.
		padding_ranks (Tuple[int, int]): (d_A - 2, d_B - 2), dimensions carrying no support.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	alpha1: float
	alpha2: float
	beta1: float
	beta2: float
	gamma: float
	xi: Optional[float] = None
	basis_a: ComplexArray
	basis_b: ComplexArray
	padding_ranks: Tuple[int, int]

	@classmethod
	def from_alphas(cls, alpha1: float, alpha2: float, basis_a=None, basis_b=None) -> "CanonicalForm":
		"""
		Build a canonical form directly from α₁, α₂.

		Args:
			alpha1 (float): α₁ ∈ [0, 1].
			alpha2 (float): α₂ ∈ [0, 1].
			basis_a: Optional local unitary for A (identity on C² by default).
			basis_b: Optional local unitary for B (identity on C² by default).

		Returns:
			CanonicalForm: The form with derived β, γ and ξ.
		"""
		alpha1 = min(max(float(alpha1), 0.0), 1.0)
		alpha2 = min(max(float(alpha2), 0.0), 1.0)
		basis_a = np.eye(2, dtype=complex) if basis_a is None else np.asarray(basis_a, dtype=complex)
		basis_b = np.eye(2, dtype=complex) if basis_b is None else np.asarray(basis_b, dtype=complex)
		beta1 = math.sqrt(alpha1 * (1.0 - alpha1))
		beta2 = math.sqrt(alpha2 * (1.0 - alpha2))
		xi = beta1 * beta2 / (alpha1 * alpha2) if alpha1 * alpha2 > 0 else None
		return cls(
			alpha1=alpha1,
			alpha2=alpha2,
			beta1=beta1,
			beta2=beta2,
			gamma=alpha1 + alpha2,
			xi=xi,
			basis_a=basis_a,
			basis_b=basis_b,
			padding_ranks=(basis_a.shape[0] - 2, basis_b.shape[0] - 2),
		)

	@property
	def dims(self) -> Tuple[int, int]:
		return self.basis_a.shape[0], self.basis_b.shape[0]

	def states_block(self) -> Tuple[np.ndarray, np.ndarray]:
		"""The 4×4 canonical ρ₁, ρ₂."""
		return canonical_states_block(self.alpha1, self.alpha2)

	def _frame(self, conjugate_b: bool) -> np.ndarray:
		basis_b = self.basis_b.conj() if conjugate_b else self.basis_b
		return np.kron(self.basis_a, basis_b)

	def pad_block(self, block: np.ndarray) -> np.ndarray:
		"""Place a 4×4 block (or 4-vector) on the span of the first two basis vectors of each side."""
		d_a, d_b = self.dims
		block = np.asarray(block, dtype=complex)
		index = [i_a * d_b + i_b for i_a in range(2) for i_b in range(2)]
		if block.ndim == 1:
			padded = np.zeros(d_a * d_b, dtype=complex)
			padded[index] = block
			return padded
		padded = np.zeros((d_a * d_b, d_a * d_b), dtype=complex)
		padded[np.ix_(index, index)] = block
		return padded

	def embed_operator(self, block: np.ndarray, conjugate_b: bool = False) -> np.ndarray:
		"""
		Transport a 4×4 canonical block to the user's bases.

		With conjugate_b, Bob's basis change is complex conjugated. Since
		Γ((A⊗C)X(A⊗C)†) = (A⊗C̄)Γ(X)(A⊗C̄)†, embedding T this way and applying Γ
		in the user basis reproduces the ordinary embedding of Γ(T).
		"""
		frame = self._frame(conjugate_b)
		return frame @ self.pad_block(block) @ frame.conj().T

	def embed_vector(self, block_vector: np.ndarray, conjugate_b: bool = False) -> np.ndarray:
		"""Transport a 4-vector of the canonical block to the user's bases."""
		return self._frame(conjugate_b) @ self.pad_block(block_vector)

	def complement_projector(self) -> np.ndarray:
		"""Projector onto the orthogonal complement of the canonical block, in user bases."""
		d_a, d_b = self.dims
		return np.eye(d_a * d_b, dtype=complex) - self.embed_operator(np.eye(4))

	def states(self) -> Tuple[HermitianOperator, HermitianOperator]:
		"""ρ₁ and ρ₂ transported back to the user's bases."""
		d_a, d_b = self.dims
		rho1, rho2 = self.states_block()
		return (
			HermitianOperator.bipartite(self.embed_operator(rho1), d_a, d_b),
			HermitianOperator.bipartite(self.embed_operator(rho2), d_a, d_b),
		)


def _local_frame(first: np.ndarray, second: np.ndarray) -> Tuple[float, np.ndarray]:
	"""
	Return α = 1 - |<first|second>|² and a unitary whose first column is `first`
	and whose second column e₁ makes e^{-iφ}second = √(1-α)·first + √α·e₁ real.
	"""
	overlap = np.vdot(first, second)
	magnitude = abs(overlap)
	phase = overlap / magnitude if magnitude > 0 else 1.0
	residual = second * np.conj(phase) - magnitude * first
	residual = residual - np.vdot(first, residual) * first
	residual_norm = float(np.linalg.norm(residual))
	if residual_norm > RESIDUAL_TOL:
		partner = residual / residual_norm
		# ‖residual‖² avoids the cancellation in 1 - |overlap|² for nearly parallel states.
		alpha = min(residual_norm ** 2, 1.0)
	else:
		# Parallel states: any unit vector orthogonal to `first` works.
		partner = scipy.linalg.null_space(first.conj()[np.newaxis, :])[:, 0]
		alpha = 0.0
	columns = [first, partner]
	if first.shape[0] > 2:
		rest = scipy.linalg.null_space(np.vstack([first.conj(), partner.conj()]))
		columns.extend(rest.T)
	return alpha, np.column_stack(columns)


def _unit(vector: PureStateVector, label: str) -> np.ndarray:
	if vector.is_bipartite:
		raise DimensionError(f"{label} must be a single-system vector")
	if abs(vector.norm() - 1.0) > NORMALIZATION_TOL:
		raise DimensionError(f"{label} must be unit-norm, has norm {vector.norm():.15f}")
	if vector.dim < 2:
		raise DimensionError(f"{label} lives in dimension {vector.dim}; each local system needs at least 2")
	return np.asarray(vector.amplitudes, dtype=complex)


def canonical_reduction(
		a1: PureStateVector,
		a2: PureStateVector,
		b1: PureStateVector,
		b2: PureStateVector,
) -> CanonicalForm:
	"""
	Reduce two separable pure states to the canonical 2×2 form.

	Args:
		a1 (PureStateVector): Alice's part of ρ₁.
		a2 (PureStateVector): Alice's part of ρ₂.
		b1 (PureStateVector): Bob's part of ρ₁.
		b2 (PureStateVector): Bob's part of ρ₂.

	Returns:
		CanonicalForm: α₁ = 1 - |<a₁|a₂>|², α₂ = 1 - |<b₁|b₂>|² and the local bases.

	Raises:
		IdenticalStatesError: When a₁ ∥ a₂ and b₁ ∥ b₂.
	"""
	logger.info("---CANONICAL REDUCTION---")
	first_a, second_a = _unit(a1, "a1"), _unit(a2, "a2")
	first_b, second_b = _unit(b1, "b1"), _unit(b2, "b2")
	if first_a.shape != second_a.shape or first_b.shape != second_b.shape:
		raise DimensionError("a1/a2 and b1/b2 must live in the same local spaces")

	alpha1, basis_a = _local_frame(first_a, second_a)
	alpha2, basis_b = _local_frame(first_b, second_b)
	if alpha1 <= PARALLEL_TOL and alpha2 <= PARALLEL_TOL:
		raise IdenticalStatesError("ρ₁ and ρ₂ coincide (x = y = 1); they are not discriminable")

	form = CanonicalForm.from_alphas(alpha1, alpha2, basis_a, basis_b)
	logger.debug("alpha1=%.12g alpha2=%.12g gamma=%.12g", form.alpha1, form.alpha2, form.gamma)
	residual = round_trip_residual(form, a1, a2, b1, b2)
	if residual > DECOMPOSITION_TOL:
		logger.warning("canonical form reproduces the input states only to %.3e", residual)
	return form


def round_trip_residual(form: CanonicalForm, a1, a2, b1, b2) -> float:
	"""Max-entry distance between the user's ρ₁, ρ₂ and those rebuilt from `form`."""
	rho1, rho2 = form.states()
	target1 = np.kron(np.outer(a1.amplitudes, a1.amplitudes.conj()), np.outer(b1.amplitudes, b1.amplitudes.conj()))
	target2 = np.kron(np.outer(a2.amplitudes, a2.amplitudes.conj()), np.outer(b2.amplitudes, b2.amplitudes.conj()))
	return float(max(np.max(np.abs(rho1.entries - target1)), np.max(np.abs(rho2.entries - target2))))
