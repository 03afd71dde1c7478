"""
Module for building two-outcome perfect-discrimination measurements.

Every measurement has the form M_i = T_i + Γ(T_i) on the canonical 2⊗2 block,
transported to the user's bases and completed with the projector onto the
complement of the block (assigned to M₂, which keeps Tr ρ₁M₂ = 0). Three
constructions are used:

	TrivialOrthogonal  α₁ = 1 or α₂ = 1: a local projective POVM, T_i = M_i/2.
	GammaEqualsOne     γ = α₁ + α₂ = 1: the fixed matrices
	                   T₁ = |ψ₋><ψ₋|, T₂ = |φ₊><φ₊| with ψ₋ = (|00> - |11>)/√2,
	                   φ₊ = (|01> + |10>)/√2.
	GammaGreater       γ > 1: 2γT₁ = γ|v₁><v₁| + (γ-1)(|v₂><v₂| + |v₃><v₃|),
	                   T₂ = (U_A⊗U_B)T₁(U_A⊗U_B)†.

Each element carries two membership certificates: a SepDualSplit (P, Q) for
M_s and a KsSplit whose Γ part lists the rank-one terms of T_i for M(K_s).
"""

import logging
import math
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.cones.certificates import Ks0Decomp, KsSplit, RankOneTerm, SepDualSplit
from src.cones.spectra import nege
from src.config.settings import BRANCH_TOL
from src.discrimination.class_parameter import ClassParameter
from src.errors import ConditionNotSatisfiedError, IdenticalStatesError
from src.linalg.canonical import PARALLEL_TOL, CanonicalForm
from src.linalg.operators import ComplexArray, HermitianOperator, PureStateVector
from src.linalg.tensor import partial_transpose_matrix

logger = logging.getLogger(__name__)

E0 = np.array([1.0, 0.0])
E1 = np.array([0.0, 1.0])


class Branch(str, Enum):
	GAMMA_GREATER = "GammaGreater"
	GAMMA_EQUALS_ONE = "GammaEqualsOne"
	TRIVIAL_ORTHOGONAL = "TrivialOrthogonal"


class BlockTerm(BaseModel):
	"""A weighted unit 4-vector w·|v><v| of the canonical block."""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	weight: float
	vector: ComplexArray


class ElementEvidence(BaseModel):
	"""
	Cone evidence for one measurement element M_i.

	Attributes:
		nege (float): nege(M_i).
		sep_dual (SepDualSplit): M_i = P + Γ(Q) with P, Q ⪰ 0.
		ks (KsSplit): M_i = P + Γ(Σ w|v><v|) with the rank-one terms of T_i.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	nege: float
	sep_dual: SepDualSplit
	ks: KsSplit


class MeasurementCertificate(BaseModel):
	"""
	A two-outcome measurement together with everything needed to re-check it.

	Attributes:
		branch (Branch): Which construction produced it.
		class_parameter (ClassParameter): The class it was built for.
		canonical (CanonicalForm): The reduction of the input states.
		t1 (HermitianOperator): T₁ on the canonical 2⊗2 block.
		t2 (HermitianOperator): T₂ on the canonical 2⊗2 block.
		m1 (HermitianOperator): M₁ in the user's bases.
		m2 (HermitianOperator): M₂ in the user's bases (includes the padding projector).
		terms1 (List[BlockTerm]): Rank-one terms of T₁.
		terms2 (List[BlockTerm]): Rank-one terms of T₂.
		local_unitaries (Optional[Tuple[np.ndarray, np.ndarray]]): (U_A, U_B) for GammaGreater.
		evidence (List[ElementEvidence]): Cone evidence for M₁ and M₂.
	"""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	branch: Branch
	class_parameter: ClassParameter
	canonical: CanonicalForm
	t1: HermitianOperator
	t2: HermitianOperator
	m1: HermitianOperator
	m2: HermitianOperator
	terms1: List[BlockTerm]
	terms2: List[BlockTerm]
	local_unitaries: Optional[Tuple[ComplexArray, ComplexArray]] = None
	evidence: List[ElementEvidence]

	@property
	def elements(self) -> Tuple[HermitianOperator, HermitianOperator]:
		return self.m1, self.m2


def _term(weight: float, vector: np.ndarray) -> BlockTerm:
	"""Store w|v><v| with v normalized and its norm folded into the weight."""
	vector = np.asarray(vector, dtype=complex)
	norm = float(np.linalg.norm(vector))
	return BlockTerm(weight=weight * norm * norm, vector=vector / norm)


def sum_block_terms(terms: List[BlockTerm]) -> np.ndarray:
	"""Σ w|v><v| over the terms, as a 4×4 block."""
	total = np.zeros((4, 4), dtype=complex)
	for term in terms:
		total += term.weight * np.outer(term.vector, term.vector.conj())
	return total


def local_unitaries(form: CanonicalForm) -> Tuple[np.ndarray, np.ndarray]:
	"""
	U_A = [[β₁, α₁], [α₁, -β₁]]/√α₁ and U_B likewise; both real orthogonal and
	(U_A⊗U_B)† ρ₁ (U_A⊗U_B) = ρ₂ on the canonical block.
	"""
	u_a = np.array([[form.beta1, form.alpha1], [form.alpha1, -form.beta1]]) / math.sqrt(form.alpha1)
	u_b = np.array([[form.beta2, form.alpha2], [form.alpha2, -form.beta2]]) / math.sqrt(form.alpha2)
	return u_a, u_b


def seed_vectors(form: CanonicalForm) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
	"""
	The vectors v₁, v₂, v₃ of the γ > 1 construction.

	v₁ = |00> - ξ|11>, v₂ = (1, -β₁/α₁) ⊗ |1>, v₃ = |1> ⊗ (1, -β₂/α₂).
	"""
	v1 = np.kron(E0, E0) - form.xi * np.kron(E1, E1)
	v2 = np.kron(np.array([1.0, -form.beta1 / form.alpha1]), E1)
	v3 = np.kron(E1, np.array([1.0, -form.beta2 / form.alpha2]))
	return v1, v2, v3


def _gamma_greater_terms(form: CanonicalForm) -> Tuple[List[BlockTerm], List[BlockTerm], Tuple[np.ndarray, np.ndarray]]:
	gamma = form.gamma
	side = (gamma - 1.0) / (2.0 * gamma)
	v1, v2, v3 = seed_vectors(form)
	u_a, u_b = local_unitaries(form)
	rotation = np.kron(u_a, u_b)
	terms1 = [_term(0.5, v1), _term(side, v2), _term(side, v3)]
	terms2 = [_term(0.5, rotation @ v1), _term(side, rotation @ v2), _term(side, rotation @ v3)]
	return terms1, terms2, (u_a, u_b)


def _gamma_one_terms() -> Tuple[List[BlockTerm], List[BlockTerm]]:
	psi_minus = (np.kron(E0, E0) - np.kron(E1, E1)) / math.sqrt(2.0)
	phi_plus = (np.kron(E0, E1) + np.kron(E1, E0)) / math.sqrt(2.0)
	return [_term(1.0, psi_minus)], [_term(1.0, phi_plus)]


def _trivial_terms(form: CanonicalForm) -> Tuple[List[BlockTerm], List[BlockTerm]]:
	"""
	T_i = M_i/2 for the local projective POVM {P⊗I, (I-P)⊗I} (or I⊗P).

	The A side is used whenever α₁ = 1; the canonical basis puts a₁ on |0>.
	"""
	if form.alpha1 >= 1.0 - BRANCH_TOL:
		first = [_term(0.5, np.kron(E0, E0)), _term(0.5, np.kron(E0, E1))]
		second = [_term(0.5, np.kron(E1, E0)), _term(0.5, np.kron(E1, E1))]
	else:
		first = [_term(0.5, np.kron(E0, E0)), _term(0.5, np.kron(E1, E0))]
		second = [_term(0.5, np.kron(E0, E1)), _term(0.5, np.kron(E1, E1))]
	return first, second


def select_branch(form: CanonicalForm) -> Branch:
	if form.alpha1 >= 1.0 - BRANCH_TOL or form.alpha2 >= 1.0 - BRANCH_TOL:
		return Branch.TRIVIAL_ORTHOGONAL
	if abs(form.gamma - 1.0) <= BRANCH_TOL:
		return Branch.GAMMA_EQUALS_ONE
	return Branch.GAMMA_GREATER


def _element_evidence(
		form: CanonicalForm,
		block: np.ndarray,
		terms: List[BlockTerm],
		element: HermitianOperator,
		padding: Optional[np.ndarray],
) -> ElementEvidence:
	"""Certificates for M = T + Γ(T) (+ padding) in the user's bases."""
	d_a, d_b = form.dims
	direct = form.embed_operator(block)
	if padding is not None:
		direct = direct + padding
	# Γ_user of the B-conjugated embedding equals the embedding of Γ(T).
	twisted = form.embed_operator(block, conjugate_b=True)
	gamma_terms = [
		RankOneTerm(
			weight=term.weight,
			vector=PureStateVector.bipartite(form.embed_vector(term.vector, conjugate_b=True), d_a, d_b),
		)
		for term in terms
	]
	p = HermitianOperator.bipartite(direct, d_a, d_b)
	return ElementEvidence(
		nege=nege(element),
		sep_dual=SepDualSplit(p=p, q=HermitianOperator.bipartite(twisted, d_a, d_b)),
		ks=KsSplit(psd_part=p, gamma_part=Ks0Decomp(terms=gamma_terms)),
	)


def _hermitian_part(matrix: np.ndarray) -> np.ndarray:
	return (matrix + matrix.conj().T) / 2.0


def padding_projector(form: CanonicalForm) -> Optional[np.ndarray]:
	"""Projector onto the complement of the canonical block; None on 2⊗2."""
	return form.complement_projector() if form.dims != (2, 2) else None


def assemble_element(form: CanonicalForm, block: np.ndarray, padded: bool) -> np.ndarray:
	"""
	M = T + Γ(T) in the user's bases, plus the padding projector when `padded`.

	Args:
		form (CanonicalForm): Supplies the local bases.
		block (np.ndarray): T on the canonical 2⊗2 block.
		padded (bool): True for M₂.

	Returns:
		np.ndarray: The Hermitian element matrix.
	"""
	full = form.embed_operator(block + partial_transpose_matrix(block, 2, 2))
	padding = padding_projector(form) if padded else None
	if padding is not None:
		full = full + padding
	return _hermitian_part(full)


def build_measurement(form: CanonicalForm, class_parameter: ClassParameter) -> MeasurementCertificate:
	"""
	Build the measurement {T_i + Γ(T_i)} for a canonical form.

	Args:
		form (CanonicalForm): The reduced pair of states.
		class_parameter (ClassParameter): The targeted class; its sufficient
			condition must hold at x = 1 - α₁, y = 1 - α₂.

	Returns:
		MeasurementCertificate: The measurement with its cone evidence.

	Raises:
		IdenticalStatesError: When α₁ = α₂ = 0.
		ConditionNotSatisfiedError: When the class condition fails; no construction is attempted.
	"""
	logger.info("---BUILD MEASUREMENT---")
	if form.alpha1 <= PARALLEL_TOL and form.alpha2 <= PARALLEL_TOL:
		raise IdenticalStatesError("ρ₁ and ρ₂ coincide (x = y = 1)")
	x, y = 1.0 - form.alpha1, 1.0 - form.alpha2
	if not class_parameter.condition(x, y):
		raise ConditionNotSatisfiedError(
			f"xy = {x * y:.12g} exceeds {class_parameter.coefficient:.12g}·(1-x)(1-y) for {class_parameter.describe()}"
		)

	branch = select_branch(form)
	unitaries = None
	if branch is Branch.TRIVIAL_ORTHOGONAL:
		terms1, terms2 = _trivial_terms(form)
	elif branch is Branch.GAMMA_EQUALS_ONE:
		terms1, terms2 = _gamma_one_terms()
	else:
		terms1, terms2, unitaries = _gamma_greater_terms(form)
	logger.info("---BRANCH: %s---", branch.value)

	d_a, d_b = form.dims
	padding = padding_projector(form)
	elements = []
	evidence = []
	blocks = []
	for index, terms in enumerate((terms1, terms2)):
		block = _hermitian_part(sum_block_terms(terms))
		blocks.append(block)
		element_padding = padding if index == 1 else None
		element = HermitianOperator.bipartite(assemble_element(form, block, padded=index == 1), d_a, d_b)
		elements.append(element)
		evidence.append(_element_evidence(form, block, terms, element, element_padding))

	return MeasurementCertificate(
		branch=branch,
		class_parameter=class_parameter,
		canonical=form,
		t1=HermitianOperator.bipartite(blocks[0], 2, 2),
		t2=HermitianOperator.bipartite(blocks[1], 2, 2),
		m1=elements[0],
		m2=elements[1],
		terms1=terms1,
		terms2=terms2,
		local_unitaries=unitaries,
		evidence=evidence,
	)
