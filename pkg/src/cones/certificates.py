"""
Module for certificate-based cone membership.

Deciding membership in SEP(A;B)* or K_s^(0) for an arbitrary matrix is hard,
so this module never decides it. Instead every matrix comes with a
constructive certificate, and the functions here check that the certificate
reconstructs the matrix and satisfies the per-term constraints of its cone:

	PsdSum        X = Σ w_k |v_k><v_k|, w_k ≥ 0
	Ks0Decomp     PsdSum with sco(v_k) ≤ s for every term
	SepDualSplit  X = P + Γ(Q) with P, Q ⪰ 0 (sufficient for block positivity)
	KsSplit       X = P + Γ(K) with P ⪰ 0 and K given by a Ks0Decomp
"""

import logging
from enum import Enum
from typing import Annotated, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.cones.spectra import is_psd, nege, sco
from src.config.settings import CERTIFICATE_TOL, PSD_TOL, SCO_TOL
from src.discrimination.class_parameter import ClassKind, ClassParameter
from src.errors import CertificateMismatchError, DimensionError, InvalidParameterError, MissingCertificateError
from src.linalg.operators import HermitianOperator, PureStateVector
from src.linalg.tensor import eig_hermitian, partial_transpose_matrix

logger = logging.getLogger(__name__)


class ConeKind(str, Enum):
	PSD = "PSD"
	SEP = "SEP"
	SEP_DUAL = "SEPdual"
	KS0 = "Ks0"
	KS = "Ks"
	POVM_ELEMENT = "POVMelement"


class ConeId(BaseModel):
	"""
	A cone of the zoo, with its parameter s for K_s^(0) and K_s.

	Attributes:
		kind (ConeKind): Which cone.
		s (Optional[float]): s ∈ [0, 1/2], required for Ks0 and Ks only.
	"""
	model_config = ConfigDict(frozen=True)

	kind: ConeKind
	s: Optional[float] = None

	@model_validator(mode="after")
	def _validate(self) -> "ConeId":
		if self.kind in (ConeKind.KS0, ConeKind.KS):
			if self.s is None or not 0.0 <= self.s <= 0.5:
				raise InvalidParameterError(f"{self.kind.value} needs s in [0, 1/2], got {self.s}")
		return self

	@classmethod
	def ks0(cls, s: float) -> "ConeId":
		return cls(kind=ConeKind.KS0, s=s)

	@classmethod
	def ks(cls, s: float) -> "ConeId":
		return cls(kind=ConeKind.KS, s=s)


class RankOneTerm(BaseModel):
	"""One weighted term w·|v><v| of a decomposition."""
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	weight: float = Field(ge=0.0)
	vector: PureStateVector


class PsdSum(BaseModel):
	model_config = ConfigDict(frozen=True)

	variant: Literal["PsdSum"] = "PsdSum"
	terms: List[RankOneTerm]


class Ks0Decomp(BaseModel):
	model_config = ConfigDict(frozen=True)

	variant: Literal["Ks0Decomp"] = "Ks0Decomp"
	terms: List[RankOneTerm]


class SepDualSplit(BaseModel):
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	variant: Literal["SepDualSplit"] = "SepDualSplit"
	p: HermitianOperator
	q: HermitianOperator


class KsSplit(BaseModel):
	model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

	variant: Literal["KsSplit"] = "KsSplit"
	psd_part: HermitianOperator
	gamma_part: Ks0Decomp


ConeCertificate = Annotated[
	Union[PsdSum, Ks0Decomp, SepDualSplit, KsSplit],
	Field(discriminator="variant"),
]


class Verdict(BaseModel):
	"""
	Outcome of a certificate check.

	Attributes:
		valid (bool): Whether the certificate proves membership.
		reason (Optional[str]): Why it does not, when invalid.
		evidence (str): What the verdict rests on.
	"""
	model_config = ConfigDict(frozen=True)

	valid: bool
	reason: Optional[str] = None
	evidence: str = "certificate"

	@classmethod
	def ok(cls, evidence: str = "certificate") -> "Verdict":
		return cls(valid=True, evidence=evidence)

	@classmethod
	def invalid(cls, reason: str, evidence: str = "certificate") -> "Verdict":
		return cls(valid=False, reason=reason, evidence=evidence)


_ACCEPTED = {
	ConeKind.PSD: (PsdSum,),
	ConeKind.POVM_ELEMENT: (PsdSum,),
	ConeKind.SEP: (Ks0Decomp, PsdSum),
	ConeKind.SEP_DUAL: (SepDualSplit, PsdSum),
	ConeKind.KS0: (Ks0Decomp, PsdSum),
	ConeKind.KS: (KsSplit,),
}


def reconstruct_terms(terms: List[RankOneTerm], dim: int) -> np.ndarray:
	"""Σ w_k |v_k><v_k| as a dim×dim array."""
	total = np.zeros((dim, dim), dtype=complex)
	for term in terms:
		if term.vector.dim != dim:
			raise DimensionError(f"term of length {term.vector.dim} in a decomposition of side {dim}")
		total += term.weight * np.outer(term.vector.amplitudes, term.vector.amplitudes.conj())
	return total


def _residual(a: np.ndarray, b: np.ndarray) -> float:
	return float(np.max(np.abs(a - b), initial=0.0))


def _check_reconstruction(target: HermitianOperator, rebuilt: np.ndarray) -> Optional[str]:
	residual = _residual(target.entries, rebuilt)
	if residual > CERTIFICATE_TOL:
		return f"reconstruction residual {residual:.3e} exceeds {CERTIFICATE_TOL:.0e}"
	return None


def _check_terms_sco(terms: List[RankOneTerm], s: float) -> Optional[str]:
	for index, term in enumerate(terms):
		if not term.vector.is_bipartite:
			return f"term {index} is not a bipartite vector"
		value = sco(term.vector)
		if value > s + SCO_TOL:
			return f"term {index} has sco {value:.12g} > s = {s:.12g}"
	return None


def _check_decomposition(operator: HermitianOperator, terms: List[RankOneTerm], s: Optional[float]) -> Verdict:
	if s is not None:
		reason = _check_terms_sco(terms, s)
		if reason:
			return Verdict.invalid(reason)
	reason = _check_reconstruction(operator, reconstruct_terms(terms, operator.dim))
	return Verdict.invalid(reason) if reason else Verdict.ok()


def _check_sep_dual_split(operator: HermitianOperator, certificate: SepDualSplit) -> Verdict:
	if not operator.is_bipartite:
		raise DimensionError("SEP(A;B)* membership needs a bipartite operator")
	if certificate.p.dims != operator.dims or certificate.q.dims != operator.dims:
		return Verdict.invalid(f"split parts have dims {certificate.p.dims}/{certificate.q.dims}, expected {operator.dims}")
	if not is_psd(certificate.p):
		return Verdict.invalid("P is not positive semi-definite")
	if not is_psd(certificate.q):
		return Verdict.invalid("Q is not positive semi-definite")
	d_a, d_b = operator.dims
	rebuilt = certificate.p.entries + partial_transpose_matrix(certificate.q.entries, d_a, d_b)
	reason = _check_reconstruction(operator, rebuilt)
	return Verdict.invalid(reason) if reason else Verdict.ok()


def _check_ks_split(operator: HermitianOperator, certificate: KsSplit, s: float) -> Verdict:
	if not operator.is_bipartite:
		raise DimensionError("K_s membership needs a bipartite operator")
	if certificate.psd_part.dims != operator.dims:
		return Verdict.invalid(f"PSD part has dims {certificate.psd_part.dims}, expected {operator.dims}")
	if not is_psd(certificate.psd_part):
		return Verdict.invalid("PSD part is not positive semi-definite")
	reason = _check_terms_sco(certificate.gamma_part.terms, s)
	if reason:
		return Verdict.invalid(reason)
	d_a, d_b = operator.dims
	inner = reconstruct_terms(certificate.gamma_part.terms, operator.dim)
	rebuilt = certificate.psd_part.entries + partial_transpose_matrix(inner, d_a, d_b)
	reason = _check_reconstruction(operator, rebuilt)
	return Verdict.invalid(reason) if reason else Verdict.ok()


def check_certificate(operator: HermitianOperator, cone: ConeId, certificate: ConeCertificate) -> Verdict:
	"""
	Validate a membership certificate for `operator` in `cone`.

	Args:
		operator (HermitianOperator): The matrix whose membership is claimed.
		cone (ConeId): The target cone.
		certificate (ConeCertificate): The supplied certificate.

	Returns:
		Verdict: valid iff the certificate reconstructs the matrix within 1e-9 and
		all per-term constraints hold.

	Raises:
		CertificateMismatchError: When the certificate variant does not fit the cone.
	"""
	accepted = _ACCEPTED[cone.kind]
	if not isinstance(certificate, accepted):
		names = ", ".join(cls.__name__ for cls in accepted)
		raise CertificateMismatchError(f"{type(certificate).__name__} cannot certify {cone.kind.value}; expected {names}")

	if cone.kind is ConeKind.PSD:
		return _check_decomposition(operator, certificate.terms, None)
	if cone.kind is ConeKind.POVM_ELEMENT:
		verdict = _check_decomposition(operator, certificate.terms, None)
		if verdict.valid and eig_hermitian(operator).values[0] > 1.0 + PSD_TOL:
			return Verdict.invalid("largest eigenvalue exceeds 1")
		return verdict
	if cone.kind is ConeKind.SEP:
		return _check_decomposition(operator, certificate.terms, 0.0)
	if cone.kind is ConeKind.SEP_DUAL:
		if isinstance(certificate, PsdSum):
			return _check_decomposition(operator, certificate.terms, None)
		return _check_sep_dual_split(operator, certificate)
	if cone.kind is ConeKind.KS0:
		return _check_decomposition(operator, certificate.terms, cone.s)
	return _check_ks_split(operator, certificate, cone.s)


def class_membership(
		operator: HermitianOperator,
		class_parameter: ClassParameter,
		certificate: Optional[ConeCertificate],
) -> Verdict:
	"""
	Check that `operator` may serve as a measurement element of the class.

	For M_s the certificate must prove SEP(A;B)* membership and nege must not
	exceed s; for M(K_s) the certificate must be a KsSplit at the derived s.

	Args:
		operator (HermitianOperator): A candidate measurement element.
		class_parameter (ClassParameter): M_s or M(K_s).
		certificate (Optional[ConeCertificate]): The membership certificate.

	Returns:
		Verdict: The membership verdict.

	Raises:
		MissingCertificateError: When no certificate is supplied.
	"""
	if certificate is None:
		raise MissingCertificateError(f"membership in {class_parameter.describe()} needs a certificate")

	if class_parameter.kind is ClassKind.MS:
		if not isinstance(certificate, _ACCEPTED[ConeKind.SEP_DUAL]):
			return Verdict.invalid(f"{type(certificate).__name__} does not certify SEP(A;B)* membership")
		verdict = check_certificate(operator, ConeId(kind=ConeKind.SEP_DUAL), certificate)
		if not verdict.valid:
			return verdict
		value = nege(operator)
		if value > class_parameter.s + CERTIFICATE_TOL:
			return Verdict.invalid(f"nege = {value:.12g} exceeds s = {class_parameter.s:.12g}")
		return verdict

	if not isinstance(certificate, KsSplit):
		return Verdict.invalid(f"M(K_s) membership needs a KsSplit certificate, got {type(certificate).__name__}")
	return check_certificate(operator, ConeId.ks(class_parameter.s), certificate)
