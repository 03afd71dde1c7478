"""
Module for verifying a two-outcome measurement against a pair of states.

A measurement {M₁, M₂} discriminates ρ₁, ρ₂ perfectly within a class when

	(i)   M₁ + M₂ = I, with each M_i rebuilt from its T_i as T_i + Γ(T_i)
	      (plus the padding projector for M₂) and T_i matching its rank-one terms,
	(ii)  each M_i belongs to the class (nege and SEP(A;B)* for M_s,
	      a K_s certificate for M(K_s)),
	(iii) Tr ρ₁M₂ = Tr ρ₂M₁ = 0.

Failures are reported, never raised.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.cones.certificates import class_membership
from src.cones.spectra import nege
from src.config.settings import CERTIFICATE_TOL
from src.discrimination.class_parameter import ClassKind, ClassParameter
from src.discrimination.measurement import MeasurementCertificate, assemble_element, sum_block_terms
from src.errors import DimensionError
from src.linalg.operators import HermitianOperator

logger = logging.getLogger(__name__)


class VerificationReport(BaseModel):
	"""
	Outcome of the three discrimination conditions.

	Attributes:
		unit_ok (bool): Condition (i).
		unit_residual (float): max |(M₁ + M₂ - I)_jk| over the stored and the rebuilt elements.
		reconstruction_residual (float): Largest deviation of a stored M_i from T_i + Γ(T_i),
			or of T_i from the sum of its terms.
		cone_ok (bool): Condition (ii).
		nege (List[float]): nege(M₁), nege(M₂).
		cone_reasons (List[Optional[str]]): Why an element failed (ii), per element.
		zero_error_ok (bool): Condition (iii).
		zero_error_residual (float): max(|Tr ρ₁M₂|, |Tr ρ₂M₁|).
		probabilities (List[List[float]]): <ρ_i, M_j>.
		class_parameter (ClassParameter): The class checked against.
	"""
	model_config = ConfigDict(frozen=True)

	unit_ok: bool
	unit_residual: float
	reconstruction_residual: float
	cone_ok: bool
	nege: List[float]
	cone_reasons: List[Optional[str]]
	zero_error_ok: bool
	zero_error_residual: float
	probabilities: List[List[float]]
	class_parameter: ClassParameter

	@property
	def passed(self) -> bool:
		return self.unit_ok and self.cone_ok and self.zero_error_ok

	def summary(self) -> str:
		lines = [
			f"class: {self.class_parameter.describe()}",
			f"(i)   M1 + M2 = I        : {'PASS' if self.unit_ok else 'FAIL'} (residual {self.unit_residual:.3e}, rebuild {self.reconstruction_residual:.3e})",
			f"(ii)  class membership   : {'PASS' if self.cone_ok else 'FAIL'} (nege {self.nege[0]:.12g}, {self.nege[1]:.12g})",
			f"(iii) Tr r1M2 = Tr r2M1 = 0: {'PASS' if self.zero_error_ok else 'FAIL'} (residual {self.zero_error_residual:.3e})",
		]
		lines.extend(f"      element {k + 1}: {reason}" for k, reason in enumerate(self.cone_reasons) if reason)
		lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
		return "\n".join(lines)


def _probability(rho: HermitianOperator, element: HermitianOperator) -> float:
	return float(np.real(np.trace(rho.entries @ element.entries)))


def verify_measurement(
		certificate: MeasurementCertificate,
		rho1: HermitianOperator,
		rho2: HermitianOperator,
		class_parameter: ClassParameter,
) -> VerificationReport:
	"""
	Check conditions (i)-(iii) for a measurement certificate.

	The class may differ from the one the certificate was built for; the
	certificate carries evidence for both families.

	Args:
		certificate (MeasurementCertificate): The measurement and its evidence.
		rho1 (HermitianOperator): First state, in the user's bases.
		rho2 (HermitianOperator): Second state, in the user's bases.
		class_parameter (ClassParameter): The class to check membership in.

	Returns:
		VerificationReport: Booleans and residuals for each condition.
	"""
	logger.info("---VERIFY MEASUREMENT---")
	m1, m2 = certificate.elements
	for operator in (rho1, rho2, m2):
		if operator.dims != m1.dims:
			raise DimensionError(f"operator dims {operator.dims} do not match measurement dims {m1.dims}")
	if certificate.canonical.dims != m1.dims:
		raise DimensionError(f"canonical bases act on {certificate.canonical.dims}, measurement on {m1.dims}")

	identity = np.eye(m1.dim)
	rebuilt = []
	reconstruction_residual = 0.0
	for index, (block, terms, stored) in enumerate(zip(
			(certificate.t1, certificate.t2),
			(certificate.terms1, certificate.terms2),
			(m1, m2),
	)):
		if block.entries.shape != (4, 4):
			raise DimensionError(f"T{index + 1} must act on the 2⊗2 block, has shape {block.entries.shape}")
		element = assemble_element(certificate.canonical, block.entries, padded=index == 1)
		rebuilt.append(element)
		reconstruction_residual = max(
			reconstruction_residual,
			float(np.max(np.abs(element - stored.entries))),
			float(np.max(np.abs(sum_block_terms(terms) - block.entries))),
		)
	unit_residual = max(
		float(np.max(np.abs(m1.entries + m2.entries - identity))),
		float(np.max(np.abs(rebuilt[0] + rebuilt[1] - identity))),
	)

	negativity = [nege(m1), nege(m2)]
	reasons: List[Optional[str]] = []
	for element, evidence in zip((m1, m2), certificate.evidence):
		cert = evidence.sep_dual if class_parameter.kind is ClassKind.MS else evidence.ks
		verdict = class_membership(element, class_parameter, cert)
		reasons.append(None if verdict.valid else verdict.reason)

	probabilities = [[_probability(rho, element) for element in (m1, m2)] for rho in (rho1, rho2)]
	zero_error_residual = max(abs(probabilities[0][1]), abs(probabilities[1][0]))

	report = VerificationReport(
		unit_ok=unit_residual <= CERTIFICATE_TOL and reconstruction_residual <= CERTIFICATE_TOL,
		unit_residual=unit_residual,
		reconstruction_residual=reconstruction_residual,
		cone_ok=all(reason is None for reason in reasons),
		nege=negativity,
		cone_reasons=reasons,
		zero_error_ok=zero_error_residual <= CERTIFICATE_TOL,
		zero_error_residual=zero_error_residual,
		probabilities=probabilities,
		class_parameter=class_parameter,
	)
	if report.passed:
		logger.info("---DECISION: MEASUREMENT VERIFIED---")
	else:
		logger.info("---DECISION: MEASUREMENT REJECTED---")
	return report
