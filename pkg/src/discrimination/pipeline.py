"""
End-to-end discrimination of two separable pure states.

`discriminate` runs the workflow graph of src.graph.control_flow and packages
its final state as a DiscriminationResult.
"""

import logging
from functools import lru_cache
from typing import List, Optional

from langgraph.graph.state import CompiledStateGraph
from pydantic import BaseModel, ConfigDict

from src.config.settings import CERTIFICATE_TOL
from src.discrimination.class_parameter import ClassParameter, MinimalParameters
from src.discrimination.measurement import MeasurementCertificate
from src.discrimination.verification import VerificationReport
from src.errors import VerificationFailedError
from src.graph.control_flow import DiscriminationFlow
from src.linalg.operators import PureStateVector

logger = logging.getLogger(__name__)


class OverlapPair(BaseModel):
	"""
	x = Tr ρ₁ᴬρ₂ᴬ and y = Tr ρ₁ᴮρ₂ᴮ; in canonical form x = 1 - α₁, y = 1 - α₂.
	"""
	model_config = ConfigDict(frozen=True)

	x: float
	y: float


class DiscriminationResult(BaseModel):
	"""
	Outcome of a discrimination request.

	Attributes:
		guaranteed (bool): True when a verified measurement of the class exists.
		overlaps (OverlapPair): The local overlaps of the pair.
		class_parameter (ClassParameter): The targeted class.
		minimal (MinimalParameters): Least parameters at which the conditions hold.
		certificate (Optional[MeasurementCertificate]): The measurement, when guaranteed.
		report (Optional[VerificationReport]): Its verification, when guaranteed.
		steps (List[str]): The workflow nodes that ran.
	"""
	model_config = ConfigDict(frozen=True)

	guaranteed: bool
	overlaps: OverlapPair
	class_parameter: ClassParameter
	minimal: MinimalParameters
	certificate: Optional[MeasurementCertificate] = None
	report: Optional[VerificationReport] = None
	steps: List[str] = []


@lru_cache(maxsize=1)
def discrimination_graph() -> CompiledStateGraph:
	"""The compiled workflow graph; compiled once per process."""
	return DiscriminationFlow().build_graph()


def _check_outcome_distribution(report: VerificationReport) -> None:
	for i, row in enumerate(report.probabilities):
		for j, value in enumerate(row):
			expected = 1.0 if i == j else 0.0
			if abs(value - expected) > CERTIFICATE_TOL:
				raise VerificationFailedError(f"<rho_{i + 1}, M_{j + 1}> = {value:.12g}, expected {expected}", report)


def discriminate(
		a1: PureStateVector,
		a2: PureStateVector,
		b1: PureStateVector,
		b2: PureStateVector,
		class_parameter: ClassParameter,
) -> DiscriminationResult:
	"""
	Decide whether the sufficient condition guarantees perfect discrimination of
	ρ₁ = a₁⊗b₁ and ρ₂ = a₂⊗b₂ within the class, and if so build the measurement.

	Args:
		a1 (PureStateVector): Alice's part of ρ₁ (unit norm).
		a2 (PureStateVector): Alice's part of ρ₂.
		b1 (PureStateVector): Bob's part of ρ₁.
		b2 (PureStateVector): Bob's part of ρ₂.
		class_parameter (ClassParameter): M_s or M(K_s).

	Returns:
		DiscriminationResult: guaranteed = False carries no claim of impossibility.

	Raises:
		IdenticalStatesError: When x = y = 1.
		VerificationFailedError: When a built measurement does not verify.
	"""
	final = discrimination_graph().invoke({
		"a1": a1,
		"a2": a2,
		"b1": b1,
		"b2": b2,
		"class_parameter": class_parameter,
		"certificate": None,
		"report": None,
		"steps": [],
	})
	overlaps = OverlapPair(x=final["x"], y=final["y"])
	report = final.get("report")
	if report is not None:
		if not report.passed:
			raise VerificationFailedError("the constructed measurement failed verification", report)
		_check_outcome_distribution(report)

	return DiscriminationResult(
		guaranteed=report is not None,
		overlaps=overlaps,
		class_parameter=class_parameter,
		minimal=final["minimal"],
		certificate=final.get("certificate"),
		report=report,
		steps=final.get("steps", []),
	)
