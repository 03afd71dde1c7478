"""
Module defining the state structure for the discrimination workflow graph.

This module provides a TypedDict class that defines the structure of the state
passed between the nodes of the discrimination workflow: the input local
vectors, the targeted measurement class, and the intermediate results
(canonical form, overlaps, condition verdict, measurement, report).
"""

import operator
from typing import Annotated, List, Optional

from typing_extensions import TypedDict

from src.discrimination.class_parameter import ClassParameter, MinimalParameters
from src.discrimination.measurement import MeasurementCertificate
from src.discrimination.verification import VerificationReport
from src.linalg.canonical import CanonicalForm
from src.linalg.operators import HermitianOperator, PureStateVector


class DiscriminationState(TypedDict, total=False):
	"""
	A TypedDict class defining the state structure for the discrimination workflow.

	Attributes:
		a1 (PureStateVector): Alice's part of ρ₁.
		a2 (PureStateVector): Alice's part of ρ₂.
		b1 (PureStateVector): Bob's part of ρ₁.
		b2 (PureStateVector): Bob's part of ρ₂.
		class_parameter (ClassParameter): The targeted measurement class.
		canonical (CanonicalForm): The canonical reduction of the pair.
		rho1 (HermitianOperator): ρ₁ in the user's bases.
		rho2 (HermitianOperator): ρ₂ in the user's bases.
		x (float): Tr ρ₁ᴬρ₂ᴬ.
		y (float): Tr ρ₁ᴮρ₂ᴮ.
		minimal (MinimalParameters): Least parameters at which the conditions hold.
		condition_holds (bool): Whether the class condition holds at (x, y).
		certificate (Optional[MeasurementCertificate]): The built measurement.
		report (Optional[VerificationReport]): The verification of the measurement.
		steps (List[str]): Visited nodes, accumulated with operator.add.
	"""

	a1: PureStateVector
	a2: PureStateVector
	b1: PureStateVector
	b2: PureStateVector
	class_parameter: ClassParameter
	canonical: CanonicalForm
	rho1: HermitianOperator
	rho2: HermitianOperator
	x: float
	y: float
	minimal: MinimalParameters
	condition_holds: bool
	certificate: Optional[MeasurementCertificate]
	report: Optional[VerificationReport]
	steps: Annotated[List[str], operator.add]
