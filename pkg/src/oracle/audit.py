"""
Randomized end-to-end audit of the discrimination pipeline.

Each instance draws a class and parameter, a canonical pair (α₁, α₂) that
satisfies the class condition, and random local unitaries on 2- or
3-dimensional sides. The pipeline must return a verified measurement, and the
see-saw must find no product expectation of an element below -1e-7.
Instance k draws from default_rng([seed, k]), so any failing instance can be
replayed on its own.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.stats import unitary_group

from src.config.settings import CERTIFICATE_TOL
from src.discrimination.class_parameter import ClassKind, ClassParameter
from src.discrimination.pipeline import discriminate
from src.errors import GptdError, InvalidParameterError
from src.linalg.operators import PureStateVector
from src.oracle.seesaw import SeesawConfig, min_product_expectation

logger = logging.getLogger(__name__)

BLOCK_POSITIVITY_TOL = 1e-7
AUDIT_RESTARTS = 8
LOCAL_DIMENSIONS = (2, 3)


class AuditRecord(BaseModel):
	"""
	One audited instance.

	Attributes:
		index (int): Position in the run.
		seed (int): Root seed of the run; the instance used default_rng([seed, index]).
		class_parameter (ClassParameter): The class drawn.
		alpha1 (float): α₁ of the canonical pair.
		alpha2 (float): α₂ of the canonical pair.
		dims (List[int]): (d_A, d_B).
		branch (Optional[str]): Construction used, None when nothing was built.
		nege (List[float]): nege of the elements.
		product_minimum (List[float]): See-saw minimum per element.
		failures (List[str]): Empty when the instance passed.
	"""
	model_config = ConfigDict(frozen=True)

	index: int
	seed: int
	class_parameter: ClassParameter
	alpha1: float
	alpha2: float
	dims: List[int]
	branch: Optional[str] = None
	nege: List[float] = []
	product_minimum: List[float] = []
	failures: List[str] = []


class AuditReport(BaseModel):
	model_config = ConfigDict(frozen=True)

	seed: int
	records: List[AuditRecord]

	@property
	def failures(self) -> List[AuditRecord]:
		return [record for record in self.records if record.failures]

	@property
	def passed(self) -> bool:
		return not self.failures

	def to_json_lines(self) -> str:
		return "".join(record.model_dump_json() + "\n" for record in self.records)


def _draw_class(rng: np.random.Generator) -> ClassParameter:
	# 1 - U with U ∈ [0, 1) keeps the parameter strictly positive.
	if rng.random() < 0.5:
		return ClassParameter.ms(0.5 * (1.0 - rng.random()))
	return ClassParameter.mks(1.0 - rng.random())


def _draw_alphas(rng: np.random.Generator, class_parameter: ClassParameter):
	"""α₁ ∈ (0, 1] and α₂ above the curve (1-α₁)(1-α₂) = kα₁α₂."""
	k = class_parameter.coefficient
	alpha1 = 1.0 - rng.random()
	lower = (1.0 - alpha1) / ((1.0 - alpha1) + k * alpha1)
	alpha2 = lower + (1.0 - lower) * rng.random()
	return alpha1, alpha2


def _local_pair(rng: np.random.Generator, alpha: float, dim: int):
	first = np.zeros(dim, dtype=complex)
	first[0] = 1.0
	second = np.zeros(dim, dtype=complex)
	second[0], second[1] = np.sqrt(1.0 - alpha), np.sqrt(alpha)
	rotation = unitary_group.rvs(dim, random_state=rng)
	return (
		PureStateVector.single(rotation @ first, normalize=True),
		PureStateVector.single(rotation @ second, normalize=True),
	)


def audit_instance(seed: int, index: int, seesaw: SeesawConfig) -> AuditRecord:
	"""Draw and check instance `index` of the run seeded with `seed`."""
	rng = np.random.default_rng([seed, index])
	class_parameter = _draw_class(rng)
	alpha1, alpha2 = _draw_alphas(rng, class_parameter)
	d_a, d_b = (int(rng.choice(LOCAL_DIMENSIONS)) for _ in range(2))
	a1, a2 = _local_pair(rng, alpha1, d_a)
	b1, b2 = _local_pair(rng, alpha2, d_b)

	record = dict(
		index=index,
		seed=seed,
		class_parameter=class_parameter,
		alpha1=alpha1,
		alpha2=alpha2,
		dims=[d_a, d_b],
	)
	failures: List[str] = []
	try:
		result = discriminate(a1, a2, b1, b2, class_parameter)
	except GptdError as error:
		failures.append(f"{type(error).__name__}: {error}")
		return AuditRecord(**record, failures=failures)
	if not result.guaranteed:
		failures.append("condition reported unsatisfied")
		return AuditRecord(**record, failures=failures)

	certificate = result.certificate
	minima = []
	for k, element in enumerate(certificate.elements):
		minimum = min_product_expectation(element, seesaw)
		minima.append(minimum.value)
		if minimum.value < -BLOCK_POSITIVITY_TOL:
			failures.append(f"M{k + 1}: {minimum.describe()}")
	negativity = result.report.nege
	if class_parameter.kind is ClassKind.MS and max(negativity) > class_parameter.s + CERTIFICATE_TOL:
		failures.append(f"nege {max(negativity):.12g} exceeds s = {class_parameter.s:.12g}")

	return AuditRecord(
		**record,
		branch=certificate.branch.value,
		nege=negativity,
		product_minimum=minima,
		failures=failures,
	)


def randomized_cert_audit(count: int, seed: int, seesaw: Optional[SeesawConfig] = None) -> AuditReport:
	"""
	Audit `count` random instances.

	Args:
		count (int): Number of instances, at least 1.
		seed (int): Root seed of the run.
		seesaw (Optional[SeesawConfig]): See-saw settings; by default a few
			restarts seeded from the run seed.

	Returns:
		AuditReport: One record per instance; failures never raise.
	"""
	if count < 1:
		raise InvalidParameterError(f"audit count must be at least 1, got {count}")
	seesaw = seesaw or SeesawConfig(restarts=AUDIT_RESTARTS, seed=seed)
	logger.info("---AUDIT: %d instances, seed %d---", count, seed)
	records = [audit_instance(seed, index, seesaw) for index in range(count)]
	report = AuditReport(seed=seed, records=records)
	if report.passed:
		logger.info("---DECISION: AUDIT PASSED---")
	else:
		logger.warning("---DECISION: AUDIT FAILED (%d instances)---", len(report.failures))
	return report
