import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import local_pair
from src.cones.spectra import is_psd, sco
from src.discrimination.class_parameter import ClassParameter
from src.discrimination.pipeline import DiscriminationResult, discriminate
from src.errors import IdenticalStatesError
from src.linalg.operators import PureStateVector
from src.oracle.seesaw import SeesawConfig, min_product_expectation

ACCEPTANCE_COUNT = 1000
SEESAW = SeesawConfig(restarts=4, max_iters=200, seed=11)


def _random_instance(rng, k):
	"""Local pairs on 2- or 3-dimensional sides with α₂ above the boundary for coefficient k."""
	alpha1 = 1.0 - rng.random()
	lower = (1.0 - alpha1) / ((1.0 - alpha1) + k * alpha1)
	alpha2 = lower + (1.0 - lower) * rng.random()
	d_a, d_b = (int(rng.choice([2, 3])) for _ in range(2))
	a1, a2 = local_pair(1.0 - alpha1, d_a, rng)
	b1, b2 = local_pair(1.0 - alpha2, d_b, rng)
	return a1, a2, b1, b2


def _assert_zero_error(result: DiscriminationResult):
	assert_allclose(result.report.probabilities, np.eye(2), atol=1e-9)


def test_orthogonal_states_with_povms():
	a1 = PureStateVector.single([1.0, 0.0])
	a2 = PureStateVector.single([0.0, 1.0])
	b1, b2 = local_pair(0.6)
	result = discriminate(a1, a2, b1, b2, ClassParameter.ms(0.0))
	assert result.guaranteed
	assert result.certificate.branch.value == "TrivialOrthogonal"
	assert is_psd(result.certificate.m1) and is_psd(result.certificate.m2)
	_assert_zero_error(result)


def test_small_overlaps_are_guaranteed(product_states):
	result = discriminate(*product_states(0.2, 0.2, seed=3), ClassParameter.ms(0.25))
	assert result.guaranteed
	assert result.overlaps.x == pytest.approx(0.2, abs=1e-12)
	assert result.overlaps.y == pytest.approx(0.2, abs=1e-12)
	assert result.minimal.s_min == pytest.approx(0.125)
	assert result.steps == ["reduce", "evaluate", "build", "verify"]
	_assert_zero_error(result)


def test_unsatisfied_condition_is_not_a_failure(product_states):
	result = discriminate(*product_states(0.5, 0.5, seed=3), ClassParameter.ms(0.25))
	assert not result.guaranteed
	assert result.certificate is None and result.report is None
	assert result.steps == ["reduce", "evaluate"]
	assert result.minimal.s_min == pytest.approx(0.5)


def test_mks_at_small_overlaps(product_states):
	result = discriminate(*product_states(0.04, 0.04, d_a=3, d_b=2, seed=9), ClassParameter.mks(0.25))
	assert result.guaranteed
	_assert_zero_error(result)


def test_identical_states_raise():
	a1, a2 = local_pair(1.0)
	with pytest.raises(IdenticalStatesError):
		discriminate(a1, a2, a1, a2, ClassParameter.ms(0.5))


def test_result_serializes(product_states):
	result = discriminate(*product_states(0.2, 0.3, seed=4), ClassParameter.ms(0.5))
	restored = DiscriminationResult.model_validate(result.model_dump(mode="json"))
	assert restored.guaranteed
	assert_allclose(restored.certificate.m1.entries, result.certificate.m1.entries)


def test_ms_end_to_end_acceptance():
	rng = np.random.default_rng(101)
	for index in range(ACCEPTANCE_COUNT):
		s = 0.5 * (1.0 - rng.random())
		parameter = ClassParameter.ms(s)
		result = discriminate(*_random_instance(rng, parameter.coefficient), parameter)
		assert result.guaranteed, index
		_assert_zero_error(result)
		assert max(result.report.nege) <= s + 1e-9
		if index % 50 == 0:
			for element in result.certificate.elements:
				assert min_product_expectation(element, SEESAW).value >= -1e-7


def test_mks_end_to_end_acceptance():
	rng = np.random.default_rng(202)
	for index in range(ACCEPTANCE_COUNT):
		parameter = ClassParameter.mks(1.0 - rng.random())
		result = discriminate(*_random_instance(rng, parameter.coefficient), parameter)
		assert result.guaranteed, index
		_assert_zero_error(result)
		for term in result.certificate.terms1 + result.certificate.terms2:
			assert term.weight >= 0.0
			assert sco(PureStateVector.bipartite(term.vector, 2, 2)) <= parameter.s + 1e-10


def test_povm_collapse_at_zero_parameter(product_states):
	for x, y in [(0.0, 0.4), (0.7, 0.0), (0.0, 0.0)]:
		a1, a2, b1, b2 = product_states(x, y, d_a=3, d_b=3, seed=12)
		result = discriminate(a1, a2, b1, b2, ClassParameter.ms(0.0))
		assert result.guaranteed
		for element in result.certificate.elements:
			assert is_psd(element)
