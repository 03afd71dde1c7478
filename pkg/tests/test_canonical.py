import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import local_pair
from src.errors import DimensionError, IdenticalStatesError
from src.linalg.canonical import CanonicalForm, canonical_reduction, canonical_states_block, round_trip_residual
from src.linalg.operators import PureStateVector


def _basis(dim, index):
	vector = np.zeros(dim)
	vector[index] = 1.0
	return PureStateVector.single(vector)


def test_parallel_a_orthogonal_b():
	a = _basis(2, 0)
	form = canonical_reduction(a, a, _basis(2, 0), _basis(2, 1))
	assert form.alpha1 == pytest.approx(0.0, abs=1e-12)
	assert form.alpha2 == pytest.approx(1.0, abs=1e-12)


def test_three_dimensional_alice():
	a1 = PureStateVector.single([1.0, 0.0, 0.0])
	a2 = PureStateVector.single([0.6, 0.8, 0.0])
	b1, b2 = local_pair(0.5)
	form = canonical_reduction(a1, a2, b1, b2)
	assert form.alpha1 == pytest.approx(0.64, abs=1e-12)
	assert form.dims == (3, 2)
	assert form.padding_ranks == (1, 0)
	assert round_trip_residual(form, a1, a2, b1, b2) <= 1e-10


@pytest.mark.parametrize("angle", [3e-7, 1e-5, 2e-8])
def test_nearly_parallel_pair_round_trips(angle, caplog):
	a1 = PureStateVector.single([1.0, 0.0, 0.0])
	a2 = PureStateVector.single([math.cos(angle), 0.0, math.sin(angle)])
	b1, b2 = _basis(2, 0), _basis(2, 1)
	form = canonical_reduction(a1, a2, b1, b2)
	assert form.alpha1 == pytest.approx(math.sin(angle) ** 2, rel=1e-9)
	assert round_trip_residual(form, a1, a2, b1, b2) <= 1e-10
	assert_allclose(form.basis_a.conj().T @ form.basis_a, np.eye(3), atol=1e-12)
	assert "reproduces the input states" not in caplog.text


def test_exactly_parallel_pair_has_zero_alpha():
	a1 = PureStateVector.single([0.6, 0.8j])
	form = canonical_reduction(a1, a1, _basis(2, 0), _basis(2, 1))
	assert form.alpha1 == 0.0
	assert_allclose(form.basis_a.conj().T @ form.basis_a, np.eye(2), atol=1e-12)


@pytest.mark.parametrize("theta", [0.3, 1.7, math.pi])
def test_overlap_phase_is_removed(theta):
	a1 = PureStateVector.single([1.0, 0.0, 0.0])
	a2 = PureStateVector.single([0.6 * np.exp(1j * theta), 0.8, 0.0])
	b1, b2 = local_pair(0.3)
	form = canonical_reduction(a1, a2, b1, b2)
	assert form.alpha1 == pytest.approx(0.64, abs=1e-12)
	rho1, rho2 = form.states_block()
	assert np.all(np.isreal(rho2))
	assert round_trip_residual(form, a1, a2, b1, b2) <= 1e-10


def test_derived_quantities():
	form = CanonicalForm.from_alphas(0.8, 0.8)
	assert form.beta1 ** 2 == pytest.approx(0.8 * 0.2, abs=1e-12)
	assert form.gamma == pytest.approx(1.6)
	assert form.xi == pytest.approx(0.25)


def test_states_block_matches_canonical_states():
	rho1, rho2 = canonical_states_block(0.36, 0.5)
	expected1 = np.zeros((4, 4))
	expected1[0, 0] = 1.0
	q_a = np.array([0.8, 0.6])
	q_b = np.array([math.sqrt(0.5), math.sqrt(0.5)])
	assert_allclose(rho1, expected1)
	assert_allclose(rho2, np.outer(np.kron(q_a, q_b), np.kron(q_a, q_b)), atol=1e-12)


@pytest.mark.parametrize("d_a,d_b", [(2, 2), (2, 3), (3, 3), (4, 5)])
def test_round_trip_with_random_bases(rng, d_a, d_b):
	a1, a2 = local_pair(0.3, d_a, rng)
	b1, b2 = local_pair(0.7, d_b, rng, phase=0.4)
	form = canonical_reduction(a1, a2, b1, b2)
	assert 1.0 - form.alpha1 == pytest.approx(0.3, abs=1e-12)
	assert 1.0 - form.alpha2 == pytest.approx(0.7, abs=1e-12)
	assert_allclose(form.basis_a.conj().T @ form.basis_a, np.eye(d_a), atol=1e-12)
	assert round_trip_residual(form, a1, a2, b1, b2) <= 1e-10


def test_identical_states_are_rejected():
	a1, a2 = local_pair(1.0)
	with pytest.raises(IdenticalStatesError):
		canonical_reduction(a1, a2, a1, a2)


def test_unnormalized_input_is_rejected():
	a = PureStateVector.single([2.0, 0.0])
	with pytest.raises(DimensionError):
		canonical_reduction(a, a, _basis(2, 0), _basis(2, 1))
