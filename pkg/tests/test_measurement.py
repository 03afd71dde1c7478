import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.cones.spectra import is_psd, sco
from src.discrimination.class_parameter import ClassParameter
from src.discrimination.measurement import (
	Branch,
	MeasurementCertificate,
	build_measurement,
	local_unitaries,
	seed_vectors,
	select_branch,
)
from src.errors import ConditionNotSatisfiedError, IdenticalStatesError
from src.linalg.canonical import CanonicalForm, canonical_reduction
from src.linalg.operators import PureStateVector
from src.linalg.tensor import eig_hermitian

T1_GAMMA_ONE = 0.5 * np.array([[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]])
T2_GAMMA_ONE = 0.5 * np.array([[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]])


def test_gamma_one_matrices():
	certificate = build_measurement(CanonicalForm.from_alphas(0.5, 0.5), ClassParameter.ms(0.5))
	assert certificate.branch is Branch.GAMMA_EQUALS_ONE
	assert_allclose(certificate.t1.entries, T1_GAMMA_ONE, atol=1e-12)
	assert_allclose(certificate.t2.entries, T2_GAMMA_ONE, atol=1e-12)
	assert_allclose(eig_hermitian(certificate.t1).values, [1, 0, 0, 0], atol=1e-12)
	assert [evidence.nege for evidence in certificate.evidence] == pytest.approx([0.5, 0.5], abs=1e-10)


@pytest.mark.parametrize("alpha1", [0.3, 0.5, 0.9])
def test_gamma_one_matrices_do_not_depend_on_alpha(alpha1):
	certificate = build_measurement(CanonicalForm.from_alphas(alpha1, 1.0 - alpha1), ClassParameter.ms(0.5))
	assert certificate.branch is Branch.GAMMA_EQUALS_ONE
	assert_allclose(certificate.t1.entries, T1_GAMMA_ONE, atol=1e-12)


def test_gamma_greater_seed_vector():
	form = CanonicalForm.from_alphas(0.8, 0.8)
	certificate = build_measurement(form, ClassParameter.ms(0.5))
	assert certificate.branch is Branch.GAMMA_GREATER
	v1, _, _ = seed_vectors(form)
	assert_allclose(v1, [1, 0, 0, -0.25])
	gamma = form.gamma
	expected = 0.5 * np.outer(v1, v1)
	for v in seed_vectors(form)[1:]:
		expected += (gamma - 1.0) / (2.0 * gamma) * np.outer(v, v)
	assert_allclose(certificate.t1.entries, expected, atol=1e-12)


@pytest.mark.parametrize("alpha1,alpha2", [(0.8, 0.8), (0.6, 0.9), (0.95, 0.3)])
def test_local_unitaries_and_w_identities(alpha1, alpha2):
	form = CanonicalForm.from_alphas(alpha1, alpha2)
	u_a, u_b = local_unitaries(form)
	assert_allclose(u_a @ u_a.conj().T, np.eye(2), atol=1e-10)
	assert_allclose(u_b @ u_b.conj().T, np.eye(2), atol=1e-10)
	rotation = np.kron(u_a, u_b)
	_, v2, v3 = seed_vectors(form)
	assert_allclose(rotation @ v2, math.sqrt(alpha2 / alpha1) * v3, atol=1e-10)
	assert_allclose(rotation @ v3, math.sqrt(alpha1 / alpha2) * v2, atol=1e-10)

	rho1, rho2 = form.states_block()
	assert_allclose(rotation.conj().T @ rho1 @ rotation, rho2, atol=1e-10)


def test_trivial_branch_is_a_local_projective_povm():
	certificate = build_measurement(CanonicalForm.from_alphas(1.0, 0.3), ClassParameter.ms(0.0))
	assert certificate.branch is Branch.TRIVIAL_ORTHOGONAL
	assert_allclose(certificate.m1.entries, np.kron(np.diag([1, 0]), np.eye(2)), atol=1e-12)
	assert is_psd(certificate.m1) and is_psd(certificate.m2)


def test_trivial_branch_on_bob():
	certificate = build_measurement(CanonicalForm.from_alphas(0.0, 1.0), ClassParameter.ms(0.0))
	assert certificate.branch is Branch.TRIVIAL_ORTHOGONAL
	assert_allclose(certificate.m1.entries, np.kron(np.eye(2), np.diag([1, 0])), atol=1e-12)


def test_select_branch_thresholds():
	assert select_branch(CanonicalForm.from_alphas(1.0 - 1e-10, 0.4)) is Branch.TRIVIAL_ORTHOGONAL
	assert select_branch(CanonicalForm.from_alphas(0.5, 0.5 + 1e-10)) is Branch.GAMMA_EQUALS_ONE
	assert select_branch(CanonicalForm.from_alphas(0.5, 0.5 + 1e-6)) is Branch.GAMMA_GREATER


def test_condition_failure_builds_nothing():
	with pytest.raises(ConditionNotSatisfiedError):
		build_measurement(CanonicalForm.from_alphas(0.5, 0.5), ClassParameter.ms(0.25))


def test_identical_states_are_rejected():
	with pytest.raises(IdenticalStatesError):
		build_measurement(CanonicalForm.from_alphas(0.0, 0.0), ClassParameter.ms(0.5))


def test_mks_terms_respect_sco_bound():
	t = 0.25
	parameter = ClassParameter.mks(t)
	certificate = build_measurement(CanonicalForm.from_alphas(0.8, 0.8), parameter)
	for term in certificate.terms1 + certificate.terms2:
		assert term.weight >= 0.0
		assert sco(PureStateVector.bipartite(term.vector, 2, 2)) <= parameter.s + 1e-10


def test_padding_goes_to_second_element(product_states):
	a1, a2, b1, b2 = product_states(0.2, 0.3, d_a=3, d_b=2, seed=5)
	form = canonical_reduction(a1, a2, b1, b2)
	certificate = build_measurement(form, ClassParameter.ms(0.5))
	assert certificate.m1.dims == (3, 2)
	assert_allclose(certificate.m1.entries + certificate.m2.entries, np.eye(6), atol=1e-9)
	complement = form.complement_projector()
	assert abs(np.trace(certificate.m1.entries @ complement)) <= 1e-9


def test_certificate_json_round_trip():
	certificate = build_measurement(CanonicalForm.from_alphas(0.8, 0.7), ClassParameter.mks(0.5))
	restored = MeasurementCertificate.model_validate(certificate.model_dump(mode="json"))
	assert restored.branch is certificate.branch
	assert_allclose(restored.m2.entries, certificate.m2.entries)
	assert restored.local_unitaries is not None
