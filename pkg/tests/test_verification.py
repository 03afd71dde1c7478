import numpy as np
import pytest

from src.discrimination.class_parameter import ClassParameter
from src.discrimination.measurement import build_measurement
from src.discrimination.verification import verify_measurement
from src.errors import DimensionError
from src.linalg.canonical import CanonicalForm
from src.linalg.operators import HermitianOperator


def _build(alpha1, alpha2, class_parameter):
	form = CanonicalForm.from_alphas(alpha1, alpha2)
	return build_measurement(form, class_parameter), form.states()


def test_gamma_one_certificate_passes_at_one_half():
	certificate, (rho1, rho2) = _build(0.5, 0.5, ClassParameter.ms(0.5))
	report = verify_measurement(certificate, rho1, rho2, ClassParameter.ms(0.5))
	assert report.passed
	assert report.unit_residual <= 1e-12
	assert report.zero_error_residual <= 1e-12
	assert report.nege == pytest.approx([0.5, 0.5], abs=1e-10)


def test_gamma_one_certificate_fails_below_one_half():
	certificate, (rho1, rho2) = _build(0.5, 0.5, ClassParameter.ms(0.5))
	report = verify_measurement(certificate, rho1, rho2, ClassParameter.ms(0.4))
	assert not report.passed
	assert report.unit_ok and report.zero_error_ok
	assert not report.cone_ok
	assert "nege" in report.cone_reasons[0]


def test_perturbed_element_breaks_the_unit_condition():
	certificate, (rho1, rho2) = _build(0.5, 0.5, ClassParameter.ms(0.5))
	perturbed = certificate.m1.entries.copy()
	perturbed[0, 0] += 0.02
	tampered = certificate.model_copy(update={"m1": certificate.m1.with_entries(perturbed)})
	report = verify_measurement(tampered, rho1, rho2, ClassParameter.ms(0.5))
	assert not report.unit_ok
	assert report.unit_residual == pytest.approx(0.02, abs=1e-12)
	assert not report.passed


def test_perturbed_block_breaks_the_unit_condition():
	certificate, (rho1, rho2) = _build(0.5, 0.5, ClassParameter.ms(0.5))
	perturbed = certificate.t1.entries.copy()
	perturbed[0, 0] += 0.01
	tampered = certificate.model_copy(update={"t1": certificate.t1.with_entries(perturbed)})
	report = verify_measurement(tampered, rho1, rho2, ClassParameter.ms(0.5))
	assert not report.unit_ok
	assert not report.passed
	# Γ keeps the diagonal, so the rebuilt M₁ moves by twice the perturbation.
	assert report.unit_residual == pytest.approx(0.02, abs=1e-12)
	assert report.reconstruction_residual == pytest.approx(0.02, abs=1e-12)
	assert "FAIL" in report.summary().splitlines()[1]


def test_terms_must_add_up_to_the_block():
	certificate, (rho1, rho2) = _build(0.8, 0.8, ClassParameter.ms(0.5))
	tampered = certificate.model_copy(update={"terms1": certificate.terms2})
	report = verify_measurement(tampered, rho1, rho2, ClassParameter.ms(0.5))
	assert not report.unit_ok
	assert report.reconstruction_residual > 1e-3


def test_padded_elements_are_rebuilt_exactly():
	form = CanonicalForm.from_alphas(0.6, 0.7, np.eye(3), np.eye(3))
	certificate = build_measurement(form, ClassParameter.ms(0.5))
	rho1, rho2 = form.states()
	report = verify_measurement(certificate, rho1, rho2, ClassParameter.ms(0.5))
	assert report.passed
	assert report.reconstruction_residual <= 1e-12


def test_gamma_greater_fails_well_below_its_negativity():
	certificate, (rho1, rho2) = _build(0.8, 0.8, ClassParameter.ms(0.5))
	report = verify_measurement(certificate, rho1, rho2, ClassParameter.ms(0.5))
	assert report.passed
	smaller = ClassParameter.ms(0.005)
	assert max(report.nege) > smaller.s
	assert not verify_measurement(certificate, rho1, rho2, smaller).cone_ok


def test_gamma_greater_ks_evidence_needs_sco_of_the_entangled_term():
	certificate, (rho1, rho2) = _build(0.8, 0.8, ClassParameter.mks(1.0))
	assert verify_measurement(certificate, rho1, rho2, ClassParameter.mks(0.25)).passed
	# sco(v1) = 0.25/1.0625 ≈ 0.235 exceeds s = 0.2/1.04.
	report = verify_measurement(certificate, rho1, rho2, ClassParameter.mks(0.04))
	assert not report.cone_ok
	assert "sco" in report.cone_reasons[0]


def test_wrong_states_break_zero_error():
	certificate, (rho1, rho2) = _build(0.8, 0.8, ClassParameter.ms(0.5))
	report = verify_measurement(certificate, rho2, rho1, ClassParameter.ms(0.5))
	assert not report.zero_error_ok
	assert report.probabilities[0][0] == pytest.approx(0.0, abs=1e-9)


def test_dimension_mismatch_raises():
	certificate, (rho1, _) = _build(0.8, 0.8, ClassParameter.ms(0.5))
	other = HermitianOperator.bipartite(np.eye(6), 2, 3)
	with pytest.raises(DimensionError):
		verify_measurement(certificate, rho1, other, ClassParameter.ms(0.5))


def test_summary_lists_every_condition():
	certificate, (rho1, rho2) = _build(0.5, 0.5, ClassParameter.ms(0.5))
	summary = verify_measurement(certificate, rho1, rho2, ClassParameter.ms(0.4)).summary()
	assert "(i)" in summary and "(ii)" in summary and "(iii)" in summary
	assert summary.rstrip().endswith("FAIL")
