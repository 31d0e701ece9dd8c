"""Certificates: bounded-perturbation, product criterion, non-resonance,
limit identities, stabilizability."""

import numpy as np
import pytest

from semiblock.blocks import BlockSystem, assemble, convolve
from semiblock.errors import UnsupportedCaseError
from semiblock.linalg import spectral_abscissa
from semiblock.stability import (
    asymptotic_limit_R,
    bpt_certificate,
    cascade_certificate,
    complete_certificate,
    complete_certificate_from_system,
    nonresonance_check,
    stabilizability_certificate,
)

from conftest import stable_full_system


def _scalar(v):
    return np.array([[float(v)]])


def test_bpt_satisfied():
    cert = bpt_certificate(M=1.0, eps=-1.0, norm_B=0.5, norm_C=0.5)
    assert cert.satisfied
    assert cert.predicted_rate == pytest.approx(-0.5)
    assert cert.margin == pytest.approx(0.5)


def test_bpt_fails_on_large_coupling():
    cert = bpt_certificate(M=1.0, eps=-1.0, norm_B=4.0, norm_C=0.1)
    assert not cert.satisfied
    assert cert.margin == pytest.approx(-3.0)
    assert cert.predicted_rate is None


def test_bpt_uncoupled_rate_is_eps():
    cert = bpt_certificate(M=1.0, eps=-0.7, norm_B=0.0, norm_C=0.0)
    assert cert.predicted_rate == pytest.approx(-0.7)


def test_complete_sharper_than_bpt_on_witness():
    comp = complete_certificate(M1=1.0, eps1=-1.0, M2=1.0, eps2=-1.0, norm_B=4.0, norm_C=0.1)
    assert comp.satisfied
    assert comp.margin == pytest.approx(0.6)
    bpt = bpt_certificate(M=1.0, eps=-1.0, norm_B=4.0, norm_C=0.1)
    assert not bpt.satisfied
    # eigenvalue oracle on the witness matrix confirms stability
    absc = spectral_abscissa(np.array([[-1.0, 4.0], [0.1, -1.0]]))
    assert absc == pytest.approx(-1 + np.sqrt(0.4), abs=1e-12)
    assert absc < 0


def test_complete_zero_B_always_satisfied():
    cert = complete_certificate(M1=2.0, eps1=-0.5, M2=3.0, eps2=-0.1, norm_B=0.0, norm_C=100.0)
    assert cert.satisfied


def test_complete_boundary_not_satisfied():
    cert = complete_certificate(M1=1.0, eps1=-1.0, M2=1.0, eps2=-1.0, norm_B=1.0, norm_C=1.0)
    assert not cert.satisfied
    assert cert.margin == pytest.approx(0.0)


def test_complete_rejects_nonnegative_rate():
    with pytest.raises(ValueError):
        complete_certificate(M1=1.0, eps1=0.0, M2=1.0, eps2=-1.0, norm_B=1.0, norm_C=1.0)


def test_cascade_certificate():
    cert = cascade_certificate(-2.0, -1.0)
    assert cert.satisfied and cert.predicted_rate == pytest.approx(-1.0)
    assert not cascade_certificate(-2.0, 0.1).satisfied


def test_nonresonance_disjoint_axis_spectra():
    cert = nonresonance_check(_scalar(0.0), _scalar(-1.0))
    assert cert.satisfied
    assert cert.inputs["halfline_spectrum_A"] == [0.0]


def test_nonresonance_shared_rotation():
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    cert = nonresonance_check(j, j)
    assert not cert.satisfied


def test_nonresonance_symmetric_in_swap():
    rng = np.random.default_rng(23)
    for _ in range(6):
        a = rng.standard_normal((3, 3))
        d = rng.standard_normal((2, 2))
        c1 = nonresonance_check(a, d)
        c2 = nonresonance_check(d, a)
        assert c1.satisfied == c2.satisfied
        assert c1.margin == pytest.approx(c2.margin, abs=1e-12)


def test_resonance_consequence_linear_growth():
    # A = D = rotation, C = I: R(t) = t e^{tA}, an isometry times t
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    x = np.array([0.6, -0.8])
    for t in (5.0, 20.0):
        r = convolve(j, j, np.eye(2), t, tol=1e-10)
        assert np.linalg.norm(r.value @ x) == pytest.approx(t, rel=1e-8)


def test_asymptotic_limit_scalar():
    sys_ = BlockSystem.lower_triangular(_scalar(0.0), _scalar(1.0), _scalar(-1.0))
    out = asymptotic_limit_R(sys_, np.array([1.0]), horizon=40.0)
    assert out.predicted == pytest.approx([1.0])
    assert out.observed == pytest.approx([1.0], abs=1e-9)
    assert out.uncorrected_prediction == pytest.approx([-1.0])


def test_asymptotic_limit_zero_vector():
    sys_ = BlockSystem.lower_triangular(_scalar(0.0), _scalar(1.0), _scalar(-1.0))
    out = asymptotic_limit_R(sys_, np.array([0.0]), horizon=10.0)
    assert out.predicted == pytest.approx([0.0])
    assert out.observed == pytest.approx([0.0], abs=1e-12)


def test_asymptotic_limit_projection_case():
    sys_ = BlockSystem.lower_triangular(
        np.diag([0.0, -1.0]), np.array([[1.0, 1.0]]), _scalar(-1.0)
    )
    out = asymptotic_limit_R(sys_, np.array([2.0, 5.0]), horizon=60.0)
    assert out.predicted == pytest.approx([2.0], abs=1e-12)
    assert out.discrepancy <= 1e-8


def test_asymptotic_limit_rejects_oscillation():
    sys_ = BlockSystem.lower_triangular(
        np.array([[0.0, 1.0], [-1.0, 0.0]]), np.array([[1.0, 0.0]]), _scalar(-1.0)
    )
    with pytest.raises(UnsupportedCaseError):
        asymptotic_limit_R(sys_, np.array([1.0, 0.0]), horizon=10.0)


def test_stabilizability_certificate_cases():
    assert stabilizability_certificate(1.0, -1.0, 1.0, -1.0, 0.0, 5.0).satisfied
    cert = stabilizability_certificate(1.0, -1.0, 1.0, -1.0, 0.5, 1.0)
    assert cert.satisfied and cert.margin == pytest.approx(0.5)
    boundary = stabilizability_certificate(1.0, -1.0, 1.0, -1.0, 1.0, 1.0)
    assert not boundary.satisfied


def test_certificate_soundness_random_sample():
    rng = np.random.default_rng(99)
    passes = 0
    for _ in range(40):
        sys_ = stable_full_system(rng)
        cert = complete_certificate_from_system(sys_, omega_margin=1e-6)
        if cert.satisfied:
            passes += 1
            assert spectral_abscissa(assemble(sys_)) < 0
    assert passes >= 5


def test_limit_discrepancy_decays_with_horizon():
    # asymptotic regime: the e^{alpha h} contraction with 1.5x slack needs the
    # faster-decaying cross terms to have died off, hence the 12 -> 24 window
    sys_ = BlockSystem.lower_triangular(
        np.diag([0.0, -0.4]), np.array([[1.0, 1.0]]), _scalar(-0.5)
    )
    x = np.array([1.0, 2.0])
    d1 = asymptotic_limit_R(sys_, x, horizon=12.0).discrepancy
    d2 = asymptotic_limit_R(sys_, x, horizon=24.0).discrepancy
    alpha = -0.4  # slowest decaying part
    assert d2 <= d1 * np.exp(alpha * 12.0) * 1.5
