"""Kernel contracts: exponential, spectra, norms, solves."""

import numpy as np
import pytest

from semiblock.errors import SingularMatrixError
from semiblock.linalg import (
    Propagator,
    as_matrix,
    eigendecompose,
    expm,
    operator_norm,
    solve,
    spectral_abscissa,
    spectral_pairing_distance,
)

from conftest import stable_matrix


def test_expm_zero_matrix_is_identity():
    assert np.allclose(expm(np.zeros((3, 3)), 7.0), np.eye(3), atol=1e-14)


def test_expm_diagonal():
    out = expm(np.diag([-1.0, -2.0]), 1.0)
    assert np.allclose(out, np.diag([np.exp(-1), np.exp(-2)]), rtol=1e-13)


def test_expm_nilpotent_terminates():
    t = 0.73
    out = expm(np.array([[0.0, 1.0], [0.0, 0.0]]), t)
    assert np.allclose(out, [[1.0, t], [0.0, 1.0]], atol=1e-15)


def test_expm_rejects_bad_inputs():
    with pytest.raises(ValueError):
        expm(np.zeros((2, 3)), 1.0)
    with pytest.raises(ValueError):
        expm(np.eye(2), np.inf)
    with pytest.raises(ValueError):
        expm(np.eye(2), -1.0)


def test_matrix_validation_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_matrix(np.array([[1.0, np.nan]]))


def test_eigendecompose_rotation_and_order():
    spectrum = eigendecompose(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert np.allclose(sorted(spectrum.eigenvalues.imag), [-1.0, 1.0], atol=1e-12)
    assert np.allclose(spectrum.eigenvalues.real, 0.0, atol=1e-12)
    # descending imaginary part at equal real part
    assert spectrum.eigenvalues[0].imag > spectrum.eigenvalues[1].imag


def test_eigendecompose_ordering_real():
    spectrum = eigendecompose(np.diag([-3.0, 2.0]))
    assert np.allclose(spectrum.eigenvalues, [2.0, -3.0], atol=1e-14)


def test_eigendecompose_closed_form_2x2():
    # characteristic polynomial of [[-1, 4], [0.1, -1]]: (lam+1)^2 = 0.4
    root = np.sqrt(0.4)
    spectrum = eigendecompose(np.array([[-1.0, 4.0], [0.1, -1.0]]))
    assert np.allclose(spectrum.eigenvalues, [-1 + root, -1 - root], atol=1e-12)


def test_eigendecompose_residuals():
    rng = np.random.default_rng(11)
    a = rng.standard_normal((6, 6))
    spectrum = eigendecompose(a)
    for lam, v in zip(spectrum.eigenvalues, spectrum.eigenvectors.T):
        res = np.linalg.norm(a @ v - lam * v)
        assert res <= 1e-10 * operator_norm(a) * np.linalg.norm(v)


def test_spectral_abscissa_examples():
    assert abs(spectral_abscissa(np.array([[0.0, 1.0], [-1.0, 0.0]]))) < 1e-12
    assert spectral_abscissa(np.diag([-1.0, -5.0])) == pytest.approx(-1.0)
    expected = -1 + np.sqrt(0.4)
    assert spectral_abscissa(np.array([[-1.0, 4.0], [0.1, -1.0]])) == pytest.approx(expected, abs=1e-12)


def test_operator_norm_examples():
    assert operator_norm(np.eye(5)) == pytest.approx(1.0)
    assert operator_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)
    assert operator_norm(np.array([[0.0, 2.0], [0.0, 0.0]])) == pytest.approx(2.0)


def test_solve_identity_and_scalar():
    b = np.array([1.0, 2.0, 3.0])
    assert np.allclose(solve(np.eye(3), b), b)
    assert np.allclose(solve(np.array([[2.0]]), np.array([6.0])), [3.0])


def test_solve_refuses_singular():
    with pytest.raises(SingularMatrixError):
        solve(np.zeros((2, 2)), np.ones(2))


def test_solve_roundtrip_random():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 9))
        a = rng.standard_normal((n, n)) + n * np.eye(n)
        b = rng.standard_normal(n)
        x = solve(a, b)
        assert np.linalg.norm(a @ x - b) <= 1e-10 * operator_norm(a) * np.linalg.norm(b)


def test_semigroup_law_random():
    rng = np.random.default_rng(42)
    for _ in range(12):
        a = rng.standard_normal((6, 6))
        a *= min(1.0, 5.0 / operator_norm(a))
        t, s = rng.uniform(0, 2, size=2)
        lhs = expm(a, t + s)
        rhs = expm(a, t) @ expm(a, s)
        assert operator_norm(lhs - rhs) <= 1e-9 * (1 + operator_norm(lhs))


def test_similarity_covariance():
    rng = np.random.default_rng(7)
    for _ in range(8):
        a = rng.standard_normal((5, 5))
        p = rng.standard_normal((5, 5)) + 3 * np.eye(5)
        t = rng.uniform(0.1, 2.0)
        lhs = expm(p @ a @ np.linalg.inv(p), t)
        rhs = p @ expm(a, t) @ np.linalg.inv(p)
        assert operator_norm(lhs - rhs) <= 1e-8 * max(1.0, operator_norm(rhs))


def test_normal_matrix_norm_matches_abscissa():
    rng = np.random.default_rng(9)
    for _ in range(8):
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        a = q @ np.diag(rng.uniform(-3, 1, 5)) @ q.T
        t = rng.uniform(0.1, 3.0)
        nrm = operator_norm(expm(a, t))
        assert nrm == pytest.approx(np.exp(t * spectral_abscissa(a)), rel=1e-9)


def test_propagator_matches_expm_defective():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])  # defective, falls back to expm
    prop = Propagator(a)
    ts = np.array([0.0, 0.5, 2.0])
    for t, v in zip(ts, prop.at(ts)):
        assert np.allclose(v, expm(a, t), atol=1e-13)


def test_spectral_pairing_distance():
    w1 = np.array([1.0 + 1j, -2.0])
    w2 = np.array([-2.0 + 1e-9, 1.0 + 1j])
    assert spectral_pairing_distance(w1, w2) <= 2e-9


def test_stable_matrix_helper_is_stable():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = stable_matrix(rng, 5, shift=0.4)
        assert spectral_abscissa(a) == pytest.approx(-0.4, abs=1e-9)
