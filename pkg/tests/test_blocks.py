"""Block assembly, convolution entries, closed forms, Young bounds."""

import numpy as np
import pytest

from semiblock.blocks import (
    BlockSystem,
    assemble,
    closed_form_R,
    convolve,
    verify_semigroup_blocks,
    young_bounds,
)
from semiblock.errors import UnsupportedCaseError
from semiblock.linalg import expm, operator_norm, spectral_abscissa
from semiblock.semigroup import growth_bound

from conftest import stable_lower_triangular_system


def _scalar(v):
    return np.array([[float(v)]])


def test_assemble_scalar_blocks():
    sys_ = BlockSystem(_scalar(-2), _scalar(0), _scalar(1), _scalar(-1))
    assert np.array_equal(assemble(sys_), [[-2.0, 0.0], [1.0, -1.0]])


def test_assemble_block_diagonal_spectrum_union():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 3))
    d = rng.standard_normal((2, 2))
    sys_ = BlockSystem(a, np.zeros((3, 2)), np.zeros((2, 3)), d)
    full = np.sort_complex(np.linalg.eigvals(assemble(sys_)))
    parts = np.sort_complex(np.concatenate([np.linalg.eigvals(a), np.linalg.eigvals(d)]))
    assert np.allclose(full, parts, atol=1e-10)


def test_assemble_zero_blocks():
    sys_ = BlockSystem(np.zeros((2, 2)), np.zeros((2, 1)), np.zeros((1, 2)), np.zeros((1, 1)))
    assert np.array_equal(assemble(sys_), np.zeros((3, 3)))


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        BlockSystem(np.zeros((2, 2)), np.zeros((3, 1)), np.zeros((1, 2)), np.zeros((1, 1)))


def test_convolve_t_zero():
    res = convolve(_scalar(-1), _scalar(0), _scalar(1), 0.0)
    assert np.array_equal(res.value, np.zeros((1, 1)))
    assert res.panels == 0


def test_convolve_matches_bounded_perturbation_closed_form():
    # A = 0, D = -1: R(t) = D^{-1}(e^{tD} - I) C = 1 - e^{-t}
    for t in (0.25, 1.0, 5.0):
        res = convolve(_scalar(-1), _scalar(0), _scalar(1), t, tol=1e-12)
        assert res.value[0, 0] == pytest.approx(1 - np.exp(-t), abs=1e-11)


def test_convolve_confluent_scalar():
    a, c, t = -0.7, 2.3, 1.7
    res = convolve(_scalar(a), _scalar(a), _scalar(c), t, tol=1e-12)
    assert res.value[0, 0] == pytest.approx(c * t * np.exp(a * t), rel=1e-10)


def test_convolve_est_error_from_refinements():
    res = convolve(_scalar(-1), _scalar(0), _scalar(1), 2.0, tol=1e-9)
    assert res.est_error < 1e-9
    assert res.panels >= 2


def test_verify_blocks_scalar_closed_form():
    sys_ = BlockSystem.lower_triangular(_scalar(-2), _scalar(1), _scalar(-1))
    residual = verify_semigroup_blocks(sys_, 1.0, tol=1e-10)
    assert residual < 1e-8
    # the off-diagonal entry itself: c (e^{td} - e^{ta}) / (d - a)
    conv = convolve(_scalar(-1), _scalar(-2), _scalar(1), 1.0, tol=1e-12)
    assert conv.value[0, 0] == pytest.approx(np.exp(-1) - np.exp(-2), abs=1e-11)


def test_verify_blocks_block_diagonal():
    sys_ = BlockSystem(np.diag([-1.0, -2.0]), np.zeros((2, 1)), np.zeros((1, 2)), _scalar(-3))
    assert verify_semigroup_blocks(sys_, 1.5, tol=1e-12) < 1e-12


def test_verify_blocks_upper_at_zero():
    sys_ = BlockSystem.upper_triangular(_scalar(-1), _scalar(4), _scalar(-2))
    assert verify_semigroup_blocks(sys_, 0.0, tol=1e-12) == pytest.approx(0.0, abs=1e-14)


def test_verify_blocks_requires_triangular():
    sys_ = BlockSystem(_scalar(-1), _scalar(1), _scalar(1), _scalar(-1))
    with pytest.raises(UnsupportedCaseError):
        verify_semigroup_blocks(sys_, 1.0)


def test_quadrature_error_decreases_under_doubling():
    # independent fixed-panel evaluation; errors must fall monotonically
    # (up to 2x noise) as panels double
    a, d = np.diag([-1.0, -0.5]), np.diag([-2.0, -0.25])
    c = np.array([[1.0, 2.0], [-0.5, 1.0]])
    t = 3.0
    ref = convolve(d, a, c, t, tol=1e-13).value
    nodes, weights = np.polynomial.legendre.leggauss(8)
    errs = []
    for panels in (1, 2, 4):
        edges = np.linspace(0, t, panels + 1)
        total = np.zeros_like(c)
        for lo, hi in zip(edges[:-1], edges[1:]):
            s = 0.5 * (hi + lo) + 0.5 * (hi - lo) * nodes
            w = 0.5 * (hi - lo) * weights
            for si, wi in zip(s, w):
                total += wi * expm(d, t - si) @ c @ expm(a, si)
        errs.append(operator_norm(total - ref))
    floor = 5e-15 * operator_norm(ref)
    assert errs[1] <= max(2.0 * errs[0], floor)
    assert errs[2] <= max(2.0 * errs[1], floor)


def test_closed_form_R_cases():
    sys_ = BlockSystem.lower_triangular(_scalar(0), _scalar(1), _scalar(-1))
    assert closed_form_R(sys_, 1.0)[0, 0] == pytest.approx(1 - np.exp(-1), abs=1e-12)
    assert closed_form_R(sys_, 80.0)[0, 0] == pytest.approx(1.0, abs=1e-12)
    assert closed_form_R(sys_, 0.0)[0, 0] == pytest.approx(0.0, abs=1e-15)


def test_closed_form_R_dual_case():
    # D = 0, invertible A: the integral is C A^{-1}(e^{tA} - I)
    rng = np.random.default_rng(8)
    a = np.diag([-1.0, -3.0])
    c = rng.standard_normal((1, 2))
    sys_ = BlockSystem(a, np.zeros((2, 1)), c, _scalar(0))
    t = 2.0
    got = closed_form_R(sys_, t)
    oracle = convolve(_scalar(0), a, c, t, tol=1e-12).value
    assert np.allclose(got, oracle, atol=1e-10)


def test_closed_form_R_unsupported():
    sys_ = BlockSystem.lower_triangular(_scalar(-1), _scalar(1), _scalar(-1))
    with pytest.raises(UnsupportedCaseError):
        closed_form_R(sys_, 1.0)


def test_triangularity_preserved_exactly():
    rng = np.random.default_rng(12)
    sys_ = stable_lower_triangular_system(rng, max_dim=3)
    for t in (0.5, 1.0, 3.0):
        top_right = expm(assemble(sys_), t)[: sys_.n, sys_.n :]
        assert operator_norm(top_right) <= 1e-12


def test_bounded_perturbation_consequence_zero_abscissa():
    # A = 0, D stable, C != 0: the assembled abscissa is exactly 0, the
    # contrapositive of "uniformly exponentially stable implies C = 0"
    rng = np.random.default_rng(21)
    for _ in range(5):
        m = int(rng.integers(1, 4))
        d = np.diag(-rng.uniform(0.5, 3.0, m))
        c = rng.standard_normal((m, 2))
        sys_ = BlockSystem(np.zeros((2, 2)), np.zeros((2, m)), c, d)
        assert abs(spectral_abscissa(assemble(sys_))) <= 1e-10


def test_young_bounds_reference_values():
    yb = young_bounds(1.0, -1.0, 1.0, 1.0, same_rate=False)
    assert yb.sup_bound == pytest.approx(1.0)
    yb_same = young_bounds(1.0, -1.0, 1.0, 1.0, same_rate=True)
    assert yb_same.sup_bound == pytest.approx(1 / np.e)
    assert yb_same.l1_bound == pytest.approx(1.0)


def test_young_bounds_zero_coupling():
    yb = young_bounds(2.0, -0.5, 3.0, 0.0)
    assert yb.sup_bound == 0.0
    assert yb.l1_bound == 0.0


def test_young_bounds_two_rate_l1():
    yb = young_bounds(1.0, -1.0, 1.0, 1.0, same_rate=False, eps2=-2.0)
    assert yb.l1_bound == pytest.approx(0.5)
    assert young_bounds(1.0, -1.0, 1.0, 1.0).l1_bound == np.inf


def test_young_bounds_rejects_bad_rate():
    with pytest.raises(ValueError):
        young_bounds(1.0, 0.0, 1.0, 1.0)


def test_young_sup_soundness_sampled():
    rng = np.random.default_rng(77)
    ts = np.concatenate([[0.0], np.geomspace(0.01, 30.0, 24)])
    for _ in range(20):
        sys_ = stable_lower_triangular_system(rng)
        gb_a = growth_bound(sys_.A, omega_margin=1e-6, horizon=40.0, samples=200)
        gb_d = growth_bound(sys_.D, omega_margin=1e-6, horizon=40.0, samples=200)
        x = rng.standard_normal(sys_.n)
        bound = young_bounds(gb_a.M, gb_a.omega, gb_d.M, operator_norm(sys_.C)).sup_bound
        sup = max(
            np.linalg.norm(convolve(sys_.D, sys_.A, sys_.C, t, tol=1e-9).value @ x) for t in ts
        )
        assert sup <= bound * np.linalg.norm(x) * (1 + 1e-6)
