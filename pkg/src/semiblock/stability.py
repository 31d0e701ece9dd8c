"""Stability and asymptotics certificates.

Every certificate takes explicit constants (M_i, eps_i, block norms) rather
than matrices, because such constants are not unique and a report must
record which ones were used. Convenience wrappers derive them from
growth_bound. Strict inequalities at the boundary resolve to "not
satisfied".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .blocks import convolve
from .errors import UnsupportedCaseError
from .linalg import as_square, as_vector, eigendecompose, solve, spectral_abscissa
from .semigroup import CONVERGENT_NONZERO, DECAYING, classify_orbit, growth_bound

__all__ = [
    "Certificate",
    "LimitComparison",
    "bpt_certificate",
    "complete_certificate",
    "cascade_certificate",
    "nonresonance_check",
    "asymptotic_limit_R",
    "stabilizability_certificate",
    "bpt_certificate_from_system",
    "complete_certificate_from_system",
]


@dataclass(frozen=True)
class Certificate:
    """Named criterion outcome. ``margin`` is the signed slack (positive
    exactly when satisfied); ``predicted_rate`` is only present when the
    criterion certifies a negative decay rate."""

    criterion: str
    satisfied: bool
    margin: float
    predicted_rate: float | None = None
    inputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.satisfied != (self.margin > 0):
            raise ValueError("satisfied must equal margin > 0")
        if self.predicted_rate is not None and self.predicted_rate >= 0:
            raise ValueError("predicted_rate, when present, must be negative")


def bpt_certificate(M, eps, norm_B, norm_C):
    """Bounded-perturbation bound: rate eps + M max(||B||, ||C||).

    Both diagonal semigroups are assumed bounded by the same M e^{eps t}.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    rate = eps + M * max(norm_B, norm_C)
    margin = -rate
    return Certificate(
        criterion="bpt",
        satisfied=margin > 0,
        margin=float(margin),
        predicted_rate=float(rate) if rate < 0 else None,
        inputs={"M": M, "eps": eps, "norm_B": norm_B, "norm_C": norm_C},
    )


def complete_certificate(M1, eps1, M2, eps2, norm_B, norm_C):
    """Product criterion for the complete matrix: M1 M2 ||B|| ||C|| < eps1 eps2.

    Sharper than the bounded-perturbation bound for asymmetric ||B||, ||C||.
    Asserts uniform exponential stability without a rate.
    """
    if eps1 >= 0 or eps2 >= 0:
        raise ValueError("eps1 and eps2 must be negative")
    if M1 < 1 or M2 < 1:
        raise ValueError("M1 and M2 must be at least 1")
    margin = eps1 * eps2 - M1 * M2 * norm_B * norm_C
    return Certificate(
        criterion="complete_product",
        satisfied=margin > 0,
        margin=float(margin),
        inputs={
            "M1": M1,
            "eps1": eps1,
            "M2": M2,
            "eps2": eps2,
            "norm_B": norm_B,
            "norm_C": norm_C,
        },
    )


def cascade_certificate(abscissa_A, abscissa_D):
    """Triangular cascade: both diagonal blocks exponentially stable makes
    the triangular system exponentially stable, rate max of the abscissas."""
    rate = max(abscissa_A, abscissa_D)
    margin = -rate
    return Certificate(
        criterion="cascade_triangular",
        satisfied=margin > 0,
        margin=float(margin),
        predicted_rate=float(rate) if rate < 0 else None,
        inputs={"abscissa_A": abscissa_A, "abscissa_D": abscissa_D},
    )


def nonresonance_check(a, d, tol=1e-9):
    """No shared imaginary spectrum: i R intersect sigma(A) intersect sigma(D)
    must be empty.

    A pair (lambda, mu) violates when |Re lambda|, |Re mu| and
    |Im lambda - Im mu| are all below ``tol``; the margin is the smallest
    pair distance minus tol. The half-line spectra {eta : i eta in sigma}
    of both blocks are reported in the inputs.
    """
    wa = eigendecompose(as_square(a, "A"), want_vectors=False).eigenvalues
    wd = eigendecompose(as_square(d, "D"), want_vectors=False).eigenvalues
    dist = np.maximum(
        np.maximum(np.abs(wa.real)[:, None], np.abs(wd.real)[None, :]),
        np.abs(wa.imag[:, None] - wd.imag[None, :]),
    )
    min_dist = float(np.min(dist))
    margin = min_dist - tol
    return Certificate(
        criterion="nonresonance",
        satisfied=margin > 0,
        margin=margin,
        inputs={
            "tol": tol,
            "min_pair_distance": min_dist,
            "halfline_spectrum_A": [float(v.imag) for v in wa if abs(v.real) < tol],
            "halfline_spectrum_D": [float(v.imag) for v in wd if abs(v.real) < tol],
        },
    )


@dataclass(frozen=True)
class LimitComparison:
    """Sign-corrected limit prediction (-D)^{-1} C lim e^{tA}x against the
    convolution observed at the horizon. ``uncorrected_prediction`` keeps
    the naive D^{-1} C value (the wrong sign) for comparison."""

    predicted: np.ndarray
    observed: np.ndarray
    discrepancy: float
    uncorrected_prediction: np.ndarray


def asymptotic_limit_R(sys, x, horizon, tol=1e-10):
    """Limit identity for the lower-triangular convolution entry.

    Requires B = 0, D exponentially stable, and a convergent (or decaying)
    orbit e^{tA}x. The discrepancy decays like e^{max(alpha_A, alpha_D) t}
    in the horizon for the decaying components.
    """
    if sys.B.any():
        raise UnsupportedCaseError("limit identity needs a lower-triangular system (B = 0)")
    if spectral_abscissa(sys.D) >= 0:
        raise UnsupportedCaseError("D must be exponentially stable")
    x = as_vector(x, dim=sys.n, name="x")
    orbit = classify_orbit(sys.A, x)
    if orbit.kind not in (DECAYING, CONVERGENT_NONZERO):
        raise UnsupportedCaseError(f"orbit of x is {orbit.kind}, no limit exists")
    x_inf = orbit.limit
    predicted = solve(-sys.D, sys.C @ x_inf)
    observed = convolve(sys.D, sys.A, sys.C, horizon, tol=tol).value @ x
    return LimitComparison(
        predicted=predicted,
        observed=observed,
        discrepancy=float(np.linalg.norm(predicted - observed)),
        uncorrected_prediction=-predicted,
    )


def stabilizability_certificate(M1, eps1, M2, eps2, norm_C, norm_feedthrough):
    """Coupled-domain stabilizability condition.

    ||C|| ||B - Dbar_0 (D + C D_0)|| < eps1 eps2 / (M1 M2), with the
    feedthrough norm supplied by the coupled-domain module and the constants
    certified for the two reduced diagonal blocks.
    """
    if eps1 >= 0 or eps2 >= 0:
        raise ValueError("eps1 and eps2 must be negative")
    if M1 < 1 or M2 < 1:
        raise ValueError("M1 and M2 must be at least 1")
    margin = eps1 * eps2 / (M1 * M2) - norm_C * norm_feedthrough
    return Certificate(
        criterion="stabilizability",
        satisfied=margin > 0,
        margin=float(margin),
        inputs={
            "M1": M1,
            "eps1": eps1,
            "M2": M2,
            "eps2": eps2,
            "norm_C": norm_C,
            "norm_feedthrough": norm_feedthrough,
        },
    )


def _stable_bounds(a, d, omega_margin, horizon):
    gb1 = growth_bound(a, omega_margin=omega_margin, horizon=horizon)
    gb2 = growth_bound(d, omega_margin=omega_margin, horizon=horizon)
    if gb1.omega >= 0 or gb2.omega >= 0:
        raise ValueError("both diagonal blocks must be exponentially stable")
    return gb1, gb2


def bpt_certificate_from_system(sys, omega_margin=1e-6, horizon=40.0):
    """bpt_certificate with a shared (M, eps) certified from the blocks."""
    from .linalg import operator_norm

    gb1, gb2 = _stable_bounds(sys.A, sys.D, omega_margin, horizon)
    return bpt_certificate(
        M=max(gb1.M, gb2.M),
        eps=max(gb1.omega, gb2.omega),
        norm_B=operator_norm(sys.B),
        norm_C=operator_norm(sys.C),
    )


def complete_certificate_from_system(sys, omega_margin=1e-6, horizon=40.0):
    """complete_certificate with per-block constants from growth_bound."""
    from .linalg import operator_norm

    gb1, gb2 = _stable_bounds(sys.A, sys.D, omega_margin, horizon)
    return complete_certificate(
        M1=gb1.M,
        eps1=gb1.omega,
        M2=gb2.M,
        eps2=gb2.omega,
        norm_B=operator_norm(sys.B),
        norm_C=operator_norm(sys.C),
    )
