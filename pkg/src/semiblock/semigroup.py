"""Semigroup-level analysis of a single generator.

Certified growth bounds (M, omega), orbit classification from the
eigenstructure, the Datko-style L1 orbit integral, and a numerical
sector-angle estimate for analyticity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.optimize

from .errors import OrbitClassificationError
from .linalg import (
    Propagator,
    as_square,
    as_vector,
    operator_norm,
    spectral_abscissa,
)

__all__ = [
    "GrowthBound",
    "OrbitClass",
    "DatkoResult",
    "DECAYING",
    "CONVERGENT_NONZERO",
    "BOUNDED_NONCONVERGENT",
    "UNBOUNDED",
    "growth_bound",
    "bound_constant_for_rate",
    "classify_orbit",
    "datko_l1_norm",
    "sector_angle_estimate",
]

DECAYING = "decaying"
CONVERGENT_NONZERO = "convergent_nonzero"
BOUNDED_NONCONVERGENT = "bounded_nonconvergent"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class GrowthBound:
    """Certified pair with ||e^{tA}|| <= M e^{omega t} on [0, horizon].

    omega is anchored at the spectral abscissa plus the caller's margin, so
    the bound extends to all t >= 0 at finite dimension.
    """

    M: float
    omega: float
    horizon: float
    samples: int


@dataclass(frozen=True)
class OrbitClass:
    """Orbit classification; ``limit`` is the asymptotic vector for the
    decaying/convergent kinds and None otherwise."""

    kind: str
    limit: np.ndarray | None


class DatkoResult(NamedTuple):
    value: float
    converged: bool


def _certification_grid(horizon, samples):
    # Uniform points resolve the bulk, geometric points resolve the initial
    # transient where ||e^{tA}|| e^{-omega t} can peak sharply.
    samples = max(int(samples), 200)
    n_uni = samples // 2
    n_geo = samples - n_uni
    grid = np.concatenate(
        [
            [0.0],
            np.linspace(0.0, horizon, n_uni + 1)[1:],
            horizon * np.geomspace(1e-8, 1.0, n_geo),
        ]
    )
    return np.unique(grid)


def _certified_sup(a, omega, horizon, samples):
    """sup over [0, horizon] of ||e^{tA}|| e^{-omega t}, grid scan plus local
    refinement of every sampled local maximum."""
    prop = Propagator(a, cond_limit=1e4)
    grid = _certification_grid(horizon, samples)
    vals = prop.norm_at(grid) * np.exp(-omega * grid)

    def f(t):
        return float(prop.norm_at(np.array([t]))[0]) * np.exp(-omega * t)

    best = float(np.max(vals))
    interior = np.flatnonzero(
        (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    )
    # Refine at most the 16 largest candidates; the global max is among them.
    if interior.size:
        top = interior[np.argsort(vals[interior + 1])[::-1][:16]]
        for idx in top + 1:
            res = scipy.optimize.minimize_scalar(
                lambda t: -f(t),
                bounds=(grid[idx - 1], grid[idx + 1]),
                method="bounded",
                options={"xatol": 1e-10 * max(horizon, 1.0)},
            )
            best = max(best, -float(res.fun))
    return best, grid.size


def growth_bound(a, omega_margin=1e-6, horizon=40.0, samples=256):
    """Certify constants (M, omega) with ||e^{tA}|| <= M e^{omega t}.

    omega = spectral_abscissa(a) + omega_margin; M is the supremum of
    ||e^{tA}|| e^{-omega t} over a geometric-plus-uniform grid on
    [0, horizon] (at least 200 points), locally refined, clamped >= 1.
    """
    a = as_square(a)
    if omega_margin <= 0:
        raise ValueError("omega_margin must be positive")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    omega = spectral_abscissa(a) + omega_margin
    sup, npts = _certified_sup(a, omega, horizon, samples)
    return GrowthBound(M=max(1.0, sup), omega=omega, horizon=horizon, samples=npts)


def bound_constant_for_rate(a, omega, horizon=40.0, samples=256):
    """Certify M for a caller-chosen rate omega (>= spectral abscissa).

    Used when two semigroups must share one rate, e.g. the same-rate Young
    bound.
    """
    a = as_square(a)
    if omega < spectral_abscissa(a):
        raise ValueError("omega below the spectral abscissa certifies nothing")
    sup, npts = _certified_sup(a, omega, horizon, samples)
    return GrowthBound(M=max(1.0, sup), omega=omega, horizon=horizon, samples=npts)


def _invariant_component(t_mat, y, predicate):
    """Component of y in the generalized eigenspace selected by ``predicate``.

    Returns (z, t_sel, u_sel) with the component equal to u_sel @ z and its
    orbit equal to u_sel @ e^{t t_sel} @ z. Oblique splitting through a
    Sylvester solve; failure signals an eigenvalue cluster straddling the
    selection boundary.
    """
    n = t_mat.shape[0]
    try:
        t_ord, q, k = scipy.linalg.schur(t_mat, output="complex", sort=predicate)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise OrbitClassificationError(f"Schur splitting failed: {exc}") from exc
    if k == 0:
        return np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex), np.zeros((n, 0), dtype=complex)
    yq = q.conj().T @ y
    if k == n:
        return yq, t_ord, q
    t11 = t_ord[:k, :k]
    t12 = t_ord[:k, k:]
    t22 = t_ord[k:, k:]
    try:
        r = scipy.linalg.solve_sylvester(t11, -t22, -t12)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise OrbitClassificationError(
            f"invariant-subspace decoupling failed (clustered spectrum?): {exc}"
        ) from exc
    z = yq[:k] - r @ yq[k:]
    return z, t11, q[:, :k]


def classify_orbit(a, x, horizon=50.0):
    """Classify the orbit (e^{tA} x) by invariant-subspace structure.

    Generalized-eigenvector components with Re(lambda) > 0, or imaginary-axis
    components on which the generator acts non-semisimply, make the orbit
    unbounded. All components decaying gives "decaying". Critical components
    at lambda = 0 only converge to the spectral projection of x; nonzero
    purely imaginary components oscillate forever. A trajectory sample up to
    ``horizon`` cross-checks the structural result.
    """
    a = as_square(a)
    x = as_vector(x, dim=a.shape[0], name="x")
    n = a.shape[0]
    xnorm = float(np.linalg.norm(x))
    if xnorm == 0.0:
        return OrbitClass(DECAYING, np.zeros(n))

    scale = 1.0 + operator_norm(a)
    re_tol = 1e-9 * scale
    comp_tol = 1e-9 * xnorm
    xc = x.astype(complex)

    z_grow, _, _ = _invariant_component(a.astype(complex), xc, lambda lam: lam.real > re_tol)
    if np.linalg.norm(z_grow) > comp_tol:
        return OrbitClass(UNBOUNDED, None)

    z_crit, t_crit, u_crit = _invariant_component(
        a.astype(complex), xc, lambda lam: abs(lam.real) <= re_tol
    )
    if np.linalg.norm(z_crit) <= comp_tol:
        return OrbitClass(DECAYING, np.zeros(n))

    # Split the critical part into clusters of equal imaginary part and test
    # whether the action on each component is semisimple.
    imags = sorted(np.diag(t_crit).imag)
    clusters = []
    for im in imags:
        if not clusters or im - clusters[-1][-1] > re_tol:
            clusters.append([im])
        else:
            clusters[-1].append(im)
    oscillatory = False
    limit = np.zeros(n, dtype=complex)
    for group in clusters:
        im0 = float(np.mean(group))
        # Selection window matches the grouping gap exactly, so a cluster
        # never swallows its neighbor's eigenvalues.
        lo, hi = min(group) - re_tol / 2, max(group) + re_tol / 2
        z_cl, t_cl, u_cl = _invariant_component(
            t_crit, z_crit, lambda lam, lo=lo, hi=hi: lo <= lam.imag <= hi
        )
        znorm = float(np.linalg.norm(z_cl))
        if znorm <= comp_tol:
            continue
        lam0 = complex(np.mean(np.diag(t_cl)))
        nil_action = np.linalg.norm((t_cl - lam0 * np.eye(t_cl.shape[0])) @ z_cl)
        if nil_action > 1e-7 * scale * znorm:
            return OrbitClass(UNBOUNDED, None)
        if abs(im0) <= re_tol:
            limit += u_crit @ (u_cl @ z_cl)
        else:
            oscillatory = True

    result = _finish_classification(oscillatory, limit, comp_tol, n, x)
    return _cross_check(a, x, xnorm, horizon, result)


def _finish_classification(oscillatory, limit, comp_tol, n, x):
    if oscillatory:
        return OrbitClass(BOUNDED_NONCONVERGENT, None)
    if np.linalg.norm(limit) > comp_tol:
        lim = limit.real if not np.iscomplexobj(x) and np.max(np.abs(limit.imag)) < comp_tol else limit
        return OrbitClass(CONVERGENT_NONZERO, np.asarray(lim))
    return OrbitClass(DECAYING, np.zeros(n))


def _cross_check(a, x, xnorm, horizon, result):
    # Trajectory sampling guards against a structural miss: overwhelming
    # observed growth overrides a bounded classification.
    if result.kind == UNBOUNDED or horizon <= 0:
        return result
    prop = Propagator(a)
    ts = np.linspace(0.0, horizon, 16)
    norms = np.linalg.norm(np.einsum("tij,j->ti", prop.at(ts).astype(complex), x.astype(complex)), axis=1)
    if norms[-1] > 1e9 * (xnorm + 1.0) and norms[-1] > norms[len(norms) // 2]:
        return OrbitClass(UNBOUNDED, None)
    return result


def datko_l1_norm(a, x, horizon):
    """Adaptive quadrature of the orbit integral, int_0^horizon ||e^{tA}x|| dt.

    ``converged`` is True exactly when a growth bound certifies the improper
    integral finite with relative truncation error below 1e-6.
    """
    a = as_square(a)
    x = as_vector(x, dim=a.shape[0], name="x")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    prop = Propagator(a)

    def integrand(t):
        vec = prop.at(np.array([t]))[0] @ x
        return float(np.linalg.norm(vec))

    value, _ = scipy.integrate.quad(integrand, 0.0, horizon, limit=300, epsabs=1e-12, epsrel=1e-10)

    absc = spectral_abscissa(a)
    margin = min(1e-6, -absc / 2) if absc < 0 else 1e-6
    gb = growth_bound(a, omega_margin=margin, horizon=horizon)
    if gb.omega < 0:
        tail = gb.M * np.exp(gb.omega * horizon) / (-gb.omega) * float(np.linalg.norm(x))
        converged = tail <= 1e-6 * (value + tail)
    else:
        converged = False
    return DatkoResult(value=float(value), converged=bool(converged))


def sector_angle_estimate(
    a,
    rays=48,
    sector_constant=50.0,
    angle_tol=1e-3,
    return_details=False,
):
    """Numerical analyticity-sector proxy.

    Largest theta in (0, pi/2] such that the sampled resolvent bound
    ||lambda (lambda - A)^{-1}|| <= sector_constant holds on the rays
    arg(lambda) = +-(pi/2 + theta'), theta' < theta. Bisection over theta
    with ``rays`` radius samples per ray. A nonnegative abscissa is shifted
    out internally (shift reported in the details).
    """
    a = as_square(a)
    absc = spectral_abscissa(a)
    shift = 0.0
    if absc >= 0:
        shift = absc + 1.0
    a_eff = a - shift * np.eye(a.shape[0])
    scale = 1.0 + operator_norm(a_eff)
    radii = scale * np.logspace(-4, 4, int(rays))
    # Anchor extra radii at the eigenvalue magnitudes; the resolvent peaks
    # there and a pure log grid can step over the valley of sigma_min.
    mags = np.abs(np.linalg.eigvals(a_eff))
    anchors = np.outer(mags[mags > 0], [0.9, 0.99, 1.0, 1.01, 1.1]).ravel()
    radii = np.unique(np.concatenate([radii, anchors]))
    eye = np.eye(a.shape[0])

    def sup_on(theta):
        worst = 0.0
        for sign in (1.0, -1.0):
            lams = radii * np.exp(1j * sign * (np.pi / 2 + theta))
            shifted = lams[:, None, None] * eye - a_eff
            smin = np.linalg.svd(shifted, compute_uv=False)[:, -1]
            with np.errstate(divide="ignore"):
                worst = max(worst, float(np.max(np.abs(lams) / smin)))
        return worst

    lo, hi = 0.0, np.pi / 2
    if sup_on(hi) <= sector_constant:
        theta = hi
    else:
        while hi - lo > angle_tol:
            mid = 0.5 * (lo + hi)
            if sup_on(mid) <= sector_constant:
                lo = mid
            else:
                hi = mid
        theta = lo
    if return_details:
        return theta, {"shift": shift, "sector_constant": sector_constant, "rays": int(rays)}
    return theta
