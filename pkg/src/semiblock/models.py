"""Desk-scale finite-difference models on the unit interval.

Two boundary-value problems drive the coupled-domain machinery: the heat
operator with dynamic Wentzell-type boundary rows, and the heat equation
whose boundary unknown is the Neumann trace. Both are built as
CoupledSystem instances so every coupled-domain operation applies directly.
A convergence study runs the builders over a mesh hierarchy and estimates
observed orders by Richardson ratios.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coupled import CoupledSystem, MaximalPair, default_audit_lambda, dtn_operator, factorize
from .linalg import eigendecompose, spectral_abscissa

__all__ = [
    "Mesh1D",
    "build_wentzell_1d",
    "build_dynamic_boundary_1d",
    "wentzell_dtn_limit",
    "wentzell_dtn_lambda_limit",
    "convergence_study",
    "ConvergenceStudy",
]


@dataclass(frozen=True)
class Mesh1D:
    """Interior nodes of the unit interval; the boundary is {0, 1}."""

    n_interior: int

    def __post_init__(self):
        if self.n_interior < 1:
            raise ValueError("need at least one interior node")

    @property
    def h(self):
        return 1.0 / (self.n_interior + 1)

    @property
    def nodes(self):
        return self.h * np.arange(1, self.n_interior + 1)

    @property
    def boundary(self):
        return (0.0, 1.0)


def _second_difference_rows(n, h):
    """Interior rows of the 1-d Laplacian referencing boundary coordinates.

    Returns an n x (n+2) matrix: columns 0..n-1 hold the interior stencil,
    columns n, n+1 couple to the left/right boundary coordinate.
    """
    a = np.zeros((n, n + 2))
    inv_h2 = 1.0 / h**2
    for i in range(n):
        a[i, i] = -2.0 * inv_h2
        if i > 0:
            a[i, i - 1] = inv_h2
        if i < n - 1:
            a[i, i + 1] = inv_h2
    a[0, n] = inv_h2
    a[n - 1, n + 1] = inv_h2
    return a


def _normal_derivative_rows(n, h):
    """Outward normal derivative at the two endpoints, second-order
    one-sided 3-point stencils on (interior, boundary) coordinates."""
    c = np.zeros((2, n + 2))
    # Left endpoint: d/dnu = -d/dx; uses u(0), u_1, u_2.
    c[0, n] = 3.0 / (2.0 * h)
    c[0, 0] = -4.0 / (2.0 * h)
    c[0, 1] = 1.0 / (2.0 * h)
    # Right endpoint: d/dnu = +d/dx; uses u(1), u_n, u_{n-1}.
    c[1, n + 1] = 3.0 / (2.0 * h)
    c[1, n - 1] = -4.0 / (2.0 * h)
    c[1, n - 2] = 1.0 / (2.0 * h)
    return c


def _boundary_pair(value, name):
    v = np.atleast_1d(np.asarray(value, dtype=float))
    if v.size == 1:
        v = np.full(2, float(v[0]))
    if v.shape != (2,):
        raise ValueError(f"{name} must be a scalar or a pair")
    return v


def build_wentzell_1d(n, k, gamma):
    """Heat operator on (0, 1) with dynamic Wentzell-type boundary rows.

    Boundary values are unknowns evolving by
    x' = -k (normal derivative of u) - gamma x, coupled to the interior
    second-difference rows through the stored boundary coordinates. gamma
    may be a scalar or a per-endpoint pair; k of either sign is accepted.
    """
    if n < 3:
        raise ValueError("need n >= 3 interior nodes")
    mesh = Mesh1D(n)
    gamma = _boundary_pair(gamma, "gamma")
    pair = MaximalPair(a_max=_second_difference_rows(n, mesh.h), n=n)
    c = -float(k) * _normal_derivative_rows(n, mesh.h)
    # C reads the full state; D acts on the boundary coordinates only.
    return CoupledSystem(
        pair=pair,
        B=np.zeros((n, 2)),
        C=c,
        D=-np.diag(gamma),
        grid=mesh,
    )


def build_dynamic_boundary_1d(n, p, q):
    """Heat equation whose boundary unknown is the Neumann trace.

    Interior: u' = u'' - p u. Boundary: w' = -q w with the coupling
    w = (outward normal derivative of u). Ghost elimination through the
    second-order one-sided stencil makes the Neumann data the stored
    boundary coordinate, so the trace map is again the coordinate selector.
    p is a scalar or per-interior-node array; q a scalar or pair; both must
    be nonnegative.
    """
    if n < 3:
        raise ValueError("need n >= 3 interior nodes")
    mesh = Mesh1D(n)
    h = mesh.h
    p_vals = np.atleast_1d(np.asarray(p, dtype=float))
    if p_vals.size == 1:
        p_vals = np.full(n, float(p_vals[0]))
    if p_vals.shape != (n,):
        raise ValueError("p must be a scalar or an array over the interior nodes")
    if np.any(p_vals < 0):
        raise ValueError("p must be nonnegative")
    q_vals = _boundary_pair(q, "q")
    if np.any(q_vals < 0):
        raise ValueError("q must be nonnegative")

    a = np.zeros((n, n + 2))
    inv_h2 = 1.0 / h**2
    for i in range(1, n - 1):
        a[i, i - 1] = inv_h2
        a[i, i] = -2.0 * inv_h2
        a[i, i + 1] = inv_h2
    # Boundary-adjacent rows after eliminating the ghost value through the
    # one-sided stencil: u(0) = (4 u_1 - u_2 + 2 h w_left) / 3.
    a[0, 0] = -2.0 / (3.0 * h**2)
    a[0, 1] = 2.0 / (3.0 * h**2)
    a[0, n] = 2.0 / (3.0 * h)
    a[n - 1, n - 2] = 2.0 / (3.0 * h**2)
    a[n - 1, n - 1] = -2.0 / (3.0 * h**2)
    a[n - 1, n + 1] = 2.0 / (3.0 * h)
    a[np.arange(n), np.arange(n)] -= p_vals

    pair = MaximalPair(a_max=a, n=n)
    return CoupledSystem(
        pair=pair,
        B=np.zeros((n, 2)),
        C=np.zeros((2, n + 2)),
        D=-np.diag(q_vals),
        grid=mesh,
    )


def wentzell_dtn_limit(k, gamma):
    """Continuum Dirichlet-to-Neumann block at lambda = 0.

    The harmonic extension of boundary data (a, b) is linear, so the flux
    block is -k [[1, -1], [-1, 1]] - diag(gamma) with eigenvalues
    {-gamma, -2k - gamma} for constant gamma.
    """
    gamma = _boundary_pair(gamma, "gamma")
    return -float(k) * np.array([[1.0, -1.0], [-1.0, 1.0]]) - np.diag(gamma)


def wentzell_dtn_lambda_limit(k, gamma, lam):
    """Continuum DtN block of the Wentzell model at a real lambda > 0.

    The extension solves u'' = lam u, so the flux responses involve
    mu = sqrt(lam): DtN = -k (mu / sinh mu) [[cosh mu, -1], [-1, cosh mu]]
    - diag(gamma).
    """
    if lam <= 0:
        raise ValueError("this closed form is for lambda > 0")
    gamma = _boundary_pair(gamma, "gamma")
    mu = np.sqrt(float(lam))
    coeff = float(k) * mu / np.sinh(mu)
    return -coeff * np.array([[np.cosh(mu), -1.0], [-1.0, np.cosh(mu)]]) - np.diag(gamma)


_BUILDERS = {
    "wentzell": build_wentzell_1d,
    "dynamic_boundary": build_dynamic_boundary_1d,
}


@dataclass(frozen=True)
class ConvergenceStudy:
    model: str
    params: dict
    levels: tuple
    rows: tuple  # one dict per level
    orders: dict  # column -> list of Richardson order estimates


def _richardson_orders(errors):
    """log2 ratios of successive errors; inf when both sit at rounding."""
    orders = []
    for e0, e1 in zip(errors[:-1], errors[1:]):
        if e0 < 1e-12 and e1 < 1e-12:
            orders.append(float("inf"))
        elif e1 == 0.0:
            orders.append(float("inf"))
        else:
            orders.append(float(np.log2(e0 / e1)))
    return orders


def convergence_study(model, levels, lam_probe=4.0, lam_factor=None, **params):
    """Mesh-refinement table for one of the builders.

    Per level: spectral abscissa of the assembled matrix, DtN eigenvalues at
    lambda = 0, their error against the continuum limit, the DtN error at
    the probe lambda (where the closed form is nondegenerate), and the
    factorization residual. ``lam_factor=None`` picks the first lambda from
    the default audit grid that avoids the interior spectrum. Orders are
    Richardson estimates over consecutive levels; a single level yields
    none.
    """
    if model not in _BUILDERS:
        raise ValueError(f"unknown model {model!r}; known: {sorted(_BUILDERS)}")
    levels = tuple(int(n) for n in levels)
    if any(n < 3 for n in levels):
        raise ValueError("every level needs n >= 3")
    if list(levels) != sorted(levels):
        raise ValueError("levels must be increasing")

    rows = []
    for n in levels:
        csys = _BUILDERS[model](n, **params)
        dtn0 = dtn_operator(csys.pair, csys.C, csys.D, 0.0)
        dtn0_eigs = np.sort(eigendecompose(dtn0, want_vectors=False).eigenvalues.real)
        lam = default_audit_lambda(csys.pair) if lam_factor is None else lam_factor
        row = {
            "n": n,
            "h": csys.grid.h,
            "abscissa": spectral_abscissa(csys.assemble()),
            "dtn0_eigenvalues": dtn0_eigs.tolist(),
            "factorization_lambda": lam,
            "factorization_residual": factorize(csys, lam).residual,
        }
        if model == "wentzell":
            limit0 = np.sort(np.linalg.eigvalsh(wentzell_dtn_limit(params["k"], params["gamma"])))
            row["dtn0_error"] = float(np.max(np.abs(dtn0_eigs - limit0)))
            dtn_probe = dtn_operator(csys.pair, csys.C, csys.D, lam_probe)
            probe_eigs = np.sort(eigendecompose(dtn_probe, want_vectors=False).eigenvalues.real)
            limit_probe = np.sort(
                np.linalg.eigvalsh(wentzell_dtn_lambda_limit(params["k"], params["gamma"], lam_probe))
            )
            row["dtn_probe_error"] = float(np.max(np.abs(probe_eigs - limit_probe)))
        rows.append(row)

    orders = {}
    if len(levels) >= 3:
        # Abscissa errors measured against the finest level.
        errs = [abs(r["abscissa"] - rows[-1]["abscissa"]) for r in rows[:-1]]
        orders["abscissa"] = _richardson_orders(errs)
    if len(levels) >= 2:
        for col in ("dtn0_error", "dtn_probe_error"):
            if col in rows[0]:
                orders[col] = _richardson_orders([r[col] for r in rows])
    return ConvergenceStudy(
        model=model,
        params=dict(params),
        levels=levels,
        rows=tuple(rows),
        orders=orders,
    )
