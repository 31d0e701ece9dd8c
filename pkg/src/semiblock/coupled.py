"""Coupled-domain block operators at finite dimension.

The coupled domain constraint (the trace of the first component equals the
second component) is absorbed into coordinates: boundary values are stored
once, so the full state is (interior, boundary) and the trace map is the
boundary-coordinate selector. The maximal operator acts on the full state;
Dirichlet operators, the triangular factorization/similarity reduction,
Dirichlet-to-Neumann blocks, and the assumption audit all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import BlockSystem
from .errors import SingularMatrixError, UnsupportedCaseError
from .linalg import as_matrix, operator_norm, solve, spectral_abscissa

__all__ = [
    "MaximalPair",
    "CoupledSystem",
    "FactorizationResult",
    "AssumptionAudit",
    "GenerationReport",
    "dirichlet_operator",
    "factorize",
    "dtn_operator",
    "reduced_triangular",
    "stabbar_feedthrough_norm",
    "assumption_audit",
    "generation_report",
]


@dataclass(frozen=True)
class MaximalPair:
    """Maximal operator and trace map.

    ``a_max`` is n x (n+m), acting on (interior, boundary) coordinates; the
    trace map L selects the boundary coordinates (one unit entry per row, by
    construction of the coordinate convention).
    """

    a_max: np.ndarray
    n: int

    def __post_init__(self):
        object.__setattr__(self, "a_max", as_matrix(self.a_max, "a_max"))
        if self.a_max.shape[0] != self.n:
            raise ValueError("a_max must have n rows")
        if self.a_max.shape[1] <= self.n:
            raise ValueError("a_max must have n + m columns with m >= 1")

    @property
    def m(self):
        return self.a_max.shape[1] - self.n

    @property
    def a_int(self):
        """Interior restriction, the operator with homogeneous trace."""
        return self.a_max[:, : self.n]

    @property
    def a_bnd(self):
        return self.a_max[:, self.n :]

    @property
    def L(self):
        return np.hstack([np.zeros((self.m, self.n)), np.eye(self.m)])


@dataclass(frozen=True)
class CoupledSystem:
    """Coupled-domain system: maximal pair plus the blocks B, C, D.

    C reads the full state (the boundary feedback is defined on the maximal
    domain), so it is m x (n+m); B is n x m and D is m x m. The assembled
    matrix has interior rows A_max + B L and boundary rows C + D L.
    """

    pair: MaximalPair
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    grid: object = None

    def __post_init__(self):
        n, m = self.pair.n, self.pair.m
        object.__setattr__(self, "B", as_matrix(self.B, "B"))
        object.__setattr__(self, "C", as_matrix(self.C, "C"))
        object.__setattr__(self, "D", as_matrix(self.D, "D"))
        if self.B.shape != (n, m):
            raise ValueError(f"B must be {n}x{m}")
        if self.C.shape != (m, n + m):
            raise ValueError(f"C must be {m}x{n + m} (full-state feedback)")
        if self.D.shape != (m, m):
            raise ValueError(f"D must be {m}x{m}")

    @property
    def n(self):
        return self.pair.n

    @property
    def m(self):
        return self.pair.m

    @property
    def c_int(self):
        return self.C[:, : self.n]

    @property
    def c_bnd(self):
        return self.C[:, self.n :]

    def assemble(self):
        top = np.hstack([self.pair.a_int, self.pair.a_bnd + self.B])
        bottom = np.hstack([self.c_int, self.c_bnd + self.D])
        return np.vstack([top, bottom])


def default_audit_lambda(pair, candidates=(-1.0, -2.0)):
    """First admissible lambda from the default grid.

    Candidates are accepted when they avoid the interior spectrum by a
    relative margin of 1e-3; if all collide, a real shift past the spectral
    abscissa is used instead.
    """
    eigs = np.linalg.eigvals(pair.a_int)
    for lam in candidates:
        if np.min(np.abs(eigs - lam)) > 1e-3 * (1 + abs(lam)):
            return float(lam)
    lam = float(np.max(eigs.real)) + 1.0
    while np.min(np.abs(eigs - lam)) <= 1e-3 * (1 + abs(lam)):
        lam += 1.0
    return float(lam)


def dirichlet_operator(pair, lam):
    """Solution operator of the eigenvalue Dirichlet problem.

    Maps boundary data x to the interior vector u with
    (A_max - lam [I | 0]) [u; x] = 0, i.e. u = -(A_int - lam)^{-1} A_bnd x.
    Requires lam outside the spectrum of the interior restriction.
    """
    lam = complex(lam) if np.iscomplexobj(np.asarray(lam)) else float(lam)
    shifted = pair.a_int - lam * np.eye(pair.n)
    try:
        return solve(shifted, -pair.a_bnd)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            f"lambda={lam} is in (or too close to) the spectrum of the interior "
            f"operator; pick lambda in its resolvent set"
        ) from exc


@dataclass(frozen=True)
class FactorizationResult:
    """Similarity reduction of the coupled matrix minus lambda to diagonal
    domain. ``residual`` compares the block formula against the matrix
    product M (A - lam) M^{-1} computed directly."""

    lam: float
    a_tilde: BlockSystem
    m_bar: np.ndarray
    residual: float


def factorize(csys, lam):
    """Reduce the coupled matrix to a similar system with diagonal domain.

    With the Dirichlet operator D_lam, the transform [[I, -D_lam], [0, I]]
    turns the coupled matrix minus lambda into the block system

        [[A_int - D_lam C_int - lam,  B - D_lam (DtN - lam)],
         [C_int,                      DtN - lam]]

    where DtN = D + C [D_lam; I]. The returned residual checks this formula
    against the numerically computed similarity product.
    """
    n, m = csys.n, csys.m
    d_lam = dirichlet_operator(csys.pair, lam)
    dtn = dtn_operator(csys.pair, csys.C, csys.D, lam, d_lam=d_lam)
    eye_n = np.eye(n)
    eye_m = np.eye(m)

    a_tilde = BlockSystem(
        A=csys.pair.a_int - d_lam @ csys.c_int - lam * eye_n,
        B=csys.B - d_lam @ (dtn - lam * eye_m),
        C=csys.c_int,
        D=dtn - lam * eye_m,
    )
    m_bar = np.block([[eye_n, -d_lam], [np.zeros((m, n)), eye_m]])
    m_bar_inv = np.block([[eye_n, d_lam], [np.zeros((m, n)), eye_m]])
    shifted = csys.assemble() - lam * np.eye(n + m)
    product = m_bar @ shifted @ m_bar_inv
    residual = operator_norm(product - a_tilde.assemble())
    return FactorizationResult(lam=float(lam), a_tilde=a_tilde, m_bar=m_bar, residual=residual)


def dtn_operator(pair, c, d, lam, d_lam=None):
    """Boundary-to-boundary block D + C [D_lam; I].

    For Laplacian-type pairs this is the (shifted) Dirichlet-to-Neumann map
    up to the sign and scaling carried by C.
    """
    c = as_matrix(c, "C")
    d = as_matrix(d, "D")
    if d_lam is None:
        d_lam = dirichlet_operator(pair, lam)
    lift = np.vstack([d_lam, np.eye(pair.m)])
    return d + c @ lift


def reduced_triangular(csys, lambda0_check=True):
    """Triangular diagonal-domain reduction at lambda = 0 for C = 0.

    Returns the block system [[A_int, B - D_0 D], [0, D]], which feeds the
    triangular-system operations directly. Requires an invertible interior
    operator.
    """
    if csys.C.any():
        raise UnsupportedCaseError("reduction to triangular form requires C = 0")
    if lambda0_check:
        s = np.linalg.svd(csys.pair.a_int, compute_uv=False)
        if s[0] == 0.0 or s[-1] / s[0] < 1e-14:
            raise SingularMatrixError(
                "interior operator is singular; the reduction needs it invertible"
            )
    d0 = dirichlet_operator(csys.pair, 0.0)
    return BlockSystem(
        A=csys.pair.a_int,
        B=csys.B - d0 @ csys.D,
        C=np.zeros((csys.m, csys.n)),
        D=csys.D,
    )


def stabbar_feedthrough_norm(csys, lam=0.0):
    """||B - D_lam (D + C [D_lam; I])||, the feedthrough norm entering the
    stabilizability condition (evaluated at lambda = 0 by default)."""
    d_lam = dirichlet_operator(csys.pair, lam)
    dtn = dtn_operator(csys.pair, csys.C, csys.D, lam, d_lam=d_lam)
    return operator_norm(csys.B - d_lam @ dtn)


@dataclass(frozen=True)
class AssumptionAudit:
    """Finite constants standing in for the coupled-domain assumptions.

    graph_norm_C maximizes ||C z|| / (||z|| + ||A_max z||) over a fixed
    sample; all other entries are exact norms. Everything is finite at
    finite dimension; the audit records the magnitudes the certificates
    consume.
    """

    lam: float
    graph_norm_C: float
    dirichlet_norm: float
    feedthrough_norm: float
    stab_feedthrough_norm: float
    a0_condition: float
    a0_invertible: bool
    sample_size: int


def assumption_audit(csys, lam, sample_size=256):
    """Constants table for the boundedness/extension assumptions."""
    n, m = csys.n, csys.m
    d_lam = dirichlet_operator(csys.pair, lam)

    # Graph-norm-weighted ||C||, sampled deterministically.
    rng = np.random.default_rng(0)
    z = rng.standard_normal((sample_size, n + m))
    num = np.linalg.norm(z @ csys.C.T, axis=1)
    den = np.linalg.norm(z, axis=1) + np.linalg.norm(z @ csys.pair.a_max.T, axis=1)
    graph_norm_c = float(np.max(num / den)) if csys.C.any() else 0.0

    s = np.linalg.svd(csys.pair.a_int, compute_uv=False)
    a0_cond = float("inf") if s[-1] == 0.0 else float(s[0] / s[-1])
    return AssumptionAudit(
        lam=float(lam),
        graph_norm_C=graph_norm_c,
        dirichlet_norm=operator_norm(d_lam),
        feedthrough_norm=operator_norm(csys.B - d_lam @ csys.D),
        stab_feedthrough_norm=stabbar_feedthrough_norm(csys, lam),
        a0_condition=a0_cond,
        a0_invertible=bool(a0_cond < 1e14),
        sample_size=sample_size,
    )


@dataclass(frozen=True)
class GenerationReport:
    """Quantitative stand-ins for the generation criteria: spectral
    abscissas of the interior-with-feedback operator, the DtN block, and
    the assembled coupled matrix (generation itself is automatic at finite
    dimension). Sector angles are attached on request."""

    abscissa_interior_feedback: float
    abscissa_dtn: float
    abscissa_full: float
    sector_interior: float | None = None
    sector_dtn: float | None = None


def generation_report(csys, lam, with_sector_angles=False):
    d_lam = dirichlet_operator(csys.pair, lam)
    interior = csys.pair.a_int - d_lam @ csys.c_int
    dtn = dtn_operator(csys.pair, csys.C, csys.D, lam, d_lam=d_lam)
    full = csys.assemble()
    sector_interior = sector_dtn = None
    if with_sector_angles:
        from .semigroup import sector_angle_estimate

        sector_interior = sector_angle_estimate(interior)
        sector_dtn = sector_angle_estimate(dtn)
    return GenerationReport(
        abscissa_interior_feedback=spectral_abscissa(interior),
        abscissa_dtn=spectral_abscissa(dtn),
        abscissa_full=spectral_abscissa(full),
        sector_interior=sector_interior,
        sector_dtn=sector_dtn,
    )
