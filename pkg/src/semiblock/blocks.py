"""Block systems with diagonal domain.

Assembly of the 2x2 operator block matrix, the convolution off-diagonal
entries of the triangular semigroup formula, their closed-form special
cases, and the Young-inequality bounds on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import QuadratureError, UnsupportedCaseError
from .linalg import Propagator, as_matrix, expm, operator_norm, solve

__all__ = [
    "BlockSystem",
    "ConvolutionResult",
    "YoungBounds",
    "assemble",
    "convolve",
    "closed_form_R",
    "verify_semigroup_blocks",
    "young_bounds",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class BlockSystem:
    """The four blocks of [[A, B], [C, D]] with consistent dimensions."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A, "A"))
        object.__setattr__(self, "D", as_matrix(self.D, "D"))
        n = self.A.shape[0]
        m = self.D.shape[0]
        if self.A.shape != (n, n):
            raise ValueError("A must be square")
        if self.D.shape != (m, m):
            raise ValueError("D must be square")
        object.__setattr__(self, "B", as_matrix(self.B, "B"))
        object.__setattr__(self, "C", as_matrix(self.C, "C"))
        if self.B.shape != (n, m):
            raise ValueError(f"B must be {n}x{m}, got {self.B.shape}")
        if self.C.shape != (m, n):
            raise ValueError(f"C must be {m}x{n}, got {self.C.shape}")

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def m(self):
        return self.D.shape[0]

    @classmethod
    def lower_triangular(cls, a, c, d):
        a = as_matrix(a, "A")
        d = as_matrix(d, "D")
        return cls(a, np.zeros((a.shape[0], d.shape[0])), c, d)

    @classmethod
    def upper_triangular(cls, a, b, d):
        a = as_matrix(a, "A")
        d = as_matrix(d, "D")
        return cls(a, b, np.zeros((d.shape[0], a.shape[0])), d)

    def assemble(self):
        return np.block([[self.A, self.B], [self.C, self.D]])


def assemble(sys):
    """The (n+m)-square matrix [[A, B], [C, D]]."""
    return sys.assemble()


@dataclass(frozen=True)
class ConvolutionResult:
    """Converged panel quadrature; est_error is the norm difference of the
    last two refinements (a practical estimate, not a rigorous bound)."""

    value: np.ndarray
    panels: int
    est_error: float


def _panel_nodes(t, panels):
    edges = np.linspace(0.0, t, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mids = 0.5 * (edges[1:] + edges[:-1])
    s = (mids[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return s, w


def convolve(g_out, g_in, k, t, tol=1e-10, max_doublings=20):
    """Convolution integral int_0^t e^{(t-s) G_out} K e^{s G_in} ds.

    Composite 8-point Gauss-Legendre panels, doubled until two successive
    refinements differ by less than ``tol`` in spectral norm. The integrand
    is entire, so convergence per panel is spectral. Raises
    :class:`QuadratureError` (carrying the best value) if ``max_doublings``
    refinements do not settle.
    """
    g_out = as_matrix(g_out, "G_out")
    g_in = as_matrix(g_in, "G_in")
    k = as_matrix(k, "K")
    if g_out.shape[0] != g_out.shape[1] or g_in.shape[0] != g_in.shape[1]:
        raise ValueError("generators must be square")
    if k.shape != (g_out.shape[0], g_in.shape[0]):
        raise ValueError(
            f"K must map dim(G_in)={g_in.shape[0]} to dim(G_out)={g_out.shape[0]}, got {k.shape}"
        )
    t = float(t)
    if t < 0 or not np.isfinite(t):
        raise ValueError("t must be nonnegative and finite")
    if t == 0.0:
        return ConvolutionResult(np.zeros(k.shape), 0, 0.0)

    prop_out = Propagator(g_out)
    prop_in = Propagator(g_in)
    real_inputs = not any(np.iscomplexobj(m) for m in (g_out, g_in, k))

    # Start near the panel count the integrand scale suggests to save levels.
    scale = max(operator_norm(g_out), operator_norm(g_in), 1e-12)
    panels = int(2 ** np.ceil(np.log2(max(1.0, t * scale / 8.0))))

    def evaluate(p):
        s, w = _panel_nodes(t, p)
        e_out = prop_out.at(t - s)
        e_in = prop_in.at(s)
        ke = np.einsum("ab,nbc->nac", k, e_in)
        val = np.einsum("n,nab,nbc->ac", w, e_out, ke)
        return val.real if real_inputs and np.iscomplexobj(val) else val

    prev = evaluate(panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = evaluate(panels)
        diff = operator_norm(cur - prev)
        if diff < tol:
            return ConvolutionResult(cur, panels, float(diff))
        prev = cur
    raise QuadratureError(
        f"convolution did not reach tol={tol:g} after {max_doublings} doublings",
        value=prev,
        panels=panels,
        est_error=float(diff),
    )


def closed_form_R(sys, t):
    """Closed form of the convolution entry in the degenerate-block cases.

    A = 0 with invertible D gives D^{-1}(e^{tD} - I) C. D = 0 with
    invertible A gives the dual C A^{-1}(e^{tA} - I).
    """
    t = float(t)
    if t < 0 or not np.isfinite(t):
        raise ValueError("t must be nonnegative and finite")
    eye_n = np.eye(sys.n)
    eye_m = np.eye(sys.m)
    if not sys.A.any():
        return solve(sys.D, expm(sys.D, t) - eye_m) @ sys.C
    if not sys.D.any():
        return sys.C @ solve(sys.A, expm(sys.A, t) - eye_n)
    raise UnsupportedCaseError("closed form needs A = 0 (D invertible) or D = 0 (A invertible)")


def verify_semigroup_blocks(sys, t, tol=1e-10):
    """Residual of the triangular semigroup block formula at time t.

    For B = 0 the candidate is [[e^{tA}, 0], [R(t), e^{tD}]]; for C = 0 the
    upper variant with S(t). The returned residual should satisfy
    residual <= max(tol, 10 * quadrature est_error) whenever the integrals
    converged.
    """
    t = float(t)
    if not sys.B.any():
        conv = convolve(sys.D, sys.A, sys.C, t, tol=tol)
        candidate = np.block(
            [
                [expm(sys.A, t), np.zeros((sys.n, sys.m))],
                [conv.value, expm(sys.D, t)],
            ]
        )
    elif not sys.C.any():
        conv = convolve(sys.A, sys.D, sys.B, t, tol=tol)
        candidate = np.block(
            [
                [expm(sys.A, t), conv.value],
                [np.zeros((sys.m, sys.n)), expm(sys.D, t)],
            ]
        )
    else:
        raise UnsupportedCaseError("block formula requires a triangular system (B = 0 or C = 0)")
    return operator_norm(expm(assemble(sys), t) - candidate)


class YoungBounds(NamedTuple):
    sup_bound: float
    l1_bound: float


def young_bounds(M1, eps1, M2, norm_C, same_rate=False, eps2=None):
    """Young-inequality bounds on the convolution entry R.

    Two-rate case (one semigroup decays at eps1 < 0, the other is merely
    bounded by M2): sup_t ||R(t)x|| <= -M1 M2 ||C|| / eps1 * ||x||. If both
    decay at the same rate eps1, the sharper factor 1/(|eps1| e) applies and
    the L1 norm is bounded by M1 M2 ||C|| / eps1^2. With a genuine second
    rate ``eps2`` the L1 bound uses eps1 * eps2; without one the convolution
    need not be integrable at all and inf is reported.
    """
    if eps1 >= 0:
        raise ValueError("eps1 must be negative")
    if M1 < 1 or M2 < 1:
        raise ValueError("M1 and M2 must be at least 1")
    if norm_C < 0:
        raise ValueError("norm_C must be nonnegative")
    if norm_C == 0:
        return YoungBounds(0.0, 0.0)
    if same_rate:
        sup = -M1 * M2 * norm_C / (eps1 * np.e)
        l1 = M1 * M2 * norm_C / eps1**2
    else:
        sup = -M1 * M2 * norm_C / eps1
        if eps2 is not None:
            if eps2 >= 0:
                raise ValueError("eps2 must be negative")
            l1 = M1 * M2 * norm_C / (eps1 * eps2)
        else:
            l1 = float("inf")
    return YoungBounds(float(sup), float(l1))
