"""Dense linear-algebra kernels consumed by every other module.

All operators are ordinary dense matrices (real or complex). Operations are
pure functions of their inputs. Results of eigenvalue-based computations on
real input are demoted back to real arrays when the imaginary residue is at
rounding level.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import EigenSolverError, SingularMatrixError

__all__ = [
    "RCOND_SINGULAR",
    "Spectrum",
    "Propagator",
    "as_matrix",
    "as_square",
    "as_vector",
    "real_if_close",
    "expm",
    "eigendecompose",
    "spectral_abscissa",
    "operator_norm",
    "solve",
    "spectral_pairing_distance",
]

# Reciprocal condition estimate below which a solve is refused. Near-singular
# solves would silently poison the asymptotic limit identities downstream.
RCOND_SINGULAR = 1e-14

# Relative imaginary residue below which complex results are demoted to real.
IMAG_DROP_TOL = 1e-12


def as_matrix(a, name="matrix"):
    """Validate ``a`` as a nonempty 2-d array of finite float/complex entries.

    Scalars are promoted to 1x1. One-dimensional input is rejected as
    ambiguous (callers decide between row and column explicitly).
    """
    m = np.asarray(a)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2:
        raise ValueError(f"{name} must be a scalar or 2-d array, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"{name} must be nonempty, got shape {m.shape}")
    if not np.issubdtype(m.dtype, np.inexact):
        m = m.astype(float)
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_square(a, name="matrix"):
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def as_vector(x, dim=None, name="vector"):
    """Validate ``x`` as a finite 1-d array; row/column shapes are flattened."""
    v = np.asarray(x)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim == 2 and 1 in v.shape:
        v = v.ravel()
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {v.shape}")
    if not np.issubdtype(v.dtype, np.inexact):
        v = v.astype(float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries")
    if dim is not None and v.shape[0] != dim:
        raise ValueError(f"{name} must have length {dim}, got {v.shape[0]}")
    return v


def real_if_close(a, tol=IMAG_DROP_TOL):
    """Drop an imaginary part that is below ``tol`` relative to the magnitude."""
    a = np.asarray(a)
    if not np.iscomplexobj(a):
        return a
    scale = max(float(np.max(np.abs(a))), 1.0) if a.size else 1.0
    if float(np.max(np.abs(a.imag))) <= tol * scale:
        return np.ascontiguousarray(a.real)
    return a


def expm(a, t=1.0):
    """Matrix exponential e^{tA}.

    Scaling-and-squaring with Pade approximation (LAPACK-backed); relative
    accuracy around 1e-12 for well-conditioned input.
    """
    a = as_square(a)
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    if t < 0:
        raise ValueError("time must be nonnegative")
    if t == 0.0:
        return np.eye(a.shape[0], dtype=complex if np.iscomplexobj(a) else float)
    return scipy.linalg.expm(t * a)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, optional eigenvector columns, and the
    condition estimate of the eigenvector basis (inf when defective)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    condition_estimate: float


def _basis_condition(v):
    s = np.linalg.svd(v, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def eigendecompose(a, want_vectors=True):
    """Full eigendecomposition with a fixed, deterministic ordering.

    Eigenvalues are sorted by descending real part, ties by descending
    imaginary part, so reports are reproducible run to run.
    """
    a = as_square(a)
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue iteration did not converge: {exc}") from exc
    order = np.lexsort((-w.imag, -w.real))
    w = w[order]
    v = v[:, order]
    return Spectrum(w, v if want_vectors else None, _basis_condition(v))


def spectral_abscissa(a):
    """max Re(lambda) over the spectrum."""
    a = as_square(a)
    try:
        w = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue iteration did not converge: {exc}") from exc
    return float(np.max(w.real))


def operator_norm(a):
    """Spectral norm (largest singular value)."""
    return float(np.linalg.norm(as_matrix(a), 2))


def solve(a, rhs):
    """Solve ``a @ x = rhs``, refusing systems singular to working precision.

    A reciprocal condition estimate below ``RCOND_SINGULAR`` raises
    :class:`SingularMatrixError`. One iterative-refinement pass follows the
    LU solve, keeping the residual near rounding level even for moderately
    ill-conditioned systems.
    """
    a = as_square(a)
    vec_input = np.asarray(rhs).ndim <= 1
    b = as_vector(rhs, name="rhs").reshape(-1, 1) if vec_input else as_matrix(rhs, "rhs")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"rhs has {b.shape[0]} rows, expected {a.shape[0]}")
    s = np.linalg.svd(a, compute_uv=False)
    rcond = 0.0 if s[0] == 0.0 else float(s[-1] / s[0])
    if rcond < RCOND_SINGULAR:
        raise SingularMatrixError(f"matrix is singular to tolerance (rcond={rcond:.3e})")
    dt = np.result_type(a.dtype, b.dtype)
    a = a.astype(dt, copy=False)
    b = b.astype(dt, copy=False)
    lu_piv = scipy.linalg.lu_factor(a)
    x = scipy.linalg.lu_solve(lu_piv, b)
    x = x + scipy.linalg.lu_solve(lu_piv, b - a @ x)
    return x.ravel() if vec_input else x


class Propagator:
    """Evaluates e^{tG} at many times.

    Uses the eigenbasis when it is comfortably conditioned (one
    decomposition, then vectorized evaluation over the whole time batch) and
    falls back to a per-time Pade exponential otherwise. ``cond_limit``
    bounds the eigenbasis condition number accepted for the fast path;
    tighten it when certified bounds are derived from the values.
    """

    def __init__(self, g, cond_limit=1e7):
        self.g = as_square(g)
        self.real_input = not np.iscomplexobj(self.g)
        self._diag = None
        try:
            w, v = np.linalg.eig(self.g)
        except np.linalg.LinAlgError:
            return
        if _basis_condition(v) <= cond_limit:
            self._diag = (w, v, np.linalg.inv(v))

    @property
    def dim(self):
        return self.g.shape[0]

    def at(self, ts):
        """Stack of e^{tG} over the 1-d time batch ``ts`` (shape (T, n, n))."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if self._diag is not None:
            w, v, vinv = self._diag
            phases = np.exp(np.multiply.outer(ts, w))
            out = np.einsum("ij,tj,jk->tik", v, phases, vinv)
            # e^{tG} is exactly real for real G; the imaginary part is noise.
            return out.real if self.real_input else out
        return np.stack([expm(self.g, t) for t in ts])

    def norm_at(self, ts):
        """Spectral norms of e^{tG} over the time batch, vectorized."""
        vals = self.at(ts)
        return np.linalg.svd(vals, compute_uv=False)[..., 0]


def spectral_pairing_distance(w1, w2):
    """Largest matched eigenvalue distance under the optimal pairing."""
    from scipy.optimize import linear_sum_assignment

    w1 = np.asarray(w1, dtype=complex).ravel()
    w2 = np.asarray(w2, dtype=complex).ravel()
    if w1.shape != w2.shape:
        raise ValueError("spectra must have equal length to be paired")
    cost = np.abs(w1[:, None] - w2[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
