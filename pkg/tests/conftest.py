"""Shared generators for seeded random test systems."""

import numpy as np

from semiblock.blocks import BlockSystem
from semiblock.linalg import spectral_abscissa


def stable_matrix(rng, n, shift=0.5, scale=1.0):
    """Random dense matrix shifted to spectral abscissa -shift."""
    g = scale * rng.standard_normal((n, n))
    return g - (spectral_abscissa(g) + shift) * np.eye(n)


def stable_lower_triangular_system(rng, max_dim=4, shift_lo=0.3, shift_hi=1.2, c_scale=1.0):
    """Random B = 0 block system with stable diagonal blocks."""
    n = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(1, max_dim + 1))
    a = stable_matrix(rng, n, shift=rng.uniform(shift_lo, shift_hi))
    d = stable_matrix(rng, m, shift=rng.uniform(shift_lo, shift_hi))
    c = c_scale * rng.standard_normal((m, n))
    return BlockSystem.lower_triangular(a, c, d)


def stable_full_system(rng, max_dim=3, shift_lo=0.2, shift_hi=1.5, coupling=1.0):
    """Random full block system with stable diagonal blocks."""
    n = int(rng.integers(1, max_dim + 1))
    m = int(rng.integers(1, max_dim + 1))
    a = stable_matrix(rng, n, shift=rng.uniform(shift_lo, shift_hi))
    d = stable_matrix(rng, m, shift=rng.uniform(shift_lo, shift_hi))
    b = coupling * rng.uniform(0.1, 1.5) * rng.standard_normal((n, m))
    c = coupling * rng.uniform(0.1, 1.5) * rng.standard_normal((m, n))
    return BlockSystem(a, b, c, d)


def observed_order(errors, hs):
    """Least-squares convergence order from errors over mesh widths."""
    errors = np.asarray(errors, dtype=float)
    hs = np.asarray(hs, dtype=float)
    return float(np.polyfit(np.log(hs), np.log(errors), 1)[0])
