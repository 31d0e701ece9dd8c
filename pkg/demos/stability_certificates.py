"""Stability certificates: the bounded-perturbation rate versus the sharper
product criterion, with the eigenvalue oracle as referee.

The bounded-perturbation bound certifies the rate eps + M max(||B||, ||C||),
so it is blind to asymmetry between the coupling blocks. The product
criterion M1 M2 ||B|| ||C|| < eps1 eps2 only sees the product, which is what
makes it sharper when ||B|| >> ||C||.
"""

import numpy as np

from semiblock import (
    BlockSystem,
    assemble,
    bpt_certificate,
    cascade_certificate,
    complete_certificate,
    growth_bound,
    spectral_abscissa,
    young_bounds,
)

print("asymmetric witness family: A = D = -1, ||B|| >> ||C||, ||B|| ||C|| < 1")
print(f"{'normB':>6} {'normC':>6} {'bpt':>6} {'complete':>9} {'abscissa':>10}")
for b, c in ((4.0, 0.1), (2.0, 0.4), (9.0, 0.1), (1.5, 0.5), (25.0, 0.02)):
    bpt = bpt_certificate(M=1.0, eps=-1.0, norm_B=b, norm_C=c)
    comp = complete_certificate(M1=1.0, eps1=-1.0, M2=1.0, eps2=-1.0, norm_B=b, norm_C=c)
    oracle = spectral_abscissa(np.array([[-1.0, b], [c, -1.0]]))
    print(f"{b:6.2f} {c:6.2f} {str(bpt.satisfied):>6} {str(comp.satisfied):>9} {oracle:10.4f}")

# Certificates consume certified constants, not matrices. growth_bound
# manufactures (M, omega) reproducibly from the spectral abscissa plus a
# margin and a refined sup over a sampling grid.
rng = np.random.default_rng(1)
a = rng.standard_normal((4, 4))
a -= (spectral_abscissa(a) + 0.8) * np.eye(4)
gb = growth_bound(a, omega_margin=1e-6, horizon=40.0)
print(f"\ncertified bound for a random stable 4x4: M = {gb.M:.4f}, omega = {gb.omega:.4f}")

# Young bounds on the convolution entry of a triangular system, both rate
# conventions.
yb_two = young_bounds(M1=gb.M, eps1=gb.omega, M2=1.0, norm_C=2.0, same_rate=False)
yb_same = young_bounds(M1=gb.M, eps1=gb.omega, M2=1.0, norm_C=2.0, same_rate=True)
print(f"two-rate sup bound  : {yb_two.sup_bound:.4f}")
print(f"same-rate sup bound : {yb_same.sup_bound:.4f}  (the 1/(|eps| e) variant)")

# For triangular systems the cascade rate is just the worse block abscissa.
tri = BlockSystem.lower_triangular(a, rng.standard_normal((2, 4)), -0.3 * np.eye(2))
cas = cascade_certificate(spectral_abscissa(tri.A), spectral_abscissa(tri.D))
print(f"\ncascade certificate: satisfied={cas.satisfied}, predicted rate {cas.predicted_rate:.3f}")
print(f"oracle abscissa of the assembled system: {spectral_abscissa(assemble(tri)):.3f}")
