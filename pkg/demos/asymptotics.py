"""Orbit asymptotics: classification, limit identities, non-resonance.

The convolution entry of a triangular system inherits the asymptotics of the
diagonal semigroups: convergent orbits push R(t)x to (-D)^{-1} C lim e^{tA}x,
while a shared imaginary eigenvalue (resonance) produces secular linear
growth.
"""

import numpy as np

from semiblock import (
    BlockSystem,
    asymptotic_limit_R,
    classify_orbit,
    convolve,
    datko_l1_norm,
    nonresonance_check,
)

# Orbit classes of e^{tA} x read off the eigenstructure of x's components.
cases = [
    ("rotation", np.array([[0.0, 1.0], [-1.0, 0.0]]), np.array([1.0, 0.0])),
    ("kernel projection", np.diag([0.0, -1.0]), np.array([1.0, 1.0])),
    ("Jordan block at 0", np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([0.0, 1.0])),
    ("strictly stable", np.diag([-1.0, -2.0]), np.array([1.0, 1.0])),
]
for name, a, x in cases:
    oc = classify_orbit(a, x)
    lim = None if oc.limit is None else np.round(oc.limit, 12)
    print(f"{name:20s} -> {oc.kind:22s} limit = {lim}")

# Datko integral: the orbit is L1 exactly when it decays exponentially.
print("\nDatko L1 orbit integrals:")
print("  stable scalar :", datko_l1_norm(np.array([[-1.0]]), np.array([1.0]), 40.0))
print("  constant orbit:", datko_l1_norm(np.array([[0.0]]), np.array([1.0]), 40.0))

# Limit identity, sign-corrected: A = diag(0, -1), D = -1, C = [1 1].
# The orbit limit of x = (2, 5) is (2, 0), so R(t)x -> (-D)^{-1} C (2, 0) = 2.
sys_ = BlockSystem.lower_triangular(
    np.diag([0.0, -1.0]), np.array([[1.0, 1.0]]), np.array([[-1.0]])
)
out = asymptotic_limit_R(sys_, np.array([2.0, 5.0]), horizon=60.0)
print(f"\nlimit identity: predicted {out.predicted[0]:.6f}, observed {out.observed[0]:.6f}")
print(f"the naive sign D^(-1) C would predict {out.uncorrected_prediction[0]:.6f}")

# Resonance: A = D = rotation and C = I share the spectrum {i, -i} on the
# imaginary axis, so R(t) = t e^{tA} grows linearly.
j = np.array([[0.0, 1.0], [-1.0, 0.0]])
x = np.array([1.0, 0.0])
print("\nresonant convolution growth:")
for t in (10.0, 40.0, 160.0):
    r = convolve(j, j, np.eye(2), t, tol=1e-9)
    print(f"  t = {t:6.0f}: ||R(t)x|| = {np.linalg.norm(r.value @ x):10.4f}")
cert = nonresonance_check(j, j)
print(f"non-resonance check satisfied: {cert.satisfied}")
print(f"shared half-line spectrum of A: {cert.inputs['halfline_spectrum_A']}")
