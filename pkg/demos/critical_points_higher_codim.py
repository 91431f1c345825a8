"""Critical points of the log map beyond hypersurfaces.

The normal space to a k-dimensional variety at a smooth point z is spanned
by the logarithmic gradients of its defining polynomials.  The point is
critical for the log-modulus map exactly when that normal space meets R^n
in more than the generic dimension max(0, n-2k); the excess j labels the
stratum.  Two independent routes decide this:

  * the Schubert-index route (rank of the normal basis stacked over its
    conjugate), and
  * the real-Jacobian oracle (rank of the real differential of the log map
    on a tangent basis).

This script classifies sample points on a line of codimension 2 in (C*)^3
both ways and checks the verdicts agree point by point.
"""
import numpy as np

from loggauss import (
    VarietySystem,
    classify_point,
    is_log_critical_oracle,
    newton_refine,
    parse_poly,
    schubert_cell_dimension,
)

# V = {z1 + z2 = 1, z1 = z3}: a complex line in (C*)^3, n = 3, k = 1.
V = VarietySystem(3, (parse_poly("z1+z2-1", 3), parse_poly("z1-z3", 3)), 1)
print(f"n = {V.n}, k = {V.k}, generic Schubert index = {max(0, V.n - 2 * V.k)}")
for m in range(0, V.k + 1):
    print(f"  cell sigma_{m} has dimension {schubert_cell_dimension(m, V.n, V.k)}")

# Real points of this real curve are critical with excess j = 1 ...
real_point = np.array([0.5, 0.5, 0.5], dtype=complex)
print("real point   ", real_point, "->", classify_point(V, real_point))

# ... while a generic complex point sits in the generic stratum.
rng = np.random.default_rng(1)
agree = total = 0
for _ in range(200):
    z0 = rng.uniform(0.3, 3.0, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi, 3))
    try:
        z = newton_refine(V, z0).z
        cls = classify_point(V, z)
    except Exception:
        continue
    total += 1
    agree += cls.critical == is_log_critical_oracle(V, z)
print(f"oracle agreement on {total} random smooth points: {agree}/{total}")
