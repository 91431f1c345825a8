"""Preimage counts of the log map over affine linear spaces.

For a k-dimensional affine plane P in the torus, let l be the complex
dimension of P intersected with its conjugate plane.  Every regular value
of the log map on the amoeba of P has at least 2^l preimages.  This script
verifies the bound empirically for three planes with l = 1, 0, 2.
"""
import numpy as np

from loggauss import AffineLinearSpace, count_preimages, verify_covering

# A real line in (C*)^2: l = 1, so regular values are covered twice.
line = AffineLinearSpace.from_parametrization([[1], [1]], [0, 1])
print("z2 = z1 + 1:", verify_covering(line, trials=50, seed=0))

# Exact circle-circle counts at hand-picked values of the line's amoeba:
print("  preimages at (0, 0):      ", count_preimages(line, [0.0, 0.0]))
print("  preimages at (0, log 3):  ", count_preimages(line, [0.0, np.log(3)]))
print("  preimages at (log 2, 0):  ", count_preimages(line, [np.log(2), 0.0]), "<- tangency, not regular")

# A complex line: it meets its conjugate in a single point, l = 0, and the
# bound degenerates to 1 (the actual count is still 2 for a line).
iline = AffineLinearSpace.from_parametrization([[1], [1j]], [0, 1])
print("z2 = i z1 + 1:", verify_covering(iline, trials=50, seed=0))

# A real 2-plane in (C*)^4: l = 2, so the bound is 4.  Preimages here are
# counted by multistart Gauss-Newton on the modulus system (a lower bound).
A = np.array([[1, 0], [1, 0], [0, 1], [0, 1]], dtype=complex)
b = np.array([0, 1, 0, 1], dtype=complex)
plane = AffineLinearSpace.from_parametrization(A, b)
print("real 2-plane in (C*)^4:", verify_covering(plane, trials=50, seed=0))
