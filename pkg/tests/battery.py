"""Fixed battery of varieties and sample points shared by the test suite.

Five families: the line and hyperbola in (C*)^2, a random conic in (C*)^2,
a codimension-2 line in (C*)^3 (n >= 2k), and a random real-coefficient
quadric surface in (C*)^3 (n < 2k).  Real slices are seeded explicitly so
the critical branch of every classifier is exercised.
"""
import numpy as np

from loggauss import (
    IterateLeftTorusError,
    LaurentPoly,
    NonConvergenceError,
    VarietySystem,
    newton_refine,
    parse_poly,
    sample_hypersurface_fibers,
)

LINE = VarietySystem(2, (parse_poly("z1+z2-1", 2),), 1)
HYPERBOLA = VarietySystem(2, (parse_poly("z1*z2-1", 2),), 1)
CODIM2_LINE = VarietySystem(
    3, (parse_poly("z1+z2-1", 3), parse_poly("z1-z3", 3)), 1
)


def random_conic(seed=7):
    rng = np.random.default_rng(seed)
    monos = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    terms = {e: complex(*rng.normal(size=2)) for e in monos}
    return VarietySystem(2, (LaurentPoly(2, terms),), 1)


def random_real_quadric(seed=13):
    rng = np.random.default_rng(seed)
    monos = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1), (2, 0, 0)]
    terms = {e: complex(rng.normal()) for e in monos}
    return VarietySystem(3, (LaurentPoly(3, terms),), 2)


def _fiber_points(V, window, grid, args):
    return [
        s.z
        for s in sample_hypersurface_fibers(V.generators[0], window, grid, args)
        if s.smooth
    ]


def _refined_points(V, count, seed, real_slice=False):
    rng = np.random.default_rng(seed)
    points = []
    attempts = 0
    while len(points) < count and attempts < 20 * count:
        attempts += 1
        moduli = rng.uniform(0.3, 3.0, size=V.n)
        if real_slice:
            z0 = moduli * rng.choice([-1.0, 1.0], size=V.n) + 0j
        else:
            z0 = moduli * np.exp(1j * rng.uniform(-np.pi, np.pi, size=V.n))
        try:
            sp = newton_refine(V, z0)
        except (NonConvergenceError, IterateLeftTorusError):
            continue
        z = sp.z
        if real_slice:
            if np.max(np.abs(z.imag)) > 1e-8:
                continue
            z = z.real + 0j
            residual = max(abs(complex(sum(c * np.prod(z ** np.array(e)) for e, c in f.terms.items()))) for f in V.generators)
            if residual > 1e-10:
                continue
        if sp.smooth and np.all(np.abs(z) > 1e-6):
            points.append(z)
    return points


def build_battery():
    """List of (label, VarietySystem, point) covering both theorem cases."""
    conic = random_conic()
    quadric = random_real_quadric()
    entries = []
    for z in _fiber_points(LINE, [[-1.5, 1.5], [-3, 3]], 12, 12):
        entries.append(("line", LINE, z))
    for t in np.linspace(-1.4, 1.6, 21):
        if abs(t) < 0.05 or abs(t - 1) < 0.05:
            continue
        entries.append(("line-real", LINE, np.array([t, 1 - t], dtype=complex)))
    for z in _fiber_points(HYPERBOLA, [[-1, 1], [-1.1, 1.1]], 10, 10):
        entries.append(("hyperbola", HYPERBOLA, z))
    for z in _fiber_points(conic, [[-1, 1], [-4, 4]], 10, 10):
        entries.append(("conic", conic, z))
    for z in _refined_points(CODIM2_LINE, 60, 11):
        entries.append(("codim2", CODIM2_LINE, z))
    for t in np.linspace(-1.3, 1.7, 25):
        if abs(t) < 0.05 or abs(t - 1) < 0.05:
            continue
        entries.append(("codim2-real", CODIM2_LINE, np.array([t, 1 - t, t], dtype=complex)))
    for z in _refined_points(quadric, 70, 17):
        entries.append(("quadric", quadric, z))
    for z in _refined_points(quadric, 25, 19, real_slice=True):
        entries.append(("quadric-real", quadric, z))
    return entries
