"""Certified sample points on varieties in the torus.

Three point sources: per-fiber root solving for plane curves, Gauss-Newton
refinement for general systems, and direct parametrization of affine linear
spaces.  Also houses the real-Jacobian criticality oracle, which decides
criticality of the log map without going through the Grassmannian.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import laurent
from .errors import (
    DegenerateParametrizationError,
    IterateLeftTorusError,
    NonConvergenceError,
    SingularPointError,
    UncertainRankError,
    UnsupportedShapeError,
)
from .gaussmap import DEFAULT_RESIDUAL_TOL, VarietySystem, gauss_matrix
from .laurent import LaurentPoly
from .linalg import DEFAULT_RANK_TOL, null_space, rank_with_margin

TORUS_FLOOR = 1e-12  # minimum coordinate modulus for sampled points
ANNULUS = (0.3, 3.0)  # moduli range for random parameter draws


@dataclass(frozen=True)
class SamplePoint:
    """A point accepted onto V: coordinates, residual, smoothness certificate."""

    z: np.ndarray
    residual: float
    smooth: bool
    margin: float


@dataclass(frozen=True)
class AffineLinearSpace:
    """Parametrized affine k-plane w -> A w + b in C^n.

    ``l_real`` is dim_C of the intersection with its conjugate plane, or -1
    when that intersection is empty.
    """

    A: np.ndarray
    b: np.ndarray
    l_real: int

    @classmethod
    def from_parametrization(cls, A, b, tol: float = DEFAULT_RANK_TOL):
        A = np.asarray(A, dtype=complex)
        b = np.asarray(b, dtype=complex)
        if A.ndim != 2 or b.shape != (A.shape[0],):
            raise ValueError("A must be n x k and b length n")
        l_real = intersection_dim_conjugate(A, b, tol)
        return cls(A, b, l_real)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def k(self) -> int:
        return self.A.shape[1]


# ---------------------------------------------------------------------------
# Simultaneous (Aberth-style) root finding for univariate fibers
# ---------------------------------------------------------------------------


def all_roots(coeffs, tol: float = 1e-12, max_iter: int = 200):
    """All complex roots of sum c_j x^j (ascending coefficients).

    Aberth-Ehrlich simultaneous iteration; returns every root, including
    zeros contributed by vanishing low-order coefficients.
    """
    c = np.asarray(coeffs, dtype=complex)
    while c.size and c[-1] == 0:
        c = c[:-1]
    if c.size <= 1:
        return np.zeros(0, dtype=complex)
    low = 0
    while c[low] == 0:
        low += 1
    zero_roots = np.zeros(low, dtype=complex)
    c = c[low:]
    d = c.size - 1
    if d == 0:
        return zero_roots
    if d == 1:
        return np.concatenate([zero_roots, [-c[0] / c[1]]])

    radius = max(abs(c[0] / c[-1]) ** (1.0 / d), 1e-6)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    z = radius * np.exp(1j * angles)
    dc = c[1:] * np.arange(1, d + 1)
    for _ in range(max_iter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        dp = np.where(dp == 0, 1e-300, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-300, 1e-300, denom)
        corr = w / denom
        z = z - corr
        if np.all(np.abs(corr) <= tol * (1.0 + np.abs(z))):
            return np.concatenate([zero_roots, z])
    raise NonConvergenceError(f"root iteration did not converge in {max_iter} steps")


# ---------------------------------------------------------------------------
# Gauss-Newton refinement
# ---------------------------------------------------------------------------


def _partials(V: VarietySystem):
    return [
        [laurent.partial_derivative(f, j + 1) for j in range(V.n)]
        for f in V.generators
    ]


def _smoothness(V: VarietySystem, z, tol: float):
    report = rank_with_margin(gauss_matrix(V, z), tol)
    smooth = report.rank == V.n - V.k and report.margin >= 10 * tol
    return smooth, report.margin


def newton_refine(
    V: VarietySystem,
    z0,
    max_iter: int = 50,
    tol: float = 1e-12,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> SamplePoint:
    """Gauss-Newton least-squares refinement onto V from a torus start.

    Works unchanged for overdetermined generator lists; never returns a
    point with a coordinate modulus below the torus floor.
    """
    z = np.asarray(z0, dtype=complex).copy()
    if z.shape != (V.n,):
        raise ValueError("start point has wrong dimension")
    if np.any(np.abs(z) < TORUS_FLOOR):
        raise IterateLeftTorusError("start point has a (near-)zero coordinate")
    partials = _partials(V)
    for _ in range(max_iter + 1):
        F = np.array([laurent.evaluate(f, z) for f in V.generators])
        residual = float(np.max(np.abs(F)))
        if residual < tol:
            smooth, margin = _smoothness(V, z, rank_tol)
            return SamplePoint(z, residual, smooth, margin)
        J = np.array([[laurent.evaluate(pd, z) for pd in row] for row in partials])
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        z = z + step
        if np.any(np.abs(z) < 1e-14):
            raise IterateLeftTorusError("iterate reached a coordinate hyperplane")
    raise NonConvergenceError(f"no convergence after {max_iter} iterations")


# ---------------------------------------------------------------------------
# Plane-curve fiber sampling
# ---------------------------------------------------------------------------


def sample_hypersurface_fibers(
    f: LaurentPoly,
    window,
    grid: int,
    args_per_fiber: int,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    tally: dict | None = None,
):
    """Sample a plane curve fiberwise over a grid of (log|z1|, arg z1).

    For each fiber value of z1 the curve equation restricts to a univariate
    Laurent polynomial in z2, solved for all roots; nonzero roots passing
    the residual gate become sample points.  Fibers where the root solver
    fails are skipped and counted in ``tally['failed_fibers']``.
    """
    if f.n_vars != 2:
        raise UnsupportedShapeError("fiber sampling needs a curve in two variables")
    if all(e[1] == 0 for e in f.terms):
        raise UnsupportedShapeError("polynomial does not depend on z2")
    window = np.asarray(window, dtype=float)
    x1_values = np.linspace(window[0][0], window[0][1], grid)
    thetas = np.linspace(-np.pi, np.pi, args_per_fiber, endpoint=False)
    points = []
    failed = 0
    for x1 in x1_values:
        for theta in thetas:
            z1 = np.exp(x1 + 1j * theta)
            fiber = {}
            for exps, coeff in f.terms.items():
                fiber[exps[1]] = fiber.get(exps[1], 0) + coeff * z1 ** exps[0]
            emin = min(fiber)
            coeffs = np.zeros(max(fiber) - emin + 1, dtype=complex)
            for e, coeff in fiber.items():
                coeffs[e - emin] = coeff
            try:
                roots = all_roots(coeffs)
            except NonConvergenceError:
                failed += 1
                continue
            for z2 in roots:
                if abs(z2) < TORUS_FLOOR:
                    continue
                z = np.array([z1, z2])
                residual = abs(laurent.evaluate(f, z))
                if residual < residual_tol:
                    g = laurent.log_gradient(f, z)
                    gn = float(np.linalg.norm(g))
                    points.append(SamplePoint(z, residual, gn > 1e-12, gn))
    if tally is not None:
        tally["failed_fibers"] = failed
    return points


# ---------------------------------------------------------------------------
# Affine linear spaces
# ---------------------------------------------------------------------------


def sample_affine(P: AffineLinearSpace, count: int, seed: int):
    """Deterministic random sample of P inside the torus.

    Parameters are drawn from a fixed polydisk annulus; images with a
    coordinate too close to a hyperplane are rejected.
    """
    rng = np.random.default_rng(seed)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts >= 100 and len(points) < 0.01 * attempts:
            raise DegenerateParametrizationError(
                f"rejected {attempts - len(points)} of {attempts} draws"
            )
        moduli = rng.uniform(ANNULUS[0], ANNULUS[1], size=P.k)
        args = rng.uniform(-np.pi, np.pi, size=P.k)
        w = moduli * np.exp(1j * args)
        z = P.A @ w + P.b
        if np.any(np.abs(z) < TORUS_FLOOR):
            continue
        points.append(SamplePoint(z, 0.0, True, np.inf))
    return points


def sample_affine_parameters(P: AffineLinearSpace, count: int, seed: int):
    """Like sample_affine but returns (w, z) pairs; used by the covering check."""
    rng = np.random.default_rng(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts >= 100 and len(out) < 0.01 * attempts:
            raise DegenerateParametrizationError(
                f"rejected {attempts - len(out)} of {attempts} draws"
            )
        moduli = rng.uniform(ANNULUS[0], ANNULUS[1], size=P.k)
        args = rng.uniform(-np.pi, np.pi, size=P.k)
        w = moduli * np.exp(1j * args)
        z = P.A @ w + P.b
        if np.any(np.abs(z) < TORUS_FLOOR):
            continue
        out.append((w, z))
    return out


def intersection_dim_conjugate(A, b, tol: float = DEFAULT_RANK_TOL) -> int:
    """dim_C of (the plane A w + b) ∩ (its conjugate plane), or -1 if empty.

    The planes meet iff conj(b) - b lies in the column span of [A | conj A];
    then the intersection dimension is 2k minus the rank of that block.
    """
    A = np.asarray(A, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = A.shape[1]
    col_report = rank_with_margin(A, tol)
    if col_report.rank != k:
        raise ValueError("A must have full column rank")
    S = np.hstack([A, A.conj()])
    report = rank_with_margin(S, tol)
    if report.margin < 10 * tol:
        raise UncertainRankError(
            f"[A | conj A] rank margin {report.margin:.3e} below threshold"
        )
    rhs = b.conj() - b
    sol, *_ = np.linalg.lstsq(S, rhs, rcond=None)
    misfit = np.linalg.norm(S @ sol - rhs)
    scale = max(1.0, float(np.linalg.norm(rhs)))
    if misfit > tol * scale * 1e3:
        return -1
    return 2 * k - report.rank


def implicit_generators(P: AffineLinearSpace, tol: float = DEFAULT_RANK_TOL):
    """Linear Laurent polynomials cutting out the affine plane.

    Rows c with c A = 0 give generators sum_j c_j z_j - c.b.
    """
    C = null_space(P.A.T, tol)
    gens = []
    n = P.n
    for c in C:
        terms = {}
        for j in range(n):
            if c[j] != 0:
                exps = tuple(1 if t == j else 0 for t in range(n))
                terms[exps] = c[j]
        terms[(0,) * n] = terms.get((0,) * n, 0) - complex(c @ P.b)
        gens.append(LaurentPoly(n, terms))
    return gens


def affine_variety_system(P: AffineLinearSpace, tol: float = DEFAULT_RANK_TOL) -> VarietySystem:
    """VarietySystem view of an affine plane, for classification routines."""
    return VarietySystem(P.n, tuple(implicit_generators(P, tol)), P.k)


# ---------------------------------------------------------------------------
# Real-Jacobian criticality oracle
# ---------------------------------------------------------------------------


def real_jacobian_log_rank(V: VarietySystem, z, tol: float = DEFAULT_RANK_TOL) -> int:
    """Rank of the real Jacobian of the log-modulus map restricted to V.

    Builds a complex basis v_1..v_k of the pushed-forward tangent space
    (the kernel of the Gauss matrix) and returns the real rank of the n x 2k
    matrix with columns Re(v_j), -Im(v_j).  The point is log-critical iff
    this rank falls below min(n, 2k).
    """
    G = gauss_matrix(V, z)
    report = rank_with_margin(G, tol)
    if report.rank != V.n - V.k:
        raise SingularPointError(
            f"gauss matrix rank {report.rank} != {V.n - V.k} at the sample point"
        )
    K = null_space(G, tol)  # k rows spanning the tangent image
    R = np.hstack([K.T.real, -K.T.imag])
    return rank_with_margin(R, tol).rank


def is_log_critical_oracle(V: VarietySystem, z, tol: float = DEFAULT_RANK_TOL) -> bool:
    rank = real_jacobian_log_rank(V, z, tol)
    return rank < min(V.n, 2 * V.k)
