"""Amoebas, contours and the covering-bound verifier.

The amoeba is represented as a point cloud of log-modulus images of
certified sample points; the contour is the subset whose sample points are
classified critical.  For affine linear spaces, preimage counts over
regular values of the log map are checked against the 2^l lower bound,
where l is the dimension of the plane's intersection with its conjugate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientRegularTrialsError,
    SingularPointError,
    UncertainRankError,
    UnsupportedShapeError,
)
from .gaussmap import (
    DEFAULT_RESIDUAL_TOL,
    CriticalClassification,
    VarietySystem,
    classify_point,
    gauss_matrix,
)
from .linalg import DEFAULT_RANK_TOL, null_space, rank_with_margin
from .variety import (
    AffineLinearSpace,
    affine_variety_system,
    sample_affine_parameters,
    sample_hypersurface_fibers,
)


@dataclass(frozen=True)
class CoveringReport:
    l_real: int
    bound: int
    trials: int
    regular_trials: int
    min_preimages: int
    max_preimages: int
    rejected_nonregular: int
    success: bool
    empty_conjugate_intersection: bool


def log_map(z):
    """Coordinatewise log of modulus."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("zero coordinate: point lies outside the torus")
    return np.log(np.abs(z))


def arg_map(z):
    """Coordinatewise principal argument in (-pi, pi]."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("zero coordinate: point lies outside the torus")
    a = np.angle(z)
    return np.where(a <= -np.pi, np.pi, a)


def _in_window(x, window):
    window = np.asarray(window, dtype=float)
    return bool(np.all(x >= window[:, 0]) and np.all(x <= window[:, 1]))


def _samples(V_or_P, window, resolution, args_per_fiber, residual_tol, seed):
    if isinstance(V_or_P, AffineLinearSpace):
        from .variety import sample_affine

        return sample_affine(V_or_P, resolution * args_per_fiber, seed)
    V = V_or_P
    if V.n == 2 and V.l == 1:
        return sample_hypersurface_fibers(
            V.generators[0], window, resolution, args_per_fiber, residual_tol
        )
    raise UnsupportedShapeError(
        f"amoeba sampling supports plane curves or affine spaces, not (n={V.n}, l={V.l})"
    )


def compute_amoeba(
    V_or_P,
    window,
    resolution: int,
    args_per_fiber: int = 64,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    seed: int = 0,
):
    """Log images of accepted sample points, clipped to the window."""
    samples = _samples(V_or_P, window, resolution, args_per_fiber, residual_tol, seed)
    out = []
    for s in samples:
        x = log_map(s.z)
        if _in_window(x, window):
            out.append(x)
    return out


def compute_contour(
    V_or_P,
    window,
    resolution: int,
    args_per_fiber: int = 64,
    tol: float = DEFAULT_RANK_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    seed: int = 0,
):
    """Critical subset of the same sampling pass, with classifications."""
    if isinstance(V_or_P, AffineLinearSpace):
        V = affine_variety_system(V_or_P, tol)
    else:
        V = V_or_P
    samples = _samples(V_or_P, window, resolution, args_per_fiber, residual_tol, seed)
    out = []
    for s in samples:
        x = log_map(s.z)
        if not _in_window(x, window):
            continue
        try:
            cls = classify_point(V, s.z, tol, residual_tol)
        except (SingularPointError, UncertainRankError):
            continue
        if cls.critical:
            out.append((x, cls))
    return out


# ---------------------------------------------------------------------------
# Preimage counting over the log map
# ---------------------------------------------------------------------------


def _circle_circle(o1, r1, o2, r2, tol):
    """Intersection count of two circles in the plane: (count, regular)."""
    d = abs(o1 - o2)
    scale = d * d + r1 * r1 + r2 * r2
    if d < 1e-14:
        # concentric: empty or a full circle, never a regular finite fiber
        return 0, False
    q1 = d * d - (r1 - r2) ** 2
    q2 = (r1 + r2) ** 2 - d * d
    if abs(q1) <= tol * scale or abs(q2) <= tol * scale:
        return 1, False
    if q1 > 0 and q2 > 0:
        return 2, True
    return 0, True


def _count_line_closed_form(P: AffineLinearSpace, x, tol):
    """Exact circle-circle preimage count for a line in (C*)^2."""
    radii = np.exp(np.asarray(x, dtype=float))
    circles = []
    for i in range(2):
        a, bi = P.A[i, 0], P.b[i]
        if abs(a) < 1e-14:
            # |b_i| must equal the target radius; never a regular constraint
            if abs(abs(bi) - radii[i]) > tol * max(1.0, radii[i]):
                return 0, True
            return 0, False
        circles.append((-bi / a, radii[i] / abs(a)))
    (o1, r1), (o2, r2) = circles
    return _circle_circle(o1, r1, o2, r2, tol)


def _moduli_residual(P, x, u):
    k = P.k
    w = u[:k] + 1j * u[k:]
    zeta = P.A @ w + P.b
    if np.any(np.abs(zeta) < 1e-14):
        return None, None, None
    r = np.log(np.abs(zeta)) - x
    inner = P.A * zeta.conj()[:, None]  # conj(zeta_i) * A_ij
    J = np.hstack([inner.real, -inner.imag]) / (np.abs(zeta) ** 2)[:, None]
    return w, r, J

def _gauss_newton_moduli(P, x, w0, max_iter=60):
    u = np.concatenate([w0.real, w0.imag])
    for _ in range(max_iter):
        w, r, J = _moduli_residual(P, x, u)
        if w is None:
            return None
        if np.linalg.norm(r) < 1e-12:
            return u
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        if not np.all(np.isfinite(step)):
            return None
        u = u + step
        if np.linalg.norm(step) < 1e-14:
            break
    w, r, _ = _moduli_residual(P, x, u)
    if w is not None and np.linalg.norm(r) < 1e-10:
        return u
    return None


def _conjugation_starts(w):
    """All coordinatewise conjugation patterns of a parameter vector."""
    k = len(w)
    starts = []
    for mask in range(1 << k):
        s = w.copy()
        for j in range(k):
            if mask >> j & 1:
                s[j] = np.conj(s[j])
        starts.append(s)
    return starts


def count_preimages(
    P: AffineLinearSpace,
    x,
    tol: float = 1e-9,
    starts: int = 40,
    seed: int = 0,
    hint=None,
):
    """(count, regular) for the fiber of the log map over x on the plane P.

    Lines in (C*)^2 use the exact circle-circle closed form; the general
    case runs multistart Gauss-Newton on the real modulus system and
    reports a deduplicated lower bound.  Regularity in the general case is
    a full-rank real Jacobian at every preimage found.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite target point")
    if P.k == 1 and P.n == 2:
        return _count_line_closed_form(P, x, tol)

    rng = np.random.default_rng(seed)
    pool = []
    if hint is not None:
        for s in _conjugation_starts(np.asarray(hint, dtype=complex)):
            pool.append(s)
            pool.append(s * (1 + 1e-3) + 1e-3)
    scale = float(np.median(np.abs(hint))) if hint is not None else 1.0
    for _ in range(starts):
        moduli = scale * np.exp(rng.uniform(-2.0, 2.0, size=P.k))
        args = rng.uniform(-np.pi, np.pi, size=P.k)
        pool.append(moduli * np.exp(1j * args))

    solutions = []

    def _absorb(w0):
        u = _gauss_newton_moduli(P, x, w0)
        if u is None:
            return False
        if any(np.linalg.norm(u - v) < 1e-8 for v in solutions):
            return False
        solutions.append(u)
        return True

    for w0 in pool:
        _absorb(w0)
    # close the solution set under coordinatewise conjugation of the
    # parameters: for (partially) real parametrizations the missing sheets
    # are conjugation images of sheets already found
    for _ in range(3):
        grew = False
        for u in list(solutions):
            w = u[: P.k] + 1j * u[P.k :]
            for s in _conjugation_starts(w):
                grew |= _absorb(s)
        if not grew:
            break

    regular = True
    for u in solutions:
        _, _, J = _moduli_residual(P, x, u)
        report = rank_with_margin(J, 1e-8)
        if report.rank < min(P.n, 2 * P.k):
            regular = False
    return len(solutions), regular


def verify_covering(P: AffineLinearSpace, trials: int = 50, seed: int = 0) -> CoveringReport:
    """Empirical check of the 2^l preimage lower bound over regular values.

    Each trial draws a point on P, perturbs its log image inside the
    amoeba, and counts preimages; non-regular values (tangencies, values
    that fell off the amoeba) are rejected and tallied.
    """
    l_real = P.l_real
    bound = 2 ** max(l_real, 0)
    streams = np.random.SeedSequence(seed).spawn(trials)
    counts = []
    rejected = 0
    for t in range(trials):
        rng = np.random.default_rng(streams[t])
        sub_seed = int(rng.integers(0, 2**31))
        (w, z), = sample_affine_parameters(P, 1, sub_seed)
        x = log_map(z)
        # a perturbation may step off the amoeba near its boundary; redraw a
        # few times before giving up on the trial
        accepted = None
        for _ in range(5):
            direction = rng.normal(size=P.n)
            direction /= np.linalg.norm(direction)
            x_trial = x + 1e-2 * rng.uniform(0.1, 1.0) * direction
            count, regular = count_preimages(P, x_trial, seed=sub_seed, hint=w)
            if regular and count > 0:
                accepted = count
                break
        if accepted is None:
            rejected += 1
            continue
        counts.append(accepted)
    if rejected > 0.9 * trials:
        raise InsufficientRegularTrialsError(
            f"{rejected} of {trials} trials were non-regular"
        )
    min_count = min(counts)
    max_count = max(counts)
    return CoveringReport(
        l_real=l_real,
        bound=bound,
        trials=trials,
        regular_trials=len(counts),
        min_preimages=min_count,
        max_preimages=max_count,
        rejected_nonregular=rejected,
        success=min_count >= bound,
        empty_conjugate_intersection=l_real < 0,
    )


# ---------------------------------------------------------------------------
# Arg-map criticality oracle (coincidence with log-criticality)
# ---------------------------------------------------------------------------


def real_jacobian_arg_rank(V: VarietySystem, z, tol: float = DEFAULT_RANK_TOL) -> int:
    """Rank of the real Jacobian of the argument map restricted to V.

    Same construction as the log oracle with columns Im(v_j), Re(v_j).
    """
    G = gauss_matrix(V, z)
    report = rank_with_margin(G, tol)
    if report.rank != V.n - V.k:
        raise SingularPointError(
            f"gauss matrix rank {report.rank} != {V.n - V.k} at the sample point"
        )
    K = null_space(G, tol)
    R = np.hstack([K.T.imag, K.T.real])
    return rank_with_margin(R, tol).rank


def is_arg_critical_oracle(V: VarietySystem, z, tol: float = DEFAULT_RANK_TOL) -> bool:
    return real_jacobian_arg_rank(V, z, tol) < min(V.n, 2 * V.k)
