"""Generalized logarithmic Gauss map and critical-point classification.

For a variety V of dimension k in the torus, cut out by Laurent polynomials
f_1..f_l, the matrix of logarithmic gradients at a smooth point z spans the
(n-k)-dimensional normal space to the pushed-forward tangent space.  The
map z -> [that row space] lands in the Grassmannian of (n-k)-planes, and
the point is critical for the coordinatewise log-modulus map exactly when
the row space meets R^n in more than the generic dimension max(0, n-2k).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import laurent
from .errors import SingularPointError, UncertainRankError
from .laurent import LaurentPoly
from .linalg import (
    DEFAULT_RANK_TOL,
    UNCERTAIN_FACTOR,
    orthonormal_rows,
    rank_with_margin,
    real_intersection_report,
)

DEFAULT_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class VarietySystem:
    """Ambient dimension n, generator list and expected complex dimension k."""

    n: int
    generators: tuple
    k: int

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"need 1 <= k <= n-1, got k={self.k}, n={self.n}")
        if len(gens) < self.n - self.k:
            raise ValueError(
                f"{len(gens)} generators cannot cut out codimension {self.n - self.k}"
            )
        for f in gens:
            if f.n_vars != self.n:
                raise ValueError("generator variable count does not match n")

    @property
    def l(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class GrassmannPoint:
    """A point of the Grassmannian of (n-k)-planes: orthonormal row basis.

    The matrix is canonical only up to unitary row mixing; compare points
    with subspace_distance, never entrywise.
    """

    basis: np.ndarray
    margin: float


@dataclass(frozen=True)
class CriticalClassification:
    m: int  # Schubert index: dim_R of the normal space's real points
    generic_m: int  # max(0, n - 2k)
    j: int  # excess over the generic index
    critical: bool
    margin: float  # smallest rank-decision margin encountered
    s_required: int  # max(1, 2k - n + 1)


def gauss_matrix(V: VarietySystem, z):
    """The l x n matrix with rows z_j * df_i/dz_j(z) (logarithmic gradients)."""
    return np.array([laurent.log_gradient(f, z) for f in V.generators])


def hypersurface_gauss(f: LaurentPoly, z, tol: float = 1e-12):
    """Projective class of the logarithmic gradient at a smooth point.

    The representative is normalized to unit norm with the first nonzero
    coordinate rotated real positive, so equal classes compare equal.
    """
    v = laurent.log_gradient(f, z)
    norm = np.linalg.norm(v)
    if norm < tol:
        raise SingularPointError("vanishing logarithmic gradient: singular point")
    v = v / norm
    lead = np.flatnonzero(np.abs(v) > 1e-12)[0]
    phase = v[lead] / abs(v[lead])
    return v / phase


def generalized_gauss(V: VarietySystem, z, tol: float = DEFAULT_RANK_TOL) -> GrassmannPoint:
    """Orthonormal basis of the row space of the Gauss matrix at z."""
    G = gauss_matrix(V, z)
    r = V.n - V.k
    report = rank_with_margin(G, tol)
    if report.rank < r:
        raise SingularPointError(
            f"gauss matrix rank {report.rank} < {r}: singular point of V"
        )
    if report.rank > r or report.margin < UNCERTAIN_FACTOR * tol:
        raise UncertainRankError(
            f"gauss matrix rank {report.rank} (expected {r}), margin {report.margin:.3e}"
        )
    basis = orthonormal_rows(G, tol)
    return GrassmannPoint(basis, report.margin)


def schubert_index(E: GrassmannPoint, tol: float = DEFAULT_RANK_TOL) -> int:
    """m = dim_R(E ∩ R^n), the Schubert-cell index of the normal space."""
    m, _ = real_intersection_report(E.basis, tol)
    return m


def schubert_cell_dimension(m: int, n: int, k: int) -> int:
    """Dimension m(n-m) + 2(k-m)(n-m) of the index-m cell (informational)."""
    if not 0 <= m <= k <= n:
        raise ValueError(f"need 0 <= m <= k <= n, got m={m}, k={k}, n={n}")
    return m * (n - m) + 2 * (k - m) * (n - m)


def classify_point(
    V: VarietySystem,
    z,
    tol: float = DEFAULT_RANK_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> CriticalClassification:
    """Classify a smooth point of V as critical or regular for the log map.

    The point must satisfy max|f_i(z)| < residual_tol; the rank decisions
    must clear the uncertainty threshold, otherwise the classification
    refuses rather than guesses.
    """
    residual = max(abs(laurent.evaluate(f, z)) for f in V.generators)
    if residual >= residual_tol:
        raise SingularPointError(
            f"residual {residual:.3e} >= {residual_tol:.1e}: point not on V"
        )
    E = generalized_gauss(V, z, tol)
    m, stack_margin = real_intersection_report(E.basis, tol)
    margin = min(E.margin, stack_margin)
    if stack_margin < UNCERTAIN_FACTOR * tol:
        raise UncertainRankError(
            f"Schubert index decision margin {stack_margin:.3e} below threshold"
        )
    generic_m = max(0, V.n - 2 * V.k)
    j = m - generic_m
    s_required = max(1, 2 * V.k - V.n + 1)
    return CriticalClassification(
        m=m,
        generic_m=generic_m,
        j=j,
        critical=j >= 1,
        margin=margin,
        s_required=s_required,
    )
