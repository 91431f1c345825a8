"""Dense complex linear algebra with tolerance-based rank decisions.

All dimension counts downstream (Schubert indices, smoothness checks,
conjugate-intersection dimensions) reduce to the SVD-based rank decision
here, so every operation takes the same relative tolerance knob and
reports the margin of the decision it made.

Matrices are plain numpy arrays of complex128; rows span subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_RANK_TOL = 1e-10
# Rank decisions with margin below UNCERTAIN_FACTOR * tol are refused by
# callers rather than silently resolved into a stratum.
UNCERTAIN_FACTOR = 10.0


@dataclass(frozen=True)
class RankReport:
    """Numerical certificate for a rank decision.

    ``margin`` is the ratio of the smallest accepted singular value to the
    largest one (0 for the zero matrix).
    """

    rank: int
    margin: float
    tol_used: float


def _as_matrix(M):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.size == 0:
        raise ValueError("expected a nonempty 2-d matrix")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ValueError("non-finite entries")
    return M


def rank_with_margin(M, tol: float = DEFAULT_RANK_TOL) -> RankReport:
    """Numerical rank: count singular values above tol*smax*max(rows, cols)."""
    M = _as_matrix(M)
    if not 0 < tol < 1:
        raise ValueError("tol must lie in (0, 1)")
    sigma = np.linalg.svd(M, compute_uv=False)
    smax = sigma[0]
    if smax == 0:
        return RankReport(0, 0.0, tol)
    thresh = tol * smax * max(M.shape)
    rank = int(np.sum(sigma > thresh))
    margin = float(sigma[rank - 1] / smax) if rank > 0 else 0.0
    return RankReport(rank, margin, tol)


def null_space(M, tol: float = DEFAULT_RANK_TOL):
    """Orthonormal row basis of the bilinear kernel {v : M v = 0}.

    The pairing is Mv without conjugation; this is the convention under
    which the rows of the logarithmic Jacobian annihilate the pushed-forward
    tangent space.
    """
    M = _as_matrix(M)
    _, sigma, vh = np.linalg.svd(M, full_matrices=True)
    smax = sigma[0] if sigma.size else 0.0
    thresh = tol * smax * max(M.shape)
    rank = int(np.sum(sigma > thresh))
    # v solves Mv = 0 iff v lies in the conjugate of the trailing rows of vh
    return vh[rank:].conj()


def orthonormal_rows(M, tol: float = DEFAULT_RANK_TOL):
    """Orthonormal row basis of the row space of M (Hermitian inner product)."""
    M = _as_matrix(M)
    _, sigma, vh = np.linalg.svd(M, full_matrices=False)
    smax = sigma[0] if sigma.size else 0.0
    thresh = tol * smax * max(M.shape)
    rank = int(np.sum(sigma > thresh))
    return vh[:rank]


def real_intersection_report(M, tol: float = DEFAULT_RANK_TOL):
    """(m, margin) where m = dim_R(rowspace(M) ∩ R^n) via the stacked rank."""
    M = _as_matrix(M)
    r = M.shape[0]
    row_report = rank_with_margin(M, tol)
    if row_report.rank != r:
        raise ValueError(
            f"row-rank deficiency: {row_report.rank} < {r}; pass a basis of the subspace"
        )
    stacked = np.vstack([M, M.conj()])
    report = rank_with_margin(stacked, tol)
    m = 2 * r - report.rank
    return m, min(row_report.margin, report.margin)


def real_intersection_dim(M, tol: float = DEFAULT_RANK_TOL) -> int:
    """dim_R(E ∩ R^n) for E the row space of M; equals dim_C(E ∩ conj E)."""
    m, _ = real_intersection_report(M, tol)
    return m


def subspace_distance(A, B) -> float:
    """Largest principal-angle sine between the row spaces of A and B."""
    A = _as_matrix(A)
    B = _as_matrix(B)
    if A.shape[1] != B.shape[1]:
        raise ValueError("mismatched ambient dimension")
    qa = orthonormal_rows(A)
    qb = orthonormal_rows(B)
    if qa.shape[0] != qb.shape[0]:
        raise ValueError("row spaces have different dimensions")
    # residual of projecting B's basis onto A's row space; its largest
    # singular value is the largest principal-angle sine and stays accurate
    # for tiny angles (unlike sqrt(1 - cos^2))
    residual = qb - (qb @ qa.conj().T) @ qa
    sines = np.linalg.svd(residual, compute_uv=False)
    return float(np.clip(sines[0] if sines.size else 0.0, 0.0, 1.0))
