"""Embedding coordinates from a converged factor, plus rigidity diagnostics.

The factor is un-standardized to H_Xi = ddiag(K)^{1/2} H and decomposed by
SVD; the embedding keeps the columns whose singular values exceed
``rank_tol`` relative to the largest.  Column l of the result is the
eigenvector chi_l of rho* = H_Xi H_Xi^T scaled so ||chi_l||^2 equals the
corresponding eigenvalue, hence rho* = Xi Xi^T up to the truncation error.
Every embedded point sits at radius sqrt(K(x, x)) from the origin: the
constraint diag(rho) = diag(K) pins the lengths, only the angles are learned.
"""

from dataclasses import dataclass

import numpy as np

from .diffmaps import fix_signs


@dataclass
class EmbeddingResult:
    """Embedding coordinates ``Xi`` (N x r), all ``r0`` singular values of
    H_Xi descending, the effective rank ``r``, and the factor itself."""

    Xi: np.ndarray
    singular_values: np.ndarray
    rank: int
    H_Xi: np.ndarray


@dataclass
class MeanValueReport:
    """Worst absolute residual of the mean-value identity over points and
    embedding columns."""

    max_residual: float


def _kernel_matrix(K):
    return np.asarray(getattr(K, "K", K), dtype=float)


def factor_to_embedding(K, factor, rank_tol=1e-6):
    """Convert a solved factor into embedding coordinates.

    Parameters
    ----------
    K : DiffusionKernel or (N, N) array
    factor : FactorState or (N, r0) array
        Standardized factor with unit rows.
    rank_tol : float
        Relative singular-value cutoff for the effective rank.

    Returns
    -------
    EmbeddingResult
        Coordinates ordered by descending singular value (ties broken by the
        first index of the largest-magnitude entry), each column flipped so
        its largest-magnitude entry is positive.
    """
    K = _kernel_matrix(K)
    H = np.asarray(getattr(factor, "H", factor), dtype=float)
    H_Xi = np.sqrt(np.diag(K))[:, None] * H
    U, sv, _ = np.linalg.svd(H_Xi, full_matrices=False)
    if sv[0] <= 0:
        raise RuntimeError("all singular values vanish; the kernel diagonal is zero")
    rank = int(np.sum(sv > rank_tol * sv[0]))
    cols = U[:, :rank] * sv[:rank]
    order = sorted(
        range(rank),
        key=lambda l: (-sv[l], int(np.argmax(np.abs(cols[:, l])))),
    )
    return EmbeddingResult(
        Xi=fix_signs(cols[:, order]),
        singular_values=sv.copy(),
        rank=rank,
        H_Xi=H_Xi,
    )


def kernel_distance(embedding, i, j):
    """Distance ``||Xi(i) - Xi(j)||_2`` between two embedded training points.

    Coincides with sqrt(rho*(i,i) + rho*(j,j) - 2 rho*(i,j)).
    """
    n = embedding.Xi.shape[0]
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("point indices out of range")
    return float(np.linalg.norm(embedding.Xi[i] - embedding.Xi[j]))


def mean_value_check(K, embedding):
    """Verify the mean-value identity on a certified embedding.

    Each coordinate must reproduce itself as a weighted kernel average:
    chi_l(i) = [K(i,i) / (K rho*)(i,i)] * sum_j K(i,j) chi_l(j).  Returns the
    largest absolute residual; on certified solutions it sits at rounding
    level, while generic feasible-but-suboptimal factors violate it badly.

    Raises
    ------
    RuntimeError
        If some (K rho*)(i, i) is not strictly positive, which contradicts
        certification and indicates the input was not a certified solution.
    """
    K = _kernel_matrix(K)
    Xi = embedding.Xi
    KXi = K @ Xi
    k_rho_diag = np.einsum("ij,ij->i", KXi, Xi)
    if np.any(k_rho_diag <= 0):
        bad = int(np.argmin(k_rho_diag))
        raise RuntimeError(
            f"(K rho)(i, i) = {k_rho_diag[bad]:.3e} at point {bad}; "
            "mean-value factors are positive on certified solutions"
        )
    factors = np.diag(K) / k_rho_diag
    residual = np.abs(Xi - factors[:, None] * KXi)
    return MeanValueReport(max_residual=float(residual.max()))
