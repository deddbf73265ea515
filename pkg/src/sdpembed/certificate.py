"""Dual certificate of global optimality for the fixed-diagonal kernel SDP.

A feasible rho (p.s.d. with diag(rho) = diag(K)) is a global maximizer of
Tr(rho K) if and only if the Laplacian-like matrix

    L(rho) = ddiag(K)^{-1} ddiag(K rho) - K

satisfies L(rho) rho = 0 and L(rho) >= 0.  L + K is diagonal by construction,
with entries D(i, i) = (K rho)(i, i) / K(i, i); on certified solutions
D(i, i) >= K(i, i), which is what makes the mean-value factor of the
out-of-sample formula positive.  The dual objective
Tr(ddiag(K) L) + Tr(ddiag(K) K) matches the primal Tr(K rho) at optima, so the
reported duality gap should vanish.
"""

from dataclasses import dataclass

import numpy as np

# how many of the smallest eigenvalues of L the report exposes
_N_LEAST = 6

_DEFAULT_TOL = 1e-8


class PrimalInfeasibilityError(ValueError):
    """The candidate factor does not satisfy the diagonal constraints."""


@dataclass
class CertificateReport:
    """Outcome of the optimality check; eigenvalues ascending."""

    slackness_residual: float
    least_eigenvalues: np.ndarray
    duality_gap: float
    D_diagonal: np.ndarray
    is_certified: bool
    tol_slack: float
    tol_eig: float
    objective: float
    mean_value_slack: float


@dataclass
class NuclearEquivalenceReport:
    """Agreement between the kernel SDP solution and the nuclear-norm form."""

    diag_residual: float
    rank_X: int
    rank_rho: int
    nuclear_trace_gap: float
    ok: bool


def _kernel_matrix(K):
    return np.asarray(getattr(K, "K", K), dtype=float)


def certificate_matrix(K, rho):
    """Candidate dual matrix ``L(rho) = ddiag(K)^{-1} ddiag(K rho) - K``."""
    K = _kernel_matrix(K)
    diag = np.diag(K)
    if np.any(diag <= 0):
        raise ValueError("kernel diagonal must be strictly positive")
    return np.diag(np.einsum("ij,ji->i", K, rho) / diag) - K


def check_optimality(K, H_Xi, tol_slack=_DEFAULT_TOL, tol_eig=_DEFAULT_TOL):
    """Decide global optimality of the candidate ``rho = H_Xi H_Xi^T``.

    Parameters
    ----------
    K : DiffusionKernel or (N, N) array
        The kernel defining the program.
    H_Xi : (N, r0) array
        Un-standardized factor; row i must have squared norm K(i, i).

    Returns
    -------
    CertificateReport
        Certification succeeds when the complementary-slackness residual
        ||L H_Xi||_F / ||H_Xi||_F is at most ``tol_slack`` and the least
        eigenvalue of L is at least ``-tol_eig * max(1, lambda_max(L))``.
        Failure to certify is a report, not an exception: the solver can
        legitimately stop at an uncertified critical point.

    Raises
    ------
    PrimalInfeasibilityError
        If some row norm deviates from the required diagonal by more than
        1e-8; certifying an infeasible candidate would be meaningless.
    """
    K = _kernel_matrix(K)
    diag = np.diag(K)
    row_sq = np.einsum("ij,ij->i", H_Xi, H_Xi)
    violation = np.abs(row_sq - diag)
    worst = int(np.argmax(violation))
    if violation[worst] > 1e-8:
        raise PrimalInfeasibilityError(
            f"row {worst} has squared norm {row_sq[worst]:.6e}, "
            f"constraint requires {diag[worst]:.6e}"
        )
    rho = H_Xi @ H_Xi.T
    L = certificate_matrix(K, rho)
    eigenvalues = np.linalg.eigvalsh(L)
    least = eigenvalues[: min(_N_LEAST, eigenvalues.shape[0])]
    slackness = float(np.linalg.norm(L @ H_Xi) / np.linalg.norm(H_Xi))
    primal = float(np.sum(K * rho))
    dual = float(np.sum(diag * np.diag(L)) + np.sum(diag * diag))
    D_diagonal = np.diag(L) + diag
    scale = max(1.0, float(eigenvalues[-1]))
    certified = slackness <= tol_slack and eigenvalues[0] >= -tol_eig * scale
    return CertificateReport(
        slackness_residual=slackness,
        least_eigenvalues=least.copy(),
        duality_gap=dual - primal,
        D_diagonal=D_diagonal,
        is_certified=bool(certified),
        tol_slack=tol_slack,
        tol_eig=tol_eig,
        objective=primal,
        mean_value_slack=float(np.min(D_diagonal - diag)),
    )


def nuclear_equivalence_check(K, rho_star, rank_rtol=1e-8):
    """Cross-check the solution against the equivalent nuclear-norm program.

    With Sigma the symmetric square root of I - K (which requires
    lambda_max(K) < 1), the matrix X* = Sigma^T rho* Sigma solves a
    nuclear-norm minimization with the same rank.  This verifies that
    (i) mapping X* back reproduces the fixed diagonal, (ii) the congruence
    preserved the rank, and (iii) the nuclear norm of the p.s.d. X* equals
    its trace.
    """
    K = _kernel_matrix(K)
    w, V = np.linalg.eigh(np.eye(K.shape[0]) - K)
    if w[0] <= 0:
        raise ValueError("kernel must have top eigenvalue strictly below 1")
    sigma = (V * np.sqrt(w)) @ V.T
    sigma_inv = (V / np.sqrt(w)) @ V.T
    X = sigma.T @ rho_star @ sigma
    back = sigma_inv.T @ X @ sigma_inv
    diag_residual = float(np.max(np.abs(np.diag(back) - np.diag(K))))

    sv_X = np.linalg.svd(X, compute_uv=False)
    sv_rho = np.linalg.svd(rho_star, compute_uv=False)
    rank_X = int(np.sum(sv_X > rank_rtol * sv_X[0]))
    rank_rho = int(np.sum(sv_rho > rank_rtol * sv_rho[0]))
    nuclear_trace_gap = float(abs(np.sum(sv_X) - np.trace(X)))
    ok = (
        diag_residual <= 1e-8
        and rank_X == rank_rho
        and nuclear_trace_gap <= 1e-10 * max(1.0, abs(float(np.trace(X))))
    )
    return NuclearEquivalenceReport(
        diag_residual=diag_residual,
        rank_X=rank_X,
        rank_rho=rank_rho,
        nuclear_trace_gap=nuclear_trace_gap,
        ok=ok,
    )
