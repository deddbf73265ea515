"""Projected power method for the rank-constrained form of the embedding SDP.

The program  max Tr(rho K)  s.t.  rho >= 0, diag(rho) = diag(K)  is solved
through the standardized variable  rho_t = ddiag(K)^{-1/2} rho ddiag(K)^{-1/2}
factored as  rho_t = H H^T  with H of shape (N, r0) and unit-norm rows.  With
the coupling matrix  J = ddiag(K)^{1/2} K ddiag(K)^{1/2}  the objective becomes
E(H) = Tr(H^T J H), maximized by repeating  H <- P(J H)  where P normalizes
rows.  For p.s.d. J the objective is nondecreasing along the iterates, so the
stopping rule watches the change of E.

E is only resolved to about one ulp, while the distance of H from its fixed
point keeps shrinking after E has visually plateaued; the certificate needs
that extra accuracy.  solve() therefore runs a short polish phase (plain
iterations, no E test) after the stopping rule fires, ending early if H
reaches an exact floating-point fixed point.
"""

from dataclasses import dataclass

import numpy as np

# a row whose norm is below this is treated as zero and re-randomized
_ZERO_ROW = 1e-300

# an objective decrease beyond this relative amount breaks the monotonicity
# guarantee for p.s.d. couplings and is reported as an internal error
_MONOTONE_RTOL = 1e-9


@dataclass
class SolverConfig:
    """Knobs of the projected power method.

    ``tol_conv`` is the relative objective-change threshold;
    ``polish_iters`` caps the post-convergence polish phase (0 disables it
    and reproduces the bare stopping rule).
    """

    r0: int = 10
    max_iters: int = 10000
    tol_conv: float = 1e-10
    seed: int = 0
    polish_iters: int = 2000

    def __post_init__(self):
        if self.r0 < 2:
            raise ValueError("r0 must be at least 2")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.tol_conv <= 0:
            raise ValueError("tol_conv must be positive")
        if self.polish_iters < 0:
            raise ValueError("polish_iters must be nonnegative")


@dataclass
class FactorState:
    """Result of the projected power method."""

    H: np.ndarray
    objective: float
    iterations: int
    converged: bool


@dataclass
class Coupling:
    """Congruence-transformed kernel ``J = ddiag(K)^{1/2} K ddiag(K)^{1/2}``."""

    J: np.ndarray


def build_coupling(K):
    """Form the coupling matrix from a kernel matrix (or DiffusionKernel).

    Raises
    ------
    ValueError
        If some diagonal entry of K is not strictly positive; the row
        standardization divides by sqrt(diag K), and a vanishing diagonal
        means the corresponding point cannot carry an embedding constraint.
    """
    K = np.asarray(getattr(K, "K", K), dtype=float)
    diag = np.diag(K)
    bad = np.flatnonzero(diag <= 0)
    if bad.size:
        raise ValueError(
            f"kernel diagonal must be strictly positive; first offending point "
            f"index {bad[0]} with K[i,i] = {diag[bad[0]]:.3e}"
        )
    root = np.sqrt(diag)
    return Coupling(J=np.outer(root, root) * K)


def project_rows(M, rng=None):
    """Scale every row of M to unit Euclidean norm.

    Rows of norm below 1e-300 are replaced by a fresh random unit vector
    drawn from ``rng`` (a zero row has no direction to keep, and any fixed
    replacement would bias the iteration).
    """
    M = np.asarray(M, dtype=float)
    norms = np.linalg.norm(M, axis=1)
    zero = norms < _ZERO_ROW
    if np.any(zero):
        if rng is None:
            raise ValueError("zero row encountered and no rng supplied")
        M = M.copy()
        for i in np.flatnonzero(zero):
            row = rng.standard_normal(M.shape[1])
            while np.linalg.norm(row) < _ZERO_ROW:
                row = rng.standard_normal(M.shape[1])
            M[i] = row
        norms = np.linalg.norm(M, axis=1)
    return M / norms[:, None]


def init_factor(n_points, cfg, rng=None):
    """Random feasible start: entries uniform in [-1, 1], rows normalized.

    Deterministic given ``cfg.seed`` (unless an external rng is supplied).
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    return project_rows(rng.uniform(-1.0, 1.0, (n_points, cfg.r0)), rng)


def objective(J, H):
    """Quadratic objective ``E(H) = Tr(H^T J H)``.

    Equals Tr(rho K) for rho = ddiag(K)^{1/2} H H^T ddiag(K)^{1/2}.
    """
    J = np.asarray(getattr(J, "J", J), dtype=float)
    if H.shape[0] != J.shape[0]:
        raise ValueError(f"shape mismatch: J is {J.shape}, H is {H.shape}")
    return float(np.einsum("ij,ij->", H, J @ H))


def solve(J, cfg):
    """Run the projected power method until the objective stalls.

    Parameters
    ----------
    J : Coupling or (N, N) array
        Symmetric p.s.d. coupling matrix.
    cfg : SolverConfig

    Returns
    -------
    FactorState
        Final factor with unit rows, its objective, the total iteration
        count, and whether the stopping rule fired before ``max_iters``.

    Raises
    ------
    RuntimeError
        If the objective decreases by more than 1e-9 relative, which cannot
        happen for p.s.d. J and therefore signals a corrupted input.
    """
    J = np.asarray(getattr(J, "J", J), dtype=float)
    n = J.shape[0]
    if cfg.r0 > n:
        raise ValueError(f"r0 = {cfg.r0} exceeds the number of points {n}")
    rng = np.random.default_rng(cfg.seed)
    H = init_factor(n, cfg, rng)
    energy = objective(J, H)
    iterations = 0
    converged = False
    for _ in range(cfg.max_iters):
        H = project_rows(J @ H, rng)
        iterations += 1
        new_energy = objective(J, H)
        if new_energy < energy - _MONOTONE_RTOL * max(1.0, abs(new_energy)):
            raise RuntimeError(
                f"objective decreased from {energy!r} to {new_energy!r}; "
                "the coupling matrix is not p.s.d."
            )
        if abs(new_energy - energy) <= cfg.tol_conv * max(1.0, abs(new_energy)):
            energy = new_energy
            converged = True
            break
        energy = new_energy
    if converged:
        for _ in range(cfg.polish_iters):
            H_next = project_rows(J @ H, rng)
            iterations += 1
            if np.array_equal(H_next, H):
                break
            H = H_next
        energy = objective(J, H)
    return FactorState(H=H, objective=energy, iterations=iterations, converged=converged)
