import numpy as np
import pytest

from sdpembed import (
    Coupling,
    SolverConfig,
    build_coupling,
    diffusion_kernel,
    gaussian_gram,
    init_factor,
    objective,
    project_rows,
    solve,
)

from conftest import C, tight_config


def _two_point_kernel():
    return diffusion_kernel(gaussian_gram(np.array([[0.0], [1.0]]), 1.0)).K


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(r0=1)
    with pytest.raises(ValueError):
        SolverConfig(tol_conv=0.0)
    with pytest.raises(ValueError):
        SolverConfig(max_iters=0)


def test_build_coupling_two_point():
    # diag(K) = c I, so J = c * K = c^2 [[1, -1], [-1, 1]]
    coupling = build_coupling(_two_point_kernel())
    assert np.allclose(coupling.J, C**2 * np.array([[1, -1], [-1, 1]]), atol=1e-15)


def test_build_coupling_diagonal_kernel():
    K = np.diag([0.5, 2.0, 1.0])
    coupling = build_coupling(K)
    assert np.allclose(coupling.J, np.diag([0.5**2, 2.0**2, 1.0**2]), atol=0)


def test_build_coupling_psd_congruence():
    rng = np.random.default_rng(0)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((15, 2)), 1.0))
    eigs = np.linalg.eigvalsh(build_coupling(dk.K).J)
    assert eigs[0] >= -1e-12 * max(eigs[-1], 1e-300)
    assert np.max(np.abs(build_coupling(dk).J - build_coupling(dk.K).J)) == 0.0


def test_build_coupling_rejects_zero_diagonal():
    K = np.array([[0.0, 0.0], [0.0, 1.0]])
    with pytest.raises(ValueError, match="index 0"):
        build_coupling(K)


def test_project_rows_three_four_five():
    out = project_rows(np.array([[3.0, 4.0]]))
    assert np.allclose(out, [[0.6, 0.8]], atol=1e-15)


def test_project_rows_idempotent_on_unit_rows():
    rng = np.random.default_rng(1)
    H = project_rows(rng.standard_normal((10, 4)))
    assert np.allclose(project_rows(H), H, atol=1e-15)


def test_project_rows_zero_row_policy():
    rng = np.random.default_rng(2)
    M = np.zeros((3, 5))
    M[0, 0] = 2.0
    out = project_rows(M, rng)
    assert np.allclose(np.linalg.norm(out, axis=1), 1.0, atol=1e-12)
    with pytest.raises(ValueError, match="zero row"):
        project_rows(np.zeros((2, 3)))


def test_init_factor_unit_rows_and_determinism():
    cfg = SolverConfig(r0=6, seed=42)
    H = init_factor(50, cfg)
    assert H.shape == (50, 6)
    assert np.allclose(np.linalg.norm(H, axis=1), 1.0, atol=1e-12)
    assert np.array_equal(H, init_factor(50, cfg))
    cfg2 = SolverConfig(r0=2, seed=0)
    assert init_factor(2, cfg2).shape == (2, 2)


def test_objective_top_eigenspace_oracle():
    # orthonormal columns spanning the top-r eigenspace give the sum of the
    # top r eigenvalues (no row feasibility required for the identity)
    rng = np.random.default_rng(3)
    M = rng.standard_normal((12, 12))
    J = M @ M.T
    w, V = np.linalg.eigh(J)
    r = 4
    H = V[:, -r:]
    assert objective(J, H) == pytest.approx(np.sum(w[-r:]), rel=1e-12)


def test_objective_indicator_rows():
    J = np.diag([1.0, 2.0, 3.0])
    H = np.zeros((3, 2))
    H[1, 0] = 1.0
    assert objective(J, H) == pytest.approx(2.0, abs=0)


def test_objective_shape_mismatch():
    with pytest.raises(ValueError, match="shape"):
        objective(np.eye(3), np.ones((2, 2)))


def test_solve_two_point_closed_form():
    state = solve(build_coupling(_two_point_kernel()), tight_config(r0=2))
    assert state.converged
    assert state.objective == pytest.approx(4 * C**2, abs=1e-12)
    rho_std = state.H @ state.H.T
    assert np.allclose(rho_std, [[1, -1], [-1, 1]], atol=1e-12)


def test_solve_diagonal_coupling_is_immediate():
    J = np.diag([0.3, 0.7, 1.1])
    state = solve(Coupling(J), SolverConfig(r0=2, seed=1))
    assert state.objective == pytest.approx(np.trace(J), abs=1e-12)
    assert state.converged


def test_solve_nonnegative_kernel_gives_rank_one():
    K = np.array([[1.0, 0.5], [0.5, 1.0]])
    state = solve(build_coupling(K), tight_config(r0=2, seed=3))
    assert np.allclose(state.H @ state.H.T, np.ones((2, 2)), atol=1e-10)


def test_solve_matches_trace_identity():
    # Tr(rho K) = E(H) under rho = ddiag(K)^(1/2) H H^T ddiag(K)^(1/2)
    rng = np.random.default_rng(4)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((18, 2)), 1.5))
    state = solve(build_coupling(dk.K), tight_config())
    root = np.sqrt(np.diag(dk.K))
    rho = (root[:, None] * state.H) @ (root[:, None] * state.H).T
    assert np.sum(dk.K * rho) == pytest.approx(state.objective, rel=1e-10)


def test_solve_deterministic():
    rng = np.random.default_rng(5)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((10, 2)), 1.0))
    cfg = SolverConfig(seed=7, r0=5)
    a = solve(build_coupling(dk.K), cfg)
    b = solve(build_coupling(dk.K), cfg)
    assert np.array_equal(a.H, b.H)
    assert a.objective == b.objective and a.iterations == b.iterations


def test_solve_unconverged_flag():
    rng = np.random.default_rng(6)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((12, 2)), 1.0))
    state = solve(build_coupling(dk.K), SolverConfig(max_iters=1, tol_conv=1e-15))
    assert not state.converged
    assert state.iterations == 1


def test_solve_rejects_indefinite_coupling():
    # dominant negative eigenvalue makes the objective decrease
    J = np.array([[-1.0, 2.0], [2.0, -1.0]])
    with pytest.raises(RuntimeError, match="decreased"):
        solve(Coupling(J), SolverConfig(r0=2, seed=0))


def test_solve_r0_exceeding_n_rejected():
    with pytest.raises(ValueError, match="exceeds"):
        solve(Coupling(np.eye(3)), SolverConfig(r0=4))


def test_iteration_preserves_feasibility_and_monotonicity():
    # manual replay of the iteration through the public pieces
    rng = np.random.default_rng(8)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((16, 2)), 1.2))
    J = build_coupling(dk.K).J
    cfg = SolverConfig(r0=6, seed=9)
    H = init_factor(16, cfg)
    energy = objective(J, H)
    for _ in range(200):
        H = project_rows(J @ H)
        assert np.max(np.abs(np.linalg.norm(H, axis=1) - 1.0)) < 1e-12
        new_energy = objective(J, H)
        assert new_energy >= energy - 1e-12 * max(1.0, abs(new_energy))
        energy = new_energy


def test_polish_zero_reproduces_bare_stopping_rule():
    rng = np.random.default_rng(10)
    dk = diffusion_kernel(gaussian_gram(rng.standard_normal((14, 2)), 1.0))
    coupling = build_coupling(dk.K)
    bare = solve(coupling, SolverConfig(seed=1, polish_iters=0))
    polished = solve(coupling, SolverConfig(seed=1))
    assert bare.converged and polished.converged
    assert bare.iterations <= polished.iterations
