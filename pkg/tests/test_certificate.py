import numpy as np
import pytest

from sdpembed import (
    PrimalInfeasibilityError,
    certificate_matrix,
    check_optimality,
    diffusion_kernel,
    embed_points,
    gaussian_gram,
    nuclear_equivalence_check,
)

from conftest import C, tight_config


def _two_point_kernel():
    return diffusion_kernel(gaussian_gram(np.array([[0.0], [1.0]]), 1.0)).K


def test_certificate_matrix_two_point_closed_form():
    # rho* = c [[1,-1],[-1,1]] gives ddiag(K rho*) = 2c^2 I and L = c * ones
    K = _two_point_kernel()
    rho = C * np.array([[1.0, -1.0], [-1.0, 1.0]])
    L = certificate_matrix(K, rho)
    assert np.allclose(L, C * np.ones((2, 2)), atol=1e-15)


def test_certificate_matrix_zero_rho():
    K = _two_point_kernel()
    assert np.allclose(certificate_matrix(K, np.zeros((2, 2))), -K, atol=0)


def test_trivial_solution_properties():
    # for entrywise-nonnegative K, rho_K = sqrt(diag) outer sqrt(diag)
    # satisfies L(rho_K) rho_K = 0 and L(rho_K) >= 0
    rng = np.random.default_rng(0)
    for trial in range(5):
        A = rng.uniform(0.1, 1.0, (5, 5))
        K = A @ A.T
        root = np.sqrt(np.diag(K))
        rho_K = np.outer(root, root)
        L = certificate_matrix(K, rho_K)
        assert np.max(np.abs(L @ rho_K)) < 1e-10 * np.max(np.abs(rho_K))
        assert np.linalg.eigvalsh(L)[0] >= -1e-10 * max(1, np.linalg.eigvalsh(L)[-1])


def test_check_optimality_two_point(two_point):
    report = two_point.certificate
    assert report.is_certified
    assert report.slackness_residual < 1e-12
    assert np.allclose(report.least_eigenvalues, [0.0, 2 * C], atol=1e-10)
    assert abs(report.duality_gap) < 1e-10
    assert report.objective == pytest.approx(4 * C**2, abs=1e-12)
    # D_ii = (K rho)_ii / K_ii = 2c^2 / c = 2c, so D - diag(K) = c > 0
    assert report.mean_value_slack == pytest.approx(C, abs=1e-12)


def test_check_optimality_rejects_suboptimal_sign():
    # rho with rho_12 = +c is feasible but not optimal: K rho = 0 there,
    # so L = -K which is indefinite
    K = _two_point_kernel()
    H = np.sqrt(C) * np.ones((2, 1))
    report = check_optimality(K, H)
    assert not report.is_certified
    assert report.least_eigenvalues[0] < -1e-3
    assert report.mean_value_slack < 0


def test_check_optimality_trivial_fixture():
    K = np.array([[1.0, 0.5], [0.5, 1.0]])
    H = np.ones((2, 1))
    report = check_optimality(K, H)
    assert report.is_certified
    assert report.slackness_residual < 1e-12


def test_check_optimality_primal_infeasibility():
    K = _two_point_kernel()
    H = 1.5 * np.sqrt(C) * np.array([[1.0], [-1.0]])
    with pytest.raises(PrimalInfeasibilityError, match="squared norm"):
        check_optimality(K, H)


def test_certified_random_instance_invariants():
    rng = np.random.default_rng(1)
    result = embed_points(rng.standard_normal((20, 2)), 1.5, config=tight_config())
    report = result.certificate
    assert report.is_certified
    rho = result.embedding.H_Xi @ result.embedding.H_Xi.T
    L = certificate_matrix(result.kernel.K, rho)
    # complementary slackness in Frobenius norm
    assert np.linalg.norm(L @ rho) <= 1e-8 * np.linalg.norm(rho)
    # duality gap at the canonical candidate
    assert abs(report.duality_gap) <= 1e-10 * max(1.0, abs(report.objective))
    # L + K is exactly diagonal by construction
    off_diag = (L + result.kernel.K) - np.diag(np.diag(L + result.kernel.K))
    assert np.max(np.abs(off_diag)) == 0.0
    # mean-value factor bounds: 0 < K_ii / (K rho)_ii <= 1 / K_ii
    diag_K = np.diag(result.kernel.K)
    factors = diag_K / np.einsum("ij,ji->i", result.kernel.K, rho)
    assert np.all(factors > 0)
    assert np.all(factors <= 1.0 / diag_K + 1e-10)


def test_least_eigenvalues_has_six_entries_at_scale():
    rng = np.random.default_rng(2)
    result = embed_points(rng.standard_normal((12, 2)), 1.5, config=tight_config())
    assert result.certificate.least_eigenvalues.shape == (6,)
    assert np.all(np.diff(result.certificate.least_eigenvalues) >= 0)


def test_nuclear_equivalence_two_point(two_point):
    K = two_point.kernel.K
    rho = two_point.embedding.H_Xi @ two_point.embedding.H_Xi.T
    report = nuclear_equivalence_check(K, rho)
    assert report.ok
    assert report.rank_X == report.rank_rho == 1


def test_nuclear_trace_matches_shifted_objective(two_point):
    # Tr(X*) = Tr(rho* (I - K)) by the cyclic property
    K = two_point.kernel.K
    rho = two_point.embedding.H_Xi @ two_point.embedding.H_Xi.T
    w, V = np.linalg.eigh(np.eye(2) - K)
    sigma = (V * np.sqrt(w)) @ V.T
    X = sigma.T @ rho @ sigma
    assert np.trace(X) == pytest.approx(np.sum(rho * (np.eye(2) - K)), rel=1e-12)


def test_nuclear_equivalence_random_small_instance():
    rng = np.random.default_rng(3)
    result = embed_points(rng.standard_normal((6, 2)), 1.5, config=tight_config())
    assert result.certificate.is_certified
    rho = result.embedding.H_Xi @ result.embedding.H_Xi.T
    report = nuclear_equivalence_check(result.kernel.K, rho)
    assert report.ok
    assert report.diag_residual < 1e-8
    assert report.nuclear_trace_gap < 1e-10


def test_nuclear_equivalence_requires_contraction():
    with pytest.raises(ValueError, match="below 1"):
        nuclear_equivalence_check(np.eye(3), np.eye(3))
