"""One-call orchestration: kernel, solve, certificate, embedding."""

from dataclasses import dataclass

from . import certificate, embedding, kernels, solver


@dataclass
class PipelineResult:
    kernel: kernels.DiffusionKernel
    factor: solver.FactorState
    embedding: embedding.EmbeddingResult
    certificate: certificate.CertificateReport


def embed_points(points, sigma, config=None, rank_tol=1e-6, tol_slack=1e-8, tol_eig=1e-8):
    """Run the full training pipeline on a point cloud.

    ``config.r0`` is capped at the number of points.  Certification failure
    is reported in the result, not raised.
    """
    cfg = config or solver.SolverConfig()
    base = kernels.gaussian_gram(points, sigma)
    dk = kernels.diffusion_kernel(base)
    n = dk.K.shape[0]
    if cfg.r0 > n:
        cfg = solver.SolverConfig(
            r0=max(2, n),
            max_iters=cfg.max_iters,
            tol_conv=cfg.tol_conv,
            seed=cfg.seed,
            polish_iters=cfg.polish_iters,
        )
    state = solver.solve(solver.build_coupling(dk.K), cfg)
    result = embedding.factor_to_embedding(dk.K, state, rank_tol=rank_tol)
    report = certificate.check_optimality(dk.K, result.H_Xi, tol_slack=tol_slack, tol_eig=tol_eig)
    return PipelineResult(kernel=dk, factor=state, embedding=result, certificate=report)
