"""Projected Nystrom out-of-sample extension of coordinates and kernel.

A new point xbar first gets its kernel row kvec and diagonal value kappa from
the training set.  The plain Nystrom sum g_l = sum_i kvec[i] * Xi[i, l] lands
somewhere inside the embedding ball; projecting it onto the sphere of radius
sqrt(kappa) gives coordinates that (a) reduce exactly to the stored ones on
training points, (b) keep the squared length equal to kappa, and (c) maximize
the extended objective among all feasible one-point completions.  Symmetric
configurations can make g vanish; that case is flagged as degenerate rather
than divided through.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .certificate import certificate_matrix

# ||g|| at or below 1e-12 * sqrt(kappa) * ||kvec|| counts as degenerate
_DEGENERATE_RTOL = 1e-12


@dataclass
class ExtendedPoint:
    """One out-of-sample embedding: coordinates, kernel diagonal value,
    degeneracy flag, and the bordered-matrix data (b coefficients and the
    minimal feasible corner value s_min)."""

    coords: np.ndarray
    kappa: float
    degenerate: bool
    b_coeffs: np.ndarray
    s_min: float


@dataclass
class BlockExtensionReport:
    """Feasibility analysis of bordering rho* with a column b and corner s."""

    in_range: bool
    range_residual: float
    s_min: float
    b_coeffs: np.ndarray
    min_eig_at_s_min: float
    min_eig_below_s_min: float | None
    min_eigs_at_tested_s: dict


@dataclass
class ExtendedCertificateReport:
    """Certificate diagnostics for the bordered (N+1)-point program."""

    trace_identity_residual: float
    slackness_trace: float
    min_eig: float
    max_eig: float
    slackness_residual: float
    would_certify: bool
    quadratic_form_samples: list


def extend_point(dk, embedding, xbar):
    """Embed one new point by the projected Nystrom formula.

    Parameters
    ----------
    dk : DiffusionKernel
    embedding : EmbeddingResult
        A certified embedding of the training set.
    xbar : array of shape (d,)

    Returns
    -------
    ExtendedPoint
        Non-degenerate results satisfy ||coords||^2 == kappa; degenerate ones
        (the Nystrom sum g vanishes, e.g. at exact symmetry midpoints) carry
        zero coordinates and the flag instead of a division by ~0.
    """
    row = kernels.extension_row(dk, xbar)
    g = embedding.Xi.T @ row.kvec
    norm_g = float(np.linalg.norm(g))
    scale = np.sqrt(row.kappa) * float(np.linalg.norm(row.kvec))
    if norm_g <= _DEGENERATE_RTOL * scale:
        zeros = np.zeros(embedding.rank)
        return ExtendedPoint(
            coords=zeros, kappa=row.kappa, degenerate=True, b_coeffs=zeros.copy(), s_min=0.0
        )
    coords = np.sqrt(row.kappa) * g / norm_g
    return ExtendedPoint(
        coords=coords,
        kappa=row.kappa,
        degenerate=False,
        b_coeffs=coords.copy(),
        s_min=float(coords @ coords),
    )


def extend_kernel(dk, embedding, x, y):
    """Extended kernel value ``sum_l chi_l(x) chi_l(y)`` at two points.

    Restricted to training points this reproduces rho*; on the diagonal of a
    non-degenerate point it returns kappa.  If either extension is degenerate
    the product has no defined direction and 0.0 is returned.
    """
    px = extend_point(dk, embedding, x)
    py = extend_point(dk, embedding, y)
    if px.degenerate or py.degenerate:
        return 0.0
    return float(px.coords @ py.coords)


def bordered_matrix(rho, b, s):
    """Assemble the (N+1) x (N+1) block matrix [[rho, b], [b^T, s]]."""
    n = rho.shape[0]
    out = np.empty((n + 1, n + 1))
    out[:n, :n] = rho
    out[:n, n] = b
    out[n, :n] = b
    out[n, n] = s
    return out


def block_extension_analysis(embedding, b, tested_s=(1.0, 10.0, 100.0)):
    """Check when bordering rho* by a column ``b`` stays p.s.d.

    The bordered matrix is p.s.d. exactly when b lies in the range of rho*
    and the corner value s is at least s_min = sum_l b_l^2, where b_l are the
    coefficients of b in the chi basis.  The report carries the numerical
    evidence: the least eigenvalue at s_min (nonnegative up to 1e-10 when b
    is in range), at 0.9 * s_min (negative when s_min > 0), and at each
    tested s for out-of-range b (all negative).
    """
    b = np.asarray(b, dtype=float).reshape(-1)
    if not np.any(b):
        raise ValueError("b must be nonzero")
    Xi = embedding.Xi
    if b.shape[0] != Xi.shape[0]:
        raise ValueError("b must have one entry per training point")
    eigenvalues = np.einsum("ij,ij->j", Xi, Xi)
    b_coeffs = (Xi.T @ b) / eigenvalues
    residual = float(np.linalg.norm(b - Xi @ b_coeffs))
    in_range = residual <= 1e-8 * max(1.0, float(np.linalg.norm(b)))
    s_min = float(np.sum(b_coeffs**2))
    rho = Xi @ Xi.T

    def min_eig(s):
        return float(np.linalg.eigvalsh(bordered_matrix(rho, b, s))[0])

    min_at_s_min = min_eig(s_min)
    min_below = min_eig(0.9 * s_min) if s_min > 0 else None
    tested = {float(s): min_eig(float(s)) for s in tested_s}
    return BlockExtensionReport(
        in_range=in_range,
        range_residual=residual,
        s_min=s_min,
        b_coeffs=b_coeffs,
        min_eig_at_s_min=min_at_s_min,
        min_eig_below_s_min=min_below,
        min_eigs_at_tested_s=tested,
    )


def bordered_certificate(K, rho, kvec, kappa, b, s, n_samples=8, seed=0):
    """Certificate diagnostics for a bordered kernel/candidate pair.

    Builds Kbar = [[K, kvec], [kvec^T, kappa]], rho_bar = [[rho, b], [b^T, s]]
    and the bordered dual candidate
    Lbar = ddiag(Kbar)^{-1} ddiag(Kbar rho_bar) - Kbar, and reports its
    spectrum, the slackness trace Tr(rho_bar Lbar), the slackness residual,
    and sampled quadratic forms v^T Lbar v at the corner values
    v_s = sqrt(kappa) kvec^T v / sqrt(kvec^T rho kvec).  No sign is asserted
    for the sampled forms; they are diagnostic output.

    ``trace_identity_residual`` is NaN here; it only applies when b comes
    from the canonical extension formula and is filled in by
    :func:`extended_sdp_certificate`.
    """
    Kbar = bordered_matrix(np.asarray(getattr(K, "K", K), dtype=float), kvec, kappa)
    rho_bar = bordered_matrix(rho, b, s)
    Lbar = certificate_matrix(Kbar, rho_bar)
    eigs = np.linalg.eigvalsh(Lbar)
    slack_trace = float(np.sum(rho_bar * Lbar))
    slack_residual = float(
        np.linalg.norm(Lbar @ rho_bar) / max(np.linalg.norm(rho_bar), 1e-300)
    )
    quad = float(kvec @ rho @ kvec)
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(n_samples):
        v = rng.standard_normal(rho.shape[0])
        v_bar = np.append(v, np.sqrt(kappa) * float(kvec @ v) / np.sqrt(quad))
        samples.append(float(v_bar @ Lbar @ v_bar))
    scale = max(1.0, float(eigs[-1]))
    would_certify = slack_residual <= 1e-8 and eigs[0] >= -1e-8 * scale
    return ExtendedCertificateReport(
        trace_identity_residual=float("nan"),
        slackness_trace=slack_trace,
        min_eig=float(eigs[0]),
        max_eig=float(eigs[-1]),
        slackness_residual=slack_residual,
        would_certify=bool(would_certify),
        quadratic_form_samples=samples,
    )


def extended_sdp_certificate(dk, embedding, xbar):
    """Diagnose whether one projected-Nystrom extension solves the bordered SDP.

    Verifies the trace identity
    Tr(rho_bar Kbar) = Tr(rho* K) + 2 sqrt(kappa) sqrt(kvec^T rho* kvec) + kappa^2
    and the slackness trace Tr(rho_bar Lbar) = 0, then reports the spectrum
    of the bordered certificate.  The extension is feasible for the bordered
    program but generally not its optimum, so ``would_certify`` is usually
    False; that is expected output, not an error.

    Raises
    ------
    ValueError
        For degenerate extensions (no direction to border with) or a zero
        extended diagonal (the bordered dual candidate needs kappa > 0).
    """
    point = extend_point(dk, embedding, xbar)
    if point.degenerate:
        raise ValueError("extension is degenerate at this point; no certificate to check")
    if point.kappa <= 0:
        raise ValueError("extended diagonal vanishes; bordered certificate undefined")
    row = kernels.extension_row(dk, xbar)
    K = dk.K
    rho = embedding.Xi @ embedding.Xi.T
    b = embedding.Xi @ point.coords
    report = bordered_certificate(K, rho, row.kvec, row.kappa, b, point.kappa)
    quad = float(row.kvec @ rho @ row.kvec)
    expected = float(np.sum(K * rho)) + 2.0 * np.sqrt(row.kappa) * np.sqrt(quad) + row.kappa**2
    actual = float(
        np.sum(bordered_matrix(K, row.kvec, row.kappa) * bordered_matrix(rho, b, point.kappa))
    )
    report.trace_identity_residual = abs(actual - expected) / max(1.0, abs(expected))
    return report
