"""Integration backends: tensor Gauss-Hermite grids and quasi-random sampling."""

from __future__ import annotations

import numpy as np
from scipy.stats import norm, qmc


def pairwise_sum(values: np.ndarray):
    """Deterministic pairwise tree reduction (order independent of chunking)."""
    v = np.asarray(values)
    while v.shape[0] > 1:
        if v.shape[0] % 2:
            v = np.concatenate([v, np.zeros((1,) + v.shape[1:], dtype=v.dtype)])
        v = v[0::2] + v[1::2]
    return v[0] if v.shape[0] else np.zeros((), dtype=values.dtype)


def hermite_rule(n: int):
    """Nodes/weights for int f(x) dx against unit weight, from Gauss-Hermite."""
    x, w = np.polynomial.hermite.hermgauss(n)
    return x, w * np.exp(x * x)


def gauss_grid_3d(center: np.ndarray, scale: float, n: int):
    """Tensor Gauss-Hermite grid adapted to a Gaussian of the given center/scale.

    Returns (points (n^3, 3), weights (n^3,)) approximating int d^3k for
    integrands dominated by exp(-|k - center|^2 / (2 scale^2)).
    """
    x, w = hermite_rule(n)
    s = np.sqrt(2.0) * scale
    pts_1d = [center[d] + s * x for d in range(3)]
    wts_1d = w * s
    kx, ky, kz = np.meshgrid(*pts_1d, indexing="ij")
    points = np.column_stack([kx.ravel(), ky.ravel(), kz.ravel()])
    weights = (
        wts_1d[:, None, None] * wts_1d[None, :, None] * wts_1d[None, None, :]
    ).ravel()
    return points, weights


def sobol_gaussian(centers, scales, n_samples: int, seed: int):
    """Quasi-random Gaussian importance sample for several 3d blocks.

    centers/scales: lists of length P. Returns (points (n, P, 3), weights (n,))
    where each weight is 1 / (n * importance density).
    """
    p = len(centers)
    eng = qmc.Sobol(d=3 * p, scramble=True, seed=seed)
    m = max(int(np.ceil(np.log2(max(n_samples, 2)))), 1)
    u = eng.random_base2(m)
    n = u.shape[0]
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    z = norm.ppf(u).reshape(n, p, 3)
    pts = np.empty_like(z)
    log_q = np.zeros(n)
    for k in range(p):
        s = float(scales[k])
        pts[:, k, :] = np.asarray(centers[k]) + s * z[:, k, :]
        log_q += -0.5 * np.sum(z[:, k, :] ** 2, axis=1) - 3.0 * np.log(
            s * np.sqrt(2.0 * np.pi)
        )
    return pts, np.exp(-log_q) / n
