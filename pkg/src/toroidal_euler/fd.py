"""Fourth-order central differences of Cartesian fields."""

from __future__ import annotations

import numpy as np

OFFSETS = np.array([2.0, 1.0, -1.0, -2.0])
WEIGHTS = np.array([-1.0, 8.0, -8.0, 1.0]) / 12.0


def stencil_points(p, h: float):
    """Centre followed by the 12 axis offsets (axis-major, then ``+2h, +h, -h, -2h``); shape ``(n, 13, 3)``."""
    p = np.asarray(p, dtype=float)
    shifts = (OFFSETS[None, :, None] * np.eye(3)[:, None, :]).reshape(12, 3) * h
    return np.concatenate([p[:, None, :], p[:, None, :] + shifts[None]], axis=1)


def central_difference(fn, p, h: float, seed_zeta=None):
    """Value and gradient of a field given pointwise by ``fn``.

    ``fn(points, seeds)`` receives ``(N, 3)`` points and matching toroidal
    seeds (or None) and returns ``(values (N, m), ok (N,))``.  The result is
    ``(f (n, m), df (n, m, 3), ok (n,))`` with ``df[..., a, k] = d f_a / d x_k``;
    ``ok`` requires all 13 evaluations at a point to succeed.
    """
    pts = stencil_points(p, h)
    n = pts.shape[0]
    seeds = None if seed_zeta is None else np.repeat(np.asarray(seed_zeta, dtype=float)[:, None], 13, axis=1).ravel()
    vals, ok = fn(pts.reshape(-1, 3), seeds)
    vals = np.asarray(vals, dtype=float).reshape(n, 13, -1)
    ok = np.all(np.asarray(ok).reshape(n, 13), axis=1)
    side = vals[:, 1:, :].reshape(n, 3, 4, -1)  # (n, axis k, offset, component a)
    df = np.einsum("nkoa,o->nak", side, WEIGHTS) / h
    return vals[:, 0, :], df, ok


def curl(du):
    """Curl from a velocity gradient ``du[..., a, k] = d u_a / d x_k``."""
    return np.stack([du[..., 2, 1] - du[..., 1, 2], du[..., 0, 2] - du[..., 2, 0], du[..., 1, 0] - du[..., 0, 1]],
                    axis=-1)
