"""Vectorized numpy versions of the numba kernels (same signatures)."""
from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np


@lru_cache(maxsize=32)
def _ball(dim: int, budget: int) -> np.ndarray:
    """All integer points of Z^dim with squared norm <= budget, lexicographic."""
    pts = np.zeros((1, 0), dtype=np.int64)
    rest = np.array([budget], dtype=np.int64)
    for _ in range(dim):
        r = isqrt(budget)
        vals = np.arange(-r, r + 1, dtype=np.int64)
        ok = vals[None, :] ** 2 <= rest[:, None]
        rows, cols = np.nonzero(ok)
        pts = np.hstack([pts[rows], vals[cols, None]])
        rest = rest[rows] - vals[cols] ** 2
    pts.setflags(write=False)
    return pts


def _isqrt_array(x: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(x.astype(np.float64))).astype(np.int64)
    r -= r * r > x
    r += (r + 1) * (r + 1) <= x
    return r


def _canonical_lead(p: np.ndarray) -> np.ndarray:
    nz = p != 0
    first = np.argmax(nz, axis=1)
    lead = p[np.arange(len(p)), first]
    return nz.any(axis=1) & (lead > 0)


def pluecker_slice(h: int, p12: int, out=None, write=True):
    b1 = h - p12 * p12
    if b1 < 0:
        return np.zeros((0, 6), dtype=np.int64)
    q = _ball(4, b1)  # columns p13, p14, p23, p24
    rest = b1 - (q**2).sum(axis=1)
    num = q[:, 0] * q[:, 3] - q[:, 1] * q[:, 2]
    if p12 != 0:
        keep = num % p12 == 0
        p34 = num[keep] // p12
        q, rest = q[keep], rest[keep]
        keep = p34**2 <= rest
        p = np.column_stack(
            [np.full(int(keep.sum()), p12, dtype=np.int64), q[keep], p34[keep]]
        )
    else:
        keep = num == 0
        q, rest = q[keep], rest[keep]
        r = _isqrt_array(rest)
        reps = 2 * r + 1
        idx = np.repeat(np.arange(len(q)), reps)
        start = np.repeat(np.cumsum(reps) - reps, reps)
        p34 = np.arange(len(idx), dtype=np.int64) - start - r[idx]
        p = np.column_stack([np.zeros(len(idx), dtype=np.int64), q[idx], p34])
        p = p[_canonical_lead(p)]
    g = np.gcd.reduce(p, axis=1)
    return p[g == 1]


def psi_one_to_many(u, uc, v, out=None):
    m = np.einsum("it,mjt->mij", u, v)
    k = np.einsum("it,mjt->mij", uc, v)
    cmax, _ = sv2(m)
    _, smin = sv2(k)
    return np.minimum(np.arctan2(smin, cmax), 0.5 * np.pi)


def sv2(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b = mats[..., 0, 0], mats[..., 0, 1]
    c, d = mats[..., 1, 0], mats[..., 1, 1]
    q = np.hypot(0.5 * (a + d), 0.5 * (c - b))
    r = np.hypot(0.5 * (a - d), 0.5 * (c + b))
    return q + r, np.abs(q - r)


def count_in_tube(points, z, eps):
    xi = np.hypot(points[:, 0] - z[0], points[:, 1] - z[1])
    eta = np.hypot(points[:, 2] - z[2], points[:, 3] - z[3])
    return int(np.count_nonzero(np.abs(xi - eta) <= np.sqrt(2.0) * eps))


def grid_max_dot(m, grid):
    t = 2.0 * np.pi * np.arange(grid) / grid
    cs = np.column_stack([np.cos(t), np.sin(t)])
    d = cs @ m @ cs.T
    flat = int(np.argmax(d))
    i, j = divmod(flat, grid)
    return float(d[i, j]), i, j
