"""Angles between 2-planes in R^4.

``psi(A, B)`` is the smallest principal angle, i.e. the minimum angle between
a unit vector of ``A`` and a unit vector of ``B``. It is evaluated in closed
form: its cosine is the largest singular value of the 2x2 cross-Gram matrix of
orthonormal frames, and its sine is the smallest singular value of the
cross-Gram matrix between ``B`` and the orthogonal complement of ``A``.
Taking ``atan2`` of the pair keeps full relative accuracy for tiny angles,
where ``arccos`` alone would lose half the digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import kernels
from .charts import GraphChart, graph_basis
from .lattice import RationalSubspace, SubspaceError, det4

RANK_TOL = 1e-9
ORTHO_TOL = 1e-12


def singular_values_2x2(a: float, b: float, c: float, d: float) -> tuple[float, float]:
    """``(s_max, s_min)`` of ``[[a, b], [c, d]]`` via the rotation decomposition."""
    q = math.hypot(0.5 * (a + d), 0.5 * (c - b))
    r = math.hypot(0.5 * (a - d), 0.5 * (c + b))
    return q + r, abs(q - r)


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal frame ``(u1, u2)`` of a plane, stored as a 2x4 array."""

    vectors: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vectors, dtype=float).reshape(2, 4)
        g = v @ v.T
        if np.abs(g - np.eye(2)).max() > ORTHO_TOL:
            raise ValueError("frame is not orthonormal")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def u1(self) -> np.ndarray:
        return self.vectors[0]

    @property
    def u2(self) -> np.ndarray:
        return self.vectors[1]

    @cached_property
    def complement(self) -> np.ndarray:
        """Orthonormal 2x4 frame of the orthogonal complement."""
        basis = self.vectors.copy()
        out = []
        for _ in range(2):
            # residuals of the coordinate axes; the largest has norm >= 1/2
            res = np.eye(4)
            for _ in range(2):
                res = res - (res @ basis.T) @ basis
            norms = np.linalg.norm(res, axis=1)
            w = res[int(np.argmax(norms))] / norms.max()
            out.append(w)
            basis = np.vstack([basis, w])
        return np.array(out)


PlaneLike = Union[Frame, GraphChart, RationalSubspace, np.ndarray, list, tuple]


def orthonormalize(basis) -> Frame:
    """Gram-Schmidt frame (with one re-orthogonalization pass) of a spanning pair."""
    v = np.array(basis, dtype=float).reshape(2, 4)
    n1 = np.linalg.norm(v[0])
    if n1 == 0.0:
        raise SubspaceError("not a plane (zero vector)")
    u1 = v[0] / n1
    w = v[1] - (v[1] @ u1) * u1
    w -= (w @ u1) * u1
    n2 = np.linalg.norm(w)
    if n2 <= RANK_TOL * np.linalg.norm(v[1]):
        raise SubspaceError("not a plane (rank deficient)")
    return Frame(np.array([u1, w / n2]))


def as_frame(plane: PlaneLike) -> Frame:
    if isinstance(plane, Frame):
        return plane
    if isinstance(plane, GraphChart):
        return orthonormalize(np.array(graph_basis(plane), dtype=float))
    if isinstance(plane, RationalSubspace):
        return orthonormalize(plane.basis)
    return orthonormalize(plane)


def orthonormal_frames(bases: np.ndarray) -> np.ndarray:
    """Batched Gram-Schmidt for spanning pairs of shape ``(n, 2, 4)``."""
    v = np.asarray(bases, dtype=float)
    u1 = v[:, 0] / np.linalg.norm(v[:, 0], axis=1)[:, None]
    w = v[:, 1] - np.einsum("nt,nt->n", v[:, 1], u1)[:, None] * u1
    w -= np.einsum("nt,nt->n", w, u1)[:, None] * u1
    u2 = w / np.linalg.norm(w, axis=1)[:, None]
    return np.stack([u1, u2], axis=1)


def psi(a: PlaneLike, b: PlaneLike) -> float:
    """Smallest principal angle between two planes, in ``[0, pi/2]``."""
    fa, fb = as_frame(a), as_frame(b)
    m = fa.vectors @ fb.vectors.T
    k = fa.complement @ fb.vectors.T
    cmax, _ = singular_values_2x2(m[0, 0], m[0, 1], m[1, 0], m[1, 1])
    _, smin = singular_values_2x2(k[0, 0], k[0, 1], k[1, 0], k[1, 1])
    return min(math.atan2(smin, cmax), 0.5 * math.pi)


def psi_many(a: PlaneLike, frames: np.ndarray) -> np.ndarray:
    """``psi(a, f)`` for every frame in an ``(n, 2, 4)`` array of orthonormal frames."""
    fa = as_frame(a)
    return kernels.psi_one_to_many(fa.vectors, fa.complement, frames)


def psi_pairs(fa: np.ndarray, fb: np.ndarray) -> np.ndarray:
    """Row-wise ``psi`` for two ``(n, 2, 4)`` stacks of orthonormal frames."""
    fa = np.asarray(fa, dtype=float)
    fb = np.asarray(fb, dtype=float)
    m = np.einsum("nit,njt->nij", fa, fb)
    resid = fb - np.einsum("nij,nit->njt", m, fa)
    cmax = np.linalg.svd(m, compute_uv=False)[:, 0]
    smin = np.linalg.svd(resid, compute_uv=False)[:, -1]
    return np.minimum(np.arctan2(smin, cmax), 0.5 * np.pi)


def vector_angle(w: np.ndarray, z: np.ndarray) -> float:
    """Angle between two nonzero vectors, accurate near 0 and pi."""
    w = np.asarray(w, dtype=float) / np.linalg.norm(w)
    z = np.asarray(z, dtype=float) / np.linalg.norm(z)
    return 2.0 * math.atan2(np.linalg.norm(w - z), np.linalg.norm(w + z))


def psi_bruteforce(a: PlaneLike, b: PlaneLike, grid: int = 2000) -> float:
    """Minimum vector angle over ``grid`` points on each unit circle.

    An upper bound for ``psi`` that converges to it as ``grid`` grows.
    """
    if grid < 8:
        raise ValueError("grid must be >= 8")
    fa, fb = as_frame(a), as_frame(b)
    _, i, j = kernels.grid_max_dot(fa.vectors @ fb.vectors.T, grid)
    ti, tj = 2.0 * math.pi * i / grid, 2.0 * math.pi * j / grid
    w = math.cos(ti) * fa.u1 + math.sin(ti) * fa.u2
    z = math.cos(tj) * fb.u1 + math.sin(tj) * fb.u2
    return vector_angle(w, z)


def intersects_nontrivially(a: RationalSubspace, b: RationalSubspace) -> bool:
    """Exact test for ``A ∩ B != {0}``: the stacked 4x4 basis matrix is singular."""
    return det4(list(a.basis) + list(b.basis)) == 0
