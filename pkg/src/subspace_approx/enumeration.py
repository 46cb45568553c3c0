"""Enumeration of rational 2-planes in R^4 by height.

A rational plane corresponds to exactly one canonical primitive integer
Plücker vector, and its squared height is the squared norm of that vector.
The primary enumerator therefore searches integer 6-tuples inside the ball of
radius ``sqrt(h_sq_max)`` (see :func:`.kernels.enumerate_pluecker`). An
independent enumerator over integer basis pairs is kept alongside for
cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Iterator

import numpy as np

from . import kernels
from .angles import PlaneLike, as_frame, orthonormal_frames, psi_many
from .charts import bases_from_pluecker
from .lattice import RationalSubspace


@lru_cache(maxsize=8)
def pluecker_table(h_sq_max: int) -> np.ndarray:
    """Sorted ``(n, 6)`` int64 table of canonical vectors with ``sum p^2 <= h_sq_max``.

    Cached and read-only.
    """
    table = kernels.enumerate_pluecker(int(h_sq_max))
    table.setflags(write=False)
    return table


def heights_sq(table: np.ndarray) -> np.ndarray:
    return (table.astype(np.int64) ** 2).sum(axis=1)


@lru_cache(maxsize=8)
def frame_table(h_sq_max: int) -> np.ndarray:
    """Orthonormal frames ``(n, 2, 4)`` aligned with :func:`pluecker_table`."""
    frames = orthonormal_frames(bases_from_pluecker(pluecker_table(h_sq_max)))
    frames.setflags(write=False)
    return frames


def enumerate_subspaces(h_sq_max: int) -> Iterator[RationalSubspace]:
    """Every rational plane with ``H^2 <= h_sq_max``, once each, in Plücker order."""
    for row in pluecker_table(h_sq_max):
        yield RationalSubspace.from_pluecker(tuple(int(x) for x in row))


def count_by_height(h_sq_max: int) -> dict[int, int]:
    """``{level: N(sqrt(level))}`` for every level ``1..h_sq_max``."""
    h = int(h_sq_max)
    if h < 1:
        return {}
    counts = np.bincount(heights_sq(pluecker_table(h)), minlength=h + 1)
    return {level: int(counts[level]) for level in range(1, h + 1)}


def cumulative_count(h_sq_max: int) -> int:
    """Number of rational planes with ``H^2 <= h_sq_max``."""
    return len(pluecker_table(int(h_sq_max))) if h_sq_max >= 1 else 0


def basis_entry_bound(h_sq_max: int) -> int:
    """Largest integer ``n <= (2/sqrt 3) sqrt(h_sq_max)``.

    A Lagrange-reduced basis has ``1 <= |q1| <= |q2|`` and
    ``|q1| |q2| <= (2/sqrt 3) H``, so both ``|q1|^2`` and every entry of
    ``q2`` are bounded by this number.
    """
    return isqrt(4 * int(h_sq_max) // 3)


def enumerate_by_bases(h_sq_max: int, entry_bound: int | None = None) -> set[tuple[int, ...]]:
    """Canonical Plücker vectors of all planes spanned by small integer pairs.

    Slow oracle, independent of the Plücker-tuple search: every pair
    ``(q1, q2)`` with ``q2`` in the box ``[-entry_bound, entry_bound]^4`` and
    ``q1`` short enough to be the first vector of a reduced basis is turned
    into its 2x2 minors; the content is divided out (saturation), the sign
    normalized, and vectors of squared norm ``<= h_sq_max`` are collected.
    """
    h = int(h_sq_max)
    if h < 1:
        return set()
    b = basis_entry_bound(h) if entry_bound is None else int(entry_bound)
    box = np.array(list(product(range(-b, b + 1), repeat=4)), dtype=np.int64)
    box = box[np.any(box != 0, axis=1)]
    short = box[(box**2).sum(axis=1) <= basis_entry_bound(h)]
    cols = [(i - 1, j - 1) for i, j in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))]
    found: set[tuple[int, ...]] = set()
    for q1 in short:
        p = np.column_stack([q1[i] * box[:, j] - q1[j] * box[:, i] for i, j in cols])
        g = np.gcd.reduce(p, axis=1)
        keep = g > 0
        p, g = p[keep], g[keep]
        p //= g[:, None]
        p = p[(p**2).sum(axis=1) <= h]
        if not len(p):
            continue
        lead = p[np.arange(len(p)), np.argmax(p != 0, axis=1)]
        p[lead < 0] *= -1
        found.update(map(tuple, p.tolist()))
    return found


#: improvements smaller than this are rounding noise, not new records
PSI_NOISE = 1e-14


@dataclass(frozen=True)
class ApproxRecord:
    best: RationalSubspace
    psi_value: float
    height_sq: int


def psi_table(plane: PlaneLike, h_sq_max: int) -> np.ndarray:
    """``psi(plane, B)`` for every row of :func:`pluecker_table`."""
    return psi_many(as_frame(plane), frame_table(int(h_sq_max)))


def level_minima(psi_values: np.ndarray, levels: np.ndarray, h_sq_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-level minimum of ``psi_values`` and the row attaining it (-1 where empty)."""
    best = np.full(h_sq_max + 1, np.inf)
    arg = np.full(h_sq_max + 1, -1, dtype=np.int64)
    order = np.lexsort((psi_values, levels))
    lv = levels[order]
    first = np.ones(len(lv), dtype=bool)
    first[1:] = lv[1:] != lv[:-1]
    best[lv[first]] = psi_values[order][first]
    arg[lv[first]] = order[first]
    return best, arg


def _closest_among(frame: np.ndarray, frames: np.ndarray, rows: np.ndarray) -> int:
    """Row whose plane has the largest smallest cross-Gram singular value,
    i.e. the smallest second principal angle; first row on exact ties."""
    m = np.einsum("it,njt->nij", frame, frames[rows])
    second = np.linalg.svd(m, compute_uv=False)[:, -1]
    return int(rows[int(np.argmax(second))])


def best_approx(plane: PlaneLike, h_sq_max: int) -> list[ApproxRecord]:
    """Best approximations of ``plane`` by rational planes of height ``<= sqrt(h_sq_max)``.

    Height levels are scanned in increasing order; a record is emitted each time
    the smallest angle seen so far strictly decreases. Planes at the same level
    with the same smallest angle (common when several share a line with
    ``plane``) are ranked by their second principal angle.
    """
    h = int(h_sq_max)
    if h < 1:
        return []
    table = pluecker_table(h)
    levels = heights_sq(table)
    frame = as_frame(plane)
    values = psi_many(frame, frame_table(h))
    best, _ = level_minima(values, levels, h)
    records: list[ApproxRecord] = []
    current = np.inf
    for level in range(1, h + 1):
        if best[level] < current - PSI_NOISE:
            current = best[level]
            ties = np.nonzero((levels == level) & (values <= current + PSI_NOISE))[0]
            k = _closest_among(frame.vectors, frame_table(h), ties)
            row = tuple(int(x) for x in table[k])
            records.append(ApproxRecord(RationalSubspace.from_pluecker(row), float(values[k]), level))
    return records
