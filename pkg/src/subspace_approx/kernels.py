"""Hot numeric kernels, dispatched to numba or numpy per :mod:`._backend`."""
from __future__ import annotations

from math import isqrt

import numpy as np

from . import _backend
from . import _kernels_numpy as _np_k
from ._parallel import map_ordered

if _backend.HAVE_NUMBA:
    from . import _kernels_numba as _nb_k

# int64 products in the enumeration stay below h_sq_max, so this is generous
MAX_ENUM_HSQ = 10**12


def _numba() -> bool:
    return _backend.get_backend() == "numba"


def _slice(h: int, p12: int) -> np.ndarray:
    if _numba():
        empty = np.zeros((0, 6), dtype=np.int64)
        n = _nb_k.pluecker_slice(h, p12, empty, False)
        out = np.empty((n, 6), dtype=np.int64)
        _nb_k.pluecker_slice(h, p12, out, True)
        return out
    return _np_k.pluecker_slice(h, p12)


def enumerate_pluecker(h_sq_max: int, workers: int | None = None) -> np.ndarray:
    """Canonical primitive Plücker vectors with squared norm <= ``h_sq_max``.

    The search is split into independent work units by the value of ``p12``;
    the merged result is sorted lexicographically, so the output does not
    depend on ``workers`` or on the backend.
    """
    h = int(h_sq_max)
    if h < 1:
        return np.zeros((0, 6), dtype=np.int64)
    if h > MAX_ENUM_HSQ:
        raise ValueError(f"h_sq_max too large for int64 enumeration: {h}")
    parts = map_ordered(lambda p12: _slice(h, p12), range(isqrt(h) + 1), workers)
    table = np.concatenate(parts) if parts else np.zeros((0, 6), dtype=np.int64)
    order = np.lexsort(table.T[::-1])
    return np.ascontiguousarray(table[order])


def psi_one_to_many(u: np.ndarray, uc: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Smallest principal angle between the plane with frame ``u`` and each frame in ``v``.

    ``uc`` is an orthonormal frame of the orthogonal complement of ``u``.
    """
    u = np.ascontiguousarray(u, dtype=np.float64)
    uc = np.ascontiguousarray(uc, dtype=np.float64)
    v = np.ascontiguousarray(v, dtype=np.float64)
    if _numba():
        out = np.empty(v.shape[0])
        _nb_k.psi_one_to_many(u, uc, v, out)
        return out
    return _np_k.psi_one_to_many(u, uc, v)


def count_in_tube(points: np.ndarray, z, eps: float) -> int:
    """Number of points whose distance to the shifted cone ``z + {|xi| = |eta|}`` is <= eps."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    z = np.ascontiguousarray(z, dtype=np.float64)
    if _numba():
        return int(_nb_k.count_in_tube(points, z, float(eps)))
    return _np_k.count_in_tube(points, z, float(eps))


def grid_max_dot(m: np.ndarray, grid: int) -> tuple[float, int, int]:
    m = np.ascontiguousarray(m, dtype=np.float64)
    if _numba():
        best, i, j = _nb_k.grid_max_dot(m, int(grid))
        return float(best), int(i), int(j)
    return _np_k.grid_max_dot(m, int(grid))
