"""Geometry of the determinantal surface in graph-matrix space.

A plane in a fixed chart is a point ``a = (a11, a12, a21, a22)`` of R^4 (its
graph matrix). The planes meeting a fixed plane ``B`` (graph matrix ``b``)
nontrivially form the shifted quadric cone ``Sigma_B = {a : det(a - b) = 0}``.
In the rotated coordinates

    xi1 = (c11 + c22)/2,  xi2 = (c21 - c12)/2,
    eta1 = (c11 - c22)/2, eta2 = (c21 + c12)/2

the cone is ``|xi| = |eta|`` and ``det c = |xi|^2 - |eta|^2``. The Euclidean
distance from ``c`` to the cone ``det = 0`` is ``||xi| - |eta||``, which is the
smallest singular value of ``c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from ._parallel import default_workers, map_ordered
from .angles import orthonormal_frames, psi, psi_pairs, singular_values_2x2
from .charts import GraphChart, bases_from_pluecker, chart_of_subspace, chart_transition, graph_bases
from .lattice import PAIR_INDEX, RationalSubspace, SubspaceError


@dataclass(frozen=True)
class MatrixPoint:
    """Graph matrix ``[[a11, a12], [a21, a22]]`` as a point of R^4."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_chart(cls, chart: GraphChart) -> "MatrixPoint":
        (a, b), (c, d) = chart.ell
        return cls(a, b, c, d)

    def as_array(self) -> np.ndarray:
        return np.array([self.a11, self.a12, self.a21, self.a22])

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def __sub__(self, other: "MatrixPoint") -> "MatrixPoint":
        return MatrixPoint(*(self.as_array() - other.as_array()))

    def __add__(self, other: "MatrixPoint") -> "MatrixPoint":
        return MatrixPoint(*(self.as_array() + other.as_array()))


@dataclass(frozen=True)
class XiEtaPoint:
    xi1: float
    xi2: float
    eta1: float
    eta2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.xi1, self.xi2, self.eta1, self.eta2])

    @property
    def norm(self) -> float:
        return math.hypot(self.xi1, self.xi2, self.eta1, self.eta2)


def to_xi_eta(c: MatrixPoint) -> XiEtaPoint:
    return XiEtaPoint(
        0.5 * (c.a11 + c.a22),
        0.5 * (c.a21 - c.a12),
        0.5 * (c.a11 - c.a22),
        0.5 * (c.a21 + c.a12),
    )


def from_xi_eta(z: XiEtaPoint) -> MatrixPoint:
    return MatrixPoint(z.xi1 + z.eta1, z.eta2 - z.xi2, z.xi2 + z.eta2, z.xi1 - z.eta1)


def xi_eta_array(c: np.ndarray) -> np.ndarray:
    """Batched :func:`to_xi_eta` on rows ``(a11, a12, a21, a22)``."""
    c = np.asarray(c, dtype=float)
    a11, a12, a21, a22 = c[..., 0], c[..., 1], c[..., 2], c[..., 3]
    return 0.5 * np.stack([a11 + a22, a21 - a12, a11 - a22, a21 + a12], axis=-1)


def distance_to_cone(c: MatrixPoint) -> float:
    """Distance from ``c`` to ``{det = 0}``: ``||xi| - |eta||``, i.e. ``sigma_min(c)``."""
    z = to_xi_eta(c)
    return abs(math.hypot(z.xi1, z.xi2) - math.hypot(z.eta1, z.eta2))


def distance_to_surface(a: MatrixPoint, b: MatrixPoint) -> float:
    """Euclidean distance from ``a`` to ``Sigma_B = {x : det(x - b) = 0}``."""
    return distance_to_cone(a - b)


def distance_to_surface_many(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    z = xi_eta_array(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    return np.abs(np.hypot(z[..., 0], z[..., 1]) - np.hypot(z[..., 2], z[..., 3]))


def smallest_singular_value(c: MatrixPoint) -> float:
    return singular_values_2x2(c.a11, c.a12, c.a21, c.a22)[1]


# --- neighborhood inclusion -------------------------------------------------


def neighborhood_radius(eps: float, delta: float) -> float:
    """Radius ``3 eps sqrt(2 + 4/delta^2)`` of the tube that must contain the
    graph matrices within angle ``eps`` of ``B`` (inside the box ``max|a| <= 1/delta``)."""
    if not 0.0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    return 3.0 * eps * math.sqrt(2.0 + 4.0 / delta**2)


def in_box(a: MatrixPoint, delta: float) -> bool:
    """``max |a_ij| <= 1/delta``."""
    return float(np.abs(a.as_array()).max()) <= 1.0 / delta


@dataclass(frozen=True)
class InclusionReport:
    psi_value: float
    distance: float
    radius: float

    @property
    def ratio(self) -> float:
        return self.distance / self.radius

    @property
    def holds(self) -> bool:
        return self.distance <= self.radius


def check_tube_inclusion(b: RationalSubspace, eps: float, delta: float, a: GraphChart) -> InclusionReport | None:
    """Check that ``a`` lies within :func:`neighborhood_radius` of ``Sigma_B``.

    ``B`` is expressed in its own normalized chart (all ``|b_ij| <= 1``); ``a``
    is moved to that chart. Returns ``None`` when the preconditions fail: the
    chart is singular for ``a``, ``a`` leaves the box ``max|a| <= 1/delta``, or
    ``psi(A, B) > eps``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    radius = neighborhood_radius(eps, delta)
    b_chart = chart_of_subspace(b)
    try:
        a_chart = chart_transition(a, b_chart.label)
    except SubspaceError:
        return None
    am = MatrixPoint.from_chart(a_chart)
    if not in_box(am, delta):
        return None
    angle = psi(a, b)
    if angle > eps:
        return None
    dist = distance_to_surface(am, MatrixPoint.from_chart(b_chart))
    return InclusionReport(angle, dist, radius)


@dataclass(frozen=True)
class InclusionStats:
    eps: float
    delta: float
    radius: float
    admissible: int
    drawn: int
    violations: int
    max_ratio: float


def _chart_labels(p: np.ndarray) -> np.ndarray:
    return np.argmax(np.abs(np.asarray(p, dtype=float)), axis=1)


def _inclusion_batch(rng: np.random.Generator, pl: np.ndarray, eps: float, delta: float, size: int):
    """One batch of candidate pairs ``(A, B)`` with ``psi(A, B) <= eps`` by construction.

    ``B`` is drawn from ``pl``; ``A`` is spanned by a unit vector at angle
    ``<= eps`` from a random unit vector of ``B`` and a Gaussian vector.
    Returns graph matrices of ``A`` and ``B`` in ``B``'s chart, the measured
    angles, and a mask of admissible rows.
    """
    rows = pl[rng.integers(0, len(pl), size=size)]
    bb = bases_from_pluecker(rows)
    fb = orthonormal_frames(bb)
    t = rng.uniform(0.0, 2.0 * np.pi, size=size)
    z = np.cos(t)[:, None] * fb[:, 0] + np.sin(t)[:, None] * fb[:, 1]
    n = rng.standard_normal((size, 4))
    n -= np.einsum("nt,nt->n", n, z)[:, None] * z
    n /= np.linalg.norm(n, axis=1)[:, None]
    theta = rng.uniform(0.0, eps, size=size)
    w = np.cos(theta)[:, None] * z + np.sin(theta)[:, None] * n
    r = rng.standard_normal((size, 4))

    k = _chart_labels(rows)
    bm = np.empty((size, 4))
    am = np.empty((size, 4))
    ok = np.zeros(size, dtype=bool)
    for label, t_idx in PAIR_INDEX.items():
        sel = np.nonzero(k == t_idx)[0]
        if not len(sel):
            continue
        i1, i2 = label[0] - 1, label[1] - 1
        i3, i4 = sorted({0, 1, 2, 3} - {i1, i2})
        for vecs, out in ((bb[sel], bm), (np.stack([w[sel], r[sel]], axis=1), am)):
            s = vecs[:, :, [i1, i2]]
            y = vecs[:, :, [i3, i4]]
            det = s[:, 0, 0] * s[:, 1, 1] - s[:, 0, 1] * s[:, 1, 0]
            good = np.abs(det) > 1e-12
            inv = np.empty_like(s)
            d = np.where(good, det, 1.0)
            inv[:, 0, 0], inv[:, 1, 1] = s[:, 1, 1] / d, s[:, 0, 0] / d
            inv[:, 0, 1], inv[:, 1, 0] = -s[:, 0, 1] / d, -s[:, 1, 0] / d
            # graph matrix ell with y = ell x: ell = Y^T (S^T)^{-1}
            ell = np.einsum("nki,nkj->nij", y, np.transpose(inv, (0, 2, 1)))
            out[sel] = ell.reshape(len(sel), 4)
            if out is am:
                ok[sel] = good
    ok &= np.abs(am).max(axis=1) <= 1.0 / delta
    fa = orthonormal_frames(np.stack([w, r], axis=1))
    angles = psi_pairs(fa, fb)
    ok &= angles <= eps
    return am, bm, angles, ok


def tube_inclusion_monte_carlo(
    eps: float,
    delta: float,
    admissible: int = 100_000,
    seed: int = 0,
    h_sq_max: int = 25,
    batch: int = 20_000,
    workers: int | None = None,
) -> InclusionStats:
    """Monte-Carlo check of the neighborhood inclusion.

    Draws pairs until ``admissible`` of them satisfy ``psi(A, B) <= eps`` and
    ``max|a| <= 1/delta`` and counts those with distance to ``Sigma_B`` above
    :func:`neighborhood_radius`. Each batch owns a child seed, so the result
    depends only on ``seed`` (not on ``workers``).
    """
    from .enumeration import pluecker_table

    radius = neighborhood_radius(eps, delta)
    pl = np.asarray(pluecker_table(h_sq_max))
    root = np.random.SeedSequence(seed)
    admitted = drawn = violations = 0
    max_ratio = 0.0
    wave = workers or default_workers()
    while admitted < admissible:
        seeds = root.spawn(wave)

        def run(ss: np.random.SeedSequence):
            return _inclusion_batch(np.random.default_rng(ss), pl, eps, delta, batch)

        for am, bm, _, ok in map_ordered(run, seeds, workers):
            need = admissible - admitted
            idx = np.nonzero(ok)[0][:need]
            drawn += batch if len(idx) < need else int(idx[-1]) + 1
            dist = distance_to_surface_many(am[idx], bm[idx])
            violations += int(np.count_nonzero(dist > radius))
            if len(idx):
                max_ratio = max(max_ratio, float(dist.max() / radius))
            admitted += len(idx)
            if admitted >= admissible:
                break
    return InclusionStats(eps, delta, radius, admitted, drawn, violations, max_ratio)


# --- tube volumes -----------------------------------------------------------


def ball_volume(t: float) -> float:
    """Volume of the 4-ball of radius ``t``: ``pi^2 t^4 / 2``."""
    return 0.5 * math.pi**2 * t**4


@dataclass(frozen=True)
class TubeEstimate:
    estimate: float
    low: float
    high: float
    hits: int
    samples: int
    ball_volume: float

    @property
    def fraction(self) -> float:
        return self.hits / self.samples


#: cube draws per child seed; fixed so results do not depend on worker count
TUBE_CHUNK = 1 << 16


def _ball_points(ss: np.random.SeedSequence, t: float) -> np.ndarray:
    rng = np.random.default_rng(ss)
    cube = rng.uniform(-t, t, size=(TUBE_CHUNK, 4))
    return cube[(cube**2).sum(axis=1) <= t * t]


def tube_volume(
    z: XiEtaPoint | Sequence[float],
    t: float,
    eps: float,
    samples: int = 1_000_000,
    seed: int = 0,
    workers: int | None = None,
) -> TubeEstimate:
    """Monte-Carlo volume of the ``eps``-tube around ``z + {|xi| = |eta|}`` inside the ball ``|zeta| <= t``.

    Points are uniform in the ball (cube rejection), in chunks of
    :data:`TUBE_CHUNK` draws with one child seed each; the first ``samples``
    accepted points are used. The interval is estimate +- 3 binomial sigma.
    """
    if t <= 0:
        raise ValueError("T must be positive")
    if samples < 1:
        raise ValueError("samples must be positive")
    if eps < 0:
        raise ValueError("eps must be non-negative")
    zc = z.as_array() if isinstance(z, XiEtaPoint) else np.asarray(z, dtype=float)
    vol = ball_volume(t)
    root = np.random.SeedSequence(seed)
    # expected acceptance pi^2/32 ~ 0.308; over-provision and top up if short
    remaining, hits = samples, 0
    while remaining > 0:
        n_chunks = max(1, math.ceil(remaining / (0.29 * TUBE_CHUNK)))
        seeds = root.spawn(n_chunks)

        def count(ss: np.random.SeedSequence) -> tuple[int, int]:
            pts = _ball_points(ss, t)
            return len(pts), pts

        for n, pts in map_ordered(count, seeds, workers):
            take = min(n, remaining)
            if take and eps > 0:
                hits += kernels.count_in_tube(pts[:take], zc, eps)
            remaining -= take
            if remaining == 0:
                break
    p = hits / samples
    sigma = math.sqrt(p * (1.0 - p) / samples)
    return TubeEstimate(vol * p, vol * max(0.0, p - 3 * sigma), vol * min(1.0, p + 3 * sigma), hits, samples, vol)


def tube_bound(t: float, eps: float) -> float:
    """Reference scale ``T^3 eps + eps^4`` of the tube volume."""
    return t**3 * eps + eps**4
