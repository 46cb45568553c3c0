"""Affine charts of the Grassmannian of 2-planes in R^4.

A chart is labelled by a pair ``(i1, i2)`` with ``i1 < i2``; with ``(i3, i4)``
the complementary pair in increasing order, a plane in that chart is the graph

    z_{i3} = l11 z_{i1} + l12 z_{i2}
    z_{i4} = l21 z_{i1} + l22 z_{i2}

Chart entries may be floats or :class:`fractions.Fraction`; arithmetic stays
in whatever type the entries have, so rational planes round-trip exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Integral
from typing import Sequence

import numpy as np

from .lattice import PAIR_INDEX, PAIRS, RationalSubspace, SubspaceError, minors, pluecker_relation

ChartLabel = tuple[int, int]

#: scale-invariant guard on the Plücker relation for real input
RELATION_RTOL = 1e-9
#: |det| below this (relative to entry scale) makes a float transition singular
SINGULAR_RTOL = 1e-13


def complement(label: ChartLabel) -> ChartLabel:
    i3, i4 = sorted({1, 2, 3, 4} - set(label))
    return i3, i4


def _check_label(label: Sequence[int]) -> ChartLabel:
    label = tuple(int(x) for x in label)
    if label not in PAIR_INDEX:
        raise SubspaceError(f"invalid chart label {label}")
    return label  # type: ignore[return-value]


def _oriented(p: Sequence, a: int, b: int):
    # p_{b,a} = -p_{a,b}
    return p[PAIR_INDEX[(a, b)]] if a < b else -p[PAIR_INDEX[(b, a)]]


@dataclass(frozen=True)
class GraphChart:
    label: ChartLabel
    ell: tuple[tuple, tuple]

    def __post_init__(self) -> None:
        object.__setattr__(self, "label", _check_label(self.label))
        (a, b), (c, d) = self.ell
        object.__setattr__(self, "ell", ((a, b), (c, d)))

    @classmethod
    def from_entries(cls, label: Sequence[int], l11, l12, l21, l22) -> "GraphChart":
        return cls(tuple(label), ((l11, l12), (l21, l22)))

    @property
    def delta_of_ell(self):
        (a, b), (c, d) = self.ell
        return a * d - c * b

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.ell, dtype=float)

    def entries(self) -> tuple:
        (a, b), (c, d) = self.ell
        return a, b, c, d


def graph_basis(chart: GraphChart) -> tuple[list, list]:
    """Two vectors spanning the graph plane, in ambient coordinates."""
    i1, i2 = chart.label
    i3, i4 = complement(chart.label)
    (l11, l12), (l21, l22) = chart.ell
    zero, one = l11 * 0, l11 * 0 + 1
    v1, v2 = [zero] * 4, [zero] * 4
    v1[i1 - 1], v1[i3 - 1], v1[i4 - 1] = one, l11, l21
    v2[i2 - 1], v2[i3 - 1], v2[i4 - 1] = one, l12, l22
    return v1, v2


def chart_of_subspace(p) -> GraphChart:
    """Graph chart in which the plane has all ``|l_ij| <= 1`` and ``|det l| <= 1``.

    The chart is the one where ``|p_{i1,i2}|`` is largest (first in Plücker
    order on ties). Integer input (a tuple or a :class:`RationalSubspace`)
    gives exact :class:`Fraction` entries; real input gives floats.
    """
    if isinstance(p, RationalSubspace):
        p = p.pluecker
    p = tuple(p)
    if len(p) != 6:
        raise SubspaceError("a Plücker vector has six entries")
    exact = all(isinstance(x, (Integral, Fraction)) for x in p)
    if exact:
        if not any(p):
            raise SubspaceError("zero Plücker vector")
        if pluecker_relation(p) != 0:
            raise SubspaceError("not decomposable")
    else:
        p = tuple(float(x) for x in p)
        norm_sq = sum(x * x for x in p)
        if norm_sq == 0.0:
            raise SubspaceError("zero Plücker vector")
        if abs(pluecker_relation(p)) > RELATION_RTOL * norm_sq:
            raise SubspaceError("not decomposable (Plücker relation violated)")
    k = max(range(6), key=lambda t: (abs(p[t]), -t))
    label = PAIRS[k]
    i1, i2 = label
    i3, i4 = complement(label)
    s = p[k]
    if exact:
        q = [Fraction(x, 1) / s for x in p]
    else:
        q = [x / s for x in p]
    return GraphChart(
        label,
        (
            (-_oriented(q, i2, i3), _oriented(q, i1, i3)),
            (-_oriented(q, i2, i4), _oriented(q, i1, i4)),
        ),
    )


def graph_pluecker(chart: GraphChart) -> tuple:
    """Plücker vector of the graph basis (``p_{i1,i2} = 1``), in the entry type."""
    return minors(graph_basis(chart))


def subspace_from_graph(chart: GraphChart) -> tuple[np.ndarray, np.ndarray]:
    """Unit-normalized real Plücker vector and a real spanning basis (2x4)."""
    v1, v2 = graph_basis(chart)
    basis = np.array([v1, v2], dtype=float)
    p = np.array([float(x) for x in graph_pluecker(chart)])
    return p / np.linalg.norm(p), basis


def rational_subspace_from_graph(chart: GraphChart) -> RationalSubspace:
    """Exact rational plane of a chart with rational entries."""
    vecs = []
    for v in graph_basis(chart):
        fr = [Fraction(x) for x in v]
        den = lcm(*(x.denominator for x in fr))
        vecs.append([int(x * den) for x in fr])
    return RationalSubspace.from_basis(vecs)


def in_delta_band(chart: GraphChart, delta: float) -> bool:
    """All four ``|l_ij|`` and ``|det l|`` lie in ``[delta, 1 - delta]``."""
    if not 0.0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    vals = [abs(x) for x in chart.entries()] + [abs(chart.delta_of_ell)]
    return all(delta <= v <= 1 - delta for v in vals)


def chart_transition(chart: GraphChart, target: Sequence[int]) -> GraphChart:
    """Re-express the plane of ``chart`` as a graph over coordinates ``target``.

    Solves the 2x2 system that makes the new free coordinates ``(z_k, z_l)``
    equal to the unit vectors.
    """
    target = _check_label(target)
    if target == chart.label:
        return chart
    v1, v2 = graph_basis(chart)
    k, l = target
    s00, s01, s10, s11 = v1[k - 1], v1[l - 1], v2[k - 1], v2[l - 1]
    det = s00 * s11 - s01 * s10
    if isinstance(det, float) or isinstance(det, np.floating):
        scale = max(1.0, abs(s00), abs(s01), abs(s10), abs(s11)) ** 2
        if abs(det) <= SINGULAR_RTOL * scale:
            raise SubspaceError("chart singular here")
    elif det == 0:
        raise SubspaceError("chart singular here")
    # rows of S^{-1}
    a00, a01, a10, a11 = s11 / det, -s01 / det, -s10 / det, s00 / det
    w1 = [a00 * x + a01 * y for x, y in zip(v1, v2)]
    w2 = [a10 * x + a11 * y for x, y in zip(v1, v2)]
    k3, k4 = complement(target)
    return GraphChart(
        target, ((w1[k3 - 1], w2[k3 - 1]), (w1[k4 - 1], w2[k4 - 1]))
    )


# --- batched helpers -------------------------------------------------------


def graph_bases(label: ChartLabel, ells: np.ndarray) -> np.ndarray:
    """Spanning bases ``(n, 2, 4)`` for graph matrices ``ells`` of shape ``(n, 2, 2)``."""
    ells = np.asarray(ells, dtype=float)
    i1, i2 = _check_label(label)
    i3, i4 = complement(label)
    out = np.zeros(ells.shape[:-2] + (2, 4))
    out[..., 0, i1 - 1] = 1.0
    out[..., 1, i2 - 1] = 1.0
    out[..., 0, i3 - 1] = ells[..., 0, 0]
    out[..., 0, i4 - 1] = ells[..., 1, 0]
    out[..., 1, i3 - 1] = ells[..., 0, 1]
    out[..., 1, i4 - 1] = ells[..., 1, 1]
    return out


def bases_from_pluecker(p: np.ndarray) -> np.ndarray:
    """Graph bases ``(n, 2, 4)`` for Plücker rows, each in its max-|p| chart."""
    p = np.asarray(p, dtype=float)
    k = np.argmax(np.abs(p), axis=1)
    out = np.empty((len(p), 2, 4))
    for t, label in enumerate(PAIRS):
        sel = k == t
        if not sel.any():
            continue
        i1, i2 = label
        i3, i4 = complement(label)
        q = p[sel] / p[sel, t][:, None]

        def col(a: int, b: int) -> np.ndarray:
            return q[:, PAIR_INDEX[(a, b)]] if a < b else -q[:, PAIR_INDEX[(b, a)]]

        ells = np.empty((int(sel.sum()), 2, 2))
        ells[:, 0, 0] = -col(i2, i3)
        ells[:, 0, 1] = col(i1, i3)
        ells[:, 1, 0] = -col(i2, i4)
        ells[:, 1, 1] = col(i1, i4)
        out[sel] = graph_bases(label, ells)
    return out


def sample_delta_band(rng: np.random.Generator, delta: float, size: int) -> np.ndarray:
    """``size`` graph matrices drawn uniformly from the delta band (rejection from [-1,1]^4)."""
    out = np.empty((0, 2, 2))
    while len(out) < size:
        cand = rng.uniform(-1.0, 1.0, size=(max(64, 2 * (size - len(out))), 2, 2))
        a = np.abs(cand).reshape(len(cand), 4)
        d = np.abs(cand[:, 0, 0] * cand[:, 1, 1] - cand[:, 1, 0] * cand[:, 0, 1])
        ok = ((a >= delta) & (a <= 1 - delta)).all(axis=1) & (d >= delta) & (d <= 1 - delta)
        out = np.concatenate([out, cand[ok]])
    return out[:size]
