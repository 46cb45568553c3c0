"""Exact integer linear algebra for rational 2-planes in R^4.

Bases are pairs of integer 4-vectors, Plücker vectors are 6-tuples of ints
ordered ``(p12, p13, p14, p23, p24, p34)``. Everything here uses Python
integers, so no input magnitude can overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence, Tuple

IntVector4 = Tuple[int, int, int, int]
IntMatrix2x4 = Tuple[IntVector4, IntVector4]
PlueckerVector = Tuple[int, int, int, int, int, int]

#: index pairs (1-based) in Plücker order
PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}


class SubspaceError(ValueError):
    """Input does not describe a 2-plane (or a requested chart does not exist)."""


def _as_int_basis(basis: Sequence[Sequence[int]]) -> IntMatrix2x4:
    if len(basis) != 2 or any(len(row) != 4 for row in basis):
        raise SubspaceError("a basis is two integer 4-vectors")
    out = []
    for row in basis:
        vec = []
        for x in row:
            if int(x) != x:
                raise SubspaceError(f"non-integer entry {x!r}")
            vec.append(int(x))
        out.append(tuple(vec))
    return tuple(out)  # type: ignore[return-value]


def minors(basis: Sequence[Sequence]) -> tuple:
    """The six 2x2 minors ``q1_i q2_j - q1_j q2_i`` in Plücker order (any ring)."""
    q1, q2 = basis
    return tuple(q1[i - 1] * q2[j - 1] - q1[j - 1] * q2[i - 1] for i, j in PAIRS)


def pluecker_relation(p: Sequence) -> int:
    """``p12 p34 - p13 p24 + p14 p23``; zero exactly for decomposable vectors."""
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def canonical(p: Sequence[int]) -> PlueckerVector:
    """Divide out the content and make the first nonzero entry positive."""
    p = tuple(int(x) for x in p)
    if len(p) != 6:
        raise SubspaceError("a Plücker vector has six entries")
    if not any(p):
        raise SubspaceError("zero Plücker vector")
    g = reduce(gcd, p)
    p = tuple(x // g for x in p)
    lead = next(x for x in p if x)
    return p if lead > 0 else tuple(-x for x in p)  # type: ignore[return-value]


def pluecker(basis: Sequence[Sequence[int]]) -> PlueckerVector:
    """Canonical Plücker vector of the plane spanned by ``basis``.

    Any two bases of the same plane (saturated or not) give the same result.
    """
    p = minors(_as_int_basis(basis))
    if not any(p):
        raise SubspaceError("not a plane")
    return canonical(p)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def gram_det(basis: Sequence[Sequence[int]]) -> int:
    q1, q2 = basis
    return _dot(q1, q1) * _dot(q2, q2) - _dot(q1, q2) ** 2


def _integer_kernel(rows: Sequence[Sequence[int]], n: int = 4) -> list[list[int]]:
    """Basis of ``{z in Z^n : r.z = 0 for all rows r}``.

    Unimodular column operations bring the row matrix to lower-trapezoidal
    form; the trailing columns of the accumulated transform span the kernel,
    and the span is saturated because the transform is unimodular.
    """
    a_cols = [[row[j] for row in rows] for j in range(n)]
    u_cols = [[int(i == j) for i in range(n)] for j in range(n)]

    def sub(j: int, k: int, q: int) -> None:
        a_cols[j] = [x - q * y for x, y in zip(a_cols[j], a_cols[k])]
        u_cols[j] = [x - q * y for x, y in zip(u_cols[j], u_cols[k])]

    piv = 0
    for r in range(len(rows)):
        while True:
            live = [j for j in range(piv, n) if a_cols[j][r] != 0]
            if not live:
                break
            k = min(live, key=lambda j: abs(a_cols[j][r]))
            a_cols[piv], a_cols[k] = a_cols[k], a_cols[piv]
            u_cols[piv], u_cols[k] = u_cols[k], u_cols[piv]
            done = True
            for j in range(piv + 1, n):
                if a_cols[j][r]:
                    sub(j, piv, a_cols[j][r] // a_cols[piv][r])
                    done = done and a_cols[j][r] == 0
            if done:
                piv += 1
                break
    return [list(c) for c in u_cols[piv:]]


def _lagrange_reduce(u: list[int], v: list[int]) -> tuple[list[int], list[int]]:
    if _dot(u, u) > _dot(v, v):
        u, v = v, u
    while True:
        uu = _dot(u, u)
        q = (2 * _dot(u, v) + uu) // (2 * uu)
        v = [b - q * a for a, b in zip(u, v)]
        if _dot(v, v) >= uu:
            return u, v
        u, v = v, u


def _positive(v: list[int]) -> IntVector4:
    lead = next(x for x in v if x)
    return tuple(v if lead > 0 else [-x for x in v])  # type: ignore[return-value]


def saturate(spanning: Sequence[Sequence[int]]) -> IntMatrix2x4:
    """Basis of ``L ∩ Z^4`` where ``L`` is the plane spanned by ``spanning``.

    The returned basis is Lagrange-reduced (shortest vector first) with each
    vector's first nonzero entry positive.
    """
    basis = _as_int_basis(spanning)
    p = minors(basis)
    if not any(p):
        raise SubspaceError("not a plane")
    normals = _integer_kernel(basis)
    sat = _integer_kernel(normals)
    u, v = _lagrange_reduce(*sat)
    out = (_positive(u), _positive(v))
    if minors(out) not in (canonical(p), tuple(-x for x in canonical(p))):
        raise AssertionError("saturation lost the plane")  # pragma: no cover
    return out


def subspace_basis_from_pluecker(p: Sequence[int]) -> IntMatrix2x4:
    """Saturated basis of the plane with Plücker vector ``p`` (up to scale)."""
    p = tuple(int(x) for x in p)
    if len(p) != 6 or not any(p):
        raise SubspaceError("zero Plücker vector")
    if pluecker_relation(p) != 0:
        raise SubspaceError("not decomposable")

    def entry(i: int, j: int) -> int:
        if i == j:
            return 0
        return p[PAIR_INDEX[(i, j)]] if i < j else -p[PAIR_INDEX[(j, i)]]

    # columns of the antisymmetric matrix lie in the plane; two columns whose
    # mutual entry is nonzero span it
    k, l = next(PAIRS[t] for t in range(6) if p[t])
    ck = [entry(i, k) for i in range(1, 5)]
    cl = [entry(i, l) for i in range(1, 5)]
    return saturate((ck, cl))


@dataclass(frozen=True)
class RationalSubspace:
    """A rational 2-plane: saturated basis, canonical Plücker vector, ``H(L)^2``."""

    basis: IntMatrix2x4
    pluecker: PlueckerVector
    height_sq: int

    @classmethod
    def from_basis(cls, spanning: Sequence[Sequence[int]]) -> "RationalSubspace":
        sat = saturate(spanning)
        p = canonical(minors(sat))
        return cls(sat, p, _checked_height_sq(sat, p))

    @classmethod
    def from_pluecker(cls, p: Sequence[int]) -> "RationalSubspace":
        sat = subspace_basis_from_pluecker(p)
        q = canonical(minors(sat))
        if q != canonical(p):
            raise AssertionError("Plücker round trip failed")  # pragma: no cover
        return cls(sat, q, _checked_height_sq(sat, q))

    @property
    def height(self) -> float:
        return self.height_sq**0.5


def _checked_height_sq(basis: IntMatrix2x4, p: PlueckerVector) -> int:
    via_gram = gram_det(basis)
    via_minors = sum(x * x for x in p)
    if via_gram != via_minors:
        raise AssertionError(f"Cauchy-Binet mismatch: {via_gram} != {via_minors}")
    return via_gram


def height_sq(subspace: RationalSubspace | Sequence[Sequence[int]]) -> int:
    """``H(L)^2``, computed as the Gram determinant of a saturated basis and
    as the squared norm of the canonical Plücker vector; both must agree."""
    if not isinstance(subspace, RationalSubspace):
        subspace = RationalSubspace.from_basis(subspace)
    sat = saturate(subspace.basis)
    return _checked_height_sq(sat, canonical(minors(sat)))


def subspace_from_pluecker(p: Sequence[int]) -> RationalSubspace:
    return RationalSubspace.from_pluecker(p)


def det4(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a 4x4 integer matrix (fraction-free Bareiss)."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
