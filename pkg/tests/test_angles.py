import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspace_approx.angles import (
    Frame,
    as_frame,
    intersects_nontrivially,
    orthonormal_frames,
    orthonormalize,
    psi,
    psi_bruteforce,
    psi_many,
    psi_pairs,
    singular_values_2x2,
    vector_angle,
)
from subspace_approx.lattice import RationalSubspace, SubspaceError

E = np.eye(4)
S2 = 1 / math.sqrt(2)


def plane(*rows):
    return np.array(rows, dtype=float)


def test_orthonormalize_examples():
    assert np.allclose(orthonormalize(plane(E[0], E[1])).vectors, [E[0], E[1]])
    f = orthonormalize(plane((1, 0, 1, 0), (0, 1, 0, 1)))
    assert np.allclose(f.vectors, [[S2, 0, S2, 0], [0, S2, 0, S2]])
    assert np.allclose(orthonormalize(plane((1, 0, 0, 0), (1, 1, 0, 0))).vectors, [E[0], E[1]])


def test_orthonormalize_rank_deficient():
    with pytest.raises(SubspaceError):
        orthonormalize(plane((1, 2, 3, 4), (2, 4, 6, 8 + 1e-12)))
    with pytest.raises(SubspaceError):
        orthonormalize(plane((0, 0, 0, 0), (1, 0, 0, 0)))


def test_frame_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        Frame(np.array([[1.0, 0, 0, 0], [1.0, 1, 0, 0]]))


def test_psi_examples():
    assert psi(plane(E[0], E[1]), plane(E[2], E[3])) == pytest.approx(math.pi / 2, abs=1e-15)
    assert psi(plane(E[0], E[1]), plane(E[0], E[2])) == 0.0
    assert psi(plane(E[0], E[1]), plane((S2, 0, S2, 0), (0, S2, 0, S2))) == pytest.approx(math.pi / 4, abs=1e-15)


def test_psi_bruteforce_examples():
    assert psi_bruteforce(plane(E[0], E[1]), plane(E[2], E[3]), grid=360) == pytest.approx(math.pi / 2, abs=1e-9)
    pair = (plane(E[0], E[1]), plane((S2, 0, S2, 0), (0, S2, 0, S2)))
    assert psi_bruteforce(*pair, grid=3600) == pytest.approx(math.pi / 4, abs=2e-3)
    a = plane((1, 2, 3, 4), (0, 1, -1, 2))
    assert psi_bruteforce(a, a, grid=64) == 0.0
    with pytest.raises(ValueError):
        psi_bruteforce(a, a, grid=4)


def test_intersects_examples():
    e12 = RationalSubspace.from_basis(((1, 0, 0, 0), (0, 1, 0, 0)))
    e13 = RationalSubspace.from_basis(((1, 0, 0, 0), (0, 0, 1, 0)))
    e34 = RationalSubspace.from_basis(((0, 0, 1, 0), (0, 0, 0, 1)))
    other = RationalSubspace.from_basis(((1, 0, 1, 0), (0, 1, 0, 2)))
    assert intersects_nontrivially(e12, e13)
    assert not intersects_nontrivially(e12, e34)
    assert not intersects_nontrivially(e12, other)


def test_singular_values_2x2_matches_numpy():
    rng = np.random.default_rng(0)
    for _ in range(200):
        m = rng.standard_normal((2, 2))
        smax, smin = singular_values_2x2(*m.ravel())
        ref = np.linalg.svd(m, compute_uv=False)
        assert smax == pytest.approx(ref[0], rel=1e-12)
        assert smin == pytest.approx(ref[1], rel=1e-9, abs=1e-15)


def test_psi_tiny_angle_accuracy():
    # rotate e2 by a tiny angle toward e3: the exact angle is t
    for t in (1e-3, 1e-8, 1e-12):
        b = plane(E[0], (0, math.cos(t), math.sin(t), 0))
        c = plane((math.cos(t), 0, 0, math.sin(t)), (0, math.cos(2 * t), math.sin(2 * t), 0))
        assert psi(plane(E[0], E[1]), b) == 0.0
        assert psi(plane(E[0], E[1]), c) == pytest.approx(t, rel=1e-9)


vec = st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 4)
planes = st.tuples(vec, vec).map(np.array).filter(lambda b: np.linalg.matrix_rank(b, tol=1e-3) == 2)


@settings(max_examples=300, deadline=None)
@given(planes, planes)
def test_symmetry_and_range(a, b):
    x, y = psi(a, b), psi(b, a)
    assert 0.0 <= x <= math.pi / 2
    assert abs(x - y) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(planes, planes, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_frame_rotation_invariance(a, b, s, t):
    fa, fb = as_frame(a), as_frame(b)

    def rot(f, th):
        r = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        return Frame(r @ f.vectors)

    assert abs(psi(rot(fa, s), rot(fb, t)) - psi(fa, fb)) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(planes)
def test_complement_is_orthonormal_and_orthogonal(a):
    f = as_frame(a)
    c = f.complement
    assert np.abs(c @ c.T - np.eye(2)).max() <= 1e-12
    assert np.abs(c @ f.vectors.T).max() <= 1e-12


def test_bruteforce_oracle_agreement():
    rng = np.random.default_rng(11)
    for _ in range(100):
        a, b = rng.standard_normal((2, 2, 4))
        assert abs(psi(a, b) - psi_bruteforce(a, b, 2000)) <= 2 * math.pi / 2000


def test_batched_forms_agree():
    rng = np.random.default_rng(3)
    fa = orthonormal_frames(rng.standard_normal((40, 2, 4)))
    fb = orthonormal_frames(rng.standard_normal((40, 2, 4)))
    single = np.array([psi(x, y) for x, y in zip(fa, fb)])
    assert np.abs(psi_pairs(fa, fb) - single).max() <= 1e-12
    many = psi_many(fa[0], fb)
    assert np.abs(many - np.array([psi(fa[0], y) for y in fb])).max() <= 1e-12


small = st.integers(-4, 4)
ivec = st.tuples(small, small, small, small)


@settings(max_examples=300, deadline=None)
@given(ivec, ivec, ivec, ivec)
def test_exact_zero_law_for_rational_planes(p, q, r, s):
    try:
        a = RationalSubspace.from_basis((p, q))
        b = RationalSubspace.from_basis((r, s))
    except SubspaceError:
        return
    assert intersects_nontrivially(a, b) == (psi(a, b) <= 1e-9)


@settings(max_examples=300, deadline=None)
@given(vec, vec)
def test_chord_bound(w, z):
    w, z = np.array(w), np.array(z)
    if np.linalg.norm(w) < 1e-6 or np.linalg.norm(z) < 1e-6:
        return
    w, z = w / np.linalg.norm(w), z / np.linalg.norm(z)
    assert np.linalg.norm(w - z) <= vector_angle(w, z) + 1e-15
