import itertools
import math

import numpy as np
import pytest

from subspace_approx.angles import psi
from subspace_approx.charts import GraphChart
from subspace_approx.enumeration import (
    basis_entry_bound,
    best_approx,
    count_by_height,
    cumulative_count,
    enumerate_by_bases,
    enumerate_subspaces,
    pluecker_table,
)
from subspace_approx.lattice import canonical, gram_det, pluecker_relation

# per-level counts N(sqrt l) frozen from the exhaustive enumerator, cross-checked
# against the basis-pair enumerator up to l = 49
FROZEN_LEVELS = {1: 6, 2: 24, 3: 32, 4: 12, 5: 96, 6: 96, 7: 0, 8: 48, 9: 144, 10: 96, 11: 288, 12: 0}
FROZEN_CUMULATIVE = {25: 3194, 49: 12986, 100: 58730}


def brute_force_sixtuples(h: int) -> set:
    r = math.isqrt(h)
    out = set()
    for p in itertools.product(range(-r, r + 1), repeat=6):
        if any(p) and sum(x * x for x in p) <= h and pluecker_relation(p) == 0:
            out.add(canonical(p))
    return out


def test_level_one_is_coordinate_planes():
    subs = list(enumerate_subspaces(1))
    assert len(subs) == 6
    assert {s.pluecker for s in subs} == set(itertools.permutations((1, 0, 0, 0, 0, 0)))
    assert brute_force_sixtuples(1) == {s.pluecker for s in subs}


def test_level_two_against_both_oracles():
    got = set(map(tuple, pluecker_table(2).tolist()))
    assert got == brute_force_sixtuples(2)
    assert got == enumerate_by_bases(2, entry_bound=2)
    assert len(got) == FROZEN_LEVELS[1] + FROZEN_LEVELS[2]
    # the level-2 vectors have two nonzero entries on non-complementary pairs
    complementary = {(0, 5), (1, 4), (2, 3)}
    for p in got:
        nz = tuple(i for i, x in enumerate(p) if x)
        if len(nz) == 2:
            assert nz not in complementary


def test_empty_budget():
    assert list(enumerate_subspaces(0)) == []
    assert count_by_height(0) == {}
    assert cumulative_count(0) == 0


@pytest.mark.parametrize("h", [3, 5, 6])
def test_against_brute_force_sixtuples(h):
    assert set(map(tuple, pluecker_table(h).tolist())) == brute_force_sixtuples(h)


def test_frozen_counts():
    counts = count_by_height(12)
    assert counts == FROZEN_LEVELS
    for h, n in FROZEN_CUMULATIVE.items():
        assert cumulative_count(h) == n


def test_cumulative_monotone_and_growth_band():
    cums = [cumulative_count(h) for h in range(1, 101)]
    assert all(b >= a for a, b in zip(cums, cums[1:]))
    r10 = cumulative_count(100) / 10**4
    r15 = cumulative_count(225) / 15**4
    assert 0.5 < r15 / r10 < 2.0


def test_entry_bound_matches_reduced_bases():
    assert basis_entry_bound(25) == 5
    assert basis_entry_bound(1) == 1
    for sub in enumerate_subspaces(20):
        assert max(abs(x) for row in sub.basis for x in row) <= basis_entry_bound(20)
        assert sum(x * x for x in sub.basis[0]) <= basis_entry_bound(20)


def test_every_yielded_plane_is_consistent():
    seen = set()
    for sub in enumerate_subspaces(30):
        p = sub.pluecker
        assert pluecker_relation(p) == 0
        assert canonical(p) == p
        assert gram_det(sub.basis) == sub.height_sq == sum(x * x for x in p) <= 30
        assert p not in seen
        seen.add(p)


def test_best_approx_coordinate_plane():
    recs = best_approx(np.array([[1.0, 0, 0, 0], [0, 1, 0, 0]]), 50)
    assert recs[0].psi_value == 0.0
    assert recs[0].height_sq == 1
    assert recs[0].best.pluecker == (1, 0, 0, 0, 0, 0)
    assert len(recs) == 1


def test_best_approx_at_height_one_is_min_over_coordinate_planes():
    a = GraphChart.from_entries((1, 2), 0.5, 0.25, 0.25, 0.5)
    recs = best_approx(a, 1)
    coords = [np.eye(4)[[i, j]] for i, j in itertools.combinations(range(4), 2)]
    assert len(recs) == 1
    assert recs[0].psi_value == pytest.approx(min(psi(a, c) for c in coords), abs=1e-15)


def test_best_approx_records_strictly_improve():
    rng = np.random.default_rng(2)
    for _ in range(5):
        a = rng.standard_normal((2, 4))
        recs = best_approx(a, 60)
        assert all(r2.psi_value < r1.psi_value for r1, r2 in zip(recs, recs[1:]))
        assert all(r2.height_sq > r1.height_sq for r1, r2 in zip(recs, recs[1:]))
        for r in recs:
            assert r.psi_value == pytest.approx(psi(a, r.best), abs=1e-13)


def test_best_approx_non_increasing_in_budget():
    rng = np.random.default_rng(4)
    a = rng.standard_normal((2, 4))
    mins = [best_approx(a, h)[-1].psi_value for h in (5, 10, 20, 40, 80)]
    assert all(b <= a for a, b in zip(mins, mins[1:]))


def test_rational_plane_in_budget_is_hit_exactly():
    b = np.array([[1.0, 0, 1, 0], [0, 1, 0, 2]])
    recs = best_approx(b, 10)
    assert recs[-1].best.pluecker == (1, 0, 2, -1, 0, 2) or recs[-1].psi_value <= 1e-12
    assert recs[-1].psi_value <= 1e-12
