from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subspace_approx.charts import (
    GraphChart,
    chart_of_subspace,
    chart_transition,
    complement,
    graph_basis,
    graph_pluecker,
    in_delta_band,
    rational_subspace_from_graph,
    sample_delta_band,
    subspace_from_graph,
)
from subspace_approx.lattice import PAIRS, RationalSubspace, SubspaceError

HALF_QUARTER = GraphChart.from_entries((1, 2), F(1, 2), F(1, 4), F(1, 4), F(1, 2))


def test_chart_of_coordinate_plane():
    c = chart_of_subspace((1, 0, 0, 0, 0, 0))
    assert c.label == (1, 2)
    assert c.ell == ((0, 0), (0, 0))


def test_chart_of_worked_example():
    c = chart_of_subspace((1, 0, 2, -1, 0, 2))
    assert c.label == (1, 4)
    assert c.ell == ((0, F(1, 2)), (1, 0))
    assert c.delta_of_ell == F(-1, 2)
    # graph equations z2 = z4/2 and z3 = z1 on the original basis
    for z in ((1, 0, 1, 0), (0, 1, 0, 2)):
        assert z[1] == F(z[3], 2) and z[2] == z[0]


def test_chart_of_real_input_relation_guard():
    p = (1.0, 0.2, 0.3, 0.4, 0.5, 0.2 * 0.5 - 0.3 * 0.4 + 0.05)
    with pytest.raises(SubspaceError):
        chart_of_subspace(p)
    ok = (1.0, 0.2, 0.3, 0.4, 0.5, 0.2 * 0.5 - 0.3 * 0.4)
    assert chart_of_subspace(ok).label == (1, 2)


def test_chart_of_zero_vector():
    with pytest.raises(SubspaceError):
        chart_of_subspace((0, 0, 0, 0, 0, 0))
    with pytest.raises(SubspaceError):
        chart_of_subspace((0.0,) * 6)


def test_subspace_from_graph_examples():
    p, basis = subspace_from_graph(GraphChart.from_entries((1, 2), 0, 0, 0, 0))
    assert np.allclose(p, [1, 0, 0, 0, 0, 0])
    assert np.allclose(basis, [[1, 0, 0, 0], [0, 1, 0, 0]])
    _, basis = subspace_from_graph(HALF_QUARTER)
    assert np.allclose(basis, [[1, 0, 0.5, 0.25], [0, 1, 0.25, 0.5]])


def test_round_trip_example():
    c = GraphChart.from_entries((1, 2), 0.5, 0.25, 0.25, 0.5)
    p, _ = subspace_from_graph(c)
    back = chart_of_subspace(tuple(p))
    assert back.label == (1, 2)
    assert np.abs(back.matrix - c.matrix).max() <= 1e-12


@pytest.mark.parametrize(
    "delta,expected", [(F(1, 8), True), (F(1, 5), False)]
)
def test_in_delta_band_examples(delta, expected):
    assert HALF_QUARTER.delta_of_ell == F(3, 16)
    assert in_delta_band(HALF_QUARTER, float(delta)) is expected


def test_in_delta_band_zero_matrix_and_bad_delta():
    assert not in_delta_band(GraphChart.from_entries((1, 2), 0, 0, 0, 0), 0.01)
    with pytest.raises(ValueError):
        in_delta_band(HALF_QUARTER, 0.5)


def test_transition_examples():
    t = chart_transition(HALF_QUARTER, (3, 4))
    assert t.ell == ((F(8, 3), F(-4, 3)), (F(-4, 3), F(8, 3)))
    t = chart_transition(HALF_QUARTER, (1, 3))
    assert t.ell == ((-2, 4), (F(-3, 4), 2))
    assert chart_transition(HALF_QUARTER, (1, 2)) == HALF_QUARTER


def test_transition_singular():
    c = GraphChart.from_entries((1, 2), 0, 0, 0, 0)
    with pytest.raises(SubspaceError, match="chart singular here"):
        chart_transition(c, (3, 4))
    with pytest.raises(SubspaceError, match="chart singular here"):
        chart_transition(GraphChart.from_entries((1, 2), 0.0, 0.0, 0.0, 0.0), (3, 4))


def test_worked_example_transitions_exact():
    # z2 = z4/2, z3 = z1 read over (z3, z4): z1 = z3, z2 = z4/2
    c = chart_of_subspace((1, 0, 2, -1, 0, 2))
    assert chart_transition(c, (3, 4)).ell == ((1, 0), (0, F(1, 2)))


def closed_form_34(ell):
    (a, b), (c, d) = ell
    det = a * d - c * b
    return ((d / det, -b / det), (-c / det, a / det))


def closed_form_13(ell):
    (a, b), (c, d) = ell
    det = a * d - c * b
    return ((-a / b, 1 / b), (-det / b, d / b))


ell_entries = st.floats(-1, 1, allow_nan=False).filter(lambda x: abs(x) > 1e-3)


@settings(max_examples=300, deadline=None)
@given(ell_entries, ell_entries, ell_entries, ell_entries)
def test_generic_transition_matches_closed_forms(a, b, c, d):
    chart = GraphChart.from_entries((1, 2), a, b, c, d)
    if abs(a * d - b * c) > 1e-3:
        got = np.array(chart_transition(chart, (3, 4)).ell, dtype=float)
        assert np.abs(got - np.array(closed_form_34(chart.ell))).max() <= 1e-12 * max(1, np.abs(got).max())
    got = np.array(chart_transition(chart, (1, 3)).ell, dtype=float)
    assert np.abs(got - np.array(closed_form_13(chart.ell))).max() <= 1e-12 * max(1, np.abs(got).max())


@settings(max_examples=200, deadline=None)
@given(ell_entries, ell_entries, ell_entries, ell_entries, st.sampled_from(PAIRS))
def test_transition_coherence(a, b, c, d, target):
    chart = GraphChart.from_entries((1, 2), a, b, c, d)
    try:
        there = chart_transition(chart, target)
        back = chart_transition(there, (1, 2))
    except SubspaceError:
        return
    if np.abs(there.matrix).max() > 1e6:
        return
    assert np.abs(back.matrix - chart.matrix).max() <= 1e-9


small = st.integers(-9, 9)


@settings(max_examples=300, deadline=None)
@given(st.tuples(small, small, small, small), st.tuples(small, small, small, small))
def test_normalized_chart_bounds_and_exact_round_trip(q1, q2):
    try:
        sub = RationalSubspace.from_basis((q1, q2))
    except SubspaceError:
        return
    c = chart_of_subspace(sub)
    assert max(abs(x) for x in c.entries()) <= 1
    assert abs(c.delta_of_ell) <= 1
    assert rational_subspace_from_graph(c).pluecker == sub.pluecker
    # the graph minors are the Plücker vector rescaled so the chart entry is 1
    scaled = graph_pluecker(c)
    k = PAIRS.index(c.label)
    assert all(x * sub.pluecker[k] == y for x, y in zip(scaled, sub.pluecker))


def test_graph_basis_puts_identity_on_label():
    for label in PAIRS:
        chart = GraphChart.from_entries(label, 1, 2, 3, 4)
        v1, v2 = graph_basis(chart)
        i1, i2 = label
        i3, i4 = complement(label)
        assert (v1[i1 - 1], v1[i2 - 1], v2[i1 - 1], v2[i2 - 1]) == (1, 0, 0, 1)
        assert (v1[i3 - 1], v2[i3 - 1], v1[i4 - 1], v2[i4 - 1]) == (1, 2, 3, 4)
        # reading the chart back from the minors recovers ell
        assert chart_of_subspace(tuple(graph_pluecker(GraphChart.from_entries(label, 0.1, 0.2, 0.3, 0.4)))).label == label


def test_sample_delta_band_in_band():
    rng = np.random.default_rng(5)
    ells = sample_delta_band(rng, 0.1, 500)
    for ell in ells:
        chart = GraphChart((1, 2), tuple(map(tuple, ell)))
        assert in_delta_band(chart, 0.1)
