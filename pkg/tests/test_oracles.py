import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _suite import figure_eight, p355, random_non_alternating, same_sign_suite, trefoil
from knotbadness.badness import badness
from knotbadness.diagram import mark
from knotbadness.errors import NotAKnot
from knotbadness.kauffman import state_count, state_sum_alexander
from knotbadness.laurent import LaurentPoly, interpolate
from knotbadness.oracles import (
    bareiss_determinant,
    checkerboard,
    fox_alexander,
    laurent_determinant,
    pretzel_determinant,
    spanning_tree_count,
    tait_graph,
)
from knotbadness.pipeline import alexander_in_t
from knotbadness.tangles import build_pretzel

SUITE = [("trefoil", trefoil()), ("figure-eight", figure_eight()), ("P(-3,5,5)", p355())]
SUITE += same_sign_suite()
SUITE += [x for x in random_non_alternating(60) if x[1].n <= 12]


def t(*coeffs, low=0):
    return LaurentPoly({low + i: c for i, c in enumerate(coeffs) if c})


def test_known_alexander_polynomials():
    assert fox_alexander(trefoil()).equal_up_to_unit(t(1, -1, 1))
    assert fox_alexander(figure_eight()).equal_up_to_unit(t(1, -3, 1))
    # the (-2,3,7) pretzel
    assert fox_alexander(build_pretzel(-2, 3, 7)).equal_up_to_unit(t(1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1))


def test_tree_counts():
    assert spanning_tree_count(trefoil()) == 3
    assert spanning_tree_count(figure_eight()) == 5
    assert spanning_tree_count(p355()) == 55


def test_checkerboard_seed_white():
    d = p355()
    colour = checkerboard(d)
    assert colour[0] == 0
    for label, (left, right) in d.edge_sides.items():
        if left != right:
            assert colour[left] != colour[right]


def test_tait_graph_has_one_edge_per_crossing():
    d = p355()
    g = tait_graph(d)
    assert len(g.edges) == d.n
    colour = checkerboard(d)
    assert len(colour) == d.n + 2
    assert set(g.vertices) == {f for f, c in colour.items() if c == 1}
    assert all(a in g.vertices and b in g.vertices for a, b, _ in g.edges)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=10**6))
def test_bareiss_matches_numpy(n, seed):
    rng = random.Random(seed)
    m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    assert bareiss_determinant(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_bareiss_big_integers():
    m = [[10**30, 1], [1, 10**30]]
    assert bareiss_determinant(m) == 10**60 - 1


def test_laurent_determinant_small():
    a = [[t(1, -1), t(0, 1)], [t(-1), t(1, 1)]]
    expected = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    assert laurent_determinant(a).equal_up_to_unit(expected)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=8))
def test_interpolation_recovers_polynomial(coeffs):
    p = LaurentPoly({i: c for i, c in enumerate(coeffs) if c})
    points = list(range(2, len(coeffs) + 3))
    assert interpolate(points, [p(x) for x in points]) == p


@settings(max_examples=60)
@given(
    st.dictionaries(st.integers(-5, 5), st.integers(-9, 9), max_size=5),
    st.dictionaries(st.integers(-5, 5), st.integers(-9, 9), max_size=5),
)
def test_laurent_ring_laws(a, b):
    p, q = LaurentPoly(a), LaurentPoly(b)
    assert p + q == q + p
    assert p * q == q * p
    assert (p - q) + q == p
    assert (p * q)(2) == p(2) * q(2)
    assert LaurentPoly.from_json(p.to_json()) == p


@pytest.mark.parametrize("name,d", SUITE)
def test_states_match_trees_for_three_markings(name, d):
    trees = spanning_tree_count(d)
    labels = d.edge_labels
    for e in sorted({labels[0], labels[len(labels) // 2], labels[-1]}):
        assert state_count(mark(d, e)) == trees


@pytest.mark.parametrize("name,d", SUITE)
def test_state_sum_matches_fox(name, d):
    md = mark(d, d.edge_labels[0])
    delta = alexander_in_t(state_sum_alexander(md))
    fox = fox_alexander(d)
    assert delta.equal_up_to_unit(fox)
    assert abs(delta(1)) == 1
    assert delta.is_symmetric()
    assert abs(delta(-1)) == abs(fox(-1))
    if not badness(d).B:
        # no cancellation in the state sum of an alternating diagram
        assert abs(delta(-1)) == spanning_tree_count(d)


@pytest.mark.parametrize("a", [(-3, 5, 5), (3, 5, 5), (1, 1, 1), (-2, 3, 7), (-3, -3, 5), (2, -3, 5), (-1, 3, -5)])
def test_pretzel_determinant(a):
    d = build_pretzel(*a)
    assert abs(fox_alexander(d)(-1)) == pretzel_determinant(*a)
    assert abs(alexander_in_t(state_sum_alexander(mark(d, 1)))(-1)) == pretzel_determinant(*a)


def test_pretzel_determinant_rejects_links():
    with pytest.raises(NotAKnot):
        pretzel_determinant(2, 4, 3)
