import random
from collections import Counter

import pytest

from _suite import figure_eight, k_family, p355, random_bad_pairs, random_non_alternating, trefoil
from knotbadness.badness import badness
from knotbadness.diagram import mark, parse_pd, unknot
from knotbadness.errors import NoBadEdge
from knotbadness.kauffman import delta_spread, state_count
from knotbadness.oracles import fox_alexander
from knotbadness.surgery import (
    SumPlan,
    connected_sum,
    connected_sum_marked,
    edge_kind,
    iterated_sum,
    matching_bad_edges,
    splice,
    sum_at_bad_edges,
)


def convolve(a, b):
    out = Counter()
    for x, u in a.items():
        for y, v in b.items():
            out[x + y] += u * v
    return dict(out)


def hist(md):
    return delta_spread(md, method="dp").delta_histogram


def test_sum_with_unknot_is_identity():
    d = trefoil()
    assert connected_sum(SumPlan(mark(d, 1), mark(unknot(), 1))) == d
    assert connected_sum(SumPlan(mark(unknot(), 1), mark(d, 2))) == d


def test_trefoil_sum():
    d = connected_sum(SumPlan(mark(trefoil(), 1), mark(figure_eight(), 1)))
    assert d.n == 7
    assert len(d.faces) == 9
    expected = fox_alexander(trefoil()) * fox_alexander(figure_eight())
    assert fox_alexander(d).equal_up_to_unit(expected)


def test_round_trip_of_sum():
    d = sum_at_bad_edges(p355(), p355()).diagram
    assert parse_pd(d.to_pd()) == d


def test_splice_edges_are_edges_of_sum():
    r = sum_at_bad_edges(p355(), p355())
    for e in r.splice_edges:
        assert e in r.diagram.edge_labels
    left, right = r.diagram.edge_sides[r.splice_edges[0]]
    assert {left, right} == set(r.diagram.edge_sides[r.splice_edges[1]])


def test_matching_prefers_same_kind():
    d = p355()
    a, b = matching_bad_edges(d, d)
    assert edge_kind(d, a) == edge_kind(d, b)


def test_alternating_has_no_bad_edges():
    with pytest.raises(NoBadEdge):
        matching_bad_edges(trefoil(), p355())


@pytest.mark.parametrize("n,B,states,spread", [(1, 4, 55, 1), (2, 6, 3025, 2), (3, 8, 166375, 3)])
def test_k_family(n, B, states, spread):
    r = iterated_sum(p355(), n)
    assert badness(r).B == B
    md = mark(r, badness(r).candidates[0])
    s = delta_spread(md, method="dp")
    assert s.state_count == states
    assert s.spread == spread


def test_k_family_helper():
    assert k_family(2).n == 26


@pytest.mark.parametrize("i,pair", list(enumerate(random_bad_pairs(20))))
def test_bad_edge_sum(i, pair):
    a, b = pair
    e1, e2 = matching_bad_edges(a, b)
    r = splice(SumPlan(mark(a, e1), mark(b, e2)))
    assert badness(r.diagram).B == badness(a).B + badness(b).B - 2
    h = hist(r.marked())
    assert h == convolve(hist(mark(a, e1)), hist(mark(b, e2)))
    assert hist(mark(r.diagram, r.splice_edges[1])) == h


@pytest.mark.parametrize("seed", range(15))
def test_convolution_at_arbitrary_edges(seed):
    rng = random.Random(seed)
    pool = random_non_alternating(30) + [("trefoil", trefoil()), ("figure-eight", figure_eight())]
    a, b = rng.choice(pool)[1], rng.choice(pool)[1]
    e1, e2 = rng.choice(a.edge_labels), rng.choice(b.edge_labels)
    md = connected_sum_marked(SumPlan(mark(a, e1), mark(b, e2)))
    assert state_count(md) == state_count(mark(a, e1)) * state_count(mark(b, e2))
    assert hist(md) == convolve(hist(mark(a, e1)), hist(mark(b, e2)))
