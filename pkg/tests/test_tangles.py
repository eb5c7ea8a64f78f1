import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotbadness.badness import badness
from knotbadness.errors import NotAKnot
from knotbadness.oracles import fox_alexander
from knotbadness.tangles import (
    MontesinosSpec,
    RationalParam,
    build_montesinos,
    build_pretzel,
    cf_evaluate,
    cf_expand,
    montesinos_normal_form,
    normalize_montesinos,
    random_spec,
    reorder_tangles,
    tangle_fragment,
)


def test_cf_round_trip_1000():
    rng = random.Random(5)
    for _ in range(1000):
        alpha = rng.randint(1, 10**4)
        beta = rng.randint(-(10**4), 10**4)
        r = Fraction(beta, alpha)
        for form in ("alternating", "plain"):
            assert cf_evaluate(cf_expand(r, form)) == r


@settings(max_examples=200)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=500))
def test_alternating_form_signs(r):
    cf = cf_expand(r, "alternating")
    assert all(c != 0 for c in cf)
    if r:
        s = 1 if r > 0 else -1
        # c1 innermost and horizontal; horizontal boxes carry the sign of r, vertical ones the opposite
        assert all(c * s * (1 if i % 2 == 0 else -1) > 0 for i, c in enumerate(cf))


@pytest.mark.parametrize("r,expected", [
    (Fraction(3), [3]),
    (Fraction(1, 3), [1, -2]),
    (Fraction(-1, 3), [-1, 2]),
    (Fraction(0), []),
])
def test_small_expansions(r, expected):
    assert cf_expand(r) == expected
    assert cf_evaluate(expected) == r


def test_parse_spec():
    spec = MontesinosSpec.parse(["-1/3", "1/5", "2"])
    assert spec.values == [Fraction(-1, 3), Fraction(1, 5), Fraction(2)]
    assert MontesinosSpec.from_json(spec.to_json()) == spec
    with pytest.raises(ValueError):
        MontesinosSpec.parse(["1/0x"])
    with pytest.raises(ValueError):
        RationalParam(2, 4)


def test_two_even_denominators():
    with pytest.raises(NotAKnot):
        build_montesinos(MontesinosSpec.parse(["1/2", "1/4"]))


def test_m3_is_trefoil():
    d = build_montesinos([3])
    assert d.n == 3
    assert fox_alexander(d).equal_up_to_unit(fox_alexander(build_pretzel(1, 1, 1)))


def test_p355_shape():
    d = build_pretzel(-3, 5, 5)
    assert d.n == 13
    assert badness(d).B == 4
    assert abs(fox_alexander(d)(-1)) == 5


def test_pretzel_is_montesinos_of_reciprocals():
    a = (-3, 5, 5)
    p = build_pretzel(*a)
    m = build_montesinos([Fraction(1, x) for x in a])
    assert fox_alexander(p).equal_up_to_unit(fox_alexander(m))


@pytest.mark.parametrize("seed", range(25))
def test_crossing_count_matches_boxes(seed):
    spec = random_spec(random.Random(seed), max_tangles=4, max_alpha=9)
    d = build_montesinos(spec)
    assert d.n == sum(abs(c) for r in spec.values for c in cf_expand(r))


@pytest.mark.parametrize("r", [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 3), Fraction(-13, 8), Fraction(5), Fraction(11, 4)])
def test_single_tangle_alternates(r):
    d, _ = tangle_fragment(r)
    assert badness(d).alternating


@pytest.mark.parametrize("seed", range(25))
def test_same_sign_build_alternates(seed):
    rng = random.Random(seed)
    sign = rng.choice((1, -1))
    spec = random_spec(rng, max_tangles=4, max_alpha=9)
    spec = MontesinosSpec(tuple(RationalParam(sign * abs(p.beta), p.alpha) for p in spec.params))
    try:
        d = build_montesinos(spec)
    except NotAKnot:
        return
    assert badness(d).alternating


@pytest.mark.parametrize("seed", range(40))
def test_normalization_keeps_knot(seed):
    spec = random_spec(random.Random(seed))
    before = build_montesinos(spec)
    after = normalize_montesinos(spec)
    assert badness(after).B <= 4
    assert fox_alexander(before).equal_up_to_unit(fox_alexander(after))


def test_normal_form_fractions_share_a_sign():
    fractions, twists = montesinos_normal_form(MontesinosSpec.parse(["-1/3", "1/5", "7/5"]))
    assert all(0 < f < 1 for f in fractions)
    assert twists == -1 + 1


def test_reorder_is_stable():
    spec = MontesinosSpec.parse(["-1/3", "1/5", "-2/7", "3/5"])
    out = reorder_tangles(spec)
    assert [str(p) for p in out.params] == ["-1/3", "-2/7", "1/5", "3/5"]


@pytest.mark.parametrize("seed", range(20))
def test_reorder_keeps_knot(seed):
    spec = random_spec(random.Random(100 + seed))
    a = build_montesinos(spec)
    b = build_montesinos(reorder_tangles(spec))
    # mutants share the Alexander polynomial
    assert fox_alexander(a).equal_up_to_unit(fox_alexander(b))
