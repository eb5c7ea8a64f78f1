import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _suite import FIGURE_EIGHT, TREFOIL, figure_eight, p355, random_non_alternating, same_sign_suite, trefoil
from knotbadness.diagram import (
    coerce_pd_text,
    diagram_from_json,
    mark,
    parse_pd,
    serialize_pd,
    unknot,
)
from knotbadness.errors import (
    Disconnected,
    MalformedCode,
    NonPlanarEmbedding,
    NotAKnot,
)


def all_diagrams():
    out = [("trefoil", trefoil()), ("figure-eight", figure_eight()), ("P(-3,5,5)", p355())]
    out += same_sign_suite()
    out += random_non_alternating(40)
    return out


DIAGRAMS = all_diagrams()
IDS = [name for name, _ in DIAGRAMS]


def sign_oracle(d):
    """Signs read from the label convention alone (labels increase along the knot)."""
    m = 2 * d.n
    out = []
    for a, b, c, dd in d.crossings:
        # over strand runs d -> b exactly when b follows d
        out.append(1 if b == dd % m + 1 else -1)
    return tuple(out)


def classically_alternating(d):
    """Walk the knot by label and record over/under at each passage."""
    m = 2 * d.n
    passages = []
    for label in range(1, m + 1):
        # the crossing this edge runs into: the one where the next label leaves
        nxt = label % m + 1
        for x in d.crossings:
            if label in x and nxt in x:
                i = x.index(label)
                passages.append("under" if i in (0, 2) else "over")
                break
    return all(passages[i] != passages[(i + 1) % m] for i in range(m))


def test_trefoil_basic():
    d = trefoil()
    assert d.n == 3
    assert len(d.faces) == 5
    assert d.writhe in (3, -3)
    assert len(set(d.signs)) == 1


def test_figure_eight_writhe_zero():
    d = figure_eight()
    assert d.writhe == 0
    assert len(d.faces) == 6


def test_unknot():
    u = parse_pd("PD[]")
    assert u.n == 0
    assert u == unknot()
    assert u.edge_labels == [1]
    assert len(u.faces) == 2


def test_one_crossing_kink():
    d = parse_pd("PD[X[1,2,2,1]]")
    assert d.n == 1
    assert len(d.faces) == 3


@pytest.mark.parametrize("text,error", [
    ("PD[X[1,2,3]]", MalformedCode),
    ("X[1,2,3,4]", MalformedCode),
    ("PD[X[1,2,3,4]", MalformedCode),
    ("PD[X[a,b,c,d]]", MalformedCode),
    ("PD[X[1,1,1,1]]", MalformedCode),
    ("PD[X[1,5,2,4],X[3,1,4,6]]", MalformedCode),
    ("PD[X[1,2,2,1],X[3,4,4,3]]", Disconnected),
    ("PD[X[6,1,7,2],X[10,7,5,8],X[4,5,1,6],X[2,10,3,9],X[8,4,9,3]]", NotAKnot),
])
def test_rejects(text, error):
    with pytest.raises(error):
        parse_pd(text)


def test_hopf_link_is_not_a_knot():
    with pytest.raises(NotAKnot) as exc:
        parse_pd("PD[X[4,1,3,2],X[2,3,1,4]]")
    assert exc.value.to_json()["error"] == "NotAKnot"


def test_non_planar_rejected():
    # trefoil with one crossing's rotation reversed: labels are consistent but faces are not
    with pytest.raises((NonPlanarEmbedding, MalformedCode)):
        parse_pd("PD[X[1,4,2,5],X[3,1,4,6],X[5,3,6,2]]")


def test_error_json_shape():
    with pytest.raises(MalformedCode) as exc:
        parse_pd("PD[X[1,2]]")
    j = exc.value.to_json()
    assert j["error"] == "MalformedCode"
    assert "message" in j


@pytest.mark.parametrize("name,d", DIAGRAMS, ids=IDS)
def test_face_count(name, d):
    assert len(d.faces) == d.n + 2
    corners = [c for f in d.faces for c in f.corners]
    assert sorted(corners) == sorted((c, k) for c in range(d.n) for k in range(4))


@pytest.mark.parametrize("name,d", DIAGRAMS, ids=IDS)
def test_round_trip(name, d):
    again = parse_pd(serialize_pd(d))
    assert again.crossings == d.crossings
    assert again.signs == d.signs
    assert diagram_from_json(d.to_json()).crossings == d.crossings


@pytest.mark.parametrize("name,d", DIAGRAMS, ids=IDS)
def test_passages(name, d):
    for e in d.edges:
        for dart, kind in ((e.tail, e.passage_at_tail), (e.head, e.passage_at_head)):
            assert kind == ("under" if dart.position in (0, 2) else "over")


@pytest.mark.parametrize("name,d", DIAGRAMS, ids=IDS)
def test_signs_match_label_oracle(name, d):
    if d.n >= 2:
        assert d.signs == sign_oracle(d)


@pytest.mark.parametrize("name,d", DIAGRAMS, ids=IDS)
def test_labels_follow_orientation(name, d):
    m = 2 * d.n
    for e in d.edges:
        assert e.tail.position in (2, 1, 3)
        nxt = d.edge(e.label % m + 1)
        assert nxt.tail.crossing == e.head.crossing


def test_relabelling_is_accepted():
    # trefoil with labels shifted by 10 and rotated
    d = parse_pd("PD[X[11,15,12,14],X[13,11,14,16],X[15,13,16,12]]")
    assert d.crossings == trefoil().crossings


@pytest.mark.parametrize("style", [
    "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]",
    "[(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]",
    "X_1,5,2,4 X_3,1,4,6 X_5,3,6,2",
    TREFOIL,
])
def test_bracket_styles(style):
    assert parse_pd(coerce_pd_text(style)).crossings == trefoil().crossings


def test_figure_eight_constant():
    assert parse_pd(FIGURE_EIGHT).n == 4


def test_mark_excludes_both_sides():
    d = trefoil()
    for label in d.edge_labels:
        md = mark(d, label)
        left, right = d.edge_sides[label]
        assert set(md.excluded) == {left, right}
        assert len(md.unmarked_domains) == d.n


@pytest.mark.parametrize("name,d", DIAGRAMS[:30], ids=IDS[:30])
def test_alternation_oracle(name, d):
    from knotbadness.badness import badness

    assert badness(d).alternating == classically_alternating(d)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=len(DIAGRAMS) - 1), st.integers(min_value=0, max_value=50))
def test_label_shift_invariance(i, shift):
    _, d = DIAGRAMS[i]
    m = 2 * d.n
    rows = [tuple((x - 1 + 2 * shift) % m + 1 for x in row) for row in d.crossings]
    from knotbadness.diagram import from_crossings

    again = from_crossings(rows)
    assert again.signs == d.signs
    assert len(again.faces) == d.n + 2
