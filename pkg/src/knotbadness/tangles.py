"""Rational tangles, pretzel and Montesinos diagrams.

Geometry conventions (fixed here, checked by the alternation and
determinant tests):

* a tangle is a disk with ends NW, NE, SW, SE;
* twist boxes alternate horizontal/vertical from the inside out, starting
  with a horizontal box ``c1`` applied to the 0-tangle (two horizontal arcs);
* a horizontal box twists NE with SE and sends the fraction ``F -> F + c``;
  a vertical box twists SW with SE and sends ``1/F -> 1/F - c``;
* ``|c|`` half twists, one handedness for ``c > 0`` and the other for
  ``c < 0``; a horizontal and a vertical box with the same sign therefore
  use opposite crossing types, and a tangle is alternating exactly when its
  coefficients alternate in sign;
* ``M(r1, ..., rn)`` is the numerator closure of the horizontal sum of the
  tangles; ``P(a1, ..., ak) = M(1/a1, ..., 1/ak)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .diagram import Diagram, from_crossings, unknot
from .errors import NormalizationBug, NotAKnot

# --------------------------------------------------------------------------
# continued fractions


@dataclass(frozen=True)
class RationalParam:
    beta: int
    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"denominator must be positive, got {self.alpha}")
        if Fraction(self.beta, self.alpha).denominator != self.alpha:
            raise ValueError(f"{self.beta}/{self.alpha} is not in lowest terms")

    @classmethod
    def of(cls, r):
        r = Fraction(r)
        return cls(r.numerator, r.denominator)

    @property
    def value(self):
        return Fraction(self.beta, self.alpha)

    @property
    def sign(self):
        return (self.beta > 0) - (self.beta < 0)

    def cf(self, form="alternating"):
        return cf_expand(self.value, form)

    def __str__(self):
        return f"{self.beta}/{self.alpha}"


def _regular_cf(x: Fraction) -> list[int]:
    out = []
    while True:
        b = floor(x)
        out.append(b)
        x -= b
        if x == 0:
            return out
        x = 1 / x


def cf_expand(r, form: str = "alternating") -> list[int]:
    """Box coefficients ``[c1, ..., cm]`` (``c1`` innermost) of the tangle with fraction ``r``.

    ``form="alternating"`` gives strictly sign-alternating, nonzero
    coefficients; ``form="plain"`` follows the floor continued fraction of
    ``r`` and may repeat a sign.  ``r = 0`` is the trivial tangle and has no
    boxes.
    """
    r = Fraction(r)
    if r == 0:
        return []
    if form == "alternating":
        sign = 1 if r > 0 else -1
        b = _regular_cf(abs(r))
    elif form == "plain":
        sign = 1
        b = _regular_cf(r)
    else:
        raise ValueError(f"unknown form {form!r}")
    # outermost first: horizontal b0, vertical -b1, horizontal b2, ...
    if len(b) % 2 == 0:
        # innermost box must be horizontal: [.., bk] == [.., bk - 1, 1]
        b = b[:-1] + [b[-1] - 1, 1]
    boxes = [bi if i % 2 == 0 else -bi for i, bi in enumerate(b)]
    if boxes[0] == 0:
        boxes = boxes[1:]
    return [sign * c for c in reversed(boxes)]


def cf_evaluate(cf) -> Fraction | None:
    """Fraction of the tangle built from ``cf``; ``None`` for the infinity tangle."""
    p, q = 0, 1
    for i, c in enumerate(cf):
        if i % 2 == 0:
            p, q = p + c * q, q
        else:
            p, q = p, q - c * p
    if q == 0:
        return None
    return Fraction(p, q)


# --------------------------------------------------------------------------
# planar construction


class _Builder:
    """Crossings with counterclockwise stub lists, glued through union-find."""

    def __init__(self):
        self.parent: list[int] = []
        self.crossings: list[tuple[list[int], int]] = []  # (stubs NW,SW,SE,NE order, over parity)

    def stub(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, s):
        while self.parent[s] != s:
            self.parent[s] = self.parent[self.parent[s]]
            s = self.parent[s]
        return s

    def join(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def crossing(self, nw, sw, over_parity):
        """New crossing hooked to ``nw`` and ``sw``; returns its (SE, NE) stubs.

        Slots are listed counterclockwise NW, SW, SE, NE.  ``over_parity`` 0
        puts the NW-SE strand on top, 1 the SW-NE strand.
        """
        se, ne = self.stub(), self.stub()
        self.crossings.append(([nw, sw, se, ne], over_parity))
        return se, ne

    def crossing_below(self, nw, ne, over_parity):
        """New crossing hanging from ``nw`` and ``ne``; returns its (SW, SE) stubs."""
        sw, se = self.stub(), self.stub()
        self.crossings.append(([nw, sw, se, ne], over_parity))
        return sw, se


@dataclass
class TangleFragment:
    builder: _Builder
    nw: int
    ne: int
    sw: int
    se: int
    first_crossing: int
    boxes: tuple = ()

    @property
    def crossings(self):
        return range(self.first_crossing, len(self.builder.crossings))


def _zero_tangle(b: _Builder) -> TangleFragment:
    top, bottom = b.stub(), b.stub()
    return TangleFragment(b, top, top, bottom, bottom, len(b.crossings))


def _infinity_tangle(b: _Builder) -> TangleFragment:
    left, right = b.stub(), b.stub()
    return TangleFragment(b, left, right, left, right, len(b.crossings))


def _horizontal_box(t: TangleFragment, c: int):
    # positive boxes put the NW-SE strand on top
    parity = 0 if c > 0 else 1
    for _ in range(abs(c)):
        t.se, t.ne = t.builder.crossing(t.ne, t.se, parity)


def _vertical_box(t: TangleFragment, c: int):
    # same handedness as a horizontal box of the same sign, turned a quarter
    parity = 1 if c > 0 else 0
    for _ in range(abs(c)):
        t.sw, t.se = t.builder.crossing_below(t.sw, t.se, parity)


def _rational_tangle(b: _Builder, cf) -> TangleFragment:
    t = _zero_tangle(b)
    for i, c in enumerate(cf):
        (_horizontal_box if i % 2 == 0 else _vertical_box)(t, c)
    t.boxes = tuple(cf)
    return t


def _vertical_twist(b: _Builder, a: int) -> TangleFragment:
    """The pretzel column with fraction ``1/a``."""
    t = _infinity_tangle(b)
    _vertical_box(t, -a)
    return t


def _horizontal_sum(tangles: list[TangleFragment]) -> TangleFragment:
    first = tangles[0]
    out = TangleFragment(first.builder, first.nw, first.ne, first.sw, first.se, first.first_crossing)
    for t in tangles[1:]:
        out.builder.join(out.ne, t.nw)
        out.builder.join(out.se, t.sw)
        out.ne, out.se = t.ne, t.se
    return out


def _numerator_closure(t: TangleFragment) -> Diagram:
    t.builder.join(t.nw, t.ne)
    t.builder.join(t.sw, t.se)
    return _finish(t.builder)


def _finish(b: _Builder) -> Diagram:
    """Orient the glued crossings, rotate each to start at its incoming under-strand, emit PD."""
    n = len(b.crossings)
    slot_class = [[b.find(s) for s in stubs] for stubs, _ in b.crossings]
    where: dict[int, list[tuple[int, int]]] = {}
    for c in range(n):
        for k in range(4):
            where.setdefault(slot_class[c][k], []).append((c, k))
    free_loops = sum(1 for s in range(len(b.parent)) if b.find(s) == s and s not in where)
    if n == 0:
        if free_loops != 1:
            raise NotAKnot(f"diagram has {free_loops} components", components=free_loops)
        return unknot()
    for cls, occ in where.items():
        if len(occ) != 2:
            raise RuntimeError(f"stub class {cls} has {len(occ)} ends")

    def other(ck):
        a, bb = where[slot_class[ck[0]][ck[1]]]
        return bb if a == ck else a

    visited: dict[tuple[int, int], bool] = {}  # slot -> entered through it
    components = 0
    order_by_component = []
    for c0 in range(n):
        for k0 in range(4):
            if (c0, k0) in visited:
                continue
            components += 1
            edges_in_order = []
            cur = (c0, k0)
            while cur not in visited:
                visited[cur] = True
                out = (cur[0], (cur[1] + 2) % 4)
                visited[out] = False
                edges_in_order.append(slot_class[out[0]][out[1]])
                cur = other(out)
            order_by_component.append(edges_in_order)
    components += free_loops
    if components != 1:
        raise NotAKnot(f"diagram has {components} components", components=components)

    label = {cls: i + 1 for i, cls in enumerate(order_by_component[0])}
    pd = []
    for c, (stubs, parity) in enumerate(b.crossings):
        under = (1, 3) if parity == 0 else (0, 2)
        start = next(k for k in under if visited[(c, k)])
        pd.append(tuple(label[slot_class[c][(start + i) % 4]] for i in range(4)))
    return from_crossings(pd)


# --------------------------------------------------------------------------
# public builders


@dataclass(frozen=True)
class MontesinosSpec:
    params: tuple[RationalParam, ...]

    @classmethod
    def of(cls, *rs):
        return cls(tuple(r if isinstance(r, RationalParam) else RationalParam.of(r) for r in rs))

    @classmethod
    def parse(cls, texts):
        """From strings like ``"-1/3"`` or ``"2"``."""
        out = []
        for t in texts:
            m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*", t)
            if m is None:
                raise ValueError(f"cannot read rational parameter {t!r}")
            out.append(RationalParam.of(Fraction(int(m.group(1)), int(m.group(2) or 1))))
        return cls(tuple(out))

    @classmethod
    def from_json(cls, data):
        return cls(tuple(RationalParam.of(Fraction(p["beta"], p["alpha"])) for p in data["params"]))

    def to_json(self):
        return {"params": [{"beta": p.beta, "alpha": p.alpha} for p in self.params]}

    @property
    def values(self):
        return [p.value for p in self.params]

    def check_knot_condition(self):
        even = [p for p in self.params if p.alpha % 2 == 0]
        if len(even) > 1:
            raise NotAKnot(f"{len(even)} even denominators; at most one is allowed for a knot")

    def __str__(self):
        return "M(" + ", ".join(str(p) for p in self.params) + ")"


def _as_spec(spec) -> MontesinosSpec:
    if isinstance(spec, MontesinosSpec):
        return spec
    return MontesinosSpec.of(*spec)


def build_montesinos(spec, form: str = "alternating") -> Diagram:
    """The Montesinos diagram: rational tangles side by side, closed over the top and bottom."""
    spec = _as_spec(spec)
    spec.check_knot_condition()
    return _montesinos_from_cfs([cf_expand(r, form) for r in spec.values])


def _montesinos_from_cfs(cfs) -> Diagram:
    b = _Builder()
    tangles = [_rational_tangle(b, cf) for cf in cfs]
    if not tangles:
        tangles = [_zero_tangle(b)]
    return _numerator_closure(_horizontal_sum(tangles))


def build_pretzel(*a: int) -> Diagram:
    """Standard pretzel diagram: one vertical twist column per parameter."""
    if len(a) == 1 and not isinstance(a[0], int):
        a = tuple(a[0])
    if sum(1 for x in a if x % 2 == 0) > 1:
        raise NotAKnot(f"P{tuple(a)} has more than one even parameter")
    if any(x == 0 for x in a):
        raise ValueError("pretzel parameters must be nonzero")
    b = _Builder()
    return _numerator_closure(_horizontal_sum([_vertical_twist(b, x) for x in a]))


def montesinos_normal_form(spec) -> tuple[list[Fraction], int]:
    """Tangle fractions of one sign plus an integer twist count, describing the same knot.

    Integer parts are flyped out of the tangles; every tangle whose sign
    disagrees with the majority receives one cancelling pair of half twists
    (a Reidemeister II move), absorbs one twist of the pair and passes the
    other to the twist group at the end of the row.
    """
    spec = _as_spec(spec)
    values = spec.values
    fractional = [r for r in values if r.denominator != 1]
    positives = sum(1 for r in fractional if r > 0)
    sign = 1 if positives * 2 >= len(fractional) else -1
    twists = 0
    out = []
    for r in values:
        if r.denominator == 1:
            twists += int(r)
            continue
        whole = floor(r) if sign > 0 else -floor(-r)
        twists += whole
        out.append(r - whole)
    return out, twists


def normalize_montesinos(spec) -> Diagram:
    """A diagram of ``M(spec)`` with at most four bad domains.

    All tangles get alternating coefficient lists and one common sign; the
    leftover integer twisting sits in one group at the end of the row.  The
    bound on bad domains is checked on the result.
    """
    from .badness import badness

    spec = _as_spec(spec)
    spec.check_knot_condition()
    fractions, twists = montesinos_normal_form(spec)
    cfs = [cf_expand(r, "alternating") for r in fractions]
    if twists:
        cfs.extend([[1 if twists > 0 else -1]] * abs(twists))
    d = _montesinos_from_cfs(cfs)
    B = badness(d).B
    if B > 4:
        raise NormalizationBug(f"normalized diagram of {spec} has {B} bad domains")
    return d


def reorder_tangles(spec) -> MontesinosSpec:
    """Group the parameters by sign, keeping their order inside each group.

    The group containing the first parameter comes first.
    """
    spec = _as_spec(spec)
    if not spec.params:
        return spec
    first = spec.params[0].sign
    same = [p for p in spec.params if p.sign == first]
    rest = [p for p in spec.params if p.sign != first]
    return MontesinosSpec(tuple(same + rest))


def tangle_fragment(r, form: str = "alternating") -> tuple[Diagram, list[int]]:
    """Close a single rational tangle and report which crossings came from its boxes.

    The denominator closure (NW to SW, NE to SE) is used when the numerator
    closure would be a link; returns the diagram and its crossing indices.
    """
    cf = cf_expand(r, form)
    for closure in ("numerator", "denominator"):
        b = _Builder()
        t = _rational_tangle(b, cf)
        if closure == "numerator":
            b.join(t.nw, t.ne)
            b.join(t.sw, t.se)
        else:
            b.join(t.nw, t.sw)
            b.join(t.ne, t.se)
        try:
            d = _finish(b)
        except NotAKnot:
            continue
        return d, list(range(d.n))
    raise NotAKnot(f"both closures of the {r} tangle are links")


def random_spec(rng, max_tangles=5, max_alpha=13, min_tangles=1) -> MontesinosSpec:
    """A random spec with coprime parameters that closes to a knot."""
    while True:
        k = rng.randint(min_tangles, max_tangles)
        params = []
        for _ in range(k):
            alpha = rng.randint(1, max_alpha)
            beta = 0
            while beta == 0 or Fraction(beta, alpha).denominator != alpha:
                beta = rng.randint(-2 * alpha, 2 * alpha)
            params.append(RationalParam(beta, alpha))
        spec = MontesinosSpec(tuple(params))
        try:
            spec.check_knot_condition()
            build_montesinos(spec)
        except NotAKnot:
            continue
        return spec


__all__ = [
    "RationalParam",
    "MontesinosSpec",
    "TangleFragment",
    "cf_expand",
    "cf_evaluate",
    "build_montesinos",
    "build_pretzel",
    "normalize_montesinos",
    "montesinos_normal_form",
    "reorder_tangles",
    "tangle_fragment",
    "random_spec",
]
