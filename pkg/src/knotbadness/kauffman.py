"""Kauffman states of a marked diagram, their gradings, and the delta-spread.

A state picks one corner per crossing so that every unmarked face receives
exactly one corner.  States are searched crossing by crossing (in crossing
order, corners by slot) with face occupancy kept in an integer bitset.  A
memoized completion count on ``(crossing index, occupied faces)`` prunes
every dead branch, so enumeration never backtracks out of an empty subtree,
and the same table yields state counts and graded histograms without
listing the states at all.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .badness import badness, select_bad_edge_marking
from .diagram import Diagram, MarkedDiagram, mark
from .errors import AmbiguousMarking, EnumerationBudgetExceeded
from .grading import GradingTable, default_table
from .laurent import LaurentPoly

DEFAULT_BUDGET = 10**8


def default_budget():
    return int(os.environ.get("KNOTBADNESS_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class KauffmanState:
    corners: tuple[int, ...]  # chosen slot per crossing
    domains: tuple[int, ...]  # face index receiving that corner


@dataclass(frozen=True)
class StateGrades:
    a4: int
    m: int
    delta4: int
    f4: int

    @property
    def A(self):
        return Fraction(self.a4, 4)

    @property
    def M(self):
        return self.m

    @property
    def delta(self):
        return Fraction(self.delta4, 4)

    @property
    def f_sum(self):
        return Fraction(self.f4, 4)


@dataclass
class ComplexSummary:
    state_count: int
    delta_histogram: dict  # delta4 -> count
    a_histogram: dict  # a4 -> count
    m_histogram: dict  # m -> count
    marked_edge: int | None = None

    @property
    def spread4(self):
        if not self.delta_histogram:
            return 0
        return max(self.delta_histogram) - min(self.delta_histogram)

    @property
    def spread(self):
        return Fraction(self.spread4, 4)

    def to_json(self):
        def frac_keys(h):
            return {str(Fraction(k, 4)): v for k, v in sorted(h.items())}

        return {
            "stateCount": self.state_count,
            "markedEdge": self.marked_edge,
            "spread": str(self.spread),
            "deltaHistogram": frac_keys(self.delta_histogram),
            "AHistogram": frac_keys(self.a_histogram),
            "MHistogram": {str(k): v for k, v in sorted(self.m_histogram.items())},
        }


class StateSpace:
    """Search tables for one marked diagram."""

    def __init__(self, md: MarkedDiagram):
        d = md.base
        self.md = md
        self.n = d.n
        unmarked = md.unmarked_domains
        if len(unmarked) != d.n:
            raise AmbiguousMarking(
                f"{len(unmarked)} unmarked faces for {d.n} crossings; no Kauffman bijection exists"
            )
        self.bit_of_face = {f: 1 << i for i, f in enumerate(unmarked)}
        self.face_of_bit = {b: f for f, b in self.bit_of_face.items()}
        self.full = (1 << d.n) - 1
        # options[c] = [(slot, face bit), ...] in slot order
        self.options = []
        last_seen = {}
        for c in range(d.n):
            opts = []
            for k in range(4):
                face = d.corner_face[(c, k)]
                bit = self.bit_of_face.get(face)
                if bit is not None:
                    opts.append((k, bit))
                    last_seen[bit] = c
            self.options.append(opts)
        # closed[i]: faces with no corners at crossings >= i; they must be occupied by then
        self.closed = [0] * (d.n + 1)
        for bit, c in last_seen.items():
            for i in range(c + 1, d.n + 1):
                self.closed[i] |= bit
        self._count = {}
        self._agg = {}

    def count(self, i=0, mask=0) -> int:
        """Number of ways to finish a partial state occupying ``mask`` after ``i`` crossings."""
        key = (i, mask)
        hit = self._count.get(key)
        if hit is not None:
            return hit
        closed = self.closed[i]
        if mask & closed != closed:
            total = 0
        elif i == self.n:
            total = 1 if mask == self.full else 0
        else:
            total = 0
            for _, bit in self.options[i]:
                if not mask & bit:
                    total += self.count(i + 1, mask | bit)
        self._count[key] = total
        return total

    def states(self) -> Iterator[KauffmanState]:
        n = self.n
        if n == 0:
            yield KauffmanState((), ())
            return
        if self.count() == 0:
            return
        options = self.options
        masks = [0] * (n + 1)
        idx = [0] * (n + 1)
        chosen = [0] * n
        i = 0
        while i >= 0:
            if i == n:
                slots = tuple(options[c][chosen[c]][0] for c in range(n))
                faces = tuple(self.face_of_bit[options[c][chosen[c]][1]] for c in range(n))
                yield KauffmanState(slots, faces)
                i -= 1
                continue
            opts = options[i]
            j = idx[i]
            m = masks[i]
            while j < len(opts):
                bit = opts[j][1]
                j += 1
                if not m & bit and self.count(i + 1, m | bit):
                    break
            else:
                idx[i] = 0
                i -= 1
                continue
            idx[i] = j
            chosen[i] = j - 1
            masks[i + 1] = m | bit
            i += 1

    def graded_counts(self, table: GradingTable, i=0, mask=0) -> Counter:
        """Counter of ``(A4, M)`` over all completions; the aggregate behind every histogram."""
        key = (i, mask)
        hit = self._agg.get(key)
        if hit is not None:
            return hit
        out: Counter = Counter()
        closed = self.closed[i]
        if mask & closed != closed:
            pass
        elif i == self.n:
            if mask == self.full:
                out[0, 0] = 1
        else:
            sign = self.md.base.signs[i]
            for k, bit in self.options[i]:
                if mask & bit or not self.count(i + 1, mask | bit):
                    continue
                a4, m, _, _ = table.corner_values(sign, k)
                for (a, mm), v in self.graded_counts(table, i + 1, mask | bit).items():
                    out[a + a4, mm + m] += v
        self._agg[key] = out
        return out


def state_space(md: MarkedDiagram) -> StateSpace:
    return StateSpace(md)


def enumerate_states(md: MarkedDiagram) -> Iterator[KauffmanState]:
    """All Kauffman states of ``md``, lexicographic in (crossing, slot)."""
    return StateSpace(md).states()


def state_count(md: MarkedDiagram) -> int:
    return StateSpace(md).count()


def grade_state(md: MarkedDiagram, s: KauffmanState, table: GradingTable | None = None) -> StateGrades:
    table = table or default_table()
    a4 = m = delta4 = f4 = 0
    for sign, k in zip(md.base.signs, s.corners):
        a, mm, dl, f = table.corner_values(sign, k)
        a4 += a
        m += mm
        delta4 += dl
        f4 += f
    return StateGrades(a4, m, delta4, f4)


def _check_budget(md, count, budget):
    if budget is not None and count > budget:
        from .oracles import spanning_tree_count

        raise EnumerationBudgetExceeded(spanning_tree_count(md.base), budget)


def delta_spread(
    md: MarkedDiagram,
    table: GradingTable | None = None,
    budget: int | None = None,
    method: str = "enumerate",
) -> ComplexSummary:
    """Histogram the gradings of every Kauffman state and report the delta-spread.

    ``method="enumerate"`` grades each state; ``method="dp"`` sums the same
    contributions through the completion table, which is much faster on
    large diagrams and gives identical results.
    """
    table = table or default_table()
    space = StateSpace(md)
    count = space.count()
    _check_budget(md, count, default_budget() if budget is None else budget)
    delta_h: Counter = Counter()
    a_h: Counter = Counter()
    m_h: Counter = Counter()
    if method == "enumerate":
        for s in space.states():
            g = grade_state(md, s, table)
            delta_h[g.delta4] += 1
            a_h[g.a4] += 1
            m_h[g.m] += 1
    elif method == "dp":
        for (a4, m), v in space.graded_counts(table).items():
            delta_h[a4 - 4 * m] += v
            a_h[a4] += v
            m_h[m] += v
    else:
        raise ValueError(f"unknown method {method!r}")
    return ComplexSummary(count, dict(delta_h), dict(a_h), dict(m_h), md.marked_edge)


def state_sum_alexander(
    md: MarkedDiagram,
    table: GradingTable | None = None,
    budget: int | None = None,
    method: str = "dp",
) -> LaurentPoly:
    """``sum over states of (-1)^M t^A`` as a polynomial in ``s = t^(1/2)``."""
    table = table or default_table()
    space = StateSpace(md)
    _check_budget(md, space.count(), default_budget() if budget is None else budget)
    terms: Counter = Counter()
    if method == "enumerate":
        for st in space.states():
            g = grade_state(md, st, table)
            terms[g.a4 // 2] += -1 if g.m % 2 else 1
    else:
        for (a4, m), v in space.graded_counts(table).items():
            terms[a4 // 2] += -v if m % 2 else v
    return LaurentPoly(dict(terms))


def delta_extremes(md: MarkedDiagram, table: GradingTable | None = None) -> tuple[int, int]:
    """Minimum and maximum delta4 over all states, via two assignment problems.

    Independent of the enumeration: each extreme is an optimal crossing-to-face
    matching with corner f-values as weights.
    """
    import numpy as np
    from scipy.optimize import linear_sum_assignment

    table = table or default_table()
    d = md.base
    if d.n == 0:
        return 0, 0
    faces = {f: i for i, f in enumerate(md.unmarked_domains)}
    big = 10 * (d.n + 1)
    lo = np.full((d.n, d.n), big, dtype=np.int64)
    hi = np.full((d.n, d.n), -big, dtype=np.int64)
    for c in range(d.n):
        for k in range(4):
            j = faces.get(d.corner_face[(c, k)])
            if j is None:
                continue
            f4 = table.f4(d.signs[c], k)
            lo[c, j] = min(lo[c, j], f4)
            hi[c, j] = max(hi[c, j], f4)
    r, cidx = linear_sum_assignment(lo)
    fmin = int(lo[r, cidx].sum())
    r, cidx = linear_sum_assignment(hi, maximize=True)
    fmax = int(hi[r, cidx].sum())
    if fmin >= big or fmax <= -big:
        raise AmbiguousMarking("marked diagram has no Kauffman state")
    return fmin - d.writhe, fmax - d.writhe


@dataclass
class ThicknessReport:
    B: int
    alternating: bool
    bound4: int
    marked_edge: int
    fallback: bool
    summary: ComplexSummary | None = None
    state_count: int | None = None
    budget_exceeded: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def bound(self):
        return Fraction(self.bound4, 4)

    @property
    def spread(self):
        return None if self.summary is None else self.summary.spread

    @property
    def certified(self):
        if self.summary is None:
            return None
        return self.summary.spread4 <= self.bound4

    def to_json(self):
        return {
            "B": self.B,
            "alternating": self.alternating,
            "bound": str(self.bound),
            "markedEdge": self.marked_edge,
            "fallbackMarking": self.fallback,
            "stateCount": self.state_count,
            "spread": None if self.summary is None else str(self.spread),
            "certified": self.certified,
            "budgetExceeded": self.budget_exceeded,
        }


def bound4_for(B: int, alternating: bool, fallback: bool) -> int:
    """The certified thickness bound in quarter units."""
    if alternating:
        return 0
    return 2 * B if fallback else 2 * B - 4


def default_marking(d: Diagram) -> MarkedDiagram:
    """Bad-edge marking for non-alternating diagrams, lowest valid edge otherwise."""
    if not badness(d).alternating:
        return select_bad_edge_marking(d)
    for label in d.edge_labels:
        try:
            return mark(d, label)
        except AmbiguousMarking:
            continue
    raise AmbiguousMarking("no edge of the diagram separates two distinct faces")


def thickness_report(
    d: Diagram,
    table: GradingTable | None = None,
    budget: int | None = None,
    marking: int | None = None,
    method: str = "enumerate",
) -> ThicknessReport:
    report = badness(d)
    md = mark(d, marking) if marking is not None else default_marking(d)
    fallback = md.fallback
    if marking is not None and not report.alternating:
        # an arbitrary marking only earns the weaker bound
        fallback = marking not in report.candidates
    out = ThicknessReport(
        B=report.B,
        alternating=report.alternating,
        bound4=bound4_for(report.B, report.alternating, fallback),
        marked_edge=md.marked_edge,
        fallback=fallback,
    )
    try:
        out.summary = delta_spread(md, table, budget, method)
        out.state_count = out.summary.state_count
    except EnumerationBudgetExceeded as exc:
        out.budget_exceeded = True
        out.state_count = exc.state_count
    return out
