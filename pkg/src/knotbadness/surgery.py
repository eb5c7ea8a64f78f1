"""Connected sums of diagrams spliced at marked edges."""

from __future__ import annotations

from dataclasses import dataclass

from .badness import badness
from .diagram import Diagram, MarkedDiagram, from_crossings, mark
from .errors import NoBadEdge


@dataclass(frozen=True)
class SumPlan:
    left: MarkedDiagram
    right: MarkedDiagram
    orientation: str = "coherent"


@dataclass(frozen=True)
class SumResult:
    diagram: Diagram
    splice_edges: tuple[int, ...]  # the two edges created by the splice

    def marked(self) -> MarkedDiagram:
        return mark(self.diagram, self.splice_edges[0])


def edge_kind(d: Diagram, label: int) -> tuple[str, str]:
    e = d.edge(label)
    return e.passage_at_tail, e.passage_at_head


def splice(plan: SumPlan) -> SumResult:
    """Cut both marked edges and reconnect tail-of-left to head-of-right and vice versa."""
    d1, d2 = plan.left.base, plan.right.base
    if d1.n == 0:
        return SumResult(d2, (plan.right.marked_edge,) * 2)
    if d2.n == 0:
        return SumResult(d1, (plan.left.marked_edge,) * 2)
    e1, e2 = d1.edge(plan.left.marked_edge), d2.edge(plan.right.marked_edge)
    off = 2 * d1.n
    n1 = d1.n
    rows = [list(x) for x in d1.crossings] + [[lbl + off for lbl in x] for x in d2.crossings]
    # left's edge now ends at right's head, right's edge at left's head
    rows[e2.head.crossing + n1][e2.head.position] = e1.label
    rows[e1.head.crossing][e1.head.position] = e2.label + off
    d = from_crossings(rows)
    # crossings and slots keep their places; only labels are renumbered
    a = d.crossings[e1.tail.crossing][e1.tail.position]
    b = d.crossings[e2.tail.crossing + n1][e2.tail.position]
    return SumResult(d, (a, b))


def connected_sum(plan: SumPlan) -> Diagram:
    return splice(plan).diagram


def connected_sum_marked(plan: SumPlan) -> MarkedDiagram:
    """The sum, marked on the splice edge that starts in the left diagram."""
    return splice(plan).marked()


def matching_bad_edges(d1: Diagram, d2: Diagram) -> tuple[int, int]:
    """Lowest pair of bad-edge candidates of the same kind (over-over or under-under).

    Splicing two over-over (or two under-under) edges keeps both new edges
    non-alternating, which is what makes the two merged faces stay bad.
    """
    c1, c2 = badness(d1).candidates, badness(d2).candidates
    if not c1 or not c2:
        raise NoBadEdge("both diagrams need a bad edge with distinct sides")
    for a in c1:
        for b in c2:
            if edge_kind(d1, a) == edge_kind(d2, b):
                return a, b
    return c1[0], c2[0]


def sum_at_bad_edges(d1: Diagram, d2: Diagram) -> SumResult:
    a, b = matching_bad_edges(d1, d2)
    return splice(SumPlan(mark(d1, a), mark(d2, b)))


def iterated_sum(base: Diagram, n: int) -> Diagram:
    """``base # base # ... # base`` (n copies), each summand attached at bad edges."""
    return iterated_sum_result(base, n).diagram


def iterated_sum_result(base: Diagram, n: int) -> SumResult:
    if n < 1:
        raise ValueError("n must be positive")
    if not badness(base).candidates:
        raise NoBadEdge("base diagram has no bad edge")
    current = SumResult(base, ())
    for _ in range(n - 1):
        current = sum_at_bad_edges(current.diagram, base)
    return current
