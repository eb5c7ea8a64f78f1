"""Good and bad domains, B(D), and the bad-edge marking."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, MarkedDiagram, mark
from .errors import AmbiguousMarking, NoBadEdge


@dataclass(frozen=True)
class DomainClass:
    domain: int
    verdict: str  # "good" or "bad"
    witnesses: tuple[int, ...] = ()

    @property
    def bad(self):
        return self.verdict == "bad"


@dataclass(frozen=True)
class BadnessReport:
    B: int
    alternating: bool
    bad_domains: tuple[int, ...]
    candidates: tuple[int, ...]
    non_alternating_edges: tuple[int, ...] = field(default=())

    def to_json(self):
        return {
            "B": self.B,
            "alternating": self.alternating,
            "badDomains": list(self.bad_domains),
            "candidates": list(self.candidates),
        }


def non_alternating_edges(d: Diagram) -> list[int]:
    """Edges running over-to-over or under-to-under."""
    return [e.label for e in d.edges if not e.alternating]


def classify_domains(d: Diagram) -> list[DomainClass]:
    bad_edges = set(non_alternating_edges(d))
    out = []
    for f in d.faces:
        # an edge seen from both sides of the face still counts once
        witnesses = tuple(label for label in f.edge_labels if label in bad_edges)
        out.append(DomainClass(f.index, "bad" if witnesses else "good", witnesses))
    return out


def badness(d: Diagram) -> BadnessReport:
    classes = classify_domains(d)
    bad = tuple(c.domain for c in classes if c.bad)
    edges = non_alternating_edges(d)
    candidates = tuple(e for e in edges if d.edge_sides[e][0] != d.edge_sides[e][1])
    return BadnessReport(len(bad), not bad, bad, candidates, tuple(edges))


def select_bad_edge_marking(d: Diagram) -> MarkedDiagram:
    """Mark the lowest non-alternating edge whose two sides are distinct faces.

    Both excluded faces are then bad, which is what buys the ``-1`` in the
    thickness bound.  If every non-alternating edge has the same face on both
    sides, any valid marking is returned with ``fallback=True``.
    """
    report = badness(d)
    if report.alternating:
        raise NoBadEdge("diagram is alternating; it has no bad edge to mark")
    if report.candidates:
        return mark(d, report.candidates[0])
    for label in d.edge_labels:
        try:
            md = mark(d, label)
        except AmbiguousMarking:
            continue
        return MarkedDiagram(md.base, md.marked_edge, md.excluded, fallback=True)
    raise AmbiguousMarking("no edge of the diagram separates two distinct faces")
