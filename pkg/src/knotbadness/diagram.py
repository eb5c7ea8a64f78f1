"""Planar diagram codes as 4-valent combinatorial maps.

A crossing is stored PD-style: four edge labels listed counterclockwise,
starting at the incoming under-strand.  A *dart* ``(c, k)`` is slot ``k``
of crossing ``c``; the same pair also names the corner (quadrant) lying
between slots ``k`` and ``k + 1``.  Faces are the orbits of
``corner -> other end of the edge in slot k + 1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import AmbiguousMarking, Disconnected, MalformedCode, NonPlanarEmbedding, NotAKnot

OVER, UNDER = "over", "under"


class Dart(NamedTuple):
    crossing: int
    position: int


class Edge(NamedTuple):
    label: int
    tail: Dart
    head: Dart

    @property
    def passage_at_tail(self):
        return passage(self.tail.position)

    @property
    def passage_at_head(self):
        return passage(self.head.position)

    @property
    def alternating(self):
        return self.passage_at_tail != self.passage_at_head


def passage(position):
    return UNDER if position % 2 == 0 else OVER


@dataclass(frozen=True)
class Domain:
    """One face of the diagram.

    ``corners`` is the cyclic list of quadrants met while walking around the
    face; ``boundary`` lists ``(edge label, side)`` once per occurrence, so
    an edge bounding the face from both sides shows up twice.
    """

    index: int
    corners: tuple[Dart, ...]
    boundary: tuple[tuple[int, str], ...]

    @property
    def edge_labels(self):
        return sorted({label for label, _ in self.boundary})


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    faces: tuple[Domain, ...]

    @property
    def n(self):
        return len(self.crossings)

    @property
    def writhe(self):
        return sum(self.signs)

    @cached_property
    def darts_of_label(self) -> dict[int, tuple[Dart, Dart]]:
        seen: dict[int, list[Dart]] = {}
        for c, labels in enumerate(self.crossings):
            for k, label in enumerate(labels):
                seen.setdefault(label, []).append(Dart(c, k))
        return {label: (ds[0], ds[1]) for label, ds in seen.items()}

    def other_end(self, dart: Dart) -> Dart:
        a, b = self.darts_of_label[self.crossings[dart.crossing][dart.position]]
        return b if a == dart else a

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        if not self.crossings:
            return ()
        out = []
        for label in range(1, 2 * self.n + 1):
            a, b = self.darts_of_label[label]
            tail, head = (a, b) if self._outgoing(a) else (b, a)
            out.append(Edge(label, tail, head))
        return tuple(out)

    def edge(self, label) -> Edge:
        return self.edges[label - 1]

    def _outgoing(self, dart: Dart) -> bool:
        if dart.position == 2:
            return True
        if dart.position == 0:
            return False
        # over strand leaves through slot 1 at a positive crossing, slot 3 at a negative one
        return (dart.position == 1) == (self.signs[dart.crossing] > 0)

    @cached_property
    def corner_face(self) -> dict[Dart, int]:
        return {corner: f.index for f in self.faces for corner in f.corners}

    @cached_property
    def edge_sides(self) -> dict[int, tuple[int, int]]:
        """Edge label -> (face on its left, face on its right)."""
        if not self.crossings:
            return {1: (0, 1)}
        sides: dict[int, dict[str, int]] = {}
        for f in self.faces:
            for label, side in f.boundary:
                sides.setdefault(label, {})[side] = f.index
        return {label: (s["left"], s["right"]) for label, s in sides.items()}

    @property
    def edge_labels(self):
        return list(range(1, 2 * self.n + 1)) if self.n else [1]

    def to_pd(self) -> str:
        return serialize_pd(self)

    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "writhe": self.writhe,
            "faces": [[list(d) for d in f.corners] for f in self.faces],
        }


@dataclass(frozen=True)
class MarkedDiagram:
    base: Diagram
    marked_edge: int
    excluded: tuple[int, int]
    # set when no edge with two distinct bad sides was available
    fallback: bool = False

    @cached_property
    def unmarked_domains(self) -> tuple[int, ...]:
        return tuple(f.index for f in self.base.faces if f.index not in self.excluded)


# --------------------------------------------------------------------------
# construction


_X_RE = re.compile(r"X\s*\[\s*([^\[\]]*?)\s*\]")


def parse_pd(text: str) -> Diagram:
    """Parse ``PD[X[a,b,c,d], ...]`` into a validated diagram.

    ``PD[]`` is the crossingless unknot.
    """
    body = text.strip()
    m = re.fullmatch(r"PD\s*\[(.*)\]", body, flags=re.S)
    if m is None:
        raise MalformedCode(f"not a PD code: {text[:60]!r}")
    inner = m.group(1).strip()
    crossings = []
    pos = 0
    for x in _X_RE.finditer(inner):
        gap = inner[pos:x.start()].strip()
        if gap not in ("", ","):
            raise MalformedCode(f"unexpected text {gap!r} in PD code")
        parts = [p.strip() for p in x.group(1).split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"-?\d+", p) for p in parts):
            raise MalformedCode(f"crossing X[{x.group(1)}] needs four integer labels")
        crossings.append(tuple(int(p) for p in parts))
        pos = x.end()
    if inner[pos:].strip() not in ("", ","):
        raise MalformedCode(f"unexpected text {inner[pos:].strip()!r} in PD code")
    return from_crossings(crossings)


def coerce_pd_text(text: str) -> str:
    """Accept the common bracket styles of knot-table exports and return ``PD[...]`` text.

    Handles ``PD[X[1,4,2,5],...]``, ``[[1,4,2,5],...]``, ``[(1,4,2,5),...]``
    and ``X_1,4,2,5 X_3,6,4,1 ...``.
    """
    s = text.strip().strip('"').strip()
    if s.startswith("PD"):
        return s
    groups = re.findall(r"[\[\(]\s*(-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+)\s*[\]\)]", s)
    if not groups:
        groups = re.findall(r"X_?\{?\s*(-?\d+\s*,\s*-?\d+\s*,\s*-?\d+\s*,\s*-?\d+)", s)
    if not groups and re.fullmatch(r"[\[\(\s\]\)]*", s):
        return "PD[]"
    if not groups:
        raise MalformedCode(f"cannot read a PD code from {text[:60]!r}")
    return "PD[" + ",".join("X[" + re.sub(r"\s", "", g) + "]" for g in groups) + "]"


def serialize_pd(d: Diagram) -> str:
    return "PD[" + ",".join("X[%d,%d,%d,%d]" % x for x in d.crossings) + "]"


def from_crossings(crossings) -> Diagram:
    """Validate PD 4-tuples, orient them, normalize labels and compute faces."""
    crossings = [tuple(x) for x in crossings]
    n = len(crossings)
    if n == 0:
        return unknot()
    if any(len(x) != 4 for x in crossings):
        raise MalformedCode("every crossing needs exactly four labels")
    counts: dict[int, int] = {}
    for x in crossings:
        for label in x:
            counts[label] = counts.get(label, 0) + 1
    bad = sorted(lbl for lbl, k in counts.items() if k != 2)
    if bad:
        raise MalformedCode(f"labels {bad} do not occur exactly twice")
    # any label set is accepted; labels outside 1..2n are renumbered below

    darts: dict[int, list[Dart]] = {}
    for c, x in enumerate(crossings):
        for k, label in enumerate(x):
            darts.setdefault(label, []).append(Dart(c, k))

    def other(dart):
        a, b = darts[crossings[dart.crossing][dart.position]]
        return b if a == dart else a

    _check_connected(crossings, darts)

    # walk the knot from the incoming under-strand of crossing 0
    start = Dart(0, 0)
    order: list[int] = []  # edge labels in traversal order, first one enters `start`
    entered: dict[Dart, bool] = {}
    dart = start
    while True:
        if dart in entered:
            break
        entered[dart] = True
        if dart.position == 2:
            raise MalformedCode(
                f"crossing {dart.crossing} is entered through slot 2 of its under-strand; "
                "the first slot of each X must be the incoming under-edge"
            )
        out = Dart(dart.crossing, (dart.position + 2) % 4)
        entered[out] = False
        order.append(crossings[out.crossing][out.position])
        dart = other(out)
    if len(entered) != 4 * n:
        raise NotAKnot("PD code describes a link with more than one component", components=None)

    over_in = {}
    for dart, is_in in entered.items():
        if is_in and dart.position % 2 == 1:
            over_in[dart.crossing] = dart.position
    signs = tuple(1 if over_in[c] == 3 else -1 for c in range(n))

    # keep the given labels when they already increase along the orientation
    m = 2 * n
    if not all(order[(i + 1) % m] == order[i] % m + 1 for i in range(m)):
        # order[-1] enters crossing 0 at slot 0; number edges from there
        rename = {label: i + 1 for i, label in enumerate([order[-1]] + order[:-1])}
        crossings = [tuple(rename[lbl] for lbl in x) for x in crossings]

    faces = _faces(crossings, signs)
    if len(faces) != n + 2:
        raise NonPlanarEmbedding(f"{len(faces)} faces for {n} crossings; a sphere diagram has {n + 2}")
    return Diagram(tuple(crossings), signs, faces)


def _check_connected(crossings, darts):
    n = len(crossings)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in darts.values():
        parent[find(a.crossing)] = find(b.crossing)
    roots = {find(i) for i in range(n)}
    if len(roots) > 1:
        raise Disconnected(f"projection has {len(roots)} connected pieces")


def _faces(crossings, signs) -> tuple[Domain, ...]:
    darts: dict[int, list[Dart]] = {}
    for c, x in enumerate(crossings):
        for k, label in enumerate(x):
            darts.setdefault(label, []).append(Dart(c, k))

    def is_tail(dart):
        if dart.position % 2 == 0:
            return dart.position == 2
        return (dart.position == 1) == (signs[dart.crossing] > 0)

    seen = set()
    faces = []
    for c in range(len(crossings)):
        for k in range(4):
            if (c, k) in seen:
                continue
            corners = []
            boundary = []
            cur = Dart(c, k)
            while cur not in seen:
                seen.add(cur)
                corners.append(cur)
                # leave through slot k+1; the face stays on the right of the walk
                exit_slot = Dart(cur.crossing, (cur.position + 1) % 4)
                label = crossings[cur.crossing][exit_slot.position]
                boundary.append((label, "right" if is_tail(exit_slot) else "left"))
                a, b = darts[label]
                cur = b if a == exit_slot else a
            faces.append(Domain(len(faces), tuple(corners), tuple(boundary)))
    return tuple(faces)


def unknot() -> Diagram:
    return Diagram((), (), (Domain(0, (), ((1, "left"),)), Domain(1, (), ((1, "right"),))))


def writhe(d: Diagram) -> int:
    return d.writhe


def mark(d: Diagram, edge: int) -> MarkedDiagram:
    """Put the marking on ``edge``; the faces on both of its sides lose their corners."""
    if edge not in d.edge_sides:
        raise MalformedCode(f"diagram has no edge {edge}")
    left, right = d.edge_sides[edge]
    if left == right:
        raise AmbiguousMarking(f"edge {edge} has face {left} on both sides")
    return MarkedDiagram(d, edge, (left, right))


def diagram_from_json(data) -> Diagram:
    if isinstance(data, str):
        data = json.loads(data)
    d = from_crossings(data["crossings"])
    if "signs" in data and tuple(data["signs"]) != d.signs:
        raise MalformedCode("stored signs disagree with the orientation of the crossings")
    return d
