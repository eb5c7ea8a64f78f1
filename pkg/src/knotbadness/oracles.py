"""Checks that do not go through the Kauffman state search.

* spanning trees of the checkerboard (Tait) graph, counted with an exact
  fraction-free determinant;
* the Alexander polynomial from the Wirtinger presentation by free
  differential calculus;
* the closed-form determinant of a three-strand pretzel knot.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagram import Diagram
from .errors import NotAKnot
from .laurent import LaurentPoly, interpolate


@dataclass(frozen=True)
class TaitGraph:
    vertices: tuple[int, ...]  # shaded face indices
    edges: tuple[tuple[int, int, int], ...]  # (face, face, crossing)


def checkerboard(d: Diagram, seed: int = 0) -> dict[int, int]:
    """2-colour the faces so that faces sharing an edge differ; ``seed`` is white (0).

    Face 0 stands in for the unbounded face of a PD code.
    """
    colour = {seed: 0}
    queue = deque([seed])
    while queue:
        f = queue.popleft()
        for label, _ in d.faces[f].boundary:
            left, right = d.edge_sides[label]
            g = right if left == f else left
            if g == f:
                continue
            if g in colour:
                if colour[g] == colour[f]:
                    raise ValueError("diagram faces admit no checkerboard colouring")
                continue
            colour[g] = 1 - colour[f]
            queue.append(g)
    return colour


def tait_graph(d: Diagram) -> TaitGraph:
    colour = checkerboard(d)
    shaded = tuple(sorted(f for f, c in colour.items() if c == 1))
    edges = []
    for c in range(d.n):
        # opposite corners share a colour
        if colour[d.corner_face[(c, 0)]] == 1:
            a, b = d.corner_face[(c, 0)], d.corner_face[(c, 2)]
        else:
            a, b = d.corner_face[(c, 1)], d.corner_face[(c, 3)]
        edges.append((a, b, c))
    return TaitGraph(shaded, tuple(edges))


def bareiss_determinant(matrix) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def spanning_tree_count(d: Diagram) -> int:
    """Number of spanning trees of the shaded Tait graph (reduced Laplacian determinant)."""
    if d.n == 0:
        return 1
    g = tait_graph(d)
    index = {v: i for i, v in enumerate(g.vertices)}
    size = len(index)
    lap = [[0] * size for _ in range(size)]
    for a, b, _ in g.edges:
        if a == b:
            continue
        i, j = index[a], index[b]
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    reduced = [row[1:] for row in lap[1:]]
    return bareiss_determinant(reduced)


# --------------------------------------------------------------------------
# Fox calculus


def wirtinger_arcs(d: Diagram) -> dict[int, int]:
    """Edge label -> over-arc index; an arc starts where the knot leaves an undercrossing."""
    arc_of = {}
    arc = 0
    # labels run along the orientation; edge L leaves crossing tail(L)
    start = next(e.label for e in d.edges if e.tail.position == 2)
    m = 2 * d.n
    label = start
    for _ in range(m):
        e = d.edge(label)
        if e.tail.position == 2 and label != start:
            arc += 1
        arc_of[label] = arc
        label = label % m + 1
    return arc_of


def alexander_matrix(d: Diagram) -> list[list[LaurentPoly]]:
    """One row per crossing: 1-t on the over-arc, t on the under-arc left of it, -1 on the one to its right."""
    arcs = wirtinger_arcs(d)
    n = d.n
    one_minus_t = LaurentPoly({0: 1, 1: -1})
    t = LaurentPoly({1: 1})
    rows = []
    for c, (a, b, cc, dd) in enumerate(d.crossings):
        row = [LaurentPoly() for _ in range(n)]
        over = arcs[b]
        incoming, outgoing = arcs[a], arcs[cc]
        if d.signs[c] > 0:
            left, right = outgoing, incoming
        else:
            left, right = incoming, outgoing
        row[over] = row[over] + one_minus_t
        row[left] = row[left] + t
        row[right] = row[right] - 1
        rows.append(row)
    return rows


def _eliminate_units(matrix):
    """Schur-complement away pivots that are units ``±t^k``; returns the residual matrix.

    Pivoting on a unit only changes the determinant by a unit, which the
    Alexander polynomial ignores.
    """
    rows = [dict((j, p) for j, p in enumerate(r) if p) for r in matrix]
    live_rows = set(range(len(rows)))
    live_cols = set(range(len(matrix[0]) if matrix else 0))
    while True:
        best = None
        for i in live_rows:
            for j, p in rows[i].items():
                if p.is_unit():
                    col_fill = sum(1 for r in live_rows if j in rows[r])
                    cost = (len(rows[i]) - 1) * (col_fill - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        if best is None:
            break
        _, pi, pj = best
        prow = rows[pi]
        inv = prow[pj] ** -1
        for r in list(live_rows):
            if r == pi or pj not in rows[r]:
                continue
            factor = rows[r].pop(pj) * inv
            for j, p in prow.items():
                if j == pj:
                    continue
                val = rows[r].get(j, LaurentPoly()) - factor * p
                if val:
                    rows[r][j] = val
                else:
                    rows[r].pop(j, None)
        live_rows.discard(pi)
        live_cols.discard(pj)
        rows[pi] = {}
    cols = sorted(live_cols)
    return [[rows[i].get(j, LaurentPoly()) for j in cols] for i in sorted(live_rows)]


def laurent_determinant(matrix) -> LaurentPoly:
    """Determinant up to a unit, by evaluation at integer points and exact interpolation."""
    n = len(matrix)
    if n == 0:
        return LaurentPoly(1)
    # clear negative exponents row by row (a unit factor)
    shifted = []
    for row in matrix:
        low = min((p.min_degree for p in row if p), default=0)
        shifted.append([p.shift(-low) if p else p for p in row])
    degree = sum(max((p.max_degree for p in row if p), default=0) for row in shifted)
    points = list(range(2, degree + 3))
    values = [bareiss_determinant([[p(x) for p in row] for row in shifted]) for x in points]
    return interpolate(points, values)


def fox_alexander(d: Diagram) -> LaurentPoly:
    """Alexander polynomial up to ``±t^k``, from an (n-1)-minor of the Alexander matrix."""
    if d.n == 0:
        return LaurentPoly(1)
    matrix = alexander_matrix(d)
    minor = [row[1:] for row in matrix[1:]]
    residual = _eliminate_units(minor)
    return laurent_determinant(residual).normalized()


def pretzel_determinant(p: int, q: int, r: int) -> int:
    if sum(1 for a in (p, q, r) if a % 2 == 0) > 1:
        raise NotAKnot(f"P({p},{q},{r}) has more than one even parameter")
    return abs(p * q + q * r + r * p)
