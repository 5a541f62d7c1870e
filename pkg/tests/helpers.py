"""Shared fixtures: hand-built drawings and small graphs.

Drawings are built from straight-line coordinates: every proper crossing
between two segments becomes a false vertex and rotations are read off by
sorting neighbors clockwise (decreasing angle).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from oneplanar.graph_core import Graph, OnePlanarDrawing, parse_drawing

Point = Tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    d1, d2 = _cross(q1, q2, p1), _cross(q1, q2, p2)
    d3, d4 = _cross(p1, p2, q1), _cross(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        t = d1 / (d1 - d2)
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    return None


def drawing_from_coordinates(points: Sequence[Tuple[float, float]], edges: Sequence[Tuple[int, int]]) -> OnePlanarDrawing:
    """Straight-line drawing with 0-based point ids; crossings get ids after the points."""
    pts: List[Point] = [(Fraction(x), Fraction(y)) for x, y in points]
    crossing_on: Dict[int, List[Tuple[Point, int]]] = {i: [] for i in range(len(edges))}
    for (i, (a, b)), (j, (c, d)) in itertools.combinations(enumerate(edges), 2):
        if {a, b} & {c, d}:
            continue
        x = _intersection(pts[a], pts[b], pts[c], pts[d])
        if x is not None:
            w = len(pts)
            pts.append(x)
            crossing_on[i].append((x, w))
            crossing_on[j].append((x, w))
    nbrs: Dict[int, set] = {i: set() for i in range(len(pts))}
    for i, (a, b) in enumerate(edges):
        hits = crossing_on[i]
        if len(hits) > 1:
            raise ValueError(f"edge {a}-{b} crossed more than once")
        chain = [a] + [w for _, w in hits] + [b]
        for u, v in zip(chain, chain[1:]):
            nbrs[u].add(v)
            nbrs[v].add(u)

    def angle(v: int, w: int) -> float:
        return math.atan2(float(pts[w][1] - pts[v][1]), float(pts[w][0] - pts[v][0]))

    rotation = [sorted(nbrs[v], key=lambda w: -angle(v, w)) for v in range(len(pts))]
    return OnePlanarDrawing.from_lists(rotation, range(len(points), len(pts)))


K4X_TEXT = """\
# square 1-2-3-4 with both diagonals crossing at 5
v 1
v 2
v 3
v 4
v 5 false
r 1: 2 5 4
r 2: 3 5 1
r 3: 4 5 2
r 4: 1 5 3
r 5: 1 2 3 4
"""


def k4x() -> OnePlanarDrawing:
    return parse_drawing(K4X_TEXT)


def plane_cycle(n: int) -> OnePlanarDrawing:
    return OnePlanarDrawing.from_lists([[(i - 1) % n, (i + 1) % n] for i in range(n)])


def plane_k4() -> OnePlanarDrawing:
    # center 3 inside triangle 0-1-2
    return drawing_from_coordinates([(0, 0), (4, 0), (2, 4), (2, 1)],
                                    [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)])


def pendants(points: list, edges: list, anchor: int, count: int, direction: Tuple[float, float]) -> None:
    """Attach ``count`` leaves to ``anchor``, fanned out along ``direction``."""
    ax, ay = points[anchor]
    dx, dy = direction
    for j in range(count):
        spread = (j - (count - 1) / 2) * 0.3
        points.append((ax + dx - dy * spread, ay + dy + dx * spread))
        edges.append((anchor, len(points) - 1))


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges([(mapping[u], mapping[v]) for u, v in h.edges()], vertices=range(len(mapping)))


def complete(n: int) -> Graph:
    return Graph.from_edges(itertools.combinations(range(n), 2), vertices=range(n))


def cycle(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def wheel(spokes: int) -> Graph:
    rim = [(i, (i + 1) % spokes) for i in range(spokes)]
    return Graph.from_edges(rim + [(spokes, i) for i in range(spokes)])


def k33() -> Graph:
    return Graph.from_edges([(a, b) for a in range(3) for b in range(3, 6)])


def fan_drawing(layout: str, links: Sequence[Tuple[int, int]] = ()) -> OnePlanarDrawing:
    """Vertex 0 with a prescribed fan, read clockwise from the top.

    ``layout`` alternates neighbor and face letters, e.g. ``"t3x3t4t4"``:
    ``t`` is a true neighbor, ``x`` a crossing on an edge from 0 to a far
    leaf, ``3`` makes the face to the next neighbor a 3-face and ``4`` a
    4-face closed by one extra vertex.  The last face wraps to the first
    neighbor.  Two ``x`` may not share a ``3``.  Each ``(i, j)`` in ``links``
    joins the far leaf behind crossing ``i`` to neighbor ``j`` (by position).
    """
    kinds, gaps = layout[0::2], layout[1::2]
    m = len(kinds)
    if len(gaps) != m:
        raise ValueError("layout must alternate neighbor and face letters")
    points = [(0.0, 0.0)]
    edges = []
    step = 2 * math.pi / m

    def polar(radius: float, ang: float):
        points.append((radius * math.cos(ang), radius * math.sin(ang)))
        return len(points) - 1

    nbr, ends = [], {}
    for i, k in enumerate(kinds):
        ang = math.pi / 2 - step * i
        if k == "t":
            nbr.append(polar(2.0, ang))
            edges.append((0, nbr[-1]))
        else:
            nbr.append(polar(6.0, ang))  # far leaf; the crossing appears on this spoke
            edges.append((0, nbr[-1]))
            ends[i] = [None, None]
    for i, face in enumerate(gaps):
        j = (i + 1) % m
        if face == "3":
            if kinds[i] == "x" and kinds[j] == "x":
                raise ValueError("two crossings cannot share a 3-face")
            if kinds[i] == "t" and kinds[j] == "t":
                edges.append((nbr[i], nbr[j]))
            elif kinds[i] == "x":
                ends[i][1] = nbr[j]
            else:
                ends[j][0] = nbr[i]
        else:
            g = polar(3.0, math.pi / 2 - step * (i + 0.5))
            for side, idx in ((1, i), (0, j)):
                if kinds[idx] == "t":
                    edges.append((nbr[idx], g))
                else:
                    ends[idx][side] = g
    for a, b in ends.values():
        edges.append((a, b))
    edges.extend((nbr[i], nbr[j]) for i, j in links)
    return drawing_from_coordinates(points, edges)


def crossed_square_heavy_corners() -> OnePlanarDrawing:
    """Crossed square whose four corners reach degree 8 through pendant leaves."""
    points = [(0, 1), (1, 0), (0, -1), (-1, 0)]
    edges = [(0, 2), (1, 3), (0, 1), (1, 2), (2, 3), (3, 0)]
    for corner, direction in enumerate([(0, 1), (1, 0), (0, -1), (-1, 0)]):
        pendants(points, edges, corner, 5, direction)
    return drawing_from_coordinates(points, edges)


def hub_in_four_squares() -> OnePlanarDrawing:
    """4-vertex 0 whose spokes each cross one side of a surrounding square."""
    points = [(0, 0), (2, 0), (0, 2), (-2, 0), (0, -2), (1, 1), (-1, 1), (-1, -1), (1, -1)]
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (5, 8), (5, 6), (6, 7), (7, 8)]
    return drawing_from_coordinates(points, edges)


def three_vertex_beside_crossing() -> OnePlanarDrawing:
    """3-vertex 0 next to a crossing; its neighbors 1 and 2 carry pendants."""
    points = [(0, 0), (0, 2), (0, -2), (-2, 0), (2, 0), (-2, -2)]
    edges = [(0, 1), (0, 2), (0, 5), (3, 2), (3, 1), (1, 4), (4, 2)]
    pendants(points, edges, 1, 3, (0, 1))
    pendants(points, edges, 2, 3, (0.5, -1))
    return drawing_from_coordinates(points, edges)
