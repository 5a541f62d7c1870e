"""Seeded random 1-planar drawings.

Construction: a random triangulation (repeatedly drop a vertex into a random
face, or split an edge when a degree cap forbids that), randomized by edge flips, then thinned by deleting edges that
separate two triangles so quadrilateral faces appear.  A share of those
quadrilaterals then receives both diagonals, crossing at a new false vertex.
Each quadrilateral gets at most one crossing and its corners are true
vertices, so false vertices are never adjacent.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister), whose
output is identical across platforms for a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple, Union

from .graph_core import OnePlanarDrawing, ekey

DELETE_PROBABILITY = 0.5


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    crossing_fraction: Union[Fraction, float, int, str] = Fraction(1, 2)
    max_degree_cap: Optional[int] = None

    def fraction(self) -> Fraction:
        f = Fraction(self.crossing_fraction)
        if not 0 <= f <= 1:
            raise ValueError(f"crossing_fraction must lie in [0, 1], got {f}")
        return f


class _Rotations:
    """Mutable clockwise rotation lists used while building."""

    def __init__(self) -> None:
        self.rot: List[List[int]] = []

    def add_vertex(self, nbrs: List[int]) -> int:
        self.rot.append(list(nbrs))
        return len(self.rot) - 1

    def succ(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def insert_after(self, v: int, ref: int, new: int) -> None:
        r = self.rot[v]
        r.insert(r.index(ref) + 1, new)

    def remove(self, u: int, v: int) -> None:
        self.rot[u].remove(v)
        self.rot[v].remove(u)

    def deg(self, v: int) -> int:
        return len(self.rot[v])

    def walk(self, u: int, v: int, limit: int = 5) -> List[int]:
        """Vertices of the face containing dart ``(u, v)``, up to ``limit`` steps."""
        out = [u]
        a, b = u, v
        while b != u:
            out.append(b)
            a, b = b, self.succ(b, a)
            if len(out) > limit:
                break
        return out

    def is_triangle(self, u: int, v: int) -> bool:
        return len(self.walk(u, v, 3)) == 3


def _under_cap(rots: _Rotations, vs, cap: Optional[int], extra: int = 1) -> bool:
    return cap is None or all(rots.deg(v) + extra <= cap for v in vs)


def _split_edge(rots: _Rotations, a: int, b: int) -> None:
    """Put a new 4-vertex on edge ``ab``; only the two opposite corners gain degree."""
    c, d = rots.succ(b, a), rots.succ(a, b)
    x = rots.add_vertex([a, c, b, d])
    rots.rot[a][rots.rot[a].index(b)] = x
    rots.rot[b][rots.rot[b].index(a)] = x
    rots.insert_after(c, b, x)
    rots.insert_after(d, a, x)


def _stacked_triangulation(n: int, rng: random.Random, cap: Optional[int]) -> _Rotations:
    """Random triangulation: drop vertices into faces, splitting edges once the cap blocks that."""
    rots = _Rotations()
    rots.add_vertex([1, 2])
    rots.add_vertex([2, 0])
    rots.add_vertex([0, 1])
    darts = [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)]  # every face is a triangle
    for _ in range(3, n):
        for attempt in range(64):
            a, b = darts[rng.randrange(len(darts))]
            c = rots.succ(b, a)
            if _under_cap(rots, (a, b, c), cap):
                break
        else:
            ok = [(a, b) for a, b in darts if _under_cap(rots, (a, b, rots.succ(b, a)), cap)]
            if not ok:
                # the faces on both sides of ab must be distinct triangles
                splits = [(a, b) for a, b in darts if a < b
                          and rots.succ(b, a) != rots.succ(a, b)
                          and _under_cap(rots, (rots.succ(b, a), rots.succ(a, b)), cap)]
                if not splits:
                    raise ValueError(f"max_degree_cap={cap} too small to place {n} vertices")
                _split_edge(rots, *splits[rng.randrange(len(splits))])
                darts = [(u, v) for u in range(len(rots.rot)) for v in rots.rot[u]]
                continue
            a, b = ok[rng.randrange(len(ok))]
            c = rots.succ(b, a)
        x = rots.add_vertex([b, a, c])
        rots.insert_after(b, a, x)
        rots.insert_after(c, b, x)
        rots.insert_after(a, c, x)
        darts += [(a, x), (x, a), (b, x), (x, b), (c, x), (x, c)]
    return rots


def _random_flips(rots: _Rotations, count: int, rng: random.Random, cap: Optional[int]) -> None:
    edges = sorted({ekey(u, v) for u in range(len(rots.rot)) for v in rots.rot[u]})
    for _ in range(count):
        i = rng.randrange(len(edges))
        u, v = edges[i]
        p, q = rots.succ(v, u), rots.succ(u, v)
        if p == q or q in rots.rot[p] or rots.deg(u) <= 3 or rots.deg(v) <= 3:
            continue
        if not _under_cap(rots, (p, q), cap):
            continue
        rots.remove(u, v)
        rots.insert_after(p, v, q)
        rots.insert_after(q, u, p)
        edges[i] = ekey(p, q)


def _delete_edges(rots: _Rotations, rng: random.Random) -> None:
    edges = sorted({ekey(u, v) for u in range(len(rots.rot)) for v in rots.rot[u]})
    rng.shuffle(edges)
    for u, v in edges:
        if rots.deg(u) <= 2 or rots.deg(v) <= 2:
            continue
        if rots.is_triangle(u, v) and rots.is_triangle(v, u) and rng.random() < DELETE_PROBABILITY:
            rots.remove(u, v)


def _quadrilaterals(rots: _Rotations) -> List[Tuple[int, int, int, int]]:
    seen: Set[Tuple[int, int]] = set()
    quads = []
    for a in range(len(rots.rot)):
        for b in rots.rot[a]:
            if (a, b) in seen:
                continue
            cyc = rots.walk(a, b, limit=10 ** 9)
            for i in range(len(cyc)):
                seen.add((cyc[i], cyc[(i + 1) % len(cyc)]))
            if len(cyc) == 4:
                quads.append(tuple(cyc))
    return quads


def generate_random_1planar(cfg: GeneratorConfig) -> OnePlanarDrawing:
    """A random 1-planar drawing with ``cfg.n`` true vertices."""
    if cfg.n < 3:
        raise ValueError(f"need n >= 3, got {cfg.n}")
    if cfg.max_degree_cap is not None and cfg.max_degree_cap < 3:
        raise ValueError(f"max_degree_cap must be at least 3, got {cfg.max_degree_cap}")
    frac = cfg.fraction()
    rng = random.Random(cfg.seed)
    cap = cfg.max_degree_cap

    rots = _stacked_triangulation(cfg.n, rng, cap)
    _random_flips(rots, 2 * cfg.n, rng, cap)
    _delete_edges(rots, rng)

    quads = _quadrilaterals(rots)
    target = round(frac * len(quads))
    rng.shuffle(quads)
    g_adj: Dict[int, Set[int]] = {v: set(r) for v, r in enumerate(rots.rot)}
    false_vertices = []
    for v, x, u, y in quads:
        if len(false_vertices) >= target:
            break
        if u in g_adj[v] or y in g_adj[x] or not _under_cap(rots, (v, x, u, y), cap):
            continue
        w = rots.add_vertex([v, y, u, x])
        rots.insert_after(x, v, w)
        rots.insert_after(u, x, w)
        rots.insert_after(y, u, w)
        rots.insert_after(v, y, w)
        g_adj[v].add(u)
        g_adj[u].add(v)
        g_adj[x].add(y)
        g_adj[y].add(x)
        false_vertices.append(w)
    return OnePlanarDrawing.from_lists(rots.rot, false_vertices)
