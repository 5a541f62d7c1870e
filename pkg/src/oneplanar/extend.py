"""Constructive total ``(r+2)``-coloring by reduction and re-extension.

The engine repeatedly deletes the edges of a reducible configuration
until only a handful of elements remain, colors that remainder exactly,
and then restores the deleted edges in reverse order.  Every restoration
uses the extension argument matching the configuration kind:

- light edge: free the low-degree endpoint, color the edge, recolor the endpoint
- 3-vertex in a triangle / 4-vertex edge in two triangles: exhaustive
  recoloring of the center, its edges and the edges among its neighbors
- alternating cycle: 2-choosability of even cycles, then the 3-vertices
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import AbstractSet, Dict, Iterable, List, Mapping, Optional, Set, Tuple

from .coloring import TotalColoring, color_even_cycle_from_lists, find_total_coloring, recolor_elements, verify_total_coloring
from .graph_core import Edge, Graph, ekey
from .structure import (Configuration, Kind, find_alternating_cycle, find_double_triangle_4_vertex,
                        find_triangular_3_vertex, light_edge_at)

BASE_ELEMENTS = 16


class ExtensionFailed(RuntimeError):
    """An extension that the reducibility argument guarantees did not succeed."""


class ListTooSmall(ExtensionFailed):
    pass


class NoConfigurationFound(RuntimeError):
    """No reducible configuration in a graph that still has too many elements.

    A 1-planar input with maximum degree at most ``r`` should never get
    here; the residual graph is kept for inspection.
    """

    def __init__(self, residual: Graph, trace: "ReductionTrace"):
        self.residual = residual
        self.trace = trace
        super().__init__(f"no reducible configuration in residual graph with "
                         f"{residual.num_edges()} edges after {len(trace.steps)} reductions")


@dataclass
class ReductionTrace:
    steps: List[Configuration] = field(default_factory=list)

    def replay(self, g: Graph) -> Graph:
        """The base graph obtained by performing every recorded deletion on ``g``."""
        removed = [e for cfg in self.steps for e in cfg.removed]
        return g.without_edges(removed)

    def lines(self) -> List[str]:
        return [cfg.describe() for cfg in self.steps]


# ---------------------------------------------------------------------------
# In-place extension steps (working adjacency already contains the edges)
# ---------------------------------------------------------------------------

def _first_free(forbidden: Set[int], k: int) -> Optional[int]:
    for c in range(1, k + 1):
        if c not in forbidden:
            return c
    return None


def _edge_colors_at(adj: Mapping[int, AbstractSet[int]], col: TotalColoring, v: int, skip: Iterable[int] = ()) -> Set[int]:
    skip = set(skip)
    out = set()
    for w in adj[v]:
        if w in skip:
            continue
        c = col.edge_colors.get(ekey(v, w))
        if c is not None:
            out.add(c)
    return out


def _extend_light_in_place(adj, col: TotalColoring, u: int, v: int, k: int) -> None:
    col.vertex_colors.pop(u, None)
    forbidden = _edge_colors_at(adj, col, u, skip=(v,)) | _edge_colors_at(adj, col, v, skip=(u,))
    if v in col.vertex_colors:
        forbidden.add(col.vertex_colors[v])
    c = _first_free(forbidden, k)
    if c is None:
        raise ExtensionFailed(f"no free color for edge {u + 1}-{v + 1}")
    col.set_edge(u, v, c)
    forbidden = _edge_colors_at(adj, col, u)
    forbidden |= {col.vertex_colors[w] for w in adj[u] if w in col.vertex_colors}
    c = _first_free(forbidden, k)
    if c is None:
        raise ExtensionFailed(f"no free color for vertex {u + 1}")
    col.vertex_colors[u] = c


def local_elements(adj: Mapping[int, AbstractSet[int]], center: int):
    """The center, all its edges, and every edge between two of its neighbors."""
    nbrs = sorted(adj[center])
    els = [("v", center)] + [("e", ekey(center, w)) for w in nbrs]
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            if b in adj[a]:
                els.append(("e", (a, b)))
    return els


def _extend_local_in_place(adj, col: TotalColoring, cfg: Configuration, k: int) -> None:
    free = local_elements(adj, cfg.center)
    for kind, item in free:
        if kind == "v":
            col.vertex_colors.pop(item, None)
        else:
            col.edge_colors.pop(item, None)
    found = recolor_elements(adj, col, free, k)
    if found is None:
        raise ExtensionFailed(f"no local recoloring around vertex {cfg.center + 1} for {cfg.kind.value}")
    for (kind, item), c in found.items():
        if kind == "v":
            col.vertex_colors[item] = c
        else:
            col.edge_colors[item] = c


def _extend_cycle_in_place(adj, col: TotalColoring, cfg: Configuration, k: int) -> None:
    cyc = cfg.witness
    n = len(cyc)
    if n < 4 or n % 2:
        raise ValueError(f"alternating cycle must have even length >= 4, got {n}")
    centers = cyc[0::2]
    for i, a in enumerate(centers):
        for b in centers[i + 1:]:
            if b in adj[a]:
                raise ValueError(f"3-vertices {a + 1} and {b + 1} on the cycle are adjacent")
    edges = [ekey(cyc[i], cyc[(i + 1) % n]) for i in range(n)]
    on_cycle = set(edges)
    for t in centers:
        col.vertex_colors.pop(t, None)
    for e in edges:
        col.edge_colors.pop(e, None)

    lists = []
    for u, v in edges:
        forbidden = set()
        for a, b in ((u, v), (v, u)):
            for w in adj[a]:
                if ekey(a, w) in on_cycle:
                    continue
                c = col.edge_colors.get(ekey(a, w))
                if c is not None:
                    forbidden.add(c)
            if a in col.vertex_colors:
                forbidden.add(col.vertex_colors[a])
        avail = [c for c in range(1, k + 1) if c not in forbidden]
        if len(avail) < 2:
            raise ListTooSmall(f"edge {u + 1}-{v + 1} has only {len(avail)} available colors")
        lists.append(avail)

    for e, c in zip(edges, color_even_cycle_from_lists(edges, lists)):
        col.edge_colors[e] = c
    for t in centers:
        forbidden = _edge_colors_at(adj, col, t) | {col.vertex_colors[w] for w in adj[t] if w in col.vertex_colors}
        c = _first_free(forbidden, k)
        if c is None:
            raise ExtensionFailed(f"no free color for 3-vertex {t + 1}")
        col.vertex_colors[t] = c


def _apply(adj, col: TotalColoring, cfg: Configuration, r: int) -> None:
    k = r + 2
    if cfg.kind is Kind.LIGHT_EDGE:
        _extend_light_in_place(adj, col, cfg.witness[0], cfg.witness[1], k)
    elif cfg.kind is Kind.ALTERNATING_CYCLE:
        _extend_cycle_in_place(adj, col, cfg, k)
    else:
        _extend_local_in_place(adj, col, cfg, k)


def _touched(adj, cfg: Configuration) -> Tuple[Set[int], Set[Edge]]:
    if cfg.kind is Kind.LIGHT_EDGE:
        u, v = cfg.witness
        return {u}, {ekey(u, v)}
    if cfg.kind is Kind.ALTERNATING_CYCLE:
        return set(cfg.witness[0::2]), set(cfg.removed)
    els = local_elements(adj, cfg.center)
    return {i for t, i in els if t == "v"}, {i for t, i in els if t == "e"}


def _check_local(adj, col: TotalColoring, vertices: Set[int], edges: Set[Edge], k: int) -> Optional[str]:
    vc, ec = col.vertex_colors, col.edge_colors
    for v in vertices:
        c = vc.get(v)
        if c is None or not 1 <= c <= k:
            return f"vertex {v + 1} badly colored"
        for w in adj[v]:
            if vc.get(w) == c or ec.get(ekey(v, w)) == c:
                return f"vertex {v + 1} clashes around {w + 1}"
    for u, v in edges:
        c = ec.get((u, v))
        if c is None or not 1 <= c <= k:
            return f"edge {u + 1}-{v + 1} badly colored"
        if vc.get(u) == c or vc.get(v) == c:
            return f"edge {u + 1}-{v + 1} clashes with an endpoint"
        for a, b in ((u, v), (v, u)):
            for w in adj[a]:
                if w != b and ec.get(ekey(a, w)) == c:
                    return f"edge {u + 1}-{v + 1} clashes with edge {a + 1}-{w + 1}"
    return None


# ---------------------------------------------------------------------------
# Public extension operations
# ---------------------------------------------------------------------------

def _adjacency(g: Graph) -> Dict[int, Set[int]]:
    return {u: set(s) for u, s in g.adj.items()}


def _finish(g: Graph, col: TotalColoring, cfg: Configuration, r: int) -> TotalColoring:
    report = verify_total_coloring(g, col, r + 2)
    if not report.ok:
        raise ExtensionFailed(f"{cfg.kind.value} extension produced an improper coloring: {report}")
    return col


def extend_light_edge(g: Graph, partial: TotalColoring, uv: Edge, r: int) -> TotalColoring:
    """Restore the light edge ``uv`` (``u`` is the low-degree end) into a coloring of ``g - uv``."""
    u, v = uv
    if not g.has_edge(u, v):
        raise ValueError(f"{u + 1}-{v + 1} is not an edge")
    col = partial.copy()
    col.edge_colors.pop(ekey(u, v), None)
    _extend_light_in_place(g.adj, col, u, v, r + 2)
    return _finish(g, col, Configuration(Kind.LIGHT_EDGE, (u, v), (ekey(u, v),)), r)


def extend_local_config(g: Graph, partial: TotalColoring, cfg: Configuration, r: int) -> TotalColoring:
    if cfg.kind not in (Kind.TRIANGULAR_THREE_VERTEX, Kind.DOUBLE_TRIANGLE_FOUR_VERTEX):
        raise ValueError(f"extend_local_config does not handle {cfg.kind.value}")
    col = partial.copy()
    _extend_local_in_place(g.adj, col, cfg, r + 2)
    return _finish(g, col, cfg, r)


def extend_alternating_cycle(g: Graph, partial: TotalColoring, cycle: Configuration, r: int) -> TotalColoring:
    if cycle.kind is not Kind.ALTERNATING_CYCLE:
        raise ValueError(f"extend_alternating_cycle does not handle {cycle.kind.value}")
    col = partial.copy()
    _extend_cycle_in_place(g.adj, col, cycle, r + 2)
    return _finish(g, col, cycle, r)


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

class _Reducer:
    """Working graph plus an index of vertices that may carry a light edge."""

    def __init__(self, g: Graph, r: int):
        self.r = r
        self.adj: Dict[int, Set[int]] = _adjacency(g)
        self.edge_count = g.num_edges()
        self.active = sum(1 for s in self.adj.values() if s)
        self.heap = sorted(self.adj)
        self.in_heap = set(self.heap)

    def elements(self) -> int:
        return self.active + self.edge_count

    def _push(self, v: int) -> None:
        if v not in self.in_heap:
            self.in_heap.add(v)
            heapq.heappush(self.heap, v)

    def next_configuration(self) -> Optional[Configuration]:
        adj, r = self.adj, self.r
        while self.heap:
            u = self.heap[0]
            hit = light_edge_at(adj, u, r)
            if hit:
                return Configuration(Kind.LIGHT_EDGE, hit, (ekey(*hit),))
            heapq.heappop(self.heap)
            self.in_heap.discard(u)
        for detector in (find_triangular_3_vertex, find_double_triangle_4_vertex):
            cfg = detector(adj)
            if cfg:
                return cfg
        return find_alternating_cycle(adj, r)

    def remove(self, edges: Iterable[Edge]) -> None:
        touched = set()
        for u, v in edges:
            for a, b in ((u, v), (v, u)):
                self.adj[a].discard(b)
                if not self.adj[a]:
                    self.active -= 1
            self.edge_count -= 1
            touched.update((u, v))
        for t in touched:
            self._push(t)
            for w in self.adj[t]:
                self._push(w)

    def restore(self, edges: Iterable[Edge]) -> None:
        for u, v in edges:
            self.adj[u].add(v)
            self.adj[v].add(u)


def _color_base(adj: Mapping[int, Set[int]], k: int) -> TotalColoring:
    live = [v for v in adj if adj[v]]
    base = Graph({v: frozenset(adj[v]) for v in live})
    col = find_total_coloring(base, k) if live else TotalColoring(k)
    if col is None:
        raise ExtensionFailed("base graph has no total coloring with the palette")
    for v in adj:
        if not adj[v]:
            col.vertex_colors[v] = 1
    return col


def total_color(g: Graph, r: Optional[int] = None) -> Tuple[TotalColoring, ReductionTrace]:
    """Total ``(r+2)``-coloring of a 1-planar graph with maximum degree at most ``r``.

    ``r`` defaults to ``max(13, Δ(g))``.  Raises :class:`NoConfigurationFound`
    if the reduction gets stuck and :class:`ExtensionFailed` if a
    restoration step fails; neither happens for 1-planar inputs.
    """
    if r is None:
        r = max(13, g.max_degree())
    if r < 13:
        raise ValueError(f"r must be at least 13, got {r}")
    if g.max_degree() > r:
        raise ValueError(f"maximum degree {g.max_degree()} exceeds r = {r}")
    k = r + 2
    red = _Reducer(g, r)
    trace = ReductionTrace()
    while red.elements() > BASE_ELEMENTS:
        cfg = red.next_configuration()
        if cfg is None:
            residual = Graph({u: frozenset(s) for u, s in red.adj.items()})
            raise NoConfigurationFound(residual, trace)
        trace.steps.append(cfg)
        red.remove(cfg.removed)

    col = _color_base(red.adj, k)
    adj = red.adj
    for cfg in reversed(trace.steps):
        red.restore(cfg.removed)
        _apply(adj, col, cfg, r)
        vs, es = _touched(adj, cfg)
        problem = _check_local(adj, col, vs, es, k)
        if problem:
            raise ExtensionFailed(f"after restoring {cfg.describe()}: {problem}")

    report = verify_total_coloring(g, col, k)
    if not report.ok:
        raise ExtensionFailed(f"final coloring is improper: {report}")
    return col, trace
