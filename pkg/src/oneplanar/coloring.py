"""Total colorings: data model, verifier, exact search and even-cycle list coloring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import AbstractSet, Collection, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .graph_core import Edge, Graph, ValidationReport, ekey

Element = Tuple[str, Union[int, Edge]]  # ("v", vertex) or ("e", (u, v))


@dataclass
class TotalColoring:
    """Partial or complete assignment of colors ``1..k`` to vertices and edges."""

    k: int
    vertex_colors: Dict[int, int] = field(default_factory=dict)
    edge_colors: Dict[Edge, int] = field(default_factory=dict)

    def copy(self) -> "TotalColoring":
        return TotalColoring(self.k, dict(self.vertex_colors), dict(self.edge_colors))

    def edge(self, u: int, v: int) -> Optional[int]:
        return self.edge_colors.get(ekey(u, v))

    def set_edge(self, u: int, v: int, color: int) -> None:
        self.edge_colors[ekey(u, v)] = color

    def num_colors_used(self) -> int:
        return len(set(self.vertex_colors.values()) | set(self.edge_colors.values()))


def verify_total_coloring(g: Graph, c: TotalColoring, k: int) -> ValidationReport:
    """Check that ``c`` colors every element of ``g`` properly from ``1..k``."""
    report = ValidationReport()
    edges = g.edges()
    edge_set = set(edges)
    for v in g.vertices:
        if v not in c.vertex_colors:
            report.add("unassigned", f"vertex {v + 1}", "no color")
    for e in edges:
        if e not in c.edge_colors:
            report.add("unassigned", f"edge {e[0] + 1}-{e[1] + 1}", "no color")
    for v, col in c.vertex_colors.items():
        if v not in g.adj:
            report.add("unknown", f"vertex {v + 1}", "not in graph")
        if not 1 <= col <= k:
            report.add("palette", f"vertex {v + 1}", f"color {col} outside 1..{k}")
    for e, col in c.edge_colors.items():
        if e not in edge_set:
            report.add("unknown", f"edge {e[0] + 1}-{e[1] + 1}", "not in graph")
        if not 1 <= col <= k:
            report.add("palette", f"edge {e[0] + 1}-{e[1] + 1}", f"color {col} outside 1..{k}")

    vc = c.vertex_colors
    for u, v in edges:
        cu, cv, ce = vc.get(u), vc.get(v), c.edge_colors.get((u, v))
        if cu is not None and cu == cv:
            report.add("vertex-vertex", f"{u + 1}~{v + 1}", f"adjacent vertices share color {cu}")
        if ce is not None:
            for w, cw in ((u, cu), (v, cv)):
                if cw == ce:
                    report.add("vertex-edge", f"{w + 1}~{u + 1}-{v + 1}", f"edge shares color {ce} with endpoint")
    for v in g.vertices:
        seen: Dict[int, int] = {}
        for w in sorted(g.adj[v]):
            col = c.edge_colors.get(ekey(v, w))
            if col is None:
                continue
            if col in seen:
                report.add("edge-edge", f"{v + 1}-{seen[col] + 1}~{v + 1}-{w + 1}",
                           f"incident edges share color {col}")
            else:
                seen[col] = w
    return report


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------

def _solve(nbrs: Sequence[Sequence[int]], base: Sequence[int], k: int, symmetric: bool) -> Optional[List[int]]:
    """Backtracking vertex coloring of a conflict graph with colors ``1..k``.

    ``base[i]`` is a bitmask of colors forbidden for element ``i`` by fixed
    context.  Elements are picked by saturation (most forbidden colors,
    then most uncolored conflicts).  With ``symmetric`` all colors are
    interchangeable and a new color is only opened one at a time.
    """
    n = len(nbrs)
    colors = [0] * n
    counts = [[0] * (k + 1) for _ in range(n)]
    mask = list(base)
    full = (1 << (k + 1)) - 2

    def pick() -> int:
        best, best_key = -1, None
        for i in range(n):
            if colors[i]:
                continue
            free_deg = sum(1 for j in nbrs[i] if not colors[j])
            key = (bin(mask[i]).count("1"), free_deg, -i)
            if best_key is None or key > best_key:
                best, best_key = i, key
        return best

    def assign(i: int, c: int) -> None:
        colors[i] = c
        bit = 1 << c
        for j in nbrs[i]:
            counts[j][c] += 1
            if counts[j][c] == 1:
                mask[j] |= bit

    def unassign(i: int) -> None:
        c = colors[i]
        colors[i] = 0
        bit = 1 << c
        for j in nbrs[i]:
            counts[j][c] -= 1
            if counts[j][c] == 0 and not base[j] & bit:
                mask[j] &= ~bit

    def rec(left: int, used: int) -> bool:
        if left == 0:
            return True
        i = pick()
        if mask[i] & full == full:
            return False
        top = min(k, used + 1) if symmetric else k
        for c in range(1, top + 1):
            if mask[i] >> c & 1:
                continue
            assign(i, c)
            if all(mask[j] & full != full for j in nbrs[i] if not colors[j]):
                if rec(left - 1, max(used, c)):
                    return True
            unassign(i)
        return False

    return colors if rec(n, 0) else None


def _element_index(g: Graph, vertices: Collection[int]):
    elements: List[Element] = [("v", v) for v in sorted(vertices)]
    elements += [("e", e) for e in g.edges() if e[0] in vertices and e[1] in vertices]
    return elements


def _conflicts(adj: Mapping[int, AbstractSet[int]], elements: Sequence[Element]) -> List[List[int]]:
    index = {el: i for i, el in enumerate(elements)}
    nbrs: List[List[int]] = [[] for _ in elements]
    for i, (kind, item) in enumerate(elements):
        if kind == "v":
            others = [("v", w) for w in adj[item]] + [("e", ekey(item, w)) for w in adj[item]]
        else:
            u, v = item
            others = [("v", u), ("v", v)]
            others += [("e", ekey(u, w)) for w in adj[u] if w != v]
            others += [("e", ekey(v, w)) for w in adj[v] if w != u]
        nbrs[i] = sorted({index[o] for o in others if o in index})
    return nbrs


def find_total_coloring(g: Graph, k: int) -> Optional[TotalColoring]:
    """Some total ``k``-coloring of ``g``, or ``None`` if none exists."""
    elements = _element_index(g, set(g.adj))
    nbrs = _conflicts(g.adj, elements)
    colors = _solve(nbrs, [0] * len(elements), k, symmetric=True)
    if colors is None:
        return None
    out = TotalColoring(k)
    for (kind, item), col in zip(elements, colors):
        if kind == "v":
            out.vertex_colors[item] = col
        else:
            out.edge_colors[item] = col
    return out


def recolor_elements(adj: Mapping[int, AbstractSet[int]], coloring: TotalColoring,
                     free: Sequence[Element], k: int) -> Optional[Dict[Element, int]]:
    """Exhaustively recolor the ``free`` elements, all other colors fixed.

    Returns the new colors of the free elements or ``None`` when no proper
    completion exists.  ``coloring`` is not modified.
    """
    free = list(free)
    free_set = set(free)
    nbrs = _conflicts(adj, free)
    base = []
    vc, ec = coloring.vertex_colors, coloring.edge_colors
    for kind, item in free:
        forbidden = 0
        if kind == "v":
            ctx = [("v", w) for w in adj[item]] + [("e", ekey(item, w)) for w in adj[item]]
        else:
            u, v = item
            ctx = [("v", u), ("v", v)] + [("e", ekey(u, w)) for w in adj[u] if w != v]
            ctx += [("e", ekey(v, w)) for w in adj[v] if w != u]
        for el in ctx:
            if el in free_set:
                continue
            col = vc.get(el[1]) if el[0] == "v" else ec.get(el[1])
            if col is not None:
                forbidden |= 1 << col
        base.append(forbidden)
    colors = _solve(nbrs, base, k, symmetric=False)
    if colors is None:
        return None
    return dict(zip(free, colors))


def exact_total_chromatic_number(g: Graph, max_k: int) -> Optional[int]:
    """Smallest ``k <= max_k`` with a total ``k``-coloring; ``None`` means over budget."""
    result = optimal_total_coloring(g, max_k)
    return None if result is None else result[0]


def optimal_total_coloring(g: Graph, max_k: int) -> Optional[Tuple[int, TotalColoring]]:
    lower = g.max_degree() + 1
    for k in range(max(lower, 1), max_k + 1):
        found = find_total_coloring(g, k)
        if found is not None:
            return k, found
    return None


# ---------------------------------------------------------------------------
# Even cycles
# ---------------------------------------------------------------------------

def color_even_cycles_batch(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Color many even cycles at once from 2-lists.

    ``lo`` and ``hi`` have shape ``(N, L)``: row ``j`` is a cycle of ``L``
    edges (edge ``i`` meets edges ``i - 1`` and ``i + 1`` mod ``L``) and
    edge ``i`` may take ``lo[j, i]`` or ``hi[j, i]``, with ``lo < hi``.
    Colors must be below 128.  Returns the ``(N, L)`` chosen colors.

    If every list in a row is the same pair, alternate.  Otherwise start at
    an edge whose list differs from its predecessor's, give it a color the
    predecessor cannot take, and go round greedily; the last edge always
    has a color left because the first edge avoided its list.
    """
    lo = np.asarray(lo)
    hi = np.asarray(hi)
    n, length = lo.shape
    code = lo.astype(np.int16) * 128 + hi
    differs = code != np.roll(code, 1, axis=1)
    start = np.argmax(differs, axis=1)  # 0 for uniform rows, which then alternate
    order = start[:, None] + np.arange(length)
    order[order >= length] -= length
    # rotate so that column 0 is the start edge and column -1 its predecessor
    rlo = np.take_along_axis(lo, order, axis=1).T.copy()
    rhi = np.take_along_axis(hi, order, axis=1).T.copy()

    rot = np.empty_like(rlo)
    hit = (rlo[0] == rlo[-1]) | (rlo[0] == rhi[-1])
    color = np.where(hit & differs.any(axis=1), rhi[0], rlo[0])
    rot[0] = color
    for i in range(1, length):
        color = np.where(rlo[i] != color, rlo[i], rhi[i])
        rot[i] = color

    out = np.empty((n, length), dtype=rot.dtype)
    np.put_along_axis(out, order, rot.T, axis=1)
    return out


def color_even_cycle_from_lists(cycle: Sequence[Edge], lists: Sequence[Iterable[int]]) -> List[int]:
    """Properly color the edges of an even cycle from lists of size at least two.

    ``cycle[i]`` and ``cycle[i+1]`` (indices mod ``len(cycle)``) are the
    consecutive, adjacent edges.  The result is aligned with ``cycle``.
    """
    n = len(cycle)
    if n < 2 or n % 2:
        raise ValueError(f"cycle length must be even, got {n}")
    if len(lists) != n:
        raise ValueError("one list per cycle edge required")
    for i in range(n):
        if not set(cycle[i - 1]) & set(cycle[i]):
            raise ValueError(f"edges {cycle[i - 1]} and {cycle[i]} are not consecutive on a cycle")
    pairs = []
    for i, lst in enumerate(lists):
        opts = sorted(set(lst))
        if len(opts) < 2:
            raise ValueError(f"list of edge {i} has fewer than two colors")
        pairs.append(opts[:2])
    arr = np.array([pairs], dtype=np.int64)
    return [int(c) for c in color_even_cycles_batch(arr[:, :, 0], arr[:, :, 1])[0]]
