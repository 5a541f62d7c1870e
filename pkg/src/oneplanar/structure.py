"""Reducible configurations on the abstract graph and embedding diagnostics.

The four detectors look for the local structures that a minimal graph
without a total ``(r+2)``-coloring cannot contain.  Each returns one
witness (lexicographically smallest) or ``None``.  They accept either a
:class:`Graph` or a plain adjacency mapping so the coloring engine can call
them on its working copy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import AbstractSet, Dict, List, Mapping, Optional, Tuple, Union

from .graph_core import Edge, Graph, OnePlanarDrawing, ekey, face_of_dart, faces, is_false_face

Adjacency = Mapping[int, AbstractSet[int]]


class Kind(str, Enum):
    LIGHT_EDGE = "LightEdge"
    TRIANGULAR_THREE_VERTEX = "TriangularThreeVertex"
    DOUBLE_TRIANGLE_FOUR_VERTEX = "DoubleTriangleFourVertex"
    ALTERNATING_CYCLE = "AlternatingCycle"


@dataclass(frozen=True)
class Configuration:
    """A reducible configuration and the edges the engine deletes for it.

    Witness layout by kind:

    - ``LIGHT_EDGE``: ``(u, v)`` with ``u`` the low-degree end
    - ``TRIANGULAR_THREE_VERTEX``: ``(v, a, b)``, triangle ``vab``; removes ``vb``
    - ``DOUBLE_TRIANGLE_FOUR_VERTEX``: ``(v, x, a, b)``, triangles ``vxa`` and ``vxb``; removes ``vx``
    - ``ALTERNATING_CYCLE``: ``(t0, x0, t1, x1, ...)``, the ``t`` are 3-vertices; removes every cycle edge
    """

    kind: Kind
    witness: Tuple[int, ...]
    removed: Tuple[Edge, ...]

    @property
    def center(self) -> int:
        return self.witness[0]

    def describe(self) -> str:
        return f"{self.kind.value} " + " ".join(str(v + 1) for v in self.witness)


def _adj(g: Union[Graph, Adjacency]) -> Adjacency:
    return g.adj if isinstance(g, Graph) else g


def _check_r(r: int) -> None:
    if r < 13:
        raise ValueError(f"r must be at least 13, got {r}")


def light_edge_at(adj: Adjacency, u: int, r: int) -> Optional[Tuple[int, int]]:
    du = len(adj[u])
    if du == 0 or du > r // 2:
        return None
    for v in sorted(adj[u]):
        if du + len(adj[v]) <= r + 2:
            return (u, v)
    return None


def find_light_edge(g: Union[Graph, Adjacency], r: int) -> Optional[Configuration]:
    """Edge ``uv`` with ``d(u) <= r // 2`` and ``d(u) + d(v) <= r + 2``.

    The lexicographically smallest such edge is returned, oriented so that
    ``u`` is its lower-degree end (the smaller id on ties).
    """
    _check_r(r)
    adj = _adj(g)
    for a in sorted(adj):
        da = len(adj[a])
        for b in sorted(w for w in adj[a] if w > a):
            db = len(adj[b])
            u, du = (a, da) if da <= db else (b, db)
            if du <= r // 2 and da + db <= r + 2:
                hit = (u, b if u == a else a)
                return Configuration(Kind.LIGHT_EDGE, hit, (ekey(a, b),))
    return None


def find_triangular_3_vertex(g: Union[Graph, Adjacency]) -> Optional[Configuration]:
    adj = _adj(g)
    for v in sorted(adj):
        if len(adj[v]) != 3:
            continue
        a, b, c = sorted(adj[v])
        for x, y in ((a, b), (a, c), (b, c)):
            if y in adj[x]:
                return Configuration(Kind.TRIANGULAR_THREE_VERTEX, (v, x, y), (ekey(v, y),))
    return None


def find_double_triangle_4_vertex(g: Union[Graph, Adjacency]) -> Optional[Configuration]:
    adj = _adj(g)
    for v in sorted(adj):
        if len(adj[v]) != 4:
            continue
        for x in sorted(adj[v]):
            common = sorted(adj[v] & adj[x])
            if len(common) >= 2:
                return Configuration(Kind.DOUBLE_TRIANGLE_FOUR_VERTEX, (v, x, common[0], common[1]), (ekey(v, x),))
    return None


def find_alternating_cycle(g: Union[Graph, Adjacency], r: int = 13) -> Optional[Configuration]:
    """Cycle alternating between pairwise non-adjacent 3-vertices and their neighbors.

    When the 3-vertices form an independent set (always the case once no
    light edge is left) the search graph is bipartite and a cycle is found
    with union-find.  Otherwise a backtracking search over alternating
    paths is used; it is exponential and meant for small graphs.
    """
    adj = _adj(g)
    threes = sorted(v for v in adj if len(adj[v]) == 3)
    if not threes:
        return None
    three_set = set(threes)
    if all(not (adj[t] & three_set) for t in threes):
        cycle = _bipartite_cycle(adj, threes)
    else:
        cycle = _alternating_cycle_search(adj, threes, three_set)
    if cycle is None:
        return None
    cycle = _normalize_cycle(cycle)
    removed = tuple(ekey(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
    return Configuration(Kind.ALTERNATING_CYCLE, tuple(cycle), removed)


def _bipartite_cycle(adj: Adjacency, threes: List[int]) -> Optional[List[int]]:
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    forest: Dict[int, List[int]] = {}
    for t in threes:
        for x in sorted(adj[t]):
            rt, rx = find(t), find(x)
            if rt == rx:
                return _forest_path(forest, x, t)
            parent[rt] = rx
            forest.setdefault(t, []).append(x)
            forest.setdefault(x, []).append(t)
    return None


def _forest_path(forest: Dict[int, List[int]], src: int, dst: int) -> List[int]:
    prev = {src: src}
    queue = [src]
    for u in queue:
        if u == dst:
            break
        for w in forest.get(u, ()):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path  # dst ... src; closing edge src-dst is the new one


def _alternating_cycle_search(adj: Adjacency, threes: List[int], three_set: set) -> Optional[List[int]]:
    for start in threes:
        path = [start]
        on_path = {start}

        def extend_center() -> bool:
            # path ends at a center; pick the next anchor
            t = path[-1]
            for x in sorted(adj[t]):
                if x in on_path:
                    continue
                if len(path) >= 3 and start in adj[x]:
                    path.append(x)
                    return True
                path.append(x)
                on_path.add(x)
                if extend_anchor():
                    return True
                path.pop()
                on_path.discard(x)
            return False

        def extend_anchor() -> bool:
            x = path[-1]
            centers = path[0::2]
            for t in sorted(adj[x]):
                if t in on_path or t not in three_set:
                    continue
                if any(c in adj[t] for c in centers):
                    continue
                path.append(t)
                on_path.add(t)
                if extend_center():
                    return True
                path.pop()
                on_path.discard(t)
            return False

        if extend_center():
            return path
    return None


def _normalize_cycle(cycle: List[int]) -> List[int]:
    # centers sit at even positions; start at the smallest center, then
    # walk toward the smaller of its two anchors
    n = len(cycle)
    i = min(range(0, n, 2), key=lambda j: cycle[j])
    cycle = cycle[i:] + cycle[:i]
    if n > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return cycle


def verify_configuration(g: Union[Graph, Adjacency], cfg: Configuration, r: int) -> bool:
    """Re-check a witness against its defining predicate."""
    adj = _adj(g)

    def deg(v: int) -> int:
        return len(adj[v])

    def edge(a: int, b: int) -> bool:
        return a in adj and b in adj[a]

    w = cfg.witness
    if not all(v in adj for v in w):
        return False
    if cfg.kind is Kind.LIGHT_EDGE:
        u, v = w
        return edge(u, v) and deg(u) <= r // 2 and deg(u) + deg(v) <= r + 2
    if cfg.kind is Kind.TRIANGULAR_THREE_VERTEX:
        v, a, b = w
        return deg(v) == 3 and edge(v, a) and edge(v, b) and edge(a, b)
    if cfg.kind is Kind.DOUBLE_TRIANGLE_FOUR_VERTEX:
        v, x, a, b = w
        return (deg(v) == 4 and a != b and edge(v, x)
                and all(edge(v, y) and edge(x, y) for y in (a, b)))
    if cfg.kind is Kind.ALTERNATING_CYCLE:
        n = len(w)
        if n < 4 or n % 2 or len(set(w)) != n:
            return False
        if not all(edge(w[i], w[(i + 1) % n]) for i in range(n)):
            return False
        centers = w[0::2]
        if not all(deg(t) == 3 for t in centers):
            return False
        return not any(edge(a, b) for i, a in enumerate(centers) for b in centers[i + 1:])
    return False


# ---------------------------------------------------------------------------
# Embedding diagnostics
# ---------------------------------------------------------------------------

@dataclass
class CheckInstance:
    location: str
    holds: bool
    detail: str = ""


@dataclass
class DiagnosticsReport:
    """Local instances per embedding check.

    ``three_vertex_false_triangles``: a 3-vertex on two false 3-faces sharing
    an edge should see false third vertices and a 5+-face.
    ``four_vertex_triangles``: a 4-vertex lies on at most three 3-faces.
    ``five_vertex_support``: a 5-vertex has two 4+-faces, three true
    neighbors, or one 4+-face and two true neighbors.
    ``five_face_small_vertices``: a 5-face has at most four 4--vertices.
    """

    instances: Dict[str, List[CheckInstance]] = field(default_factory=lambda: {
        "three_vertex_false_triangles": [], "four_vertex_triangles": [], "five_vertex_support": [], "five_face_small_vertices": []})

    def violations(self, name: str) -> List[CheckInstance]:
        return [i for i in self.instances[name] if not i.holds]

    def render(self) -> str:
        lines = []
        for name, items in self.instances.items():
            bad = sum(not i.holds for i in items)
            lines.append(f"{name}: {len(items)} instances, {bad} violated")
            for inst in items:
                if not inst.holds:
                    lines.append(f"  violated at {inst.location}: {inst.detail}")
        return "\n".join(lines)


def check_embedding_lemmas(d: OnePlanarDrawing) -> DiagnosticsReport:
    """Evaluate the local embedding facts that hold for minimal graphs.

    Results are diagnostics: arbitrary drawings may violate them.
    """
    report = DiagnosticsReport()
    face_list = faces(d)
    fod = face_of_dart(face_list)

    def fan(v: int):
        # (neighbor_i, face between neighbor_i and neighbor_{i+1})
        rot = d.rotation[v]
        k = len(rot)
        return [(rot[i], face_list[fod[(v, rot[(i + 1) % k])]]) for i in range(k)]

    for v in d.true_vertices():
        deg = d.degree(v)
        if deg == 3:
            around = fan(v)
            tri = [(i, f) for i, (_, f) in enumerate(around) if f.degree == 3 and is_false_face(d, f)]
            # two false 3-faces sharing the edge v-v1 are consecutive in the fan
            for i, f in tri:
                j = (i + 1) % 3
                g_face = around[j][1]
                if g_face.degree != 3 or not is_false_face(d, g_face):
                    continue
                shared = d.rotation[v][j]
                others = [w for w in f.vertices + g_face.vertices if w not in (v, shared)]
                cond_false = all(d.is_false(w) for w in others)
                has_big = any(ff.degree >= 5 for _, ff in around)
                report.instances["three_vertex_false_triangles"].append(CheckInstance(
                    f"vertex {v + 1} / edge {v + 1}-{shared + 1}", cond_false and has_big,
                    f"third vertices false: {cond_false}; incident 5+-face: {has_big}"))
        elif deg == 4:
            n3 = sum(f.degree == 3 for _, f in fan(v))
            report.instances["four_vertex_triangles"].append(CheckInstance(
                f"vertex {v + 1}", n3 <= 3, f"incident 3-faces: {n3}"))
        elif deg == 5:
            big = sum(f.degree >= 4 for _, f in fan(v))
            trues = sum(not d.is_false(w) for w in d.rotation[v])
            holds = big >= 2 or trues >= 3 or (big >= 1 and trues >= 2)
            report.instances["five_vertex_support"].append(CheckInstance(
                f"vertex {v + 1}", holds, f"4+-faces: {big}, true neighbors: {trues}"))

    for idx, f in enumerate(face_list):
        if f.degree != 5:
            continue
        low = sum(d.degree(w) <= 4 for w in f.vertices)
        report.instances["five_face_small_vertices"].append(CheckInstance(
            f"face {idx} ({' '.join(str(w + 1) for w in f.vertices)})", low <= 4,
            f"incident 4--vertices: {low}"))
    return report
