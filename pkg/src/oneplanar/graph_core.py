"""Abstract graphs and 1-planar drawings stored as rotation systems.

A drawing is the rotation system of the associated plane graph: every
crossing of the original graph is replaced by a *false* vertex of degree 4.
Rotations list neighbors clockwise.  At a false vertex with rotation
``(a, b, c, d)`` the two crossing edges are ``a-c`` and ``b-d``.

Vertex ids are dense non-negative integers in memory.  The text format uses
1-based ids::

    # comment
    v 1
    v 5 false
    r 1: 2 5 4
    r 5: 1 2 3 4

Faces are traced with the successor rule ``(u, v) -> (v, w)`` where ``w``
follows ``u`` in the clockwise rotation at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Edge = Tuple[int, int]
Dart = Tuple[int, int]


class DrawingError(ValueError):
    """Raised for malformed drawing text or drawings that cannot be smoothed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def ekey(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# Abstract graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices ``0..n-1`` not required to be dense."""

    adj: Mapping[int, FrozenSet[int]]

    def __post_init__(self):
        for u, nbrs in self.adj.items():
            if u in nbrs:
                raise ValueError(f"loop at vertex {u}")
            for v in nbrs:
                if v not in self.adj or u not in self.adj[v]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "Graph":
        adj: Dict[int, set] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls({u: frozenset(s) for u, s in adj.items()})

    @property
    def vertices(self) -> List[int]:
        return sorted(self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def edges(self) -> List[Edge]:
        return sorted((u, v) for u, nbrs in self.adj.items() for v in nbrs if u < v)

    def num_vertices(self) -> int:
        return len(self.adj)

    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj.values()), default=0)

    def without_edges(self, edges: Iterable[Edge]) -> "Graph":
        adj = {u: set(s) for u, s in self.adj.items()}
        for u, v in edges:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph({u: frozenset(s) for u, s in adj.items()})

    def components(self) -> List[List[int]]:
        seen: set = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        return Graph({u: frozenset(self.adj[u] & keep) for u in keep})

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return dict(self.adj) == dict(other.adj)

    def __hash__(self):
        return hash(tuple(self.edges()))


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """A facial walk.  ``darts[i]`` is the directed edge entering ``vertices[i+1]``."""

    darts: Tuple[Dart, ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    @property
    def degree(self) -> int:
        return len(self.darts)

    def incidences(self) -> Tuple[Tuple[int, Dart], ...]:
        """(vertex, incoming dart) pairs along the walk."""
        n = len(self.darts)
        return tuple((self.darts[i][0], self.darts[i - 1]) for i in range(n))


@dataclass
class ValidationReport:
    violations: List[Tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, location: str, message: str) -> None:
        self.violations.append((rule, location, message))

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{rule} at {loc}: {msg}" for rule, loc, msg in self.violations)


@dataclass(frozen=True)
class OnePlanarDrawing:
    """Rotation system of the associated plane graph plus false-vertex flags.

    Construction only checks structure (known ids, no duplicate or loop
    entries, symmetric rotations).  Embedding properties are the business of
    :func:`validate_drawing`.
    """

    rotation: Tuple[Tuple[int, ...], ...]
    false_flags: Tuple[bool, ...]

    def __post_init__(self):
        n = len(self.rotation)
        if len(self.false_flags) != n:
            raise DrawingError("rotation and false_flags differ in length")
        nbr_sets = []
        for v, rot in enumerate(self.rotation):
            s = set(rot)
            if len(s) != len(rot):
                raise DrawingError(f"duplicate rotation entry at vertex {v + 1}")
            if v in s:
                raise DrawingError(f"loop at vertex {v + 1}")
            for w in rot:
                if not 0 <= w < n:
                    raise DrawingError(f"dangling vertex reference {w + 1} in rotation of {v + 1}")
            nbr_sets.append(s)
        for v, s in enumerate(nbr_sets):
            for w in s:
                if v not in nbr_sets[w]:
                    raise DrawingError(f"asymmetric rotation: {v + 1} lists {w + 1} but not vice versa")

    @classmethod
    def from_lists(cls, rotation: Sequence[Sequence[int]], false_vertices: Iterable[int] = ()) -> "OnePlanarDrawing":
        false = set(false_vertices)
        return cls(tuple(tuple(r) for r in rotation), tuple(v in false for v in range(len(rotation))))

    @property
    def n(self) -> int:
        return len(self.rotation)

    def is_false(self, v: int) -> bool:
        return self.false_flags[v]

    def true_vertices(self) -> List[int]:
        return [v for v in range(self.n) if not self.false_flags[v]]

    def false_vertices(self) -> List[int]:
        return [v for v in range(self.n) if self.false_flags[v]]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    @property
    def _nbr_sets(self) -> Tuple[FrozenSet[int], ...]:
        cached = self.__dict__.get("_nbrs")
        if cached is None:
            cached = tuple(frozenset(r) for r in self.rotation)
            object.__setattr__(self, "_nbrs", cached)
        return cached

    def edges(self) -> List[Edge]:
        return sorted((u, v) for u, rot in enumerate(self.rotation) for v in rot if u < v)

    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def succ(self, v: int, u: int) -> int:
        """Neighbor following ``u`` clockwise around ``v``."""
        rot = self.rotation[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def crossing_pairs(self, w: int) -> Tuple[Edge, Edge]:
        """The two original edges crossing at false vertex ``w``."""
        a, b, c, d = self.rotation[w]
        return (a, c), (b, d)

    def faces(self) -> List[Face]:
        return faces(self)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_drawing(text: str) -> OnePlanarDrawing:
    """Parse the line-oriented drawing format.  Ids in the text are 1-based."""
    declared: Dict[int, bool] = {}
    rotations: Dict[int, List[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(" ")
        if tag == "v":
            parts = rest.split()
            if not parts or len(parts) > 2 or (len(parts) == 2 and parts[1] != "false"):
                raise DrawingError(f"malformed vertex line {line!r}", lineno)
            vid = _parse_id(parts[0], lineno)
            if vid in declared:
                raise DrawingError(f"vertex {vid} declared twice", lineno)
            declared[vid] = len(parts) == 2
        elif tag == "r":
            head, colon, tail = rest.partition(":")
            if not colon:
                raise DrawingError(f"rotation line without ':' {line!r}", lineno)
            vid = _parse_id(head.strip(), lineno)
            if vid in rotations:
                raise DrawingError(f"second rotation for vertex {vid}", lineno)
            rot = [_parse_id(tok, lineno) for tok in tail.split()]
            if len(set(rot)) != len(rot):
                raise DrawingError(f"duplicate rotation entry at vertex {vid}", lineno)
            rotations[vid] = rot
        else:
            raise DrawingError(f"unknown record {tag!r}", lineno)

    n = len(declared)
    if sorted(declared) != list(range(1, n + 1)):
        raise DrawingError("vertex ids must be exactly 1..n")
    for vid in rotations:
        if vid not in declared:
            raise DrawingError(f"rotation for undeclared vertex {vid}")
    for vid in declared:
        if vid not in rotations:
            raise DrawingError(f"missing rotation for vertex {vid}")
        for w in rotations[vid]:
            if w not in declared:
                raise DrawingError(f"dangling vertex reference {w} in rotation of {vid}")

    drawing = OnePlanarDrawing(
        tuple(tuple(w - 1 for w in rotations[v]) for v in range(1, n + 1)),
        tuple(declared[v] for v in range(1, n + 1)),
    )
    for u, v in drawing.edges():
        if drawing.is_false(u) and drawing.is_false(v):
            raise DrawingError(f"adjacent false vertices {u + 1} and {v + 1}")
    return drawing


def _parse_id(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise DrawingError(f"bad vertex id {tok!r}", lineno) from None
    if value < 1:
        raise DrawingError(f"vertex ids are 1-based, got {value}", lineno)
    return value


def serialize_drawing(d: OnePlanarDrawing) -> str:
    lines = [f"v {v + 1} false" if d.is_false(v) else f"v {v + 1}" for v in range(d.n)]
    for v, rot in enumerate(d.rotation):
        body = " ".join(str(w + 1) for w in rot)
        lines.append(f"r {v + 1}: {body}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Faces and validation
# ---------------------------------------------------------------------------

def faces(d: OnePlanarDrawing) -> List[Face]:
    """All facial walks, in order of their smallest starting dart."""
    pos = [{w: i for i, w in enumerate(rot)} for rot in d.rotation]
    seen: set = set()
    result = []
    for u in range(d.n):
        for v in d.rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                a, b = dart
                rot = d.rotation[b]
                dart = (b, rot[(pos[b][a] + 1) % len(rot)])
            result.append(Face(tuple(walk)))
    return result


def face_of_dart(face_list: Sequence[Face]) -> Dict[Dart, int]:
    return {dart: i for i, f in enumerate(face_list) for dart in f.darts}


def is_false_face(d: OnePlanarDrawing, f: Face) -> bool:
    return any(d.is_false(v) for v in f.vertices)


def drawing_components(d: OnePlanarDrawing) -> List[List[int]]:
    seen = [False] * d.n
    comps = []
    for s in range(d.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in d.rotation[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def validate_drawing(d: OnePlanarDrawing) -> ValidationReport:
    """Check false-vertex degree, non-adjacency of false vertices, genus 0 and simplicity.

    Genus is checked per connected component (``V - E + F = 2`` for every
    component with at least one edge).
    """
    report = ValidationReport()
    for v in d.false_vertices():
        if d.degree(v) != 4:
            report.add("false-degree", f"vertex {v + 1}", f"false vertex degree != 4 (got {d.degree(v)})")
    for u, v in d.edges():
        if d.is_false(u) and d.is_false(v):
            report.add("false-adjacency", f"edge {u + 1}-{v + 1}", "adjacent false vertices")

    face_list = faces(d)
    comp_of = {}
    comps = drawing_components(d)
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    f_count = [0] * len(comps)
    for f in face_list:
        f_count[comp_of[f.darts[0][0]]] += 1
    for i, comp in enumerate(comps):
        e = sum(d.degree(v) for v in comp) // 2
        if e == 0:
            continue
        chi = len(comp) - e + f_count[i]
        if chi != 2:
            report.add("genus", f"component of vertex {comp[0] + 1}",
                       f"genus != 0 (V - E + F = {len(comp)} - {e} + {f_count[i]} = {chi})")

    if all(d.degree(v) == 4 for v in d.false_vertices()):
        try:
            underlying_graph(d)
        except DrawingError as exc:
            report.add("simplicity", "smoothing", str(exc))
    return report


def underlying_graph(d: OnePlanarDrawing) -> Graph:
    """Smooth every false vertex back into its two crossing edges."""
    adj: Dict[int, set] = {v: set() for v in d.true_vertices()}

    def add(u: int, v: int) -> None:
        if u == v:
            raise DrawingError(f"not a drawing of a simple graph: loop at {u + 1}")
        if v in adj[u]:
            raise DrawingError(f"not a drawing of a simple graph: parallel edge {u + 1}-{v + 1}")
        adj[u].add(v)
        adj[v].add(u)

    for u, v in d.edges():
        if not d.is_false(u) and not d.is_false(v):
            add(u, v)
    for w in d.false_vertices():
        if d.degree(w) != 4:
            raise DrawingError(f"false vertex {w + 1} has degree {d.degree(w)}")
        for a, c in d.crossing_pairs(w):
            if d.is_false(a) or d.is_false(c):
                raise DrawingError(f"false vertex {w + 1} is adjacent to another false vertex")
            add(a, c)
    return Graph({u: frozenset(s) for u, s in adj.items()})


def iter_darts(d: OnePlanarDrawing) -> Iterator[Dart]:
    for u, rot in enumerate(d.rotation):
        for v in rot:
            yield (u, v)
