"""Plain-text formats for graphs and total colorings (1-based ids on disk)."""

from __future__ import annotations

from typing import List, Union

from .coloring import TotalColoring
from .graph_core import DrawingError, Graph, OnePlanarDrawing, ekey, parse_drawing, underlying_graph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line and not line.startswith("c "):
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """``p <n>`` header followed by ``e <u> <v>`` lines."""
    n = None
    edges = []
    for lineno, tok in _records(text):
        if tok[0] == "p":
            if n is not None:
                raise FormatError("second header", lineno)
            if len(tok) != 2:
                raise FormatError("header must be 'p <n>'", lineno)
            n = _int(tok[1], lineno)
            if n < 0:
                raise FormatError("negative vertex count", lineno)
        elif tok[0] == "e":
            if n is None:
                raise FormatError("edge before header", lineno)
            if len(tok) != 3:
                raise FormatError("edge must be 'e <u> <v>'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"vertex {x} outside 1..{n}", lineno)
            if u == v:
                raise FormatError(f"loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown record {tok[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'p <n>' header")
    keys = [ekey(u, v) for u, v in edges]
    if len(set(keys)) != len(keys):
        raise FormatError("duplicate edge")
    return Graph.from_edges(keys, vertices=range(n))


def serialize_graph(g: Graph) -> str:
    lines = [f"p {g.num_vertices()}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph_or_drawing(text: str) -> Union[Graph, OnePlanarDrawing]:
    """Dispatch on the first record: ``p`` means a graph, ``v``/``r`` a drawing."""
    for _, tok in _records(text):
        if tok[0] == "p":
            return parse_graph(text)
        return parse_drawing(text)
    raise FormatError("empty input")


def as_graph(obj: Union[Graph, OnePlanarDrawing]) -> Graph:
    return underlying_graph(obj) if isinstance(obj, OnePlanarDrawing) else obj


def serialize_coloring(c: TotalColoring) -> str:
    lines = [f"V {v + 1} {col}" for v, col in sorted(c.vertex_colors.items())]
    lines += [f"E {u + 1} {v + 1} {col}" for (u, v), col in sorted(c.edge_colors.items())]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, k: int) -> TotalColoring:
    """Read ``V <id> <color>`` / ``E <u> <v> <color>`` lines; ``k`` is the palette size."""
    c = TotalColoring(k)
    for lineno, tok in _records(text):
        if tok[0] == "V" and len(tok) == 3:
            v, col = _int(tok[1], lineno) - 1, _int(tok[2], lineno)
            if v in c.vertex_colors:
                raise FormatError(f"vertex {v + 1} colored twice", lineno)
            c.vertex_colors[v] = col
        elif tok[0] == "E" and len(tok) == 4:
            e = ekey(_int(tok[1], lineno) - 1, _int(tok[2], lineno) - 1)
            if e in c.edge_colors:
                raise FormatError(f"edge {e[0] + 1}-{e[1] + 1} colored twice", lineno)
            c.edge_colors[e] = _int(tok[3], lineno)
        else:
            raise FormatError(f"malformed record {' '.join(tok)!r}", lineno)
    return c


__all__: List[str] = [
    "DrawingError", "FormatError", "as_graph", "parse_coloring", "parse_graph",
    "parse_graph_or_drawing", "serialize_coloring", "serialize_graph",
]
