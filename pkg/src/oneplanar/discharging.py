"""Discharging audit on the associated plane graph, in exact rationals.

Elements carrying charge are the vertices and faces of the plane graph
plus a single common pot.  Initial charges are ``deg - 6`` for vertices and
``2 deg - 6`` for faces, summing to ``-12`` on a connected plane graph.
The nine rules only move charge, so the sum is invariant.

Element keys: ``("v", id)``, ``("f", index into faces())`` and ``POT``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .graph_core import Face, OnePlanarDrawing, drawing_components, face_of_dart, faces, underlying_graph

ElementKey = Tuple[str, int]
POT: ElementKey = ("pot", 0)
RULES = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9")

F = Fraction


def element_name(el: ElementKey) -> str:
    kind, idx = el
    if kind == "v":
        return f"v{idx + 1}"
    if kind == "f":
        return f"f{idx}"
    return "pot"


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: ElementKey
    target: ElementKey
    amount: Fraction
    via: Optional[int] = None  # false vertex for charge sent "through" it

    def render(self) -> str:
        via = f" via v{self.via + 1}" if self.via is not None else ""
        return f"{self.rule} {element_name(self.source)} -> {element_name(self.target)} {format_fraction(self.amount)}{via}"


@dataclass
class ChargeLedger:
    charge: Dict[ElementKey, Fraction] = field(default_factory=dict)

    def total(self) -> Fraction:
        return sum(self.charge.values(), F(0))

    def copy(self) -> "ChargeLedger":
        return ChargeLedger(dict(self.charge))

    def apply(self, transfers: Sequence[Transfer]) -> "ChargeLedger":
        out = self.copy()
        for t in transfers:
            out.charge[t.source] -= t.amount
            out.charge[t.target] += t.amount
        return out


def _is_small(d: OnePlanarDrawing, v: int) -> bool:
    return d.degree(v) <= 5


def initial_charges(d: OnePlanarDrawing, face_list: Optional[List[Face]] = None) -> ChargeLedger:
    if face_list is None:
        face_list = faces(d)
    ledger = ChargeLedger()
    for v in range(d.n):
        ledger.charge[("v", v)] = F(d.degree(v) - 6)
    for i, f in enumerate(face_list):
        ledger.charge[("f", i)] = F(2 * f.degree - 6)
    ledger.charge[POT] = F(0)
    return ledger


def component_totals(d: OnePlanarDrawing, ledger: ChargeLedger, face_list: Sequence[Face]) -> List[Fraction]:
    """Charge summed per connected component (pot excluded)."""
    comps = drawing_components(d)
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    sums = [F(0)] * len(comps)
    for (kind, idx), x in ledger.charge.items():
        if kind == "v":
            sums[comp_of[idx]] += x
        elif kind == "f":
            sums[comp_of[face_list[idx].darts[0][0]]] += x
    return sums


def is_tri_neighbor(d: OnePlanarDrawing, face_list, fod, u: int, v: int) -> bool:
    """``u`` is a tri-neighbor of ``v``: uv an uncrossed edge, d(v) = 4, on a 3-face uvw with w true."""
    if d.is_false(u) or d.is_false(v) or not d.adjacent(u, v) or d.degree(v) != 4:
        return False
    for dart in ((u, v), (v, u)):
        f = face_list[fod[dart]]
        if f.degree == 3:
            third = [w for w in f.vertices if w not in (u, v)]
            if third and not d.is_false(third[0]):
                return True
    return False


def _crossing_roles(d: OnePlanarDrawing, w: int) -> Iterator[Tuple[int, int, int, int]]:
    """(u, v, x, y): ``uv`` crosses ``xy`` at ``w``, for each of the four endpoints ``u``."""
    a, b, c, e = d.rotation[w]
    roles = [(a, c, b, e), (b, e, a, c), (c, a, b, e), (e, b, a, c)]
    return iter(sorted(roles))


def run_discharging(d: OnePlanarDrawing, r: int = 13) -> Tuple[List[Transfer], ChargeLedger]:
    """Apply R1-R9 once per qualifying instance; return transfers and final charges."""
    if r < 13:
        raise ValueError(f"r must be at least 13, got {r}")
    face_list = faces(d)
    fod = face_of_dart(face_list)
    initial = initial_charges(d, face_list)
    transfers: List[Transfer] = []
    deg = [d.degree(v) for v in range(d.n)]

    # R1: 4+-faces spread their charge over incident small vertices
    for i, f in enumerate(face_list):
        if f.degree < 4:
            continue
        smalls = [v for v in f.vertices if deg[v] <= 5]
        if not smalls:
            continue
        share = F(2 * f.degree - 6, len(smalls))
        for v in sorted(set(smalls)):
            transfers.append(Transfer("R1", ("f", i), ("v", v), share * smalls.count(v)))

    # R2: common pot
    g = underlying_graph(d)
    delta = g.max_degree()
    threes = [v for v in g.vertices if g.degree(v) == 3]
    if threes:
        for v in g.vertices:
            if g.degree(v) == delta:
                transfers.append(Transfer("R2", ("v", v), POT, F(1, 2)))
        for v in threes:
            transfers.append(Transfer("R2", POT, ("v", v), F(1)))

    # R3: true vertices feed adjacent true small vertices
    for u in d.true_vertices():
        for v in sorted(d.rotation[u]):
            if d.is_false(v) or deg[v] > 5:
                continue
            transfers.append(Transfer("R3", ("v", u), ("v", v), F(1, 3)))
            if is_tri_neighbor(d, face_list, fod, u, v):
                transfers.append(Transfer("R3", ("v", u), ("v", v), F(1, 12)))

    # R4-R9: charge to or through crossings
    crossing: List[Transfer] = []
    for w in d.false_vertices():
        for u, v, x, y in _crossing_roles(d, w):
            du = deg[u]
            if du < 8:
                continue
            ux, uy = d.adjacent(u, x), d.adjacent(u, y)
            if du == 8:
                if ux and uy:
                    crossing.append(Transfer("R8", ("v", u), ("v", w), F(1, 2)))
                elif ux != uy:
                    crossing.append(Transfer("R9", ("v", u), ("v", w), F(1, 12)))
                continue
            if not ux and not uy:
                if deg[v] <= 5:
                    crossing.append(Transfer("R4", ("v", u), ("v", v), F(1, 3), via=w))
            elif ux != uy:
                crossing.append(Transfer("R5", ("v", u), ("v", w), F(1, 4)))
                if deg[v] <= 4:
                    crossing.append(Transfer("R5", ("v", u), ("v", v), F(1, 3), via=w))
            elif any(d.adjacent(v, p) and deg[q] <= 5 for p, q in ((x, y), (y, x))):
                crossing.append(Transfer("R6", ("v", u), ("v", w), F(3, 4)))
                if deg[v] <= 4:
                    crossing.append(Transfer("R6", ("v", u), ("v", v), F(1, 24), via=w))
            else:
                crossing.append(Transfer("R7", ("v", u), ("v", w), F(2, 3)))
                if deg[v] <= 4:
                    crossing.append(Transfer("R7", ("v", u), ("v", v), F(1, 8), via=w))
    crossing.sort(key=lambda t: RULES.index(t.rule))
    transfers.extend(crossing)
    return transfers, initial.apply(transfers)


@dataclass
class AuditReport:
    initial: ChargeLedger
    final: ChargeLedger
    transfers: List[Transfer]
    negative: List[ElementKey]
    connected: bool
    conserved: bool
    euler_ok: Optional[bool]  # None when the drawing is disconnected
    component_sums: List[Fraction]
    pot_balance: Fraction
    expected_pot: Fraction

    @property
    def total(self) -> Fraction:
        return self.final.total()

    def render(self, show_transfers: bool = False) -> str:
        lines = ["element\tinitial\tfinal"]
        for el in sorted(self.initial.charge, key=_element_order):
            lines.append(f"{element_name(el)}\t{format_fraction(self.initial.charge[el])}\t"
                         f"{format_fraction(self.final.charge[el])}")
        if show_transfers:
            lines.append("# transfers")
            lines.extend(t.render() for t in self.transfers)
        lines.append("# negative: " + (" ".join(element_name(e) for e in self.negative) or "none"))
        lines.append(f"# total: {format_fraction(self.total)}")
        if self.euler_ok is None:
            sums = " ".join(format_fraction(s) for s in self.component_sums)
            lines.append(f"# disconnected: component sums {sums}; global check skipped")
        lines.append(f"# pot: {format_fraction(self.pot_balance)} (expected {format_fraction(self.expected_pot)})")
        verdict = "conserved" if self.conserved and self.euler_ok is not False else "NOT conserved"
        lines.append(f"# conservation: {verdict}")
        return "\n".join(lines) + "\n"


def _element_order(el: ElementKey):
    return ("v", "f", "pot").index(el[0]), el[1]


def audit(d: OnePlanarDrawing, r: int = 13) -> AuditReport:
    face_list = faces(d)
    initial = initial_charges(d, face_list)
    transfers, final = run_discharging(d, r)
    connected = len(drawing_components(d)) == 1
    g = underlying_graph(d)
    threes = sum(1 for v in g.vertices if g.degree(v) == 3)
    deltas = sum(1 for v in g.vertices if g.degree(v) == g.max_degree())
    expected = F(deltas, 2) - threes if threes else F(0)
    return AuditReport(
        initial=initial,
        final=final,
        transfers=transfers,
        negative=sorted((el for el, x in final.charge.items() if x < 0), key=_element_order),
        connected=connected,
        conserved=final.total() == initial.total(),
        euler_ok=(final.total() == -12) if connected else None,
        component_sums=component_totals(d, initial, face_list),
        pot_balance=final.charge[POT],
        expected_pot=expected,
    )


def charge_sent_by(transfers: Sequence[Transfer], v: int) -> Fraction:
    return sum((t.amount for t in transfers if t.source == ("v", v)), F(0))


# ---------------------------------------------------------------------------
# Clusters around a big vertex
# ---------------------------------------------------------------------------

WEIGHTS = {1: 2, 2: 2, 3: 1, 4: 3, 5: 1}


class ClusterError(ValueError):
    """A segment of the fan around a vertex matches no cluster type."""

    def __init__(self, vertex: int, segment: Tuple[int, ...], reason: str):
        self.vertex = vertex
        self.segment = segment
        super().__init__(f"unclassified segment around v{vertex + 1} "
                         f"(neighbors {' '.join(str(s + 1) for s in segment)}): {reason}")


@dataclass(frozen=True)
class Cluster:
    type: int
    owner: int                  # true neighbor opening the segment
    faces: Tuple[int, ...]      # face indices, clockwise
    false_neighbors: int


@dataclass(frozen=True)
class ClusterCounts:
    n1: int
    n2: int
    n3: int
    n4: int
    n5: int
    d: int

    @property
    def ns(self) -> Tuple[int, int, int, int, int]:
        return (self.n1, self.n2, self.n3, self.n4, self.n5)

    @property
    def weight(self) -> int:
        return 2 * self.n1 + 2 * self.n2 + self.n3 + 3 * self.n4 + self.n5

    @property
    def m(self) -> int:
        return self.d - 2 * self.n1 - self.n2 - self.n3 - self.n4 - self.n5

    def feasible(self) -> bool:
        return min(self.ns) >= 0 and self.weight <= self.d and self.m >= 0


def decompose_clusters(d: OnePlanarDrawing, v: int) -> Tuple[List[Cluster], ClusterCounts]:
    """Split the faces around a true vertex of degree >= 8 into clusters.

    Segments run between consecutive true neighbors; the false neighbors
    strictly inside a segment are separated by 4+-faces, so only the two
    end faces of a segment can be 3-faces.  Types:

    1. one false neighbor, both end faces 3-faces
    2. at least one false neighbor, exactly one end face a 3-face
    3. no false neighbor, the single face a 3-face
    4. at least two false neighbors, both end faces 3-faces
    5. every face a 4+-face
    """
    if d.is_false(v):
        raise ValueError(f"v{v + 1} is a false vertex")
    if d.degree(v) < 8:
        raise ValueError(f"v{v + 1} has degree {d.degree(v)} < 8")
    face_list = faces(d)
    fod = face_of_dart(face_list)
    rot = d.rotation[v]
    k = len(rot)
    fan = [fod[(v, rot[(i + 1) % k])] for i in range(k)]  # fan[i] between rot[i] and rot[i+1]
    trues = [i for i in range(k) if not d.is_false(rot[i])]
    if not trues:
        raise ClusterError(v, tuple(rot), "no true neighbor")

    clusters = []
    for j, start in enumerate(trues):
        stop = trues[(j + 1) % len(trues)]
        span = (stop - start) % k or k
        idx = [(start + s) % k for s in range(span)]
        seg_faces = [fan[i] for i in idx]
        falses = span - 1
        tri = [face_list[f].degree == 3 for f in seg_faces]
        segment = tuple(rot[i] for i in idx) + (rot[stop],)
        if any(tri[1:-1]):
            raise ClusterError(v, segment, "3-face between two false neighbors")
        if falses == 0:
            ctype = 3 if tri[0] else 5
        elif tri[0] and tri[-1]:
            ctype = 1 if falses == 1 else 4
        elif tri[0] or tri[-1]:
            ctype = 2
        else:
            ctype = 5
        clusters.append(Cluster(ctype, rot[start], tuple(seg_faces), falses))

    n = [sum(c.type == t for c in clusters) for t in range(1, 6)]
    return clusters, ClusterCounts(*n, d=k)


def cluster_facts(d: OnePlanarDrawing, v: int, clusters: Sequence[Cluster], counts: ClusterCounts) -> Dict[str, bool]:
    """The three counting facts for a decomposition around ``v``."""
    rot = d.rotation[v]
    true_n = sum(not d.is_false(w) for w in rot)
    false_n = len(rot) - true_n
    m = sum(c.false_neighbors for c in clusters if c.type in (2, 4, 5))
    return {
        "true_neighbors": true_n == sum(counts.ns),
        "false_neighbors": false_n == counts.n1 + m and m == counts.m,
        "weight": counts.weight <= counts.d,
    }


# ---------------------------------------------------------------------------
# Upper bounds on charge sent by a big vertex
# ---------------------------------------------------------------------------

def gamma(d_deg: int, counts) -> Fraction:
    """Largest charge a ``d_deg``-vertex can send, given its cluster counts."""
    if d_deg < 8:
        raise ValueError(f"gamma is defined for degree >= 8, got {d_deg}")
    n1, n2, n3, n4, n5 = counts.ns if isinstance(counts, ClusterCounts) else counts
    if d_deg == 8:
        return F(1, 2) * n1 + F(1, 12) * n2 + F(1, 6) * n4
    if d_deg in (9, 10):
        return F(3, 4) * n1 + F(1, 4) * n2 + F(1, 2) * n4
    if d_deg == 11:
        return F(11, 12) * n1 + F(7, 12) * n2 + F(1, 4) * n3 + F(5, 6) * n4 + F(1, 3) * n5
    if d_deg == 12:
        return 4 + F(7, 24) * n1 + F(1, 4) * n2 - F(1, 12) * n3 + F(1, 2) * n4
    return F(d_deg, 3) + F(7, 24) * n1 + F(1, 4) * n2 - F(1, 12) * n3 + F(1, 2) * n4 + F(1, 2)


def feasible_tuples(d_deg: int) -> Iterator[Tuple[int, int, int, int, int]]:
    """All non-negative ``(n1..n5)`` with ``2n1 + 2n2 + n3 + 3n4 + n5 <= d_deg``, lexicographically."""
    for n1 in range(d_deg // 2 + 1):
        r1 = d_deg - 2 * n1
        for n2 in range(r1 // 2 + 1):
            r2 = r1 - 2 * n2
            for n3 in range(r2 + 1):
                r3 = r2 - n3
                for n4 in range(r3 // 3 + 1):
                    r4 = r3 - 3 * n4
                    for n5 in range(r4 + 1):
                        yield (n1, n2, n3, n4, n5)


def side_condition(d_deg: int, ns: Tuple[int, int, int, int, int]) -> bool:
    n1, n2, n3, n4, n5 = ns
    w = 2 * n1 + 2 * n2 + n3 + 3 * n4 + n5
    if d_deg == 9 and w == 9:
        return n3 + n4 + n5 >= 1
    if d_deg == 11 and w == 11:
        return n2 + n3 + n4 + n5 >= 1
    return True


def solve_cluster_program(d_deg: int, side_conditions: bool = False) -> Tuple[Fraction, ClusterCounts]:
    """Maximize ``gamma`` over feasible cluster counts by enumeration.

    Returns the optimum and the lexicographically smallest maximizer.
    """
    if not 8 <= d_deg <= 12:
        raise ValueError(f"program defined for 8 <= d <= 12, got {d_deg}")
    best, arg = None, None
    for ns in feasible_tuples(d_deg):
        if side_conditions and not side_condition(d_deg, ns):
            continue
        val = gamma(d_deg, ns)
        if best is None or val > best:
            best, arg = val, ns
    return best, ClusterCounts(*arg, d=d_deg)


KNOWN_BOUNDS = {8: F(2), 9: F(3), 10: F(15, 4), 11: F(59, 12), 12: F(6)}


def slack_violations(d_lo: int = 13, d_hi: int = 20) -> List[Tuple[int, Tuple[int, ...], Fraction]]:
    """Tuples where ``gamma_d - (d - 6) > (13 - d) / 2``; empty when the bound holds."""
    bad = []
    for dd in range(d_lo, d_hi + 1):
        bound = F(13 - dd, 2)
        for ns in feasible_tuples(dd):
            excess = gamma(dd, ns) - (dd - 6)
            if excess > bound:
                bad.append((dd, ns, excess))
    return bad


def count_feasible(d_deg: int) -> int:
    return sum(1 for _ in feasible_tuples(d_deg))


__all__ = [
    "POT",
    "RULES",
    "KNOWN_BOUNDS",
    "WEIGHTS",
    "AuditReport",
    "ChargeLedger",
    "Cluster",
    "ClusterCounts",
    "ClusterError",
    "Transfer",
    "audit",
    "charge_sent_by",
    "cluster_facts",
    "component_totals",
    "count_feasible",
    "decompose_clusters",
    "element_name",
    "feasible_tuples",
    "format_fraction",
    "gamma",
    "initial_charges",
    "is_tri_neighbor",
    "run_discharging",
    "side_condition",
    "slack_violations",
    "solve_cluster_program",
]
