"""Canvases: marked-subgraph instances with an exact potential calculus.

A canvas is a quadruple (a, G, S, L) with G a plane graph of girth at least
five, S a marked subgraph and every unmarked vertex holding a list of size
at least 3a.  Potentials are kept as integers scaled by 88 (the exact common
denominator of the weights 3/8 and 1/88), so every identity and bound in
this module is checked with zero tolerance:

    def88 = 88 * (3e - 5v) = 264 e - 440 v
    s88   = v + 33 q
    d88   = def88 - s88 = 264 e - 441 v - 33 q
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .common import Edge, FraccolError, HypothesisError, Subgraph, edge
from .coloring import ColorSet, ListAssignment, SetColoring
from .planemap import PlaneMap, as_subgraph, girth, restrict_to
from .solver import CriticalityReport, is_critical

# d88 thresholds of the two singular shapes and the lower bound for
# non-singular critical canvases (3 scaled by 88)
CHORD_D88 = 198
TRIPOD_D88 = 252
BOUND_D88 = 264
EULER_CONSTANT = 89  # (1 + eps) / eps for eps = 1/88


@dataclass(frozen=True)
class Canvas:
    a: int
    pm: PlaneMap
    marked: Subgraph
    lists: ListAssignment

    def __post_init__(self) -> None:
        if self.lists.a != self.a:
            raise ValueError("canvas parameter disagrees with the list assignment")
        if not as_subgraph(self.pm).contains(self.marked):
            raise HypothesisError("marked subgraph is not a subgraph of the map")
        if girth(self.pm) < 5:
            raise HypothesisError("canvas requires girth at least five")
        for v in self.pm.vertices:
            if v not in self.marked.vertices and self.lists.size(v) < 3 * self.a:
                raise HypothesisError(f"unmarked vertex {v} has a list smaller than 3a")

    @property
    def components(self) -> int:
        return self.marked.component_count()

    def unmarked_vertices(self) -> List[int]:
        return [v for v in self.pm.vertices if v not in self.marked.vertices]

    def unmarked_edges(self) -> List[Edge]:
        return [e for e in self.pm.edges if e not in self.marked.edges]

    def sub(self, inner: Subgraph) -> "Canvas":
        """Subcanvas induced by a subgraph containing the marked one."""
        if not inner.contains(self.marked):
            raise HypothesisError("inner subgraph must contain the marked subgraph")
        lists = self.lists.drop(set(self.lists.lists) - inner.vertices)
        return Canvas(self.a, restrict_to(self.pm, inner), self.marked, lists)

    def sup(self, inner: Subgraph) -> "Canvas":
        """Supercanvas: same map, the marked subgraph grows to ``inner``."""
        if not inner.contains(self.marked):
            raise HypothesisError("inner subgraph must contain the marked subgraph")
        if not as_subgraph(self.pm).contains(inner):
            raise HypothesisError("inner subgraph must be contained in the map")
        return Canvas(self.a, self.pm, inner, self.lists)


@dataclass(frozen=True)
class PotentialReport:
    v: int
    e: int
    q: int
    def88: int
    s88: int
    d88: int

    @property
    def deficiency(self) -> Fraction:
        return Fraction(self.def88, 88)

    @property
    def s(self) -> Fraction:
        return Fraction(self.s88, 88)

    @property
    def d(self) -> Fraction:
        return Fraction(self.d88, 88)

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "e": self.e,
            "q": self.q,
            "def88": self.def88,
            "s88": self.s88,
            "d88": self.d88,
            "d": str(self.d),
        }


def potentials(t: Canvas) -> PotentialReport:
    """Exact scaled-integer potentials of a canvas.

    ``q`` counts unmarked edges with an end in the marked vertex set, edges
    with both ends marked counting twice.
    """
    v = len(t.unmarked_vertices())
    e = len(t.unmarked_edges())
    q = 0
    for x, y in t.unmarked_edges():
        q += (x in t.marked.vertices) + (y in t.marked.vertices)
    def88 = 264 * e - 440 * v
    s88 = v + 33 * q
    return PotentialReport(v, e, q, def88, s88, def88 - s88)


def cross_q(t: Canvas, inner: Subgraph) -> int:
    """Edges outside ``inner`` incident with its unmarked vertices, the
    correction term in the splitting identity."""
    q = 0
    for x, y in t.pm.edges:
        if edge(x, y) in inner.edges:
            continue
        for z in (x, y):
            if z in inner.vertices and z not in t.marked.vertices:
                q += 1
    return q


@dataclass(frozen=True)
class SubSuper:
    sub: Canvas
    sup: Canvas
    q_cross: int
    d_sub_rel88: int  # d88 of the subcanvas plus 33 * q_cross


def sub_super(t: Canvas, inner: Subgraph) -> SubSuper:
    """Subcanvas, supercanvas, and the exact cross terms for a split."""
    sub = t.sub(inner)
    sup = t.sup(inner)
    qc = cross_q(t, inner)
    return SubSuper(sub, sup, qc, potentials(sub).d88 + 33 * qc)


# -- singular shapes and normality -------------------------------------------


def classify(t: Canvas) -> Tuple[str, bool]:
    """Shape of the canvas and whether it is normal.

    Shape is "chord" when the map is the marked subgraph plus one edge
    between marked vertices, "tripod" when it adds one vertex with exactly
    three marked neighbors, else "non-singular".  Normal means no subcanvas
    is singular, which reduces to: no unmarked edge between marked vertices
    and no unmarked vertex with three or more marked neighbors.
    """
    uv = t.unmarked_vertices()
    ue = t.unmarked_edges()
    shape = "non-singular"
    if not uv and len(ue) == 1:
        shape = "chord"
    elif len(uv) == 1 and len(ue) == 3:
        (z,) = uv
        if all(z in e for e in ue) and all((e[0] if e[1] == z else e[1]) in t.marked.vertices for e in ue):
            shape = "tripod"
    chord_sub = any(x in t.marked.vertices and y in t.marked.vertices for x, y in ue)
    tripod_sub = any(
        sum(1 for w in t.pm.neighbors(z) if w in t.marked.vertices) >= 3 for z in uv
    )
    return shape, not (chord_sub or tripod_sub)


def is_singular(t: Canvas) -> bool:
    return classify(t)[0] in ("chord", "tripod")


def gamma(t: Canvas) -> Tuple[int, int, int]:
    p = potentials(t)
    return (p.v, p.e, sum(t.lists.size(v) for v in t.unmarked_vertices()))


def gamma_compare(t1: Canvas, t2: Canvas) -> int:
    g1, g2 = gamma(t1), gamma(t2)
    return -1 if g1 < g2 else (1 if g1 > g2 else 0)


# -- configuration detectors ---------------------------------------------------


@dataclass(frozen=True)
class ConfigurationHit:
    kind: str
    vertices: Tuple[int, ...]


def _has_marked_neighbor(t: Canvas, v: int) -> bool:
    return any(w in t.marked.vertices for w in t.pm.neighbors(v))


def _unmarked_paths(pm: PlaneMap, marked: FrozenSet[int], length: int) -> Iterator[Tuple[int, ...]]:
    """Simple paths of the given edge-length avoiding marked vertices, each
    undirected path reported once (smaller endpoint first)."""
    verts = [v for v in pm.vertices if v not in marked]

    def extend(path: List[int]) -> Iterator[Tuple[int, ...]]:
        if len(path) == length + 1:
            if path[0] <= path[-1]:
                yield tuple(path)
            return
        for w in sorted(pm.neighbors(path[-1])):
            if w in marked or w in path:
                continue
            path.append(w)
            yield from extend(path)
            path.pop()

    for v in verts:
        yield from extend([v])


def find_configurations(t: Canvas) -> List[ConfigurationHit]:
    """All structural hits used by the outcome lemmas.

    Kinds: ``chord-edge`` (unmarked edge between marked vertices),
    ``two-neighbor-vertex`` (unmarked vertex with two or more marked
    neighbors), ``neighboring-2-path`` (unmarked path of length two, every
    vertex with a marked neighbor), ``semi-neighboring-3-path`` (length
    three, positions 0, 1, 3 have marked neighbors), ``semi-neighboring-
    5-path`` (length five, positions 0, 1, 4, 5), and ``neighboring-claw``
    (unmarked vertex plus three unmarked neighbors, all four with marked
    neighbors).
    """
    hits: List[ConfigurationHit] = []
    marked = t.marked.vertices
    for x, y in t.unmarked_edges():
        if x in marked and y in marked:
            hits.append(ConfigurationHit("chord-edge", (x, y)))
    for z in t.unmarked_vertices():
        k = sum(1 for w in t.pm.neighbors(z) if w in marked)
        if k >= 2:
            hits.append(ConfigurationHit("two-neighbor-vertex", (z,)))
    nb = {v: _has_marked_neighbor(t, v) for v in t.unmarked_vertices()}
    for p in _unmarked_paths(t.pm, marked, 2):
        if all(nb[v] for v in p):
            hits.append(ConfigurationHit("neighboring-2-path", p))
    for p in _semi_paths(t.pm, marked, 3, (0, 1, 3)):
        hits.append(ConfigurationHit("semi-neighboring-3-path", p))
    for p in _semi_paths(t.pm, marked, 5, (0, 1, 4, 5)):
        hits.append(ConfigurationHit("semi-neighboring-5-path", p))
    for z in t.unmarked_vertices():
        if not nb[z]:
            continue
        cand = sorted(w for w in t.pm.neighbors(z) if w not in marked and nb[w])
        for trio in itertools.combinations(cand, 3):
            hits.append(ConfigurationHit("neighboring-claw", (z,) + trio))
    return hits


def _semi_paths(
    pm: PlaneMap, marked: FrozenSet[int], length: int, positions: Tuple[int, ...]
) -> List[Tuple[int, ...]]:
    """Directed semi-neighboring paths: the vertices at the stated positions
    have a neighbor in the marked set.  Both orientations of each undirected
    path are examined; the matching orientation is reported."""
    out = []
    for p in _unmarked_paths(pm, marked, length):
        for q in (p, tuple(reversed(p))):
            if all(any(w in marked for w in pm.neighbors(q[i])) for i in positions):
                out.append(q)
                break
    return out


# -- relaxations ---------------------------------------------------------------


def neighboring_2_paths_unique(t: Canvas) -> List[Tuple[Tuple[int, int, int], Tuple[int, int, int]]]:
    """Neighboring 2-paths whose three vertices each have exactly one marked
    neighbor, together with those neighbors."""
    out = []
    for p in _unmarked_paths(t.pm, t.marked.vertices, 2):
        us = []
        for v in p:
            m = [w for w in t.pm.neighbors(v) if w in t.marked.vertices]
            if len(m) != 1:
                us = []
                break
            us.append(m[0])
        if us:
            out.append((p, tuple(us)))
    return sorted(out)


def relax(t: Canvas, path: Sequence[int]) -> Canvas:
    """Move a neighboring 2-path (plus its three spokes) into the marked
    subgraph; the result is the supercanvas induced by the grown subgraph."""
    p = tuple(path)
    if len(p) != 3:
        raise HypothesisError("relaxation requires a 2-path")
    for pp, us in neighboring_2_paths_unique(t):
        if pp == p or pp == tuple(reversed(p)):
            p = pp
            spokes = [edge(p[i], us[i]) for i in range(3)]
            grown = Subgraph(
                t.marked.vertices | set(p),
                t.marked.edges | {edge(p[0], p[1]), edge(p[1], p[2])} | set(spokes),
            )
            return t.sup(grown)
    raise HypothesisError(f"{tuple(path)} is not a neighboring 2-path with unique marked neighbors")


def relaxations(t: Canvas, depth: int) -> List[Tuple[Canvas, Tuple[Tuple[int, ...], ...]]]:
    """All canvases reachable by at most ``depth`` relaxations, paired with
    the relaxed paths, in deterministic order; includes the 0-relaxation."""
    seen = {t.marked.key(): (t, ())}
    frontier = [(t, ())]
    for _ in range(depth):
        nxt = []
        for cv, chain in frontier:
            for p, _us in neighboring_2_paths_unique(cv):
                r = relax(cv, p)
                k = r.marked.key()
                if k not in seen:
                    seen[k] = (r, chain + (p,))
                    nxt.append((r, chain + (p,)))
        frontier = nxt
    return sorted(seen.values(), key=lambda x: (len(x[1]), x[0].marked.key()))


# -- outcome lemma verifiers -----------------------------------------------------


@dataclass(frozen=True)
class OutcomeRecord:
    outcome: int
    witness: tuple
    relaxed_paths: Tuple[Tuple[int, ...], ...] = ()

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "witness": [list(w) if isinstance(w, tuple) else w for w in self.witness],
            "relaxed": [list(p) for p in self.relaxed_paths],
        }


def verify_lemma_neipaths(t: Canvas) -> Optional[OutcomeRecord]:
    """First of the five structural outcomes that holds for this canvas:
    chord edge, two-neighbor vertex, neighboring 2-path, semi-neighboring
    3-path, semi-neighboring 5-path.  None when no outcome holds (an alarm
    for critical canvases with at most two marked components)."""
    hits = find_configurations(t)
    order = [
        "chord-edge",
        "two-neighbor-vertex",
        "neighboring-2-path",
        "semi-neighboring-3-path",
        "semi-neighboring-5-path",
    ]
    for i, kind in enumerate(order, start=1):
        best = sorted(h.vertices for h in hits if h.kind == kind)
        if best:
            return OutcomeRecord(i, tuple(best[0]))
    return None


def verify_lemma_neiparel(t: Canvas) -> Optional[OutcomeRecord]:
    """First of the five relaxed outcomes: chord edge; two-neighbor vertex;
    neighboring claw; a (<=2)-relaxation with a semi-neighboring 3-path; a
    (<=2)-relaxation with a semi-neighboring 5-path."""
    hits = find_configurations(t)
    for i, kind in enumerate(("chord-edge", "two-neighbor-vertex", "neighboring-claw"), start=1):
        best = sorted(h.vertices for h in hits if h.kind == kind)
        if best:
            return OutcomeRecord(i, tuple(best[0]))
    rels = relaxations(t, 2)
    for (length, positions), num in (((3, (0, 1, 3)), 4), ((5, (0, 1, 4, 5)), 5)):
        for cv, chain in rels:
            paths = _semi_paths(t.pm, cv.marked.vertices, length, positions)
            if paths:
                return OutcomeRecord(num, tuple(sorted(paths)[0]), chain)
    return None


# -- nice canvases ----------------------------------------------------------------


def nice_view(t: Canvas) -> Optional[Tuple[SetColoring, Dict[int, ColorSet]]]:
    """If the canvas is nice, its forced marked coloring and, per unmarked
    vertex, the colors not excluded by it.

    Nice means: marked lists are exactly a-sets forming a valid coloring of
    the marked subgraph, unmarked lists have size exactly 3a, and an
    unmarked vertex with a unique marked neighbor contains that neighbor's
    set in its list.
    """
    a = t.a
    psi: SetColoring = {}
    for v in t.marked.vertices:
        if t.lists.size(v) != a:
            return None
        psi[v] = t.lists[v]
    for x, y in t.marked.edges:
        if psi[x] & psi[y]:
            return None
    avail: Dict[int, ColorSet] = {}
    for z in t.unmarked_vertices():
        if t.lists.size(z) != 3 * a:
            return None
        mnbrs = [w for w in t.pm.neighbors(z) if w in t.marked.vertices]
        if len(mnbrs) == 1 and not psi[mnbrs[0]] <= t.lists[z]:
            return None
        excluded: set = set()
        for w in mnbrs:
            excluded |= psi[w]
        avail[z] = t.lists[z] - excluded
    return psi, avail


# -- theorem-level verifiers --------------------------------------------------------


def verify_thm_canvas(t: Canvas, criticality: Optional[CriticalityReport] = None) -> bool:
    """Potential lower bound for a non-singular critical canvas with at most
    two marked components: d88 >= 264."""
    if t.components > 2:
        raise HypothesisError("marked subgraph has more than two components")
    if is_singular(t):
        raise HypothesisError("canvas is singular")
    rep = criticality if criticality is not None else is_critical(t.pm, t.marked, t.lists)
    if not rep.critical:
        raise HypothesisError("canvas is not critical")
    return potentials(t).d88 >= BOUND_D88


@dataclass(frozen=True)
class TwoFaceReport:
    euler_value: int
    vertex_count: int
    bound: int
    critical: Optional[bool]
    euler_ok: bool
    bound_ok: bool

    def to_json(self) -> dict:
        return {
            "euler_value": self.euler_value,
            "euler_ok": self.euler_ok,
            "v": self.vertex_count,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "critical": self.critical,
        }


def verify_hypcyl(
    pm: PlaneMap,
    c1: Sequence[int],
    c2: Sequence[int],
    lists: ListAssignment,
    a: Optional[int] = None,
    check_critical: bool = True,
    critical_cap: int = 24,
) -> TwoFaceReport:
    """Euler inequality and the 89-bound for an instance with two marked
    facial cycles and all lists of size 3a.

    The Euler value 3|E| - 5|V| + |C1| + |C2| must be nonpositive; when the
    instance is critical relative to the union of the two cycles, the vertex
    count is bounded by 89 (|C1| + |C2|).
    """
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    a = lists.a
    for cyc in (c1, c2):
        if pm.face_index_of_cycle(cyc) is None:
            raise HypothesisError(f"{tuple(cyc)} does not bound a face")
    if girth(pm) < 5:
        raise HypothesisError("girth below five")
    for v in pm.vertices:
        if lists.size(v) != 3 * a:
            raise HypothesisError(f"vertex {v} does not have a 3a-list")
    euler_value = 3 * pm.edge_count - 5 * pm.vertex_count + len(c1) + len(c2)
    bound = EULER_CONSTANT * (len(c1) + len(c2))
    critical: Optional[bool] = None
    if check_critical and pm.vertex_count <= critical_cap:
        s = Subgraph(
            frozenset(c1) | frozenset(c2),
            frozenset(_cycle_edge_set(c1)) | frozenset(_cycle_edge_set(c2)),
        )
        critical = is_critical(pm, s, lists).critical
    euler_ok = euler_value <= 0
    bound_ok = (not critical) or pm.vertex_count <= bound
    return TwoFaceReport(euler_value, pm.vertex_count, bound, critical, euler_ok, bound_ok)


def _cycle_edge_set(cycle: Sequence[int]) -> Set[Edge]:
    k = len(cycle)
    return {edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
