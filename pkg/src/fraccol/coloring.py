"""List assignments, set colorings and the definitional predicates.

Everything here is a pure function over immutable maps and assignments:
flaw detection, validity of list assignments relative to a marked path,
connection of the path's first vertex to a flaw, the derived color set
``c`` attached to it, hypothesis checkers for the two-face / one-face /
two-flaw colorability criteria, and rogue-vertex detection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .common import Edge, HypothesisError, edge
from .planemap import PlaneMap, distance, girth

Color = int
ColorSet = FrozenSet[int]
SetColoring = Dict[int, ColorSet]

MAX_COLOR = 1 << 16
MAX_A = 8


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex finite color sets together with the fold parameter ``a``."""

    a: int
    lists: Mapping[int, ColorSet]

    def __post_init__(self) -> None:
        if not (1 <= self.a <= MAX_A):
            raise ValueError(f"a must be in 1..{MAX_A}, got {self.a}")
        frozen = {v: frozenset(s) for v, s in dict(self.lists).items()}
        for v, s in frozen.items():
            for c in s:
                if not (0 <= c < MAX_COLOR):
                    raise ValueError(f"color {c} at vertex {v} out of range")
        object.__setattr__(self, "lists", frozen)

    def size(self, v: int) -> int:
        return len(self.lists[v])

    def __getitem__(self, v: int) -> ColorSet:
        return self.lists[v]

    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.lists))

    def colors(self) -> FrozenSet[int]:
        out: set = set()
        for s in self.lists.values():
            out |= s
        return frozenset(out)

    def replace(self, v: int, colors: Iterable[int]) -> "ListAssignment":
        d = dict(self.lists)
        d[v] = frozenset(colors)
        return ListAssignment(self.a, d)

    def drop(self, vertices: Iterable[int]) -> "ListAssignment":
        kill = set(vertices)
        return ListAssignment(self.a, {v: s for v, s in self.lists.items() if v not in kill})

    def to_json(self) -> dict:
        return {str(v): sorted(s) for v, s in sorted(self.lists.items())}


def uniform_lists(vertices: Iterable[int], a: int, colors: Iterable[int]) -> ListAssignment:
    cs = frozenset(colors)
    return ListAssignment(a, {v: cs for v in vertices})


# -- set colorings ---------------------------------------------------------


def coloring_violation(
    pm: PlaneMap, lists: ListAssignment, coloring: Mapping[int, Iterable[int]]
) -> Optional[tuple]:
    """First violated condition of a total set coloring, or None.

    Checks per-vertex set size ``a``, membership in the vertex's list, and
    disjointness across every edge of the map.
    """
    a = lists.a
    col = {v: frozenset(s) for v, s in coloring.items()}
    for v in pm.vertices:
        if v not in col:
            return ("uncolored", v)
        if len(col[v]) != a:
            return ("size", v, sorted(col[v]))
        if not col[v] <= lists[v]:
            return ("list", v, sorted(col[v] - lists[v]))
    for u, v in pm.edges:
        if col[u] & col[v]:
            return ("edge", (u, v), sorted(col[u] & col[v]))
    return None


def is_set_coloring(pm: PlaneMap, lists: ListAssignment, coloring: Mapping[int, Iterable[int]]) -> bool:
    return coloring_violation(pm, lists, coloring) is None


def is_partial_set_coloring(
    pm: PlaneMap, lists: ListAssignment, coloring: Mapping[int, Iterable[int]]
) -> bool:
    """Validity of a partial coloring: sizes, lists, and disjointness on
    edges with both ends colored."""
    a = lists.a
    col = {v: frozenset(s) for v, s in coloring.items()}
    for v, s in col.items():
        if len(s) != a or not s <= lists[v]:
            return False
    for u, v in pm.edges:
        if u in col and v in col and col[u] & col[v]:
            return False
    return True


# -- flaws -----------------------------------------------------------------


@dataclass(frozen=True)
class Flaw:
    e: Edge
    dist_to_other_small: float
    dist_to_other_flaws: float


@dataclass(frozen=True)
class FlawReport:
    flaws: Tuple[Flaw, ...]
    connection: Optional["ConnectionReport"]

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(f.e for f in self.flaws)


def small_vertices(pm: PlaneMap, lists: ListAssignment) -> List[int]:
    """Vertices whose list has size exactly 2a."""
    want = 2 * lists.a
    return [v for v in pm.vertices if lists.size(v) == want]


def flaw_edges(pm: PlaneMap, lists: ListAssignment, path: Optional[Sequence[int]] = None) -> List[Edge]:
    small = set(small_vertices(pm, lists))
    if path is not None:
        small -= set(path)
    return [e for e in pm.edges if e[0] in small and e[1] in small]


def flaws(pm: PlaneMap, lists: ListAssignment, path: Optional[Sequence[int]] = None) -> FlawReport:
    """All flaws, with their distances to other small-list vertices and to
    other flaws, plus the connection status of the path's first vertex when
    a path is given."""
    fl = flaw_edges(pm, lists, path)
    small = set(small_vertices(pm, lists))
    if path is not None:
        small -= set(path)
    out = []
    for e in fl:
        others = small - set(e)
        d_small = distance(pm, e, others) if others else float("inf")
        d_flaw = float("inf")
        for e2 in fl:
            if e2 != e:
                d_flaw = min(d_flaw, distance(pm, e, e2))
        out.append(Flaw(e, d_small, d_flaw))
    conn = connection_status(pm, lists, path) if path is not None else None
    return FlawReport(tuple(out), conn)


# -- connection of the first path vertex to a flaw --------------------------


class Connection(str, Enum):
    NOT_CONNECTED = "not-connected"
    ADJACENT = "adjacent"
    UNIQUELY_CONNECTED = "uniquely-connected"
    MULTIPLY_CONNECTED = "multiply-connected"


@dataclass(frozen=True)
class ConnectionReport:
    status: Connection
    witnesses: Tuple[tuple, ...]
    # each witness is ("adjacent", u, (u, v)) or ("path", x, y, u, (u, v))


def connection_witnesses(pm: PlaneMap, lists: ListAssignment, path: Sequence[int]) -> List[tuple]:
    """All distinct ways the first path vertex reaches a flaw.

    An adjacency witness is an edge from the first vertex to a flaw
    endpoint.  A path witness is a 4-edge route first-x-y-u-v with x, y off
    the path, x of list size 2a, y of size 3a, and uv a flaw.
    """
    p = path[0]
    a = lists.a
    pset = set(path)
    fl = flaw_edges(pm, lists, path)
    by_vertex: Dict[int, List[Edge]] = {}
    for e in fl:
        for u in e:
            by_vertex.setdefault(u, []).append(e)
    out: List[tuple] = []
    for u in pm.neighbors(p):
        for e in by_vertex.get(u, ()):
            v = e[0] if e[1] == u else e[1]
            out.append(("adjacent", u, (u, v)))
    for x in pm.neighbors(p):
        if x in pset or lists.size(x) != 2 * a:
            continue
        for y in pm.neighbors(x):
            if y == p or y in pset or lists.size(y) != 3 * a:
                continue
            for u in pm.neighbors(y):
                if u in (p, x) or u in pset:
                    continue
                for e in by_vertex.get(u, ()):
                    v = e[0] if e[1] == u else e[1]
                    if v not in (p, x, y):
                        out.append(("path", x, y, u, (u, v)))
    return sorted(out)


def connection_status(pm: PlaneMap, lists: ListAssignment, path: Sequence[int]) -> ConnectionReport:
    wit = connection_witnesses(pm, lists, path)
    if not wit:
        status = Connection.NOT_CONNECTED
    elif len(wit) > 1:
        status = Connection.MULTIPLY_CONNECTED
    elif wit[0][0] == "adjacent":
        status = Connection.ADJACENT
    else:
        status = Connection.UNIQUELY_CONNECTED
    return ConnectionReport(status, tuple(wit))


def lowest_subset(colors: Iterable[int], k: int) -> FrozenSet[int]:
    s = sorted(colors)
    if len(s) < k:
        raise ValueError(f"cannot take {k} colors from {s}")
    return frozenset(s[:k])


def compute_c(pm: PlaneMap, path: Sequence[int], lists: ListAssignment, a: Optional[int] = None) -> ColorSet:
    """The color set attached to the first vertex of a short marked path.

    Empty for paths of length at most one or when the first vertex is not
    connected to a flaw.  For a uniquely adjacent connection it is the flaw
    endpoint's whole list; for a unique path connection it is an a-element
    subset chosen deterministically (lowest colors first) as the definition
    prescribes.  A multiply-connected first vertex on a length-two path is a
    hypothesis violation.
    """
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    a = lists.a
    ell = len(path) - 1
    if ell > 2:
        raise HypothesisError(f"path length {ell} > 2")
    if ell <= 1:
        return frozenset()
    rep = connection_status(pm, lists, path)
    if rep.status is Connection.NOT_CONNECTED:
        return frozenset()
    if rep.status is Connection.MULTIPLY_CONNECTED:
        raise HypothesisError("first path vertex connected to a flaw in more than one way")
    wit = rep.witnesses[0]
    if wit[0] == "adjacent":
        return lists[wit[1]]
    _, x, y, u, _e = wit
    c_prime = lowest_subset(lists[y] - lists[u], a)
    return lowest_subset(lists[x] - c_prime, a)


def is_pc_disjoint(coloring: Mapping[int, Iterable[int]], p: int, c: Iterable[int]) -> bool:
    return not (frozenset(coloring[p]) & frozenset(c))


# -- validity of a list assignment relative to a path ------------------------


def path_on_outer_face(pm: PlaneMap, path: Sequence[int]) -> bool:
    outer = pm.outer_face
    for v in path:
        if not pm.incident_with_face(v, outer):
            return False
    for i in range(len(path) - 1):
        u, v = path[i], path[i + 1]
        if not pm.has_edge(u, v):
            return False
        if pm.face_of_dart((u, v)) != outer and pm.face_of_dart((v, u)) != outer:
            return False
    return len(set(path)) == len(path)


def path_colorable(path: Sequence[int], lists: ListAssignment) -> bool:
    """Brute-force decision whether the path itself admits a coloring by
    a-element list subsets with disjoint sets on consecutive vertices."""
    a = lists.a

    def extend(i: int, prev: FrozenSet[int]) -> bool:
        if i == len(path):
            return True
        for comb in itertools.combinations(sorted(lists[path[i]]), a):
            s = frozenset(comb)
            if not (s & prev):
                if extend(i + 1, s):
                    return True
        return False

    return extend(0, frozenset())


def ap_validity_clauses(pm: PlaneMap, path: Sequence[int], lists: ListAssignment) -> List["Clause"]:
    a = lists.a
    clauses: List[Clause] = []
    if not path_on_outer_face(pm, path):
        raise HypothesisError(f"path {tuple(path)} does not lie on the outer face boundary")
    pset = set(path)
    bad_interior = [
        v
        for v in pm.vertices
        if not pm.incident_with_face(v, pm.outer_face) and lists.size(v) != 3 * a
    ]
    clauses.append(Clause("interior-lists-3a", not bad_interior, bad_interior[:3] or None))
    bad_outer = [
        v
        for v in pm.vertices
        if v not in pset
        and pm.incident_with_face(v, pm.outer_face)
        and lists.size(v) not in (2 * a, 3 * a)
    ]
    clauses.append(Clause("outer-lists-2a-3a", not bad_outer, bad_outer[:3] or None))
    ok = path_colorable(path, lists)
    clauses.append(Clause("path-colorable", ok, None))
    return clauses


def is_aP_valid(pm: PlaneMap, path: Sequence[int], lists: ListAssignment, a: Optional[int] = None) -> bool:
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    return all(c.passed for c in ap_validity_clauses(pm, path, lists))


# -- hypothesis checkers -----------------------------------------------------


@dataclass(frozen=True)
class Clause:
    id: str
    passed: bool
    witness: object = None

    def to_json(self) -> dict:
        return {"clause": self.id, "passed": self.passed, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if isinstance(x, tuple):
        return [_jsonable(i) for i in x]
    if isinstance(x, list):
        return [_jsonable(i) for i in x]
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return x


@dataclass(frozen=True)
class CheckReport:
    name: str
    clauses: Tuple[Clause, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failed_clauses(self) -> Tuple[str, ...]:
        return tuple(c.id for c in self.clauses if not c.passed)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "clauses": [c.to_json() for c in self.clauses],
        }


def _flaw_distance_clauses(
    pm: PlaneMap,
    lists: ListAssignment,
    path: Optional[Sequence[int]],
    vertex_gap: int,
    flaw_gap: int,
) -> List[Clause]:
    rep = flaws(pm, lists, path)
    bad_v = [(f.e, f.dist_to_other_small) for f in rep.flaws if f.dist_to_other_small < vertex_gap]
    bad_f = [(f.e, f.dist_to_other_flaws) for f in rep.flaws if f.dist_to_other_flaws < flaw_gap]
    return [
        Clause(f"flaw-vertex-dist{vertex_gap}", not bad_v, bad_v[:3] or None),
        Clause(f"flaw-flaw-dist{flaw_gap}", not bad_f, bad_f[:3] or None),
    ]


def check_thm_cyl_hypotheses(
    pm: PlaneMap, f1: int, f2: int, lists: ListAssignment, a: Optional[int] = None
) -> CheckReport:
    """Hypotheses of the two-special-face colorability criterion.

    Girth at least five; list sizes in {2a, 3a}; every size-2a vertex
    incident with one of the two faces; each flaw at distance at least three
    from any other size-2a vertex and at least four from any other flaw.
    """
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    a = lists.a
    if f1 == f2:
        raise HypothesisError("the two faces must be distinct")
    clauses = [Clause("girth5", girth(pm) >= 5, girth(pm))]
    bad_sz = [v for v in pm.vertices if lists.size(v) not in (2 * a, 3 * a)]
    clauses.append(Clause("list-sizes-2a-3a", not bad_sz, bad_sz[:3] or None))
    off = [
        v
        for v in small_vertices(pm, lists)
        if not (pm.incident_with_face(v, f1) or pm.incident_with_face(v, f2))
    ]
    clauses.append(Clause("2a-incident-with-f1-f2", not off, off[:3] or None))
    clauses.extend(_flaw_distance_clauses(pm, lists, None, 3, 4))
    return CheckReport("thm-cyl", tuple(clauses))


def check_cor_distflaws_hypotheses(
    pm: PlaneMap, f: int, lists: ListAssignment, a: Optional[int] = None
) -> CheckReport:
    """One-face variant: all size-2a vertices on a single face."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    a = lists.a
    clauses = [Clause("girth5", girth(pm) >= 5, girth(pm))]
    bad_sz = [v for v in pm.vertices if lists.size(v) not in (2 * a, 3 * a)]
    clauses.append(Clause("list-sizes-2a-3a", not bad_sz, bad_sz[:3] or None))
    off = [v for v in small_vertices(pm, lists) if not pm.incident_with_face(v, f)]
    clauses.append(Clause("2a-incident-with-f", not off, off[:3] or None))
    clauses.extend(_flaw_distance_clauses(pm, lists, None, 3, 4))
    return CheckReport("cor-distflaws", tuple(clauses))


def check_thm_2flaws_hypotheses(
    pm: PlaneMap, path: Sequence[int], lists: ListAssignment, a: Optional[int] = None
) -> CheckReport:
    """Hypotheses of the precolored-path criterion with at most two flaws."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    clauses = [Clause("girth5", girth(pm) >= 5, girth(pm))]
    ell = len(path) - 1
    clauses.append(Clause("path-length-le-2", 0 <= ell <= 2, ell))
    on_outer = path_on_outer_face(pm, path)
    clauses.append(Clause("path-on-outer-face", on_outer, tuple(path)))
    if on_outer:
        clauses.extend(ap_validity_clauses(pm, path, lists))
    rep = flaws(pm, lists, path)
    clauses.append(Clause("at-most-two-flaws", len(rep.flaws) <= 2, rep.edges))
    bad = [(f.e, f.dist_to_other_flaws) for f in rep.flaws if f.dist_to_other_flaws < 3]
    clauses.append(Clause("flaw-flaw-dist3", not bad, bad[:3] or None))
    if ell == 2:
        status = rep.connection.status if rep.connection else Connection.NOT_CONNECTED
        unique = status in (
            Connection.NOT_CONNECTED,
            Connection.ADJACENT,
            Connection.UNIQUELY_CONNECTED,
        )
        clauses.append(Clause("p0-connection-unique", unique, status.value))
    return CheckReport("thm-2flaws", tuple(clauses))


def rogue_vertices(pm: PlaneMap, cycle: Sequence[int], lists: ListAssignment) -> FrozenSet[int]:
    """Rogue vertices of a facial cycle: list of size 2a and either degree
    at least three or not incident with any face of length five."""
    a = lists.a
    out = set()
    for v in cycle:
        if lists.size(v) != 2 * a:
            continue
        if pm.degree(v) >= 3:
            out.add(v)
            continue
        if not any(pm.face_length(i) == 5 for i in pm.faces_at(v)):
            out.add(v)
    return frozenset(out)
