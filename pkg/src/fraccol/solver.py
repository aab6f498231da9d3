"""Exact set-coloring decisions, criticality testing, and sound reductions.

``solve`` is the brute-force oracle behind every definition: a deterministic
backtracking search for a total coloring by a-element list subsets with
disjoint sets on adjacent vertices, optionally extending a precoloring of a
marked subgraph.  Criticality of a marked subgraph is decided through the
maximal-proper-subgraph shortcut (validated against the all-subgraphs
definition in the test suite), and the preprocessing reductions each
self-check their preconditions and refuse otherwise, so the solver stays
unconditionally correct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import _kernel
from .common import Edge, FraccolError, HypothesisError, Subgraph, edge
from .coloring import (
    ColorSet,
    ListAssignment,
    SetColoring,
    coloring_violation,
    flaw_edges,
    is_partial_set_coloring,
    lowest_subset,
    small_vertices,
)
from .planemap import PlaneMap, as_subgraph, restrict_to, subgraph_delete
from .planemap import distance as map_distance


class ReductionRefused(FraccolError):
    """A reduction's paper preconditions do not hold for this instance."""


@dataclass(frozen=True)
class ExtensionProblem:
    """A coloring-extension instance: graph, lists, marked subgraph, and an
    optional precoloring of the marked subgraph."""

    pm: PlaneMap
    lists: ListAssignment
    marked: Subgraph = field(default_factory=Subgraph.empty)
    precoloring: Optional[Mapping[int, ColorSet]] = None

    @property
    def a(self) -> int:
        return self.lists.a

    def validate(self) -> None:
        g = as_subgraph(self.pm)
        if not g.contains(self.marked):
            raise HypothesisError("marked subgraph is not a subgraph of the map")
        a = self.lists.a
        for v in self.pm.vertices:
            if v not in self.lists.lists:
                raise FraccolError(f"vertex {v} has no list")
            if self.lists.size(v) > 3 * a:
                raise FraccolError(f"list at {v} larger than 3a={3 * a} (size cap)")
        if self.precoloring is not None:
            pre = dict(self.precoloring)
            if set(pre) - self.marked.vertices:
                raise HypothesisError("precoloring mentions vertices outside the marked subgraph")
            for v, s in pre.items():
                if len(frozenset(s)) != a or not frozenset(s) <= self.lists[v]:
                    raise HypothesisError(f"precoloring at {v} is not an a-subset of its list")
            for u, v in self.marked.edges:
                if u in pre and v in pre and frozenset(pre[u]) & frozenset(pre[v]):
                    raise HypothesisError(f"precoloring conflicts on marked edge {(u, v)}")


# -- lowering to bitmask arrays ---------------------------------------------


class _Lowered:
    __slots__ = ("verts", "vidx", "colors", "cidx", "adj", "masks", "n", "a")

    def __init__(self, pm: PlaneMap, lists: ListAssignment):
        self.verts = list(pm.vertices)
        self.vidx = {v: i for i, v in enumerate(self.verts)}
        self.colors = sorted(lists.colors())
        self.cidx = {c: i for i, c in enumerate(self.colors)}
        self.n = len(self.verts)
        self.a = lists.a
        self.adj = np.zeros(self.n, np.int64)
        for u, v in pm.edges:
            iu, iv = self.vidx[u], self.vidx[v]
            self.adj[iu] |= np.int64(1) << iv
            self.adj[iv] |= np.int64(1) << iu
        self.masks = np.zeros(self.n, np.int64)
        for v in self.verts:
            self.masks[self.vidx[v]] = self.mask_of(lists[v])

    def mask_of(self, colors: Iterable[int]) -> np.int64:
        m = 0
        for c in colors:
            m |= 1 << self.cidx[c]
        return np.int64(m)

    def set_of(self, mask: int) -> ColorSet:
        return frozenset(self.colors[i] for i in range(len(self.colors)) if (int(mask) >> i) & 1)

    def kernel_ok(self) -> bool:
        return self.n <= _kernel.KERNEL_MAX_VERTICES and len(self.colors) <= _kernel.KERNEL_MAX_COLORS


def _solve_reference(
    pm: PlaneMap, lists: ListAssignment, fixed: Mapping[int, ColorSet], node_cap: int = 0
) -> Optional[SetColoring]:
    """Pure-set reference search; same ordering heuristics as the kernel."""
    a = lists.a
    col: Dict[int, FrozenSet[int]] = {}
    for v, s in fixed.items():
        s = frozenset(s)
        if len(s) != a or not s <= lists[v]:
            return None
        col[v] = s
    for u, v in pm.edges:
        if u in col and v in col and col[u] & col[v]:
            return None
    nodes = [0]

    def residual(v: int) -> FrozenSet[int]:
        used: set = set()
        for u in pm.neighbors(v):
            if u in col:
                used |= col[u]
        return lists[v] - used

    def go() -> bool:
        best_v, best_r = None, None
        for v in pm.vertices:
            if v in col:
                continue
            r = residual(v)
            if best_r is None or len(r) < len(best_r):
                best_v, best_r = v, r
        if best_v is None:
            return True
        if len(best_r) < a:
            return False
        for comb in itertools.combinations(sorted(best_r), a):
            nodes[0] += 1
            if node_cap and nodes[0] > node_cap:
                raise FraccolError("node cap exceeded")
            col[best_v] = frozenset(comb)
            ok = all(
                len(residual(u)) >= a for u in pm.neighbors(best_v) if u not in col
            )
            if ok and go():
                return True
            del col[best_v]
        return False

    return dict(col) if go() else None


def _solve_lowered(
    pm: PlaneMap, lists: ListAssignment, fixed: Mapping[int, ColorSet], node_cap: int = 0
) -> Optional[SetColoring]:
    low = _Lowered(pm, lists)
    if not low.kernel_ok():
        return _solve_reference(pm, lists, fixed, node_cap)
    fx = np.zeros(low.n, np.int64)
    for v, s in fixed.items():
        fx[low.vidx[v]] = low.mask_of(s)
    st, out = _kernel.solve_masks(low.n, low.a, low.adj, low.masks, fx, node_cap)
    if st == _kernel.CAPPED:
        raise FraccolError("node cap exceeded")
    if st != _kernel.SAT:
        return None
    return {v: low.set_of(out[low.vidx[v]]) for v in low.verts}


def solve(problem: ExtensionProblem, node_cap: int = 0) -> Optional[SetColoring]:
    """A total valid coloring extending the precoloring, or None.

    Deterministic: most-constrained vertex first, candidate subsets in
    lowest-colors-first order.
    """
    problem.validate()
    fixed = dict(problem.precoloring) if problem.precoloring else {}
    sol = _solve_lowered(problem.pm, problem.lists, fixed, node_cap)
    if sol is not None:
        assert coloring_violation(problem.pm, problem.lists, sol) is None
    return sol


def solvable(pm: PlaneMap, lists: ListAssignment, fixed: Optional[Mapping[int, ColorSet]] = None) -> bool:
    return _solve_lowered(pm, lists, fixed or {}) is not None


def extends_to(
    pm: PlaneMap,
    lists: ListAssignment,
    marked: Subgraph,
    psi: Mapping[int, ColorSet],
    a: Optional[int] = None,
) -> bool:
    """Whether a coloring of the marked subgraph extends to the whole map."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    psi = {v: frozenset(s) for v, s in psi.items()}
    if set(psi) != set(marked.vertices):
        raise HypothesisError("precoloring must be total on the marked subgraph")
    sub = restrict_to(pm, marked)
    if not is_partial_set_coloring(sub, lists.drop(set(lists.lists) - marked.vertices), psi):
        raise HypothesisError("precoloring is not a valid coloring of the marked subgraph")
    return _solve_lowered(pm, lists, psi) is not None


def iter_solutions(
    pm: PlaneMap, lists: ListAssignment, fixed: Optional[Mapping[int, ColorSet]] = None
) -> Iterator[SetColoring]:
    """All total colorings, lazily, in a deterministic order."""
    a = lists.a
    fixed = {v: frozenset(s) for v, s in (fixed or {}).items()}
    for u, v in pm.edges:
        if u in fixed and v in fixed and fixed[u] & fixed[v]:
            return
    for v, s in fixed.items():
        if len(s) != a or not s <= lists[v]:
            return
    order = [v for v in pm.vertices if v not in fixed]
    col: Dict[int, FrozenSet[int]] = dict(fixed)

    def go(i: int) -> Iterator[SetColoring]:
        if i == len(order):
            yield dict(col)
            return
        v = order[i]
        used: set = set()
        for u in pm.neighbors(v):
            if u in col:
                used |= col[u]
        for comb in itertools.combinations(sorted(lists[v] - used), a):
            col[v] = frozenset(comb)
            yield from go(i + 1)
            del col[v]

    yield from go(0)


# -- enumeration of colorings of a marked subgraph ---------------------------


def _color_classes(lists: ListAssignment) -> List[Tuple[int, ...]]:
    """Partition of colors into interchangeability classes: two colors are
    interchangeable when they belong to exactly the same lists."""
    sig: Dict[int, list] = {}
    for c in sorted(lists.colors()):
        sig.setdefault(c, [])
    for v in sorted(lists.lists):
        s = lists[v]
        for c in sig:
            sig[c].append(c in s)
    groups: Dict[tuple, List[int]] = {}
    for c, s in sig.items():
        groups.setdefault(tuple(s), []).append(c)
    return [tuple(sorted(g)) for g in sorted(groups.values())]


def _first_use_canonical(psi_seq: Sequence[FrozenSet[int]], classes: List[Tuple[int, ...]]) -> bool:
    # Accept only colorings where, within each interchangeability class, the
    # class colors make their first appearance in ascending class order.
    rank = {}
    for cl in classes:
        for i, c in enumerate(cl):
            rank[c] = (cl, i)
    next_new: Dict[Tuple[int, ...], int] = {cl: 0 for cl in classes}
    for s in psi_seq:
        fresh: Dict[Tuple[int, ...], List[int]] = {}
        for c in sorted(s):
            cl, i = rank[c]
            if i >= next_new[cl]:
                fresh.setdefault(cl, []).append(i)
        for cl, idxs in fresh.items():
            want = list(range(next_new[cl], next_new[cl] + len(idxs)))
            if sorted(idxs) != want:
                return False
            next_new[cl] += len(idxs)
    return True


def enumerate_marked_colorings(
    pm: PlaneMap, marked: Subgraph, lists: ListAssignment, up_to_symmetry: bool = True
) -> Iterator[SetColoring]:
    """All colorings of the marked subgraph (proper on its own edges only),
    optionally reduced under color permutations that fix every list."""
    a = lists.a
    verts = sorted(marked.vertices)
    madj: Dict[int, set] = {v: set() for v in verts}
    for u, v in marked.edges:
        madj[u].add(v)
        madj[v].add(u)
    classes = _color_classes(lists) if up_to_symmetry else []
    col: Dict[int, FrozenSet[int]] = {}

    def go(i: int) -> Iterator[SetColoring]:
        if i == len(verts):
            if not up_to_symmetry or _first_use_canonical([col[v] for v in verts], classes):
                yield dict(col)
            return
        v = verts[i]
        used: set = set()
        for u in madj[v]:
            if u in col:
                used |= col[u]
        for comb in itertools.combinations(sorted(lists[v] - used), a):
            col[v] = frozenset(comb)
            yield from go(i + 1)
            del col[v]

    yield from go(0)


# -- criticality -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalityReport:
    critical: bool
    reason: str
    witnesses: Tuple[Tuple[tuple, SetColoring], ...] = ()
    # each entry: (target, psi) where target = ("edge", e) or ("vertex", v)

    def to_json(self) -> dict:
        return {
            "critical": self.critical,
            "reason": self.reason,
            "witnesses": [
                {"target": list(t), "psi": {str(v): sorted(s) for v, s in sorted(p.items())}}
                for t, p in self.witnesses
            ],
        }


def _maximal_targets(pm: PlaneMap, marked: Subgraph) -> List[tuple]:
    targets: List[tuple] = [("edge", e) for e in pm.edges if e not in marked.edges]
    targets.extend(
        ("vertex", v) for v in pm.vertices if v not in marked.vertices and pm.degree(v) == 0
    )
    return targets


def _delete_target(pm: PlaneMap, target: tuple) -> PlaneMap:
    kind, x = target
    return subgraph_delete(pm, edges=[x]) if kind == "edge" else subgraph_delete(pm, vertices=[x])


def is_critical(
    pm: PlaneMap, marked: Subgraph, lists: ListAssignment, a: Optional[int] = None
) -> CriticalityReport:
    """Criticality of the map relative to the marked subgraph.

    Only the maximal proper subgraphs are examined: deleting one unmarked
    edge, or one unmarked isolated vertex.  A coloring witnessing a larger
    subgraph also witnesses every smaller one, so this agrees with the
    quantification over all proper subgraphs (cross-checked in tests).
    """
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    g = as_subgraph(pm)
    if not g.contains(marked):
        raise HypothesisError("marked subgraph is not a subgraph of the map")
    if marked.vertices == g.vertices and marked.edges == g.edges:
        raise HypothesisError("marked subgraph equals the whole map")
    a = lists.a
    for v in pm.vertices:
        if v not in marked.vertices and lists.size(v) >= (pm.degree(v) + 1) * a:
            return CriticalityReport(False, f"vertex {v} colorable greedily")
    targets = _maximal_targets(pm, marked)
    pending = dict.fromkeys(targets)
    found: Dict[tuple, SetColoring] = {}
    sub_maps = {t: _delete_target(pm, t) for t in targets}
    for psi in enumerate_marked_colorings(pm, marked, lists):
        if _solve_lowered(pm, lists, psi) is not None:
            continue
        for t in list(pending):
            if _solve_lowered(sub_maps[t], lists, psi) is not None:
                found[t] = psi
                del pending[t]
        if not pending:
            break
    if pending:
        missing = sorted(pending)[0]
        return CriticalityReport(False, f"no witness for maximal subgraph {missing}")
    return CriticalityReport(True, "all maximal proper subgraphs witnessed", tuple(sorted(found.items())))


def _proper_subgraphs(pm: PlaneMap, marked: Subgraph) -> Iterator[PlaneMap]:
    free_v = [v for v in pm.vertices if v not in marked.vertices]
    for rv in itertools.chain.from_iterable(
        itertools.combinations(free_v, k) for k in range(len(free_v) + 1)
    ):
        pm1 = subgraph_delete(pm, vertices=rv) if rv else pm
        free_e = [e for e in pm1.edges if e not in marked.edges]
        for re_ in itertools.chain.from_iterable(
            itertools.combinations(free_e, k) for k in range(len(free_e) + 1)
        ):
            if not rv and not re_:
                continue
            yield subgraph_delete(pm1, edges=re_) if re_ else pm1


def is_critical_bruteforce(pm: PlaneMap, marked: Subgraph, lists: ListAssignment) -> bool:
    """Criticality literally per the definition: every proper subgraph
    containing the marked subgraph has a coloring witness.  Exponential; for
    desk-scale cross-validation only."""
    psis = [
        psi
        for psi in enumerate_marked_colorings(pm, marked, lists)
        if _solve_lowered(pm, lists, psi) is None
    ]
    for sub in _proper_subgraphs(pm, marked):
        if not any(_solve_lowered(sub, lists, psi) is not None for psi in psis):
            return False
    return True


def extract_critical(pm: PlaneMap, lists: ListAssignment, a: Optional[int] = None) -> PlaneMap:
    """A minimal non-colorable subgraph of a non-colorable map, by greedy
    deletion with the solver as oracle."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    if _solve_lowered(pm, lists, {}) is not None:
        raise HypothesisError("map is colorable; nothing to extract")
    cur = pm
    changed = True
    while changed:
        changed = False
        for e in list(cur.edges):
            cand = subgraph_delete(cur, edges=[e])
            if _solve_lowered(cand, lists, {}) is None:
                cur = cand
                changed = True
        for v in list(cur.vertices):
            if cur.degree(v) == 0 and cur.vertex_count > 1:
                cand = subgraph_delete(cur, vertices=[v])
                if _solve_lowered(cand, lists, {}) is None:
                    cur = cand
                    changed = True
    return cur


# -- reductions ---------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    data: dict


def reduce_greedy_vertex(problem: ExtensionProblem) -> Optional[Tuple[ExtensionProblem, ReductionStep]]:
    """Delete one unmarked vertex whose list is large enough to color last.

    Applies to the lowest such vertex; returns None when no vertex
    qualifies.
    """
    a = problem.a
    pre = set(problem.precoloring or ())
    for v in sorted(problem.pm.vertices):
        if v in problem.marked.vertices or v in pre:
            continue
        if problem.lists.size(v) >= (problem.pm.degree(v) + 1) * a:
            nbrs = sorted(problem.pm.neighbors(v))
            reduced = ExtensionProblem(
                subgraph_delete(problem.pm, vertices=[v]),
                problem.lists.drop([v]),
                problem.marked,
                problem.precoloring,
            )
            step = ReductionStep(
                "greedy-vertex",
                {"vertex": v, "list": problem.lists[v], "neighbors": nbrs, "a": a},
            )
            return reduced, step
    return None


def flaw_reduction_refusal(problem: ExtensionProblem, fl: Edge) -> Optional[str]:
    """Why the flaw reduction may not be applied, or None when it may."""
    pm, lists, a = problem.pm, problem.lists, problem.a
    u, v = fl
    if not pm.has_edge(u, v):
        return f"{fl} is not an edge"
    if lists.size(u) != 2 * a or lists.size(v) != 2 * a:
        return f"{fl} is not a flaw"
    forbidden = set(problem.marked.vertices) | set(problem.precoloring or ())
    nbrs = sorted((set(pm.neighbors(u)) | set(pm.neighbors(v))) - {u, v})
    if {u, v} & forbidden or set(nbrs) & forbidden:
        return "flaw or its neighborhood touches the marked subgraph"
    for w in nbrs:
        if lists.size(w) != 3 * a:
            return f"neighbor {w} does not have a 3a-list"
    for i, w in enumerate(nbrs):
        for x in nbrs[i + 1 :]:
            if pm.has_edge(w, x):
                return f"neighbors {w},{x} adjacent"
        if pm.has_edge(w, u) and pm.has_edge(w, v):
            return f"neighbor {w} adjacent to both flaw endpoints"
    small = set(small_vertices(pm, lists)) - {u, v}
    for z in small:
        if map_distance(pm, (u, v), (z,)) < 3:
            return f"size-2a vertex {z} within distance 2 of the flaw"
    for other in flaw_edges(pm, lists):
        if other != fl and map_distance(pm, (u, v), other) < 3:
            return f"flaw {other} within distance 2"
    return None


def reduce_flaw(problem: ExtensionProblem, fl: Edge) -> Tuple[ExtensionProblem, ReductionStep]:
    """Color a flaw's two endpoints, remove them, and shrink the neighbors'
    lists to 2a-subsets avoiding the removed colors.

    Sound only under the checked neighborhood conditions; otherwise raises
    :class:`ReductionRefused` and the caller should fall back to the plain
    solver.
    """
    reason = flaw_reduction_refusal(problem, fl)
    if reason is not None:
        raise ReductionRefused(reason)
    pm, lists, a = problem.pm, problem.lists, problem.a
    u, v = fl
    psi_u = lowest_subset(lists[u], a)
    psi_v = lowest_subset(lists[v] - psi_u, a)
    new_lists: Dict[int, ColorSet] = dict(lists.lists)
    shrunk: Dict[int, ColorSet] = {}
    for w in sorted((set(pm.neighbors(u)) | set(pm.neighbors(v))) - {u, v}):
        z_col = psi_u if pm.has_edge(w, u) else psi_v
        shrunk[w] = lowest_subset(lists[w] - z_col, 2 * a)
        new_lists[w] = shrunk[w]
    del new_lists[u]
    del new_lists[v]
    reduced = ExtensionProblem(
        subgraph_delete(pm, vertices=[u, v]),
        ListAssignment(a, new_lists),
        problem.marked,
        problem.precoloring,
    )
    step = ReductionStep(
        "flaw",
        {"u": u, "v": v, "psi_u": psi_u, "psi_v": psi_v, "shrunk": shrunk},
    )
    return reduced, step


def lift(steps: Sequence[ReductionStep], coloring: SetColoring) -> SetColoring:
    """Replay reduction steps backwards, turning a coloring of the reduced
    instance into one of the original."""
    col = dict(coloring)
    for step in reversed(list(steps)):
        if step.kind == "greedy-vertex":
            v = step.data["vertex"]
            used: set = set()
            for u in step.data["neighbors"]:
                used |= col[u]
            col[v] = lowest_subset(step.data["list"] - frozenset(used), step.data["a"])
        elif step.kind == "flaw":
            col[step.data["u"]] = step.data["psi_u"]
            col[step.data["v"]] = step.data["psi_v"]
        else:
            raise FraccolError(f"unknown reduction step {step.kind}")
    return col


# -- cut-vertex decomposition -------------------------------------------------


def _biconnected_components(pm: PlaneMap) -> List[FrozenSet[Edge]]:
    """Edge partition into biconnected components (classic DFS, iterative)."""
    idx: Dict[int, int] = {}
    low: Dict[int, int] = {}
    comps: List[FrozenSet[Edge]] = []
    stack_e: List[Edge] = []
    counter = [0]
    for root in pm.vertices:
        if root in idx:
            continue
        work: List[tuple] = [(root, None, iter(sorted(pm.neighbors(root))))]
        idx[root] = low[root] = counter[0]
        counter[0] += 1
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                e = edge(v, w)
                if w not in idx:
                    stack_e.append(e)
                    idx[w] = low[w] = counter[0]
                    counter[0] += 1
                    work.append((w, v, iter(sorted(pm.neighbors(w)))))
                    advanced = True
                    break
                elif idx[w] < idx[v]:
                    stack_e.append(e)
                    low[v] = min(low[v], idx[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= idx[u]:
                    comp = []
                    while stack_e:
                        e = stack_e.pop()
                        comp.append(e)
                        if e == edge(u, v):
                            break
                    comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class Decomposition:
    subproblems: Tuple[ExtensionProblem, ...]
    attach: Tuple[Optional[int], ...]  # cut vertex shared with earlier blocks
    cut_vertices: Tuple[int, ...]


def decompose_cut(problem: ExtensionProblem) -> Optional[Decomposition]:
    """Split a problem along cut vertices into block subproblems.

    Returns None for 2-connected maps (or a single edge/vertex).  The blocks
    are ordered so that each block after the first shares exactly one
    already-seen cut vertex, recorded in ``attach``; solving in order while
    propagating shared colors (with backtracking, see
    :func:`solve_decomposed`) is equivalent to solving the original.
    """
    pm = problem.pm
    comps = _biconnected_components(pm)
    if len(comps) <= 1 and all(pm.degree(v) > 0 for v in pm.vertices):
        return None
    vert_sets = [frozenset(x for e in c for x in e) for c in comps]
    counts: Dict[int, int] = {}
    for vs in vert_sets:
        for v in vs:
            counts[v] = counts.get(v, 0) + 1
    cuts = tuple(sorted(v for v, k in counts.items() if k > 1))
    order = sorted(range(len(comps)), key=lambda i: tuple(sorted(vert_sets[i])))
    seen: set = set()
    arranged: List[int] = []
    attach: List[Optional[int]] = []
    remaining = list(order)
    while remaining:
        placed = False
        for i in remaining:
            shared = vert_sets[i] & seen
            if not seen or shared:
                arranged.append(i)
                attach.append(min(shared) if shared else None)
                seen |= vert_sets[i]
                remaining.remove(i)
                placed = True
                break
        if not placed:  # disconnected map: start a new component
            i = remaining.pop(0)
            arranged.append(i)
            attach.append(None)
            seen |= vert_sets[i]
    subs = []
    for i in arranged:
        block = Subgraph(vert_sets[i], comps[i])
        bm = restrict_to(pm, block)
        bl = problem.lists.drop(set(problem.lists.lists) - block.vertices)
        bs = problem.marked.intersection(block)
        bpre = (
            {v: s for v, s in problem.precoloring.items() if v in block.vertices}
            if problem.precoloring
            else None
        )
        subs.append(ExtensionProblem(bm, bl, bs, bpre))
    # isolated vertices become their own trivial subproblems
    for v in pm.vertices:
        if pm.degree(v) == 0:
            block = Subgraph(frozenset([v]), frozenset())
            subs.append(
                ExtensionProblem(
                    restrict_to(pm, block),
                    problem.lists.drop(set(problem.lists.lists) - {v}),
                    problem.marked.intersection(block),
                    {v: problem.precoloring[v]} if problem.precoloring and v in problem.precoloring else None,
                )
            )
            attach.append(None)
    return Decomposition(tuple(subs), tuple(attach), cuts)


def solve_decomposed(problem: ExtensionProblem) -> Optional[SetColoring]:
    """Complete solve through the block decomposition: blocks are colored in
    order, shared cut-vertex colors are propagated, and the search backtracks
    across blocks, so satisfiability matches the monolithic solver exactly."""
    problem.validate()
    dec = decompose_cut(problem)
    if dec is None:
        return solve(problem)
    blocks = dec.subproblems
    total: SetColoring = {}

    def go(i: int) -> Optional[SetColoring]:
        if i == len(blocks):
            return dict(total)
        b = blocks[i]
        fixed = dict(b.precoloring or {})
        for v in b.pm.vertices:
            if v in total:
                fixed[v] = total[v]
        for sol in iter_solutions(b.pm, b.lists, fixed):
            added = [v for v in sol if v not in total]
            total.update({v: sol[v] for v in added})
            res = go(i + 1)
            if res is not None:
                return res
            for v in added:
                del total[v]
        return None

    return go(0)


# -- structural lemmas on critical instances ----------------------------------


def verify_lemma_sgcrit(
    pm: PlaneMap,
    marked: Subgraph,
    lists: ListAssignment,
    a: Optional[int],
    part_a: Subgraph,
    part_b: Subgraph,
) -> bool:
    """For a critical instance split as a union of two parts with the marked
    subgraph inside the first, the second part must be critical relative to
    the intersection.  Returns that criticality check's outcome."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")
    g = as_subgraph(pm)
    if part_a.union(part_b).key() != g.key():
        raise HypothesisError("parts do not cover the map")
    if not part_a.contains(marked):
        raise HypothesisError("marked subgraph not inside the first part")
    inter = part_a.intersection(part_b)
    if inter.key() == part_b.key():
        raise HypothesisError("second part equals the intersection")
    if not is_critical(pm, marked, lists).critical:
        raise HypothesisError("instance is not critical")
    bm = restrict_to(pm, part_b)
    bl = lists.drop(set(lists.lists) - part_b.vertices)
    return is_critical(bm, inter, bl).critical


def find_critical_subcanvas(
    pm: PlaneMap, marked: Subgraph, lists: ListAssignment, a: Optional[int] = None
) -> PlaneMap:
    """A subgraph containing the marked subgraph that is critical relative
    to it, obtained by greedy descent through maximal proper subgraphs."""
    if a is not None and a != lists.a:
        raise ValueError("parameter a disagrees with the list assignment")

    def has_nonextending(m: PlaneMap) -> bool:
        return any(
            _solve_lowered(m, lists.drop(set(lists.lists) - set(m.vertices)), psi) is None
            for psi in enumerate_marked_colorings(m, marked, lists)
        )

    if not has_nonextending(pm):
        raise HypothesisError("every coloring of the marked subgraph extends")
    cur = pm
    progress = True
    while progress:
        progress = False
        for t in _maximal_targets(cur, marked):
            cand = _delete_target(cur, t)
            if has_nonextending(cand):
                cur = cand
                progress = True
                break
    return cur
