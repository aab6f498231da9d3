"""Experiment suites: per-instance checks over generated corpora.

Each suite runs a deterministic enumeration, checks one statement per
instance, and collects violations carrying replayable witnesses (full
instance JSON plus the offending data).  Results are byte-for-byte
reproducible for fixed (seed, params); timing is reported separately and is
excluded from the canonical serialization.

List-assignment spaces are enumerated exhaustively (canonical orbit
representatives) while the estimated canonical count fits ``enum_cap``;
beyond that a seed-deterministic uniform sample of ``budget`` assignments is
checked instead, and the result records which mode ran.  ``budget`` also
caps the number of conclusions checked per combo through stride
subsampling.  ``budget=0`` removes both caps (the literal full run).
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .. import _kernel
from ..canvas import (
    BOUND_D88,
    CHORD_D88,
    EULER_CONSTANT,
    TRIPOD_D88,
    Canvas,
    classify,
    cross_q,
    potentials,
    sub_super,
    verify_lemma_neipaths,
    verify_lemma_neiparel,
)
from ..coloring import Connection, ListAssignment, connection_status, flaws, uniform_lists
from ..common import Edge, FraccolError, Subgraph, edge
from ..instance import Instance, emit
from ..planemap import PlaneMap, distance, girth, validate_plane
from ..solver import (
    ExtensionProblem,
    ReductionRefused,
    enumerate_marked_colorings,
    is_critical,
    is_critical_bruteforce,
    lift,
    reduce_flaw,
    reduce_greedy_vertex,
    solve,
    solve_decomposed,
)
from .generate import (
    dodecahedron_map,
    enumerate_plane_girth5,
    enumerate_plane_girth5_all_embeddings,
    face_orbits,
    map_automorphisms,
)
from .lists import first_use_count, perm_mask_tables, subset_masks

EXACT_UNIVERSE_LIMIT = 5  # larger universes use first-use canonicality only


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    params: dict
    instances: int
    checked: int
    violations: List[Violation]
    meta: dict
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        # canonical form: no timing, no execution-only knobs, sorted keys
        skip = {"threads"}
        return {
            "suite": self.suite,
            "params": {k: self.params[k] for k in sorted(self.params) if k not in skip},
            "instances": self.instances,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
            "meta": {k: self.meta[k] for k in sorted(self.meta)},
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def csv_line(self) -> str:
        return (
            f"{self.suite},{self.instances},{self.checked},"
            f"{len(self.violations)},{self.elapsed_s:.3f}"
        )


CSV_HEADER = "suite,instances,checked,violations,elapsed_s"


@lru_cache(maxsize=None)
def _corpus_one(nmax: int) -> Tuple[PlaneMap, ...]:
    return tuple(enumerate_plane_girth5(nmax))


@lru_cache(maxsize=None)
def _corpus_all(nmax: int) -> Tuple[Tuple[PlaneMap, ...], ...]:
    return tuple(tuple(pms) for _g, pms in enumerate_plane_girth5_all_embeddings(nmax))


def _imported_maps(path: str) -> List[PlaneMap]:
    from ..instance import read_planar_code_file

    out = []
    for pm in read_planar_code_file(path):
        if validate_plane(pm).ok and girth(pm) >= 5:
            out.append(pm)
    return out


def _embedded_corpus(params: dict) -> List[Tuple[PlaneMap, ...]]:
    if params.get("import"):
        return [(pm,) for pm in _imported_maps(params["import"])]
    return list(_corpus_all(params["nmax"]))


def _dist_matrix(pm: PlaneMap) -> Dict[int, Dict[int, float]]:
    return {v: {u: distance(pm, (v,), (u,)) for u in pm.vertices} for v in pm.vertices}


def _edge_dist(dm, e1: Edge, e2: Iterable[int]) -> float:
    return min(dm[x][y] for x in e1 for y in e2)


# -- two-face / one-face pattern machinery --------------------------------------


def _pattern_valid_faces(pm: PlaneMap, dm, small: FrozenSet[int]) -> bool:
    """Distance clauses for a set of size-2a vertices: each flaw at distance
    at least three from other small vertices, at least four from other
    flaws."""
    fl = [e for e in pm.edges if e[0] in small and e[1] in small]
    for e in fl:
        others = small - set(e)
        if others and _edge_dist(dm, e, others) < 3:
            return False
        for e2 in fl:
            if e2 != e and _edge_dist(dm, e, e2) < 4:
                return False
    return True


def _valid_patterns(pm: PlaneMap, allowed: Sequence[int], dm) -> List[FrozenSet[int]]:
    out = []
    for k in range(len(allowed) + 1):
        for comb in itertools.combinations(sorted(allowed), k):
            w = frozenset(comb)
            if _pattern_valid_faces(pm, dm, w):
                out.append(w)
    return out


def _maximal_patterns(patterns: List[FrozenSet[int]], allowed: Sequence[int]) -> List[FrozenSet[int]]:
    pset = set(patterns)
    out = []
    for w in patterns:
        if not any(w | {v} in pset for v in allowed if v not in w):
            out.append(w)
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def _face_pair_orbits(pm: PlaneMap) -> List[Tuple[int, int]]:
    autos = map_automorphisms(pm)
    pairs = [(i, j) for i in range(pm.face_count) for j in range(i + 1, pm.face_count)]
    index = {p: k for k, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def face_image(perm, reversing, i):
        walk = pm.faces[i]
        u, v = walk[0]
        img = (perm[v], perm[u]) if reversing else (perm[u], perm[v])
        return pm.face_of_dart(img)

    for perm, reversing in autos:
        for (i, j), k in index.items():
            ii, jj = face_image(perm, reversing, i), face_image(perm, reversing, j)
            if ii > jj:
                ii, jj = jj, ii
            if ii == jj:
                continue
            k2 = index[(ii, jj)]
            r1, r2 = find(k), find(k2)
            if r1 != r2:
                parent[r1] = r2
    reps: Dict[int, Tuple[int, int]] = {}
    for p, k in index.items():
        r = find(k)
        if r not in reps or p < reps[r]:
            reps[r] = p
    return sorted(reps.values())


# -- kernel combo runner ----------------------------------------------------------


@dataclass
class ComboSpec:
    pm: PlaneMap
    a: int
    universe: int
    fixed_sizes: Dict[int, int]  # size per non-flexible vertex
    flexible: Tuple[int, ...] = ()  # vertices enumerated at both 2a and 3a
    path: Optional[Tuple[int, ...]] = None
    valid_w: Optional[np.ndarray] = None  # uint8[2^F]
    cdesc: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = None
    label: dict = field(default_factory=dict)


def _run_combo(spec: ComboSpec, budget: int, enum_cap: int, seed: int, exact: str, viol_cap: int = 8, node_cap: int = 0):
    pm, a, u = spec.pm, spec.a, spec.universe
    verts = sorted(pm.vertices)
    vidx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = np.zeros(n, np.int64)
    for x, y in pm.edges:
        adj[vidx[x]] |= np.int64(1) << vidx[y]
        adj[vidx[y]] |= np.int64(1) << vidx[x]
    flex_idx = np.full(n, -1, np.int64)
    for k, v in enumerate(spec.flexible):
        flex_idx[vidx[v]] = k
    fcount = len(spec.flexible)
    cands: List[List[int]] = []
    for v in verts:
        if flex_idx[vidx[v]] >= 0:
            cands.append(sorted(set(subset_masks(u, 2 * a)) | set(subset_masks(u, 3 * a))))
        else:
            cands.append(subset_masks(u, spec.fixed_sizes[v]))
    valid = spec.valid_w if spec.valid_w is not None else np.ones(1 << fcount, np.uint8)
    if spec.cdesc is not None:
        ctype, cu, cx, cy = spec.cdesc
    else:
        width = 1 << fcount
        ctype = np.zeros(width, np.int64)
        cu = np.zeros(width, np.int64)
        cx = np.zeros(width, np.int64)
        cy = np.zeros(width, np.int64)
    if spec.path is not None:
        plen = len(spec.path) - 1
        pverts = np.zeros(3, np.int64)
        for i, v in enumerate(spec.path):
            pverts[i] = vidx[v]
    else:
        plen = -1
        pverts = np.zeros(3, np.int64)

    size_options = []
    for v in verts:
        if flex_idx[vidx[v]] >= 0:
            size_options.append((2 * a, 3 * a))
        else:
            size_options.append(spec.fixed_sizes[v])
    est = first_use_count(size_options, u)
    mode = "exhaustive" if (enum_cap <= 0 or est <= enum_cap) else "sampled"
    if mode == "exhaustive":
        stride = 1
        if budget > 0 and est > budget:
            stride = int(math.ceil(est / budget))
        perm_tab = None
        permwidth = 1
        use_exact = exact == "exact" or (exact == "auto" and u <= EXACT_UNIVERSE_LIMIT)
        if use_exact:
            perm_tab = perm_mask_tables(u)
            permwidth = 1 << u
        cand_flat = np.array([m for cl in cands for m in cl], np.int64)
        cand_ptr = np.zeros(n + 1, np.int64)
        for i, cl in enumerate(cands):
            cand_ptr[i + 1] = cand_ptr[i] + len(cl)
        counts, viols = _kernel.enum_and_check(
            n, a, adj, cand_flat, cand_ptr, 2 * a, flex_idx, valid,
            ctype, cu, cx, cy, plen, pverts,
            firstuse=True, perm_tab=perm_tab, permwidth=permwidth,
            stride=stride, viol_cap=viol_cap, node_cap=node_cap,
        )
    else:
        rows_n = budget if budget > 0 else 100_000
        rng = np.random.default_rng(seed)
        rows = np.zeros((rows_n, n), np.int64)
        for i in range(n):
            cl = np.array(cands[i], np.int64)
            rows[:, i] = cl[rng.integers(0, len(cl), rows_n)]
        counts, viols = _kernel.batch_check(
            n, a, adj, rows, 2 * a, flex_idx, valid, ctype, cu, cx, cy,
            plen, pverts, viol_cap=viol_cap, node_cap=node_cap,
        )
    decoded = []
    for row in viols:
        lists = {
            verts[i]: frozenset(c for c in range(u) if (int(row[i]) >> c) & 1) for i in range(n)
        }
        psi = None
        if plen >= 0:
            psi = {
                spec.path[i]: sorted(
                    c for c in range(u) if (int(row[n + i]) >> c) & 1
                )
                for i in range(plen + 1)
            }
        inst = Instance(
            pm,
            ListAssignment(a, lists),
            path=spec.path,
            f1=spec.label.get("f1"),
            f2=spec.label.get("f2"),
        )
        decoded.append({"instance": emit(inst), "path_coloring": psi, "label": spec.label})
    return counts, decoded, mode


def _run_jobs(jobs: List[Callable[[], object]], threads: int) -> List[object]:
    if threads <= 1 or len(jobs) <= 1:
        return [j() for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futs = [ex.submit(j) for j in jobs]
        return [f.result() for f in futs]


# -- theorem suites ----------------------------------------------------------------


def _suite_faces(params: dict, one_face: bool) -> SuiteResult:
    nmax = params["nmax"]
    a_values = params["a"]
    budget = params["budget"]
    enum_cap = params["enum_cap"]
    exact = params["exact"]
    threads = params["threads"]
    all_patterns = params["all_patterns"]
    seed = params["seed"]
    node_cap = params.get("node_cap", 0)
    specs: List[ComboSpec] = []
    for pms in _embedded_corpus(params):
        for pm in pms:
            if not one_face and pm.face_count < 2:
                continue
            dm = _dist_matrix(pm)
            if one_face:
                face_choices = [(f[0], None) for f in face_orbits(pm)]
            else:
                face_choices = list(_face_pair_orbits(pm))
            for fc in face_choices:
                f1, f2 = fc if not one_face else (fc[0], None)
                allowed = sorted(
                    v
                    for v in pm.vertices
                    if pm.incident_with_face(v, f1) or (f2 is not None and pm.incident_with_face(v, f2))
                )
                patterns = _valid_patterns(pm, allowed, dm)
                if not all_patterns:
                    patterns = _maximal_patterns(patterns, allowed)
                for a in a_values:
                    u = params["universe"] or 5 * a
                    for w in patterns:
                        sizes = {v: (2 * a if v in w else 3 * a) for v in pm.vertices}
                        label = {"f1": f1, "f2": f2, "pattern": sorted(w), "a": a}
                        specs.append(ComboSpec(pm, a, u, sizes, label=label))
    specs.sort(key=lambda s: (s.pm.vertex_count, s.pm.key(), s.a, str(s.label)))
    jobs = [
        (lambda sp=sp, i=i: _run_combo(sp, budget, enum_cap, seed + i, exact, node_cap=node_cap))
        for i, sp in enumerate(specs)
    ]
    results = _run_jobs(jobs, threads)
    instances = checked = capped = 0
    sampled = 0
    violations: List[Violation] = []
    for sp, (counts, decoded, mode) in zip(specs, results):
        instances += counts[1]
        checked += counts[2]
        capped += counts[4]
        sampled += mode == "sampled"
        for d in decoded:
            violations.append(Violation("conclusion-unsat", d))
    name = "cor-distflaws" if one_face else "thm-cyl"
    meta = {
        "combos": len(specs),
        "sampled_combos": sampled,
        "capped": capped,
        "backend": _kernel.active_backend(),
        "pattern_mode": "all" if all_patterns else "maximal",
        "universe": {str(a): (params["universe"] or 5 * a) for a in a_values},
        "note": "non-maximal 2a-patterns are implied by maximal ones via list monotonicity",
    }
    return SuiteResult(name, params, instances, checked, violations, meta)


def _outer_paths(pm: PlaneMap, f: int) -> List[Tuple[int, ...]]:
    """Directed paths of length 0..2 whose vertices and edges lie on the
    boundary walk of face f."""
    walk = pm.faces[f]
    overts = sorted({d[0] for d in walk})
    oedges = {edge(*d) for d in walk}
    out: List[Tuple[int, ...]] = [(v,) for v in overts]
    for u, v in sorted(oedges):
        out.append((u, v))
        out.append((v, u))
    for u, v in sorted(oedges):
        for w in sorted(pm.neighbors(v)):
            if w != u and edge(v, w) in oedges:
                out.append((u, v, w))
    return out


def _dedup_paths(pm: PlaneMap, f: int, paths: List[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    autos = [
        (perm, rev)
        for perm, rev in map_automorphisms(pm)
        if _face_image(pm, perm, rev, f) == f
    ]
    keep = []
    seen = set()
    for p in paths:
        key = min(tuple(perm[v] for v in p) for perm, _rev in autos)
        if key not in seen:
            seen.add(key)
            keep.append(p)
    return keep


def _face_image(pm: PlaneMap, perm, reversing, i: int) -> int:
    u, v = pm.faces[i][0]
    img = (perm[v], perm[u]) if reversing else (perm[u], perm[v])
    return pm.face_of_dart(img)


def _suite_two_flaws(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    a_values = params["a"]
    budget = params["budget"]
    enum_cap = params["enum_cap"]
    exact = params["exact"]
    threads = params["threads"]
    seed = params["seed"]
    node_cap = params.get("node_cap", 0)
    specs: List[ComboSpec] = []
    for pms in _embedded_corpus(params):
        for pm in pms:
            if pm.edge_count == 0:
                continue
            for forbit in face_orbits(pm):
                f = forbit[0]
                pmo = pm.with_outer(f)
                for path in _dedup_paths(pm, f, _outer_paths(pm, f)):
                    flexible = tuple(
                        v
                        for v in sorted(pm.vertices)
                        if pm.incident_with_face(v, f) and v not in path
                    )
                    if len(flexible) > 16:
                        raise FraccolError("too many flexible vertices")
                    for a in a_values:
                        u = params["universe"] or 5 * a
                        valid, cdesc = _two_flaw_tables(pmo, path, flexible, a)
                        sizes = {
                            v: 3 * a for v in pm.vertices if v not in flexible
                        }
                        specs.append(
                            ComboSpec(
                                pmo,
                                a,
                                u,
                                sizes,
                                flexible=flexible,
                                path=path,
                                valid_w=valid,
                                cdesc=cdesc,
                                label={"outer": f, "path": list(path), "a": a},
                            )
                        )
    specs.sort(key=lambda s: (s.pm.vertex_count, s.pm.key(), s.a, str(s.label)))
    jobs = [
        (lambda sp=sp, i=i: _run_combo(sp, budget, enum_cap, seed + i, exact, node_cap=node_cap))
        for i, sp in enumerate(specs)
    ]
    results = _run_jobs(jobs, threads)
    instances = checked = capped = sampled = 0
    violations: List[Violation] = []
    for sp, (counts, decoded, mode) in zip(specs, results):
        instances += counts[1]
        checked += counts[2]
        capped += counts[4]
        sampled += mode == "sampled"
        for d in decoded:
            violations.append(Violation("extension-fails", d))
    meta = {
        "combos": len(specs),
        "sampled_combos": sampled,
        "capped": capped,
        "backend": _kernel.active_backend(),
        "path_list_policy": "3a",
        "universe": {str(a): (params["universe"] or 5 * a) for a in a_values},
    }
    return SuiteResult("thm-2flaws", params, instances, checked, violations, meta)


def _two_flaw_tables(pm: PlaneMap, path: Tuple[int, ...], flexible: Tuple[int, ...], a: int):
    """Per-pattern hypothesis validity and connection descriptors.

    Hypotheses and the connection classification depend on list sizes only,
    so they are evaluated once per 2a-pattern of the flexible vertices; the
    kernel looks the results up by pattern bits at every leaf.
    """
    n = len(flexible)
    verts = sorted(pm.vertices)
    vidx = {v: i for i, v in enumerate(verts)}
    width = 1 << n
    valid = np.zeros(width, np.uint8)
    ctype = np.zeros(width, np.int64)
    cu = np.zeros(width, np.int64)
    cx = np.zeros(width, np.int64)
    cy = np.zeros(width, np.int64)
    ell = len(path) - 1
    for w in range(width):
        small = {flexible[i] for i in range(n) if (w >> i) & 1}
        lists = ListAssignment(
            a,
            {
                v: frozenset(range(2 * a)) if v in small else frozenset(range(3 * a))
                for v in pm.vertices
            },
        )
        rep = flaws(pm, lists, path)
        if len(rep.flaws) > 2:
            continue
        if any(f.dist_to_other_flaws < 3 for f in rep.flaws):
            continue
        if ell == 2:
            conn = rep.connection
            if conn.status is Connection.MULTIPLY_CONNECTED:
                continue
            if conn.status is Connection.ADJACENT:
                ctype[w] = 1
                cu[w] = vidx[conn.witnesses[0][1]]
            elif conn.status is Connection.UNIQUELY_CONNECTED:
                _, x, y, u_, _e = conn.witnesses[0]
                ctype[w] = 2
                cx[w] = vidx[x]
                cy[w] = vidx[y]
                cu[w] = vidx[u_]
        valid[w] = 1
    return valid, (ctype, cu, cx, cy)


# -- canvas suites -------------------------------------------------------------------


def enumerate_marked_subgraphs(
    pm: PlaneMap,
    require_outside_deg3: bool = True,
    max_components: int = 2,
    dedup: bool = True,
) -> List[Subgraph]:
    """Marked subgraphs eligible for criticality discovery.

    The unmarked vertex set ranges over subsets of the degree->=3 vertices
    (a vertex of lower degree is never unmarked in a critical instance: its
    list of size at least 3a always leaves it greedily colorable), the
    marked edge set over subsets of the induced edges, keeping at most
    ``max_components`` components and excluding the whole map.
    """
    verts = list(pm.vertices)
    d3 = [v for v in verts if pm.degree(v) >= 3]
    pool = d3 if require_outside_deg3 else verts
    out: List[Subgraph] = []
    seen = set()
    autos = map_automorphisms(pm) if dedup else []
    for k in range(len(pool) + 1):
        for unmarked in itertools.combinations(pool, k):
            vs = frozenset(verts) - frozenset(unmarked)
            inner_edges = [e for e in pm.edges if e[0] in vs and e[1] in vs]
            for r in range(len(inner_edges) + 1):
                for es in itertools.combinations(inner_edges, r):
                    s = Subgraph(vs, frozenset(es))
                    if s.vertices == frozenset(verts) and s.edges == frozenset(pm.edges):
                        continue
                    if s.component_count() > max_components:
                        continue
                    if dedup:
                        key = min(
                            (
                                tuple(sorted(perm[v] for v in s.vertices)),
                                tuple(sorted(edge(perm[x], perm[y]) for x, y in s.edges)),
                            )
                            for perm, _rev in autos
                        )
                        if key in seen:
                            continue
                        seen.add(key)
                    out.append(s)
    return out


class _FastCrit:
    """Forced-list criticality over one (map, marked subgraph) pair."""

    def __init__(self, pm: PlaneMap, marked: Subgraph, a: int, universe: int):
        self.pm = pm
        self.marked = marked
        self.a = a
        self.u = universe
        self.verts = sorted(pm.vertices)
        self.vidx = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.n = n
        self.adj = np.zeros(n, np.int64)
        for x, y in pm.edges:
            self.adj[self.vidx[x]] |= np.int64(1) << self.vidx[y]
            self.adj[self.vidx[y]] |= np.int64(1) << self.vidx[x]
        self.targets = [e for e in pm.edges if e not in marked.edges]
        self.target_adjs = []
        for x, y in self.targets:
            t = self.adj.copy()
            t[self.vidx[x]] &= ~(np.int64(1) << self.vidx[y])
            t[self.vidx[y]] &= ~(np.int64(1) << self.vidx[x])
            self.target_adjs.append(t)
        full = np.int64((1 << universe) - 1)
        self.base = np.full(n, full, np.int64)
        self.fixed = np.zeros(n, np.int64)

    def critical(self, psi: Dict[int, FrozenSet[int]]) -> bool:
        masks = self.base.copy()
        for v, s in psi.items():
            m = 0
            for c in s:
                m |= 1 << c
            masks[self.vidx[v]] = np.int64(m)
        st, _ = _kernel.solve_masks(self.n, self.a, self.adj, masks, self.fixed)
        if st == _kernel.SAT:
            return False
        for t in self.target_adjs:
            st, _ = _kernel.solve_masks(self.n, self.a, t, masks, self.fixed)
            if st != _kernel.SAT:
                return False
        return True


def _suite_canvas(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    a = params["a"]
    u = params["universe"] or 3 * a
    max_sets = params.get("max_sets_per_map", 0)
    violations: List[Violation] = []
    instances = checked = 0
    critical_found = 0
    shapes: Dict[str, int] = {}
    mutate = params.get("_mutate")
    for pm in _corpus_one(nmax):
        if pm.vertex_count < 2:
            continue
        full_lists = uniform_lists(pm.vertices, a, range(u))
        sets_ = enumerate_marked_subgraphs(pm)
        if max_sets:
            sets_ = sets_[:max_sets]
        for s in sets_:
            fc = _FastCrit(pm, s, a, u)
            for psi in enumerate_marked_colorings(pm, s, full_lists):
                instances += 1
                if not fc.critical(psi):
                    continue
                checked += 1
                critical_found += 1
                lists = ListAssignment(
                    a,
                    {
                        v: (psi[v] if v in s.vertices else frozenset(range(u)))
                        for v in pm.vertices
                    },
                )
                t = Canvas(a, pm, s, lists)
                shape, _normal = classify(t)
                shapes[shape] = shapes.get(shape, 0) + 1
                inst = emit(Instance(pm, lists, marked=s))
                d88 = potentials(t).d88
                # mutation hook: forget the singular exclusion entirely
                bound_applies = shape == "non-singular" or mutate == "canvas-bound"
                if bound_applies and d88 < BOUND_D88:
                    violations.append(
                        Violation("potential-below-bound", {"instance": inst, "d88": d88})
                    )
                if verify_lemma_neipaths(t) is None:
                    violations.append(Violation("no-structural-outcome", {"instance": inst}))
                if verify_lemma_neiparel(t) is None:
                    violations.append(Violation("no-relaxed-outcome", {"instance": inst}))
    meta = {
        "critical_canvases": critical_found,
        "shapes": shapes,
        "universe": u,
        "list_policy": "forced marked lists (size a), full 3a universe elsewhere",
        "backend": _kernel.active_backend(),
    }
    return SuiteResult("thm-canvas", params, instances, checked, violations, meta)


def _suite_addit(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    samples = params["samples"]
    seed = params["seed"]
    mutate = params.get("_mutate")
    rng = random.Random(seed)
    maps = [pm for pm in _corpus_one(nmax) if pm.vertex_count >= 1]
    violations: List[Violation] = []
    done = 0
    while done < samples:
        pm = rng.choice(maps)
        verts = list(pm.vertices)
        sv = frozenset(v for v in verts if rng.random() < 0.5)
        inner = [e for e in pm.edges if e[0] in sv and e[1] in sv]
        se = frozenset(e for e in inner if rng.random() < 0.7)
        s = Subgraph(sv, se)
        hv = sv | frozenset(v for v in verts if v not in sv and rng.random() < 0.5)
        hpool = [e for e in pm.edges if e[0] in hv and e[1] in hv and e not in se]
        he = se | frozenset(e for e in hpool if rng.random() < 0.5)
        h = Subgraph(hv, he)
        lists = uniform_lists(verts, 1, range(3))
        t = Canvas(1, pm, s, lists)
        ss = sub_super(t, h)
        pt, psub, psup = potentials(t), potentials(ss.sub), potentials(ss.sup)
        target = ss.d_sub_rel88 + (1 if mutate == "addit" else 0)
        checks = {
            "v": pt.v == psub.v + psup.v,
            "e": pt.e == psub.e + psup.e,
            "def88": pt.def88 == psub.def88 + psup.def88,
            "q": pt.q == psub.q + psup.q - ss.q_cross,
            "d88": pt.d88 == target + psup.d88,
        }
        for name, ok in checks.items():
            if not ok:
                violations.append(
                    Violation(
                        "identity-broken",
                        {
                            "identity": name,
                            "map": {str(v): list(pm.rotation(v)) for v in pm.vertices},
                            "marked": list(s.key()),
                            "inner": list(h.key()),
                        },
                    )
                )
        done += 1
    meta = {"maps": len(maps)}
    return SuiteResult("lemma-addit", params, done, done, violations, meta)


def _canonical_list_sample(pm: PlaneMap, a: int, sizes: Dict[int, int], universe: int, k: int) -> List[ListAssignment]:
    from .lists import enumerate_mask_tuples

    verts = sorted(pm.vertices)
    out = []
    for masks in enumerate_mask_tuples([sizes[v] for v in verts], universe, "firstuse"):
        out.append(
            ListAssignment(
                a,
                {
                    v: frozenset(c for c in range(universe) if (m >> c) & 1)
                    for v, m in zip(verts, masks)
                },
            )
        )
        if len(out) >= k:
            break
    return out


def _suite_reductions(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    a_values = params["a"]
    per_pattern = params["lists_per_pattern"]
    violations: List[Violation] = []
    instances = checked = 0
    applied = {"greedy-vertex": 0, "flaw": 0, "flaw-refused": 0, "cut": 0}
    for pm in _corpus_one(nmax):
        if pm.vertex_count < 2:
            continue
        dm = _dist_matrix(pm)
        for a in a_values:
            u = 5 * a
            allowed = sorted(pm.vertices)
            patterns = _maximal_patterns(_valid_patterns(pm, allowed, dm), allowed)
            patterns = [frozenset()] + [w for w in patterns if w][:3]
            for w in patterns:
                sizes = {v: (2 * a if v in w else 3 * a) for v in pm.vertices}
                for lists in _canonical_list_sample(pm, a, sizes, u, per_pattern):
                    instances += 1
                    prob = ExtensionProblem(pm, lists)
                    base = solve(prob)
                    base_sat = base is not None
                    red = reduce_greedy_vertex(prob)
                    if red is not None:
                        checked += 1
                        applied["greedy-vertex"] += 1
                        rp, step = red
                        rsol = solve(rp)
                        if (rsol is not None) != base_sat:
                            violations.append(
                                Violation(
                                    "greedy-vertex-equivalence",
                                    {"instance": emit(Instance(pm, lists))},
                                )
                            )
                        elif rsol is not None:
                            lifted = lift([step], rsol)
                            from ..coloring import is_set_coloring

                            if not is_set_coloring(pm, lists, lifted):
                                violations.append(
                                    Violation(
                                        "greedy-vertex-lift",
                                        {"instance": emit(Instance(pm, lists))},
                                    )
                                )
                    for fl in [e for e in pm.edges if lists.size(e[0]) == lists.size(e[1]) == 2 * a]:
                        try:
                            rp, step = reduce_flaw(prob, fl)
                        except ReductionRefused:
                            applied["flaw-refused"] += 1
                            continue
                        checked += 1
                        applied["flaw"] += 1
                        rsol = solve(rp)
                        if (rsol is not None) != base_sat:
                            violations.append(
                                Violation(
                                    "flaw-equivalence",
                                    {"instance": emit(Instance(pm, lists)), "flaw": list(fl)},
                                )
                            )
                        elif rsol is not None:
                            lifted = lift([step], rsol)
                            from ..coloring import is_set_coloring

                            if not is_set_coloring(pm, lists, lifted):
                                violations.append(
                                    Violation(
                                        "flaw-lift",
                                        {"instance": emit(Instance(pm, lists)), "flaw": list(fl)},
                                    )
                                )
                    dsol = solve_decomposed(prob)
                    checked += 1
                    applied["cut"] += 1
                    if (dsol is not None) != base_sat:
                        violations.append(
                            Violation(
                                "cut-equivalence", {"instance": emit(Instance(pm, lists))}
                            )
                        )
                    else:
                        from ..coloring import is_set_coloring

                        if dsol is not None and not is_set_coloring(pm, lists, dsol):
                            violations.append(
                                Violation(
                                    "cut-coloring-invalid",
                                    {"instance": emit(Instance(pm, lists))},
                                )
                            )
    return SuiteResult(
        "reductions", params, instances, checked, violations, {"applied": applied}
    )


def _suite_crit_shortcut(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    a = params["a"]
    u = 3 * a
    max_sets = params.get("max_sets_per_map", 0)
    max_psi = params.get("max_psi_per_set", 0)
    violations: List[Violation] = []
    instances = 0
    for pm in _corpus_one(nmax):
        if pm.vertex_count < 2:
            continue
        full_lists = uniform_lists(pm.vertices, a, range(u))
        sets_ = enumerate_marked_subgraphs(pm, require_outside_deg3=False, max_components=99)
        if max_sets:
            sets_ = sets_[:max_sets]
        for s in sets_:
            psis = list(enumerate_marked_colorings(pm, s, full_lists))
            if max_psi:
                psis = psis[:max_psi]
            for psi in psis:
                lists = ListAssignment(
                    a,
                    {
                        v: (psi[v] if v in s.vertices else frozenset(range(u)))
                        for v in pm.vertices
                    },
                )
                instances += 1
                fast = is_critical(pm, s, lists).critical
                slow = is_critical_bruteforce(pm, s, lists)
                if fast != slow:
                    violations.append(
                        Violation(
                            "shortcut-disagrees",
                            {
                                "instance": emit(Instance(pm, lists, marked=s)),
                                "shortcut": fast,
                                "bruteforce": slow,
                            },
                        )
                    )
    return SuiteResult("crit-shortcut", params, instances, instances, violations, {})


def _suite_euler(params: dict) -> SuiteResult:
    nmax = params["nmax"]
    violations: List[Violation] = []
    instances = 0
    dodeca_equality = None
    if params.get("import"):
        maps = _imported_maps(params["import"])
    else:
        maps = [pm for pms in _corpus_all(nmax) for pm in pms]
    maps.append(dodecahedron_map())
    for pm in maps:
        cyc_faces = [
            i
            for i in range(pm.face_count)
            if pm.face_length(i) >= 3 and len(set(pm.face_vertices(i))) == pm.face_length(i)
        ]
        for i, j in itertools.combinations(cyc_faces, 2):
            instances += 1
            value = (
                3 * pm.edge_count
                - 5 * pm.vertex_count
                + pm.face_length(i)
                + pm.face_length(j)
            )
            if value > 0:
                violations.append(
                    Violation(
                        "euler-positive",
                        {
                            "rotations": {str(v): list(pm.rotation(v)) for v in pm.vertices},
                            "faces": [i, j],
                            "value": value,
                        },
                    )
                )
            if pm.vertex_count == 20 and pm.edge_count == 30:
                dodeca_equality = value if dodeca_equality is None else dodeca_equality
                if value != 0:
                    violations.append(Violation("dodecahedron-not-tight", {"value": value}))
    meta = {"dodecahedron_value": dodeca_equality}
    return SuiteResult("euler", params, instances, instances, violations, meta)


def _suite_constants(params: dict) -> SuiteResult:
    mutate = params.get("_mutate")
    violations: List[Violation] = []
    from ..planemap import build_map

    pm = build_map([[1], [0]])
    chord = Canvas(1, pm, Subgraph.of([0, 1]), ListAssignment(1, {0: {0}, 1: {0}}))
    rot = {0: [1, 7], 1: [0, 2], 2: [1, 3], 3: [2, 4, 7], 4: [3, 5], 5: [4, 6], 6: [5, 7], 7: [0, 3, 6]}
    pm2 = build_map(rot)
    tripod = Canvas(
        1,
        pm2,
        Subgraph.of(range(7), [(i, i + 1) for i in range(6)]),
        ListAssignment(1, {0: {0}, 1: {1}, 2: {2}, 3: {1}, 4: {0}, 5: {1}, 6: {2}, 7: {0, 1, 2}}),
    )
    whole = Canvas(1, pm, Subgraph.of([0, 1], [(0, 1)]), ListAssignment(1, {0: {0}, 1: {1}}))
    got_chord = potentials(chord).d88 + (1 if mutate == "constants" else 0)
    cases = [
        ("chord-d88", got_chord, CHORD_D88),
        ("tripod-d88", potentials(tripod).d88, TRIPOD_D88),
        ("whole-map-d88", potentials(whole).d88, 0),
        ("euler-constant", EULER_CONSTANT, 89),
    ]
    for name, got, want in cases:
        if got != want:
            violations.append(Violation("constant-mismatch", {"name": name, "got": got, "want": want}))
    return SuiteResult("constants", params, len(cases), len(cases), violations, {})


# -- registry -------------------------------------------------------------------------


_DEFAULTS: Dict[str, dict] = {
    "constants": {},
    "lemma-addit": {"nmax": 9, "samples": 10000, "seed": 7},
    "thm-cyl": {
        "nmax": 7,
        "a": [1],
        "universe": None,
        "budget": 200000,
        "enum_cap": 3000000,
        "exact": "auto",
        "threads": 1,
        "all_patterns": False,
        "seed": 0,
    },
    "cor-distflaws": {
        "nmax": 7,
        "a": [1],
        "universe": None,
        "budget": 200000,
        "enum_cap": 3000000,
        "exact": "auto",
        "threads": 1,
        "all_patterns": False,
        "seed": 0,
    },
    "thm-2flaws": {
        "nmax": 6,
        "a": [1],
        "universe": None,
        "budget": 30000,
        "enum_cap": 300000,
        "exact": "auto",
        "threads": 1,
        "seed": 0,
    },
    "thm-canvas": {"nmax": 9, "a": 1, "universe": None, "max_sets_per_map": 0},
    "reductions": {"nmax": 9, "a": [1, 2], "lists_per_pattern": 3},
    "crit-shortcut": {"nmax": 7, "a": 1, "max_sets_per_map": 60, "max_psi_per_set": 6},
    "euler": {"nmax": 8},
}

SUITES: Dict[str, Callable[[dict], SuiteResult]] = {
    "constants": _suite_constants,
    "lemma-addit": _suite_addit,
    "thm-cyl": lambda p: _suite_faces(p, one_face=False),
    "cor-distflaws": lambda p: _suite_faces(p, one_face=True),
    "thm-2flaws": _suite_two_flaws,
    "thm-canvas": _suite_canvas,
    "reductions": _suite_reductions,
    "crit-shortcut": _suite_crit_shortcut,
    "euler": _suite_euler,
}


def suite_defaults(name: str) -> dict:
    return dict(_DEFAULTS[name])


def run_suite(name: str, params: Optional[dict] = None, progress: bool = False) -> SuiteResult:
    if name not in SUITES:
        raise FraccolError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    merged = suite_defaults(name)
    merged.update(params or {})
    t0 = time.perf_counter()
    result = SUITES[name](merged)
    result.elapsed_s = time.perf_counter() - t0
    return result
