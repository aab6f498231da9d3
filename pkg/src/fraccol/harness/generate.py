"""Exhaustive and random generation of plane maps of girth at least five.

Abstract connected graphs are grown from trees by edge additions that keep
the girth at least five, deduplicated up to isomorphism.  For each graph the
inequivalent sphere embeddings are enumerated by running over all rotation
systems and keeping one representative per canonical map code (taken over
all root half-edges and both orientations).  Every emitted map is
re-validated rather than trusted.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..common import Edge, edge
from ..planemap import PlaneMap, build_map, girth, validate_plane

HARD_CAP = 10

Graph = Tuple[int, FrozenSet[Edge]]


def _nx_of(g: Graph) -> nx.Graph:
    n, es = g
    gg = nx.Graph()
    gg.add_nodes_from(range(n))
    gg.add_edges_from(es)
    return gg


def _dedup(graphs: List[Graph]) -> List[Graph]:
    buckets: Dict[str, List[Tuple[Graph, nx.Graph]]] = {}
    out: List[Graph] = []
    for g in graphs:
        gg = _nx_of(g)
        h = nx.weisfeiler_lehman_graph_hash(gg, iterations=3)
        bucket = buckets.setdefault(h, [])
        if not any(nx.is_isomorphic(gg, other) for _, other in bucket):
            bucket.append((g, gg))
            out.append(g)
    return out


def enumerate_graphs_girth5(n_max: int) -> List[Graph]:
    """All connected graphs of girth at least five on at most ``n_max``
    vertices, up to isomorphism, ordered by (n, edge count, edge list)."""
    if n_max > HARD_CAP:
        raise ValueError(f"n_max {n_max} exceeds the hard cap {HARD_CAP}")
    out: List[Graph] = []
    for n in range(1, n_max + 1):
        if n == 1:
            trees = [(1, frozenset())]
        elif n == 2:
            trees = [(2, frozenset({(0, 1)}))]
        else:
            trees = []
            for t in nx.nonisomorphic_trees(n):
                trees.append((n, frozenset(edge(u, v) for u, v in t.edges())))
        level: List[Graph] = trees
        while level:
            out.extend(level)
            grown: List[Graph] = []
            for g in level:
                gg = _nx_of(g)
                dist = dict(nx.all_pairs_shortest_path_length(gg))
                for u in range(n):
                    for v in range(u + 1, n):
                        if gg.has_edge(u, v):
                            continue
                        if dist[u].get(v, 99) >= 4:
                            grown.append((n, g[1] | {(u, v)}))
            level = _dedup(grown)
    out.sort(key=lambda g: (g[0], len(g[1]), tuple(sorted(g[1]))))
    return out


# -- canonical map codes -------------------------------------------------------


def _code_from_root(rot: Dict[int, Tuple[int, ...]], root: Tuple[int, int], reflect: bool) -> Tuple[tuple, Dict[int, int]]:
    """Canonical traversal code of a connected map from a root half-edge.

    Vertices are relabeled in discovery order; each vertex contributes its
    rotation (reversed when reflecting) starting from the half-edge it was
    discovered through.  Returns the code and the relabeling."""
    label: Dict[int, int] = {}
    entry: Dict[int, int] = {}  # vertex -> neighbor it was discovered from
    order: List[int] = []

    def visit(v: int, via: int) -> None:
        label[v] = len(order)
        order.append(v)
        entry[v] = via

    u0, v0 = root
    visit(u0, v0)
    code: List[tuple] = []
    i = 0
    while i < len(order):
        v = order[i]
        nbrs = rot[v]
        if reflect:
            nbrs = tuple(reversed(nbrs))
        k = nbrs.index(entry[v])
        seq = nbrs[k:] + nbrs[:k]
        for w in seq:
            if w not in label:
                visit(w, v)
        code.append(tuple(label[w] for w in seq))
        i += 1
    return tuple(code), label


def map_certificate(pm: PlaneMap) -> tuple:
    """Canonical code of a connected map up to relabeling and reflection."""
    if not pm.connected:
        raise ValueError("certificates require connected maps")
    if pm.edge_count == 0:
        return (pm.vertex_count,)
    rot = pm.rotations()
    best = None
    for u in pm.vertices:
        for v in pm.rotation(u):
            for reflect in (False, True):
                code, _ = _code_from_root(rot, (u, v), reflect)
                if best is None or code < best:
                    best = code
    return best


def map_automorphisms(pm: PlaneMap) -> List[Tuple[Dict[int, int], bool]]:
    """All map automorphisms as (vertex bijection, orientation-reversing)."""
    if pm.edge_count == 0:
        return [({v: v for v in pm.vertices}, False)]
    rot = pm.rotations()
    runs = []
    best = None
    for u in pm.vertices:
        for v in pm.rotation(u):
            for reflect in (False, True):
                code, label = _code_from_root(rot, (u, v), reflect)
                runs.append((code, label, reflect))
                if best is None or code < best:
                    best = code
    base_lbl, base_refl = next((lbl, r) for code, lbl, r in runs if code == best)
    inv_base = {i: v for v, i in base_lbl.items()}
    autos = []
    seen = set()
    for code, lbl, refl in runs:
        if code != best:
            continue
        perm = {v: inv_base[lbl[v]] for v in lbl}
        key = tuple(sorted(perm.items()))
        if key not in seen:
            seen.add(key)
            autos.append((perm, refl != base_refl))
    return autos


def face_orbits(pm: PlaneMap) -> List[List[int]]:
    """Face indices grouped into orbits under the map's automorphisms."""
    autos = map_automorphisms(pm)
    parent = list(range(pm.face_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm, reversing in autos:
        for i in range(pm.face_count):
            walk = pm.faces[i]
            if not walk:
                continue
            u, v = walk[0]
            img = (perm[v], perm[u]) if reversing else (perm[u], perm[v])
            j = pm.face_of_dart(img)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    orbits: Dict[int, List[int]] = {}
    for i in range(pm.face_count):
        orbits.setdefault(find(i), []).append(i)
    return sorted(orbits.values())


# -- embeddings ----------------------------------------------------------------


def planar_embeddings(g: Graph, all_embeddings: bool = True) -> List[PlaneMap]:
    """Inequivalent sphere embeddings of a connected graph; empty when the
    graph is not planar.  For forests the single trivial embedding is
    returned (all embeddings of a forest have one face)."""
    n, es = g
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v in sorted(es):
        adj[u].append(v)
        adj[v].append(u)
    if len(es) < n or not all_embeddings:
        pm = one_embedding(g)
        return [pm] if pm is not None else []
    choices = []
    verts = sorted(adj)
    for v in verts:
        nbrs = sorted(adj[v])
        if len(nbrs) <= 2:
            choices.append([tuple(nbrs)])
        else:
            first, rest = nbrs[0], nbrs[1:]
            choices.append([(first,) + p for p in itertools.permutations(rest)])
    out: List[PlaneMap] = []
    seen: Set[tuple] = set()
    for combo in itertools.product(*choices):
        rot = {v: combo[i] for i, v in enumerate(verts)}
        pm = build_map(rot)
        if pm.vertex_count - pm.edge_count + pm.face_count != 2:
            continue
        cert = map_certificate(pm)
        if cert in seen:
            continue
        seen.add(cert)
        out.append(pm)
    return out


def one_embedding(g: Graph) -> Optional[PlaneMap]:
    """One plane embedding (networkx planarity search), or None."""
    n, es = g
    gg = _nx_of(g)
    ok, emb = nx.check_planarity(gg)
    if not ok:
        return None
    rot = {}
    for v in range(n):
        nbrs = list(emb.neighbors_cw_order(v)) if gg.degree(v) else []
        rot[v] = tuple(nbrs)
    pm = build_map(rot)
    assert validate_plane(pm).ok
    return pm


def enumerate_plane_girth5(n_max: int) -> Iterator[PlaneMap]:
    """Connected plane maps of girth at least five up to isomorphism of the
    underlying graph, one embedding each."""
    for g in enumerate_graphs_girth5(n_max):
        pm = one_embedding(g)
        if pm is None:
            continue
        assert validate_plane(pm).ok and girth(pm) >= 5
        yield pm


def enumerate_plane_girth5_all_embeddings(n_max: int) -> Iterator[Tuple[Graph, List[PlaneMap]]]:
    """Each graph together with all its inequivalent embeddings."""
    for g in enumerate_graphs_girth5(n_max):
        pms = planar_embeddings(g)
        if pms:
            yield g, pms


# -- random model ---------------------------------------------------------------


def random_plane_girth5(n: int, seed: int, extra_edge_tries: int = 64) -> PlaneMap:
    """Seed-deterministic random connected plane map of girth at least five.

    Grows a random plane tree by pendant insertions into random face
    corners, then adds random face-splitting edges between vertices at
    distance at least four, rejecting insertions that would break planarity
    or girth.
    """
    rng = random.Random(seed)
    rot: Dict[int, List[int]] = {0: []}
    for z in range(1, n):
        u = rng.randrange(z)
        pos = rng.randrange(len(rot[u]) + 1)
        rot[u].insert(pos, z)
        rot[z] = [u]
    pm = build_map({v: tuple(ws) for v, ws in rot.items()})
    for _ in range(extra_edge_tries):
        f = rng.randrange(pm.face_count)
        walk = pm.faces[f]
        if len(walk) < 2:
            continue
        i, j = sorted(rng.sample(range(len(walk)), 2))
        u, v = walk[i][0], walk[j][0]
        if u == v or pm.has_edge(u, v):
            continue
        from ..planemap import distance as _dist

        if _dist(pm, (u,), (v,)) < 4:
            continue
        pm = _split_face(pm, f, i, j)
    assert validate_plane(pm).ok and girth(pm) >= 5
    return pm


def _split_face(pm: PlaneMap, f: int, i: int, j: int) -> PlaneMap:
    walk = pm.faces[f]
    u, v = walk[i][0], walk[j][0]
    rot = {x: list(ws) for x, ws in pm.rotations().items()}

    def insert_after_entry(x: int, prev_dart: Tuple[int, int], new_nbr: int) -> None:
        # prev_dart = (w, x) enters x; the face continues with succ(w); the new
        # neighbor goes between w and succ(w) in the rotation at x
        w = prev_dart[0]
        k = rot[x].index(w)
        rot[x].insert(k + 1, new_nbr)

    insert_after_entry(u, walk[i - 1], v)
    insert_after_entry(v, walk[j - 1], u)
    return build_map({x: tuple(ws) for x, ws in rot.items()})


# -- fixed reference map ----------------------------------------------------------


def dodecahedron_map() -> PlaneMap:
    """The dodecahedron as a plane map (20 vertices, 30 edges, 12 pentagons).

    Vertices: outer pentagon 0-4, second ring 5-9, third ring 10-14, inner
    pentagon 15-19.
    """
    a = list(range(0, 5))
    b = list(range(5, 10))
    c = list(range(10, 15))
    d = list(range(15, 20))
    faces: List[List[int]] = [[a[0], a[1], a[2], a[3], a[4]]]
    for i in range(5):
        j = (i + 1) % 5
        faces.append([a[j], a[i], b[i], c[i], b[j]])
        faces.append([b[j], c[i], d[i], d[j], c[j]])
    faces.append([d[4], d[3], d[2], d[1], d[0]])
    succ: Dict[int, Dict[int, int]] = {}
    for f in faces:
        for k in range(5):
            x, y, z = f[k], f[(k + 1) % 5], f[(k + 2) % 5]
            succ.setdefault(y, {})
            assert x not in succ[y], "inconsistent face orientations"
            succ[y][x] = z
    rot = {}
    for v, nxt in succ.items():
        start = min(nxt)
        seq = [start]
        while True:
            w = nxt[seq[-1]]
            if w == start:
                break
            seq.append(w)
        assert len(seq) == len(nxt)
        rot[v] = tuple(seq)
    pm = build_map(rot)
    assert pm.face_count == 12 and all(pm.face_length(i) == 5 for i in range(12))
    return pm
