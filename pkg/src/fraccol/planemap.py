"""Combinatorial-map representation of plane graphs.

A map is stored as a rotation system: for every vertex, the cyclic order of
its neighbors.  Half-edges are directed pairs ``(u, v)``; the twin of
``(u, v)`` is ``(v, u)``.  Faces are traced with the successor rule
``next(u, v) = (v, w)`` where ``w`` follows ``u`` in the rotation at ``v``,
so for a connected map embedded in the sphere ``V - E + F = 2``.

One face may be designated as the outer face; it defaults to the first face
traced.  All derived data is computed at build time and the map is immutable
afterwards, so instances are safe to share between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .common import Edge, HypothesisError, MapBuildError, Subgraph, edge

Dart = Tuple[int, int]

INF = float("inf")


class PlaneMap:
    """Immutable plane graph with traced faces.

    Build instances through :func:`build_map` or :meth:`PlaneMap.from_rotations`;
    the constructor assumes already-validated data.
    """

    __slots__ = ("_rot", "_vertices", "_edges", "_faces", "_face_of", "_outer", "_connected")

    def __init__(
        self,
        rot: Dict[int, Tuple[int, ...]],
        faces: Tuple[Tuple[Dart, ...], ...],
        face_of: Dict[Dart, int],
        outer: int,
        connected: bool,
    ) -> None:
        self._rot = rot
        self._vertices = tuple(sorted(rot))
        self._edges = tuple(sorted({edge(u, v) for u in rot for v in rot[u]}))
        self._faces = faces
        self._face_of = face_of
        self._outer = outer
        self._connected = connected

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def faces(self) -> Tuple[Tuple[Dart, ...], ...]:
        return self._faces

    @property
    def outer_face(self) -> int:
        return self._outer

    @property
    def connected(self) -> bool:
        return self._connected

    @property
    def vertex_count(self) -> int:
        return len(self._vertices)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def face_count(self) -> int:
        return len(self._faces)

    def rotation(self, v: int) -> Tuple[int, ...]:
        return self._rot[v]

    def rotations(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self._rot)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._rot[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._rot

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._rot.get(u, ())

    def face_of_dart(self, dart: Dart) -> int:
        return self._face_of[dart]

    def face_vertices(self, i: int) -> Tuple[int, ...]:
        return tuple(d[0] for d in self._faces[i])

    def face_length(self, i: int) -> int:
        return len(self._faces[i])

    def faces_at(self, v: int) -> Tuple[int, ...]:
        """Indices of faces incident with ``v``, sorted."""
        out = set()
        for w in self._rot[v]:
            out.add(self._face_of[(v, w)])
            out.add(self._face_of[(w, v)])
        return tuple(sorted(out))

    def face_index_of_cycle(self, cycle: Sequence[int]) -> Optional[int]:
        """Face whose boundary walk equals the given vertex cycle, if any."""
        want = _cycle_key(tuple(cycle))
        for i, f in enumerate(self._faces):
            if len(f) == len(cycle) and _cycle_key(self.face_vertices(i)) == want:
                return i
        return None

    def incident_with_face(self, v: int, i: int) -> bool:
        return i in self.faces_at(v) if self._rot[v] else False

    def with_outer(self, outer: int) -> "PlaneMap":
        if not (0 <= outer < len(self._faces)):
            raise ValueError(f"no face {outer}")
        return PlaneMap(self._rot, self._faces, self._face_of, outer, self._connected)

    def key(self) -> tuple:
        return tuple((v, self._rot[v]) for v in self._vertices)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneMap) and self.key() == other.key() and self._outer == other._outer

    def __hash__(self) -> int:
        return hash((self.key(), self._outer))

    def __repr__(self) -> str:
        return f"PlaneMap(V={self.vertex_count}, E={self.edge_count}, F={self.face_count})"


def _cycle_key(seq: Tuple[int, ...]) -> Tuple[int, ...]:
    """Canonical form of a cyclic vertex sequence up to rotation and reversal."""
    if not seq:
        return seq
    best = None
    for s in (seq, tuple(reversed(seq))):
        for i in range(len(s)):
            cand = s[i:] + s[:i]
            if best is None or cand < best:
                best = cand
    return best


def _trace_faces(rot: Dict[int, Tuple[int, ...]]) -> Tuple[Tuple[Tuple[Dart, ...], ...], Dict[Dart, int]]:
    succ_index = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rot.items()}
    darts = sorted((u, v) for u in rot for v in rot[u])
    face_of: Dict[Dart, int] = {}
    faces: List[Tuple[Dart, ...]] = []
    for start in darts:
        if start in face_of:
            continue
        walk: List[Dart] = []
        d = start
        while True:
            walk.append(d)
            face_of[d] = len(faces)
            u, v = d
            nbrs = rot[v]
            w = nbrs[(succ_index[v][u] + 1) % len(nbrs)]
            d = (v, w)
            if d == start:
                break
        faces.append(tuple(walk))
    return tuple(faces), face_of


def _is_connected(rot: Dict[int, Tuple[int, ...]]) -> bool:
    if not rot:
        return True
    verts = iter(rot)
    seen = {next(verts)}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(rot)


def build_map(
    rotation_table: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
    outer: Optional[Dart] = None,
) -> PlaneMap:
    """Assemble a plane map from a rotation table.

    ``rotation_table`` maps each vertex to the cyclic sequence of its
    neighbors; a plain sequence is interpreted with positional vertex ids.
    Rejects loops, repeated neighbors (multi-edges) and dangling twins,
    naming the offending element.  ``outer`` optionally designates the outer
    face by a half-edge lying on it; by default the first traced face is
    outer.
    """
    if isinstance(rotation_table, Mapping):
        items = {int(v): tuple(int(w) for w in nbrs) for v, nbrs in rotation_table.items()}
    else:
        items = {i: tuple(int(w) for w in nbrs) for i, nbrs in enumerate(rotation_table)}

    for v, nbrs in items.items():
        for w in nbrs:
            if w == v:
                raise MapBuildError(f"loop at vertex {v}")
            if w not in items:
                raise MapBuildError(f"rotation of vertex {v} names unknown vertex {w}")
        if len(set(nbrs)) != len(nbrs):
            dup = next(w for w in nbrs if nbrs.count(w) > 1)
            raise MapBuildError(f"multi-edge {v}-{dup}: vertex {dup} repeated in rotation of {v}")
    for v, nbrs in items.items():
        for w in nbrs:
            if v not in items[w]:
                raise MapBuildError(f"dangling twin: half-edge ({v},{w}) has no ({w},{v})")

    faces, face_of = _trace_faces(items)
    if not faces and items:
        # vertices but no darts: isolated vertices only; a single empty face
        faces, face_of = ((),), {}
    outer_idx = 0
    if outer is not None:
        d = (int(outer[0]), int(outer[1]))
        if d not in face_of:
            raise MapBuildError(f"outer designation {d} is not a half-edge of the map")
        outer_idx = face_of[d]
    return PlaneMap(items, faces, face_of, outer_idx, _is_connected(items))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    connected: bool
    vertex_count: int
    edge_count: int
    face_count: int
    euler: int
    error: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "connected": self.connected,
            "v": self.vertex_count,
            "e": self.edge_count,
            "f": self.face_count,
            "euler": self.euler,
            "error": self.error,
        }


def validate_plane(pm: PlaneMap) -> ValidationReport:
    """Confirm connectivity and the sphere count ``V - E + F = 2``.

    Disconnected maps are reported distinctly from maps whose face count is
    inconsistent with genus zero.
    """
    v, e, f = pm.vertex_count, pm.edge_count, pm.face_count
    euler = v - e + f
    if not pm.connected:
        return ValidationReport(False, False, v, e, f, euler, error="disconnected")
    if euler != 2:
        return ValidationReport(False, True, v, e, f, euler, error=f"genus defect: V-E+F={euler}, expected 2")
    return ValidationReport(True, True, v, e, f, euler)


def distance(pm: PlaneMap, a: Iterable[int], b: Iterable[int]) -> float:
    """Minimum BFS distance between two nonempty vertex sets.

    The distance between two edges is obtained by passing their endpoint
    pairs; this is the minimum-endpoint convention used throughout.
    """
    src = set(a)
    dst = set(b)
    if not src or not dst:
        raise ValueError("distance requires nonempty vertex sets")
    if src & dst:
        return 0
    dist = {v: 0 for v in src}
    queue = deque(src)
    while queue:
        v = queue.popleft()
        for w in pm.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                if w in dst:
                    return dist[w]
                queue.append(w)
    return INF


def girth(pm: PlaneMap) -> float:
    """Length of a shortest cycle; infinity for forests."""
    best = INF
    for u, v in pm.edges:
        # shortest cycle through uv = dist(u, v) in G - uv, plus one
        dist = {u: 0}
        queue = deque([u])
        found = INF
        while queue:
            x = queue.popleft()
            if dist[x] + 1 >= best:
                break
            for y in pm.neighbors(x):
                if x == u and y == v:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == v:
                        found = dist[y]
                        queue.clear()
                        break
                    queue.append(y)
        if found + 1 < best:
            best = found + 1
    return best


def is_cycle_of(pm: PlaneMap, cycle: Sequence[int]) -> bool:
    cyc = list(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return False
    return all(pm.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def cycle_edges(cycle: Sequence[int]) -> Set[Edge]:
    k = len(cycle)
    return {edge(cycle[i], cycle[(i + 1) % k]) for i in range(k)}


def cycle_sides(pm: PlaneMap, cycle: Sequence[int]) -> Tuple["PlaneMap", "PlaneMap"]:
    """Split the map along a cycle into its two closed sides.

    Returns ``(interior, exterior)`` submaps: the side not containing the
    outer face and the side containing it.  Both contain the cycle itself,
    their union is the whole map and their intersection is the cycle.
    """
    interior, exterior = side_sets(pm, cycle)
    c_verts = set(cycle)
    c_edges = cycle_edges(cycle)
    int_map = subgraph_delete(
        pm,
        vertices=[v for v in pm.vertices if v not in interior[0] and v not in c_verts],
        edges=[e for e in pm.edges if e not in interior[1] and e not in c_edges],
    )
    ext_map = subgraph_delete(
        pm,
        vertices=[v for v in pm.vertices if v not in exterior[0] and v not in c_verts],
        edges=[e for e in pm.edges if e not in exterior[1] and e not in c_edges],
    )
    return int_map, ext_map


def side_sets(
    pm: PlaneMap, cycle: Sequence[int]
) -> Tuple[Tuple[Set[int], Set[Edge]], Tuple[Set[int], Set[Edge]]]:
    """Strictly-interior and strictly-exterior vertex/edge sets of a cycle."""
    if not pm.connected:
        raise HypothesisError("cycle_sides requires a connected map")
    if not is_cycle_of(pm, cycle):
        raise ValueError(f"{tuple(cycle)} is not a cycle of the map")
    c_edges = cycle_edges(cycle)

    # group faces into the two regions obtained by cutting along the cycle
    parent = list(range(pm.face_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pm.edges:
        if (u, v) in c_edges:
            continue
        fa, fb = pm.face_of_dart((u, v)), pm.face_of_dart((v, u))
        ra, rb = find(fa), find(fb)
        if ra != rb:
            parent[ra] = rb
    regions = {find(i) for i in range(pm.face_count)}
    if len(regions) != 2:
        raise ValueError(f"cutting along {tuple(cycle)} produced {len(regions)} regions; bad embedding")
    outer_region = find(pm.outer_face)

    c_verts = set(cycle)
    int_v: Set[int] = set()
    ext_v: Set[int] = set()
    int_e: Set[Edge] = set()
    ext_e: Set[Edge] = set()
    for u, v in pm.edges:
        if (u, v) in c_edges:
            continue
        side_ext = find(pm.face_of_dart((u, v))) == outer_region
        (ext_e if side_ext else int_e).add((u, v))
        for x in (u, v):
            if x not in c_verts:
                (ext_v if side_ext else int_v).add(x)
    return (int_v, int_e), (ext_v, ext_e)


def is_tame(pm: PlaneMap, cycle: Sequence[int]) -> bool:
    """Tameness of a cycle.

    A cycle is tame when its interior is the cycle itself; or has length at
    least 8 and the interior adds exactly one chord; or has length at least 9
    and the interior adds exactly one vertex with exactly three neighbors on
    the cycle.
    """
    (int_v, int_e), _ = side_sets(pm, cycle)
    k = len(cycle)
    if not int_v and not int_e:
        return True
    if k >= 8 and not int_v and len(int_e) == 1:
        return True  # one chord
    if k >= 9 and len(int_v) == 1:
        (z,) = int_v
        z_edges = {e for e in int_e if z in e}
        if len(z_edges) == len(int_e) == 3:
            others = {u for e in z_edges for u in e if u != z}
            if others <= set(cycle) and len(others) == 3:
                return True
    return False


def subgraph_delete(pm: PlaneMap, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()) -> PlaneMap:
    """Delete vertices and edges, retracing faces from scratch.

    The induced rotation system keeps the surviving cyclic orders; the result
    may be disconnected, which is flagged on the map.  Original vertex labels
    are preserved.
    """
    kill_v = set(vertices)
    kill_e = {edge(u, v) for u, v in edges}
    for v in kill_v:
        if not pm.has_vertex(v):
            raise ValueError(f"no vertex {v} to delete")
    for e in kill_e:
        if not pm.has_edge(*e):
            raise ValueError(f"no edge {e} to delete")
    rot = {
        v: tuple(w for w in pm.rotation(v) if w not in kill_v and edge(v, w) not in kill_e)
        for v in pm.vertices
        if v not in kill_v
    }
    faces, face_of = _trace_faces(rot)
    if not faces:
        faces = ((),)
    return PlaneMap(rot, faces, face_of, 0, _is_connected(rot))


def restrict_to(pm: PlaneMap, sub: Subgraph) -> PlaneMap:
    """Submap on exactly the marked vertices and edges of ``sub``."""
    drop_v = [v for v in pm.vertices if v not in sub.vertices]
    drop_e = [e for e in pm.edges if e not in sub.edges and e[0] in sub.vertices and e[1] in sub.vertices]
    return subgraph_delete(pm, drop_v, drop_e)


def as_subgraph(pm: PlaneMap) -> Subgraph:
    return Subgraph(frozenset(pm.vertices), frozenset(pm.edges))
