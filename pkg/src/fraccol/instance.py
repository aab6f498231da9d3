"""Instance files: JSON format, a compact planar-code importer, DOT export.

The JSON format is text-first and explicit: every vertex carries its
rotation (neighbor ids in cyclic order) and its color list.  Optional marks:
a directed path (first vertex first), faces ``f1``/``f2`` (each named by one
half-edge lying on it), the outer face, and a marked subgraph.  Parsing the
emitted form reproduces the instance exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coloring import ListAssignment, flaw_edges
from .common import InputError, Subgraph, edge
from .planemap import PlaneMap, build_map

FORMAT = "fraccol-instance/1"


@dataclass(frozen=True)
class Instance:
    pm: PlaneMap
    lists: ListAssignment
    path: Optional[Tuple[int, ...]] = None
    f1: Optional[int] = None
    f2: Optional[int] = None
    marked: Optional[Subgraph] = None

    @property
    def a(self) -> int:
        return self.lists.a


def _dart_of_face(pm: PlaneMap, i: int) -> List[int]:
    walk = pm.faces[i]
    if not walk:
        raise InputError(f"face {i} has no half-edges")
    d = min(walk)
    return [d[0], d[1]]


def emit(inst: Instance) -> dict:
    doc: Dict[str, object] = {
        "format": FORMAT,
        "a": inst.a,
        "vertices": [
            {
                "id": v,
                "rotation": list(inst.pm.rotation(v)),
                "list": sorted(inst.lists[v]),
            }
            for v in inst.pm.vertices
        ],
        "outer_face": _dart_of_face(inst.pm, inst.pm.outer_face) if inst.pm.edge_count else None,
    }
    if inst.path is not None:
        doc["path"] = list(inst.path)
    if inst.f1 is not None:
        doc["f1"] = _dart_of_face(inst.pm, inst.f1)
    if inst.f2 is not None:
        doc["f2"] = _dart_of_face(inst.pm, inst.f2)
    if inst.marked is not None:
        doc["marked"] = {
            "vertices": sorted(inst.marked.vertices),
            "edges": [list(e) for e in sorted(inst.marked.edges)],
        }
    return doc


def emit_text(inst: Instance) -> str:
    return json.dumps(emit(inst), indent=2, sort_keys=True) + "\n"


def parse(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InputError("instance document must be a JSON object")
    if doc.get("format") != FORMAT:
        raise InputError(f"unsupported format {doc.get('format')!r}, want {FORMAT!r}")
    try:
        a = int(doc["a"])
        vrows = doc["vertices"]
        rot = {int(r["id"]): [int(x) for x in r["rotation"]] for r in vrows}
        lists = {int(r["id"]): frozenset(int(c) for c in r["list"]) for r in vrows}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed instance: {exc}") from exc
    outer = doc.get("outer_face")
    pm = build_map(rot, outer=tuple(outer) if outer else None)
    try:
        la = ListAssignment(a, lists)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    path = tuple(int(x) for x in doc["path"]) if "path" in doc else None
    if path is not None:
        for i in range(len(path) - 1):
            if not pm.has_edge(path[i], path[i + 1]):
                raise InputError(f"marked path edge {path[i]}-{path[i + 1]} is not in the map")
    f1 = f2 = None
    for key in ("f1", "f2"):
        if key in doc:
            u, v = (int(x) for x in doc[key])
            try:
                idx = pm.face_of_dart((u, v))
            except KeyError:
                raise InputError(f"{key}: ({u},{v}) is not a half-edge of the map") from None
            if key == "f1":
                f1 = idx
            else:
                f2 = idx
    marked = None
    if "marked" in doc:
        m = doc["marked"]
        try:
            marked = Subgraph.of(
                (int(v) for v in m.get("vertices", [])),
                ((int(u), int(v)) for u, v in m.get("edges", [])),
            )
        except ValueError as exc:
            raise InputError(f"marked subgraph: {exc}") from exc
        for u, v in marked.edges:
            if not pm.has_edge(u, v):
                raise InputError(f"marked edge {(u, v)} is not in the map")
        for v in marked.vertices:
            if not pm.has_vertex(v):
                raise InputError(f"marked vertex {v} is not in the map")
    return Instance(pm, la, path, f1, f2, marked)


def parse_text(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    return parse(doc)


def load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_text(fh.read())


def save(inst: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_text(inst))


# -- planar-code import (read-only) ------------------------------------------


def read_planar_code(data: bytes) -> List[PlaneMap]:
    """Maps from the compact binary planar-code byte format.

    Layout: optional ``>>planar_code<<`` header, then per map one byte with
    the vertex count followed, for each vertex, by its neighbors in rotation
    order as 1-based bytes terminated by 0.  Only the small (< 256 vertices)
    one-byte variant is supported.
    """
    pos = 0
    header = b">>planar_code<<"
    if data.startswith(header):
        pos = len(header)
        if pos < len(data) and data[pos : pos + 2] in (b"le", b"be"):
            pos += 2
    out: List[PlaneMap] = []
    while pos < len(data):
        n = data[pos]
        pos += 1
        if n == 0:
            raise InputError("planar code: zero vertex count")
        rot: Dict[int, List[int]] = {}
        for v in range(n):
            nbrs: List[int] = []
            while True:
                if pos >= len(data):
                    raise InputError("planar code: truncated neighbor list")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                nbrs.append(b - 1)
            rot[v] = nbrs
        out.append(build_map(rot))
    return out


def read_planar_code_file(path: str) -> List[PlaneMap]:
    with open(path, "rb") as fh:
        return read_planar_code(fh.read())


# -- DOT export ----------------------------------------------------------------


def to_dot(inst: Instance) -> str:
    """DOT text: list sizes as labels, flaws highlighted, faces and marked
    faces as comments."""
    pm, lists = inst.pm, inst.lists
    lines = ["graph instance {"]
    for i in range(pm.face_count):
        tags = []
        if i == pm.outer_face:
            tags.append("outer")
        if i == inst.f1:
            tags.append("f1")
        if i == inst.f2:
            tags.append("f2")
        tag = f" [{','.join(tags)}]" if tags else ""
        lines.append(f"  // face {i}{tag}: {'-'.join(str(v) for v in pm.face_vertices(i))}")
    pset = set(inst.path or ())
    for v in pm.vertices:
        attrs = [f'label="{v} |L|={lists.size(v)}"']
        if v in pset:
            attrs.append("shape=box")
        if inst.marked and v in inst.marked.vertices:
            attrs.append("style=bold")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    flaws = set(flaw_edges(pm, lists, inst.path))
    for u, v in pm.edges:
        attrs = []
        if (u, v) in flaws:
            attrs.append("color=red")
            attrs.append("penwidth=2")
        if inst.marked and (u, v) in inst.marked.edges:
            attrs.append("style=bold")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
