import math

import networkx as nx
import pytest

from fraccol.common import MapBuildError, Subgraph
from fraccol.harness.generate import dodecahedron_map, enumerate_plane_girth5, random_plane_girth5
from fraccol.planemap import (
    build_map,
    cycle_sides,
    distance,
    girth,
    is_tame,
    side_sets,
    subgraph_delete,
    validate_plane,
)

from maps import chorded_cycle_map, cycle_map, from_networkx_planar, hub_cycle_map, path_map, to_networkx, trace_faces_oracle

INF = float("inf")


def test_build_cycle():
    pm = cycle_map(5)
    assert pm.face_count == 2
    assert all(pm.face_length(i) == 5 for i in range(2))


def test_build_single_vertex():
    pm = build_map([[]])
    assert pm.face_count == 1
    assert pm.vertex_count - pm.edge_count + pm.face_count == 2


def test_build_dodecahedron_matches_tracing_oracle():
    pm = dodecahedron_map()
    lengths = [pm.face_length(i) for i in range(pm.face_count)]
    assert sorted(lengths) == trace_faces_oracle(pm.rotations())
    assert lengths == [5] * 12


def test_build_rejections_name_offender():
    with pytest.raises(MapBuildError, match="loop at vertex 0"):
        build_map([[0]])
    with pytest.raises(MapBuildError, match="multi-edge"):
        build_map([[1, 1], [0, 0]])
    with pytest.raises(MapBuildError, match=r"\(0,1\)"):
        build_map([[1], []])
    with pytest.raises(MapBuildError, match="unknown vertex 7"):
        build_map([[7], [0]])


def test_validate_dodecahedron():
    rep = validate_plane(dodecahedron_map())
    assert rep.ok and (rep.vertex_count, rep.edge_count, rep.face_count) == (20, 30, 12)


def test_validate_k5_rotation_fails_genus():
    rot = {v: [u for u in range(5) if u != v] for v in range(5)}
    rep = validate_plane(build_map(rot))
    assert not rep.ok and rep.connected
    assert "genus" in rep.error


def test_validate_disconnected_distinct_error():
    rot = {i: [(i + 1) % 5, (i - 1) % 5] for i in range(5)}
    rot.update({i + 5: [(i + 1) % 5 + 5, (i - 1) % 5 + 5] for i in range(5)})
    rep = validate_plane(build_map(rot))
    assert not rep.ok and rep.error == "disconnected"


def test_girth_examples():
    assert girth(cycle_map(5)) == 5
    assert girth(path_map(4)) == INF
    d = dodecahedron_map()
    assert girth(d) == nx.girth(to_networkx(d))


def test_distance_examples():
    pm = cycle_map(10)
    assert distance(pm, [3], [3]) == 0
    assert distance(pm, [0], [5]) == 5
    pm8 = cycle_map(8)
    # two opposite edges: min over the four endpoint pairs
    g = to_networkx(pm8)
    oracle = min(
        nx.shortest_path_length(g, a, b) for a in (0, 1) for b in (4, 5)
    )
    assert oracle == 3
    assert distance(pm8, (0, 1), (4, 5)) == 3


def test_distance_metric_properties():
    for seed in range(6):
        pm = random_plane_girth5(9, seed=seed)
        vs = pm.vertices
        d = {(u, v): distance(pm, [u], [v]) for u in vs for v in vs}
        for u in vs:
            for v in vs:
                assert d[(u, v)] == d[(v, u)]
                for w in vs:
                    assert d[(u, w)] <= d[(u, v)] + d[(v, w)]


def test_cycle_sides_facial():
    pm = cycle_map(5)
    inner, outer = cycle_sides(pm, [0, 1, 2, 3, 4])
    assert sorted(inner.vertices) == [0, 1, 2, 3, 4]
    assert inner.edge_count == 5 and outer.edge_count == 5


def test_cycle_sides_chord_inside():
    pm = chorded_cycle_map(10, 0, 5)
    inner, outer = cycle_sides(pm, list(range(10)))
    assert inner.edge_count == 11  # cycle + the chord
    assert outer.edge_count == 10  # just the cycle


def test_cycle_sides_dodecahedron_ring():
    pm = dodecahedron_map()
    # the 10-cycle through the two middle rings: 5,10,6,11,7,12,8,13,9,14
    ring = [5, 10, 6, 11, 7, 12, 8, 13, 9, 14]
    inner, outer = cycle_sides(pm, ring)
    assert inner.vertex_count == 15  # ring + inner pentagon side
    assert outer.vertex_count == 15  # ring + outer pentagon side
    assert set(inner.vertices) & set(outer.vertices) == set(ring)


def test_cycle_sides_partition_invariant():
    for pm in enumerate_plane_girth5(7):
        g = to_networkx(pm)
        for cyc in nx.simple_cycles(g):
            (iv, ie), (ev, ee) = side_sets(pm, cyc)
            assert not (iv & ev)
            assert iv | ev | set(cyc) == set(pm.vertices)
            from fraccol.planemap import cycle_edges

            assert not (ie & ee)
            assert ie | ee | cycle_edges(cyc) == set(pm.edges)


def test_face_partition_invariant():
    for pm in enumerate_plane_girth5(6):
        total = sum(pm.face_length(i) for i in range(pm.face_count))
        assert total == 2 * pm.edge_count
        if pm.connected:
            assert pm.vertex_count - pm.edge_count + pm.face_count == 2


def test_is_tame():
    pm = cycle_map(5)
    assert is_tame(pm, [0, 1, 2, 3, 4])
    assert is_tame(chorded_cycle_map(8, 0, 4), list(range(8)))
    assert not is_tame(chorded_cycle_map(7, 0, 3), list(range(7)))
    assert is_tame(hub_cycle_map(9, (0, 3, 6)), list(range(9)))
    # a 3-neighbor hub inside an 8-cycle is not tame (needs length >= 9)
    # girth: spokes 0,3,6 on C8 give cycle 6-7-0-hub of length 4, so use 0,3,5? 5-6..: use C8 hub at 0,3,6 -> contains 4-cycle; skip girth and
    # build directly: tameness is independent of girth
    pm8 = hub_cycle_map(8, (0, 3, 6))
    assert not is_tame(pm8, list(range(8)))


def test_subgraph_delete():
    pm = cycle_map(5)
    same = subgraph_delete(pm)
    assert same.key() == pm.key()
    path = subgraph_delete(pm, vertices=[4])
    assert path.vertex_count == 4 and path.edge_count == 3 and path.face_count == 1
    d = dodecahedron_map()
    d19 = subgraph_delete(d, vertices=[0])
    assert (d19.vertex_count, d19.edge_count, d19.face_count) == (19, 27, 10)
    assert validate_plane(d19).ok
    two = subgraph_delete(cycle_map(5), edges=[(0, 1)])
    assert two.connected


def test_subgraph_delete_flags_disconnection():
    pm = path_map(3)
    broken = subgraph_delete(pm, vertices=[1])
    assert not broken.connected
