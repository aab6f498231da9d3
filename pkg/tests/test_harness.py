import itertools

import networkx as nx
import numpy as np
import pytest

from fraccol import _kernel
from fraccol.coloring import uniform_lists
from fraccol.harness import (
    ListPolicy,
    enumerate_lists,
    enumerate_plane_girth5,
    map_certificate,
    planar_embeddings,
    random_plane_girth5,
    run_suite,
)
from fraccol.harness.generate import enumerate_graphs_girth5
from fraccol.harness.lists import count_orbits_naive, enumerate_mask_tuples, perm_mask_tables
from fraccol.planemap import build_map, girth, validate_plane

from maps import to_networkx


def _oracle_graphs_upto5():
    """All connected girth>=5 graphs on <=5 vertices up to isomorphism, by
    exhaustive edge-subset enumeration."""
    found = []
    for n in range(1, 6):
        all_edges = list(itertools.combinations(range(n), 2))
        for k in range(len(all_edges) + 1):
            for es in itertools.combinations(all_edges, k):
                g = nx.Graph()
                g.add_nodes_from(range(n))
                g.add_edges_from(es)
                if not nx.is_connected(g):
                    continue
                try:
                    if nx.girth(g) < 5:
                        continue
                except Exception:
                    pass
                if not any(nx.is_isomorphic(g, h) for h in found):
                    found.append(g)
    return found


def test_enumeration_matches_bruteforce_oracle():
    oracle = _oracle_graphs_upto5()
    ours = enumerate_graphs_girth5(5)
    assert len(ours) == len(oracle) == 9  # the trees on <=5 vertices plus C5
    for n, es in ours:
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(es)
        assert any(nx.is_isomorphic(g, h) for h in oracle)


def test_generator_postconditions():
    count = 0
    for pm in enumerate_plane_girth5(7):
        assert validate_plane(pm).ok
        assert girth(pm) >= 5
        count += 1
    assert count == 35  # 1+1+1+2+4+8+18 connected girth-5 graphs by order


def test_enumeration_bounds():
    assert list(enumerate_plane_girth5(0)) == []
    with pytest.raises(ValueError):
        enumerate_graphs_girth5(11)


def test_embedding_counts():
    c5 = (5, frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}))
    assert len(planar_embeddings(c5)) == 1
    # all rotation systems of a forest are equivalent for our purposes
    star = (4, frozenset({(0, 1), (0, 2), (0, 3)}))
    assert len(planar_embeddings(star)) == 1


def test_embeddings_distinguish_face_structures():
    # C5 with two pendant chains of length 2 attached at 0 and 1: the chains
    # can sit on the same side or opposite sides of the cycle
    base = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (5, 6), (1, 7), (7, 8)}
    g = (9, frozenset(base))
    embs = planar_embeddings(g)
    assert len(embs) >= 1
    certs = {map_certificate(pm) for pm in embs}
    assert len(certs) == len(embs)


def test_certificate_invariant_under_relabeling():
    pm = random_plane_girth5(9, seed=4)
    relabel = {v: (v * 7 + 3) % 97 for v in pm.vertices}
    rot2 = {relabel[v]: tuple(relabel[w] for w in pm.rotation(v)) for v in pm.vertices}
    pm2 = build_map(rot2)
    assert map_certificate(pm) == map_certificate(pm2)


def test_enumerate_lists_single_orbit():
    pm = build_map([[1, 4], [0, 2], [1, 3], [2, 4], [3, 0]])
    policy = ListPolicy({v: 3 for v in range(5)}, universe=3)
    out = list(enumerate_lists(range(5), 1, policy))
    assert len(out) == 1
    assert all(s == frozenset({0, 1, 2}) for s in out[0].lists.values())


def test_enumerate_lists_orbit_count_matches_naive_quotient():
    sizes = [2, 3, 3]
    exact = list(enumerate_mask_tuples(sizes, 4, "exact"))
    assert len(exact) == count_orbits_naive(sizes, 4)
    firstuse = list(enumerate_mask_tuples(sizes, 4, "firstuse"))
    assert set(exact) <= set(firstuse)
    # canonicalizing the first-use set by the full permutation group
    # collapses it exactly onto the orbit minima
    tab = perm_mask_tables(4)
    width = 1 << 4
    nperms = len(tab) // width

    def orbit_min(t):
        best = t
        for p in range(nperms):
            cand = tuple(int(tab[p * width + m]) for m in t)
            if cand < best:
                best = cand
        return best

    assert {orbit_min(t) for t in firstuse} == set(exact)


def test_enumerate_lists_empty_map():
    policy = ListPolicy({}, universe=3)
    out = list(enumerate_lists([], 1, policy))
    assert len(out) == 1 and out[0].lists == {}


def test_enum_kernel_reports_violations():
    # two adjacent vertices with forced singleton lists: the assignment
    # ({0},{0}) is unsolvable and must be reported
    adj = np.array([2, 1], np.int64)
    cand = np.array([1, 2, 1, 2], np.int64)  # masks {0},{1} for each vertex
    ptr = np.array([0, 2, 4], np.int64)
    counts, viols = _kernel.enum_and_check(
        2, 1, adj, cand, ptr, 2, np.array([-1, -1], np.int64),
        np.ones(1, np.uint8),
        np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64),
        -1, np.zeros(3, np.int64), firstuse=False, perm_tab=None, permwidth=1,
    )
    assert counts[3] == 2  # ({0},{0}) and ({1},{1})
    assert len(viols) == 2


def test_enum_kernel_path_mode_reports_violations():
    # edge 0-1, path = (0,), both lists forced to {0}: the only coloring of
    # the path does not extend
    adj = np.array([2, 1], np.int64)
    cand = np.array([1, 1], np.int64)
    ptr = np.array([0, 1, 2], np.int64)
    counts, viols = _kernel.enum_and_check(
        2, 1, adj, cand, ptr, 2, np.array([-1, -1], np.int64),
        np.ones(1, np.uint8),
        np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64),
        0, np.zeros(3, np.int64), firstuse=False, perm_tab=None, permwidth=1,
    )
    assert counts[3] == 1 and len(viols) == 1


def test_suite_determinism_byte_for_byte():
    a = run_suite("lemma-addit", {"nmax": 5, "samples": 300, "seed": 3})
    b = run_suite("lemma-addit", {"nmax": 5, "samples": 300, "seed": 3})
    assert a.to_json_text() == b.to_json_text()
    c = run_suite("cor-distflaws", {"nmax": 4, "a": [1]})
    d = run_suite("cor-distflaws", {"nmax": 4, "a": [1]})
    assert c.to_json_text() == d.to_json_text()


def test_suite_mutation_selftest():
    r = run_suite("lemma-addit", {"nmax": 5, "samples": 100, "_mutate": "addit"})
    assert r.violations and r.violations[0].detail["identity"] == "d88"
    r2 = run_suite("constants", {"_mutate": "constants"})
    assert r2.violations
    r3 = run_suite("thm-canvas", {"nmax": 5, "_mutate": "canvas-bound"})
    assert r3.violations and r3.violations[0].kind == "potential-below-bound"


def test_suite_threads_match_serial():
    a = run_suite("cor-distflaws", {"nmax": 5, "a": [1], "threads": 2})
    b = run_suite("cor-distflaws", {"nmax": 5, "a": [1], "threads": 1})
    assert a.to_json_text() == b.to_json_text()


def test_unknown_suite():
    from fraccol.common import FraccolError

    with pytest.raises(FraccolError, match="unknown suite"):
        run_suite("no-such-suite")


def test_random_model_determinism():
    a = random_plane_girth5(10, seed=5)
    b = random_plane_girth5(10, seed=5)
    assert a.key() == b.key()
    assert validate_plane(a).ok and girth(a) >= 5
