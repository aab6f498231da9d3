import itertools
import random

import pytest

from fraccol.coloring import ListAssignment, is_set_coloring, uniform_lists
from fraccol.common import FraccolError, HypothesisError, Subgraph
from fraccol.harness.generate import enumerate_plane_girth5, random_plane_girth5
from fraccol.planemap import build_map, subgraph_delete
from fraccol.solver import (
    ExtensionProblem,
    ReductionRefused,
    _solve_lowered,
    _solve_reference,
    decompose_cut,
    enumerate_marked_colorings,
    extends_to,
    extract_critical,
    find_critical_subcanvas,
    is_critical,
    is_critical_bruteforce,
    lift,
    reduce_flaw,
    reduce_greedy_vertex,
    solve,
    solve_decomposed,
    verify_lemma_sgcrit,
)

from maps import cycle_map, path_map, star_map


def test_solve_c5_three_colors():
    pm = cycle_map(5)
    la = uniform_lists(range(5), 1, (1, 2, 3))
    sol = solve(ExtensionProblem(pm, la))
    assert sol is not None and is_set_coloring(pm, la, sol)


def test_solve_c5_five_choose_two():
    pm = cycle_map(5)
    la = uniform_lists(range(5), 2, range(1, 6))
    sol = solve(ExtensionProblem(pm, la))
    assert sol is not None and is_set_coloring(pm, la, sol)
    # the standard cyclic pattern also certifies existence independently
    pattern = {i: frozenset(((2 * i) % 5 + 1, (2 * i + 1) % 5 + 1)) for i in range(5)}
    assert is_set_coloring(pm, la, pattern)


def test_solve_unsat_edge():
    pm = build_map([[1], [0]])
    assert solve(ExtensionProblem(pm, ListAssignment(1, {0: {1}, 1: {1}}))) is None


def test_solve_validates_inputs():
    pm = build_map([[1], [0]])
    with pytest.raises(ValueError):
        ListAssignment(0, {0: {1}, 1: {1}})
    with pytest.raises(ValueError):
        ListAssignment(1, {0: {1 << 16}, 1: {1}})
    with pytest.raises(FraccolError, match="size cap"):
        solve(ExtensionProblem(pm, ListAssignment(1, {0: {1, 2, 3, 4}, 1: {1}})))


def _assignment_corpus(pm, a, seed):
    rng = random.Random(seed)
    universe = list(range(5 * a))
    out = []
    for _ in range(4):
        lists = {}
        for v in pm.vertices:
            k = rng.choice([2 * a, 3 * a])
            lists[v] = frozenset(rng.sample(universe, k))
        out.append(ListAssignment(a, lists))
    return out


def test_kernel_reference_parity():
    # same search heuristics: identical colorings, not just satisfiability
    for i, pm in enumerate(enumerate_plane_girth5(6)):
        for a in (1, 2):
            for la in _assignment_corpus(pm, a, seed=i * 7 + a):
                k = _solve_lowered(pm, la, {})
                r = _solve_reference(pm, la, {})
                assert (k is None) == (r is None)
                if k is not None:
                    assert k == r


def test_solve_deterministic():
    pm = cycle_map(7)
    la = uniform_lists(range(7), 2, range(6))
    p = ExtensionProblem(pm, la)
    assert solve(p) == solve(p)


def test_solve_permutation_equivariant():
    rng = random.Random(3)
    for seed in range(6):
        pm = random_plane_girth5(8, seed=seed)
        for la in _assignment_corpus(pm, 1, seed):
            perm = list(range(5))
            rng.shuffle(perm)
            mapped = ListAssignment(1, {v: frozenset(perm[c] for c in la[v]) for v in pm.vertices})
            assert (solve(ExtensionProblem(pm, la)) is None) == (
                solve(ExtensionProblem(pm, mapped)) is None
            )


def test_extends_to():
    pm = cycle_map(5)
    la = uniform_lists(range(5), 1, (1, 2, 3))
    whole = Subgraph.of(range(5), [(i, (i + 1) % 5) for i in range(5)])
    good = {0: {1}, 1: {2}, 2: {1}, 3: {2}, 4: {3}}
    assert extends_to(pm, la, whole, good)
    with pytest.raises(HypothesisError):
        extends_to(pm, la, whole, {0: {1}, 1: {1}, 2: {2}, 3: {1}, 4: {2}})

    star = star_map(3)
    la_star = ListAssignment(1, {0: frozenset({1, 2, 3}), 1: frozenset({1}), 2: frozenset({1}), 3: frozenset({1})})
    assert not extends_to(star, la_star, Subgraph.of([0]), {0: {1}})


def test_is_critical_edge_example():
    pm = build_map([[1], [0]])
    la = ListAssignment(1, {0: {1}, 1: {1}})
    rep = is_critical(pm, Subgraph.of([0]), la)
    assert rep.critical
    ((target, psi),) = rep.witnesses
    assert target == ("edge", (0, 1)) and psi == {0: frozenset({1})}


def test_is_critical_negative_cases():
    pm = cycle_map(5)
    la = uniform_lists(range(5), 1, (1, 2, 3))
    assert not is_critical(pm, Subgraph.empty(), la).critical
    # a vertex with a list of size (deg+1)a is colorable greedily
    pm2 = path_map(3)
    la2 = ListAssignment(1, {0: frozenset({1}), 1: frozenset({1, 2, 3}), 2: frozenset({1})})
    rep = is_critical(pm2, Subgraph.of([0, 2]), la2)
    assert not rep.critical and "greedily" in rep.reason


def test_is_critical_rejects_whole_map():
    pm = build_map([[1], [0]])
    with pytest.raises(HypothesisError):
        is_critical(pm, Subgraph.of([0, 1], [(0, 1)]), ListAssignment(1, {0: {1}, 1: {1}}))


def test_extract_critical_examples():
    pm = build_map([[1], [0]])
    la = ListAssignment(1, {0: {1}, 1: {1}})
    core = extract_critical(pm, la)
    assert sorted(core.edges) == [(0, 1)]

    pm2 = build_map([[1], [0, 2], [1]])
    la2 = ListAssignment(1, {0: {1}, 1: {1}, 2: {1, 2, 3}})
    core2 = extract_critical(pm2, la2)
    assert sorted(core2.edges) == [(0, 1)] and 2 not in core2.vertices

    # K4 with 2-lists: the girth gate does not apply to the solver
    k4 = {v: [u for u in range(4) if u != v] for v in range(4)}
    la4 = uniform_lists(range(4), 1, (1, 2))
    core4 = extract_critical(build_map(k4), la4)
    assert core4.vertex_count == 3 and core4.edge_count == 3  # an odd cycle


def test_extract_critical_minimality():
    k4 = {v: [u for u in range(4) if u != v] for v in range(4)}
    la4 = uniform_lists(range(4), 1, (1, 2))
    core = extract_critical(build_map(k4), la4)
    assert solve(ExtensionProblem(core, la4.drop(set(la4.lists) - set(core.vertices)))) is None
    for e in core.edges:
        sub = subgraph_delete(core, edges=[e])
        la_sub = la4.drop(set(la4.lists) - set(sub.vertices))
        assert solve(ExtensionProblem(sub, la_sub)) is not None


def test_extract_critical_requires_unsat():
    pm = cycle_map(5)
    with pytest.raises(HypothesisError):
        extract_critical(pm, uniform_lists(range(5), 1, (1, 2, 3)))


def test_reduce_greedy_vertex():
    pm = build_map({0: [], 1: [2], 2: [1]})
    la = ListAssignment(1, {0: frozenset({1, 2, 3}), 1: frozenset({1}), 2: frozenset({2})})
    red = reduce_greedy_vertex(ExtensionProblem(pm, la))
    assert red is not None and red[1].data["vertex"] == 0

    pm2 = path_map(3)  # middle vertex has degree 2 and a 3-list
    la2 = ListAssignment(1, {0: frozenset({1}), 1: frozenset({1, 2, 3}), 2: frozenset({2})})
    red2 = reduce_greedy_vertex(ExtensionProblem(pm2, la2))
    assert red2 is not None and red2[1].data["vertex"] == 1
    rsol = solve(red2[0])
    lifted = lift([red2[1]], rsol)
    assert is_set_coloring(pm2, la2, lifted)

    # degree-3 vertex with a 3a-list is not removable
    star = star_map(3)
    la3 = ListAssignment(1, {0: frozenset({1, 2, 3}), 1: frozenset({1}), 2: frozenset({2}), 3: frozenset({3})})
    assert reduce_greedy_vertex(ExtensionProblem(star, la3)) is None


def test_reduce_flaw_isolated_edge():
    pm = build_map([[1], [0]])
    la = uniform_lists(range(2), 1, (1, 2))
    red, step = reduce_flaw(ExtensionProblem(pm, la), (0, 1))
    assert red.pm.vertex_count == 0
    lifted = lift([step], {})
    assert is_set_coloring(pm, la, lifted)


def test_reduce_flaw_refusals():
    # another 2a vertex at distance 2 from the flaw
    pm = cycle_map(7)
    la = uniform_lists(range(7), 1, (1, 2, 3))
    la = la.replace(0, (1, 2)).replace(1, (1, 2)).replace(3, (1, 2))
    with pytest.raises(ReductionRefused, match="distance 2"):
        reduce_flaw(ExtensionProblem(pm, la), (0, 1))
    # neighbor without a 3a-list
    la2 = uniform_lists(range(7), 1, (1, 2, 3)).replace(0, (1, 2)).replace(1, (1, 2)).replace(2, (1, 2))
    with pytest.raises(ReductionRefused):
        reduce_flaw(ExtensionProblem(pm, la2), (0, 1))


def test_reduce_flaw_equivalence_on_valid_instance():
    pm = cycle_map(8)
    la = uniform_lists(range(8), 1, (1, 2, 3)).replace(0, (1, 2)).replace(1, (4, 5))
    prob = ExtensionProblem(pm, la)
    red, step = reduce_flaw(prob, (0, 1))
    base = solve(prob)
    rsol = solve(red)
    assert (base is None) == (rsol is None)
    assert is_set_coloring(pm, la, lift([step], rsol))


def test_decompose_cut_examples():
    # two 5-cycles sharing vertex 0
    rot = {i: [(i + 1) % 5, (i - 1) % 5] for i in range(5)}
    rot[0] = [1, 4, 5, 8]
    rot.update({5: [0, 6], 6: [5, 7], 7: [6, 8], 8: [7, 0]})
    pm = build_map(rot)
    la = uniform_lists(pm.vertices, 1, (1, 2, 3))
    dec = decompose_cut(ExtensionProblem(pm, la))
    assert dec is not None and len(dec.subproblems) == 2
    assert dec.cut_vertices == (0,)

    tree = path_map(5)
    dec2 = decompose_cut(ExtensionProblem(tree, uniform_lists(range(5), 1, (1, 2, 3))))
    assert dec2 is not None
    assert all(p.pm.edge_count == 1 for p in dec2.subproblems)

    assert decompose_cut(ExtensionProblem(cycle_map(5), uniform_lists(range(5), 1, (1, 2, 3)))) is None


def test_solve_decomposed_matches_solve():
    # the classic trap: blocks are independently colorable but the shared
    # vertex cannot satisfy both
    pm = path_map(3)
    la = ListAssignment(1, {0: frozenset({1}), 1: frozenset({1, 2}), 2: frozenset({2})})
    assert solve(ExtensionProblem(pm, la)) is None
    assert solve_decomposed(ExtensionProblem(pm, la)) is None

    for seed in range(8):
        pm = random_plane_girth5(9, seed=seed)
        for la in _assignment_corpus(pm, 1, seed):
            p = ExtensionProblem(pm, la)
            a = solve(p)
            b = solve_decomposed(p)
            assert (a is None) == (b is None)
            if b is not None:
                assert is_set_coloring(pm, la, b)


def test_shortcut_matches_bruteforce_definition():
    rng = random.Random(1)
    checked = 0
    for pm in enumerate_plane_girth5(5):
        if pm.vertex_count < 2:
            continue
        verts = list(pm.vertices)
        for _ in range(3):
            vs = frozenset(v for v in verts if rng.random() < 0.6)
            inner = [e for e in pm.edges if e[0] in vs and e[1] in vs]
            es = frozenset(e for e in inner if rng.random() < 0.7)
            s = Subgraph(vs, es)
            if (s.vertices, s.edges) == (frozenset(verts), frozenset(pm.edges)):
                continue
            la = uniform_lists(verts, 1, (1, 2, 3))
            for v in vs:
                la = la.replace(v, [rng.randrange(3)])
            assert is_critical(pm, s, la).critical == is_critical_bruteforce(pm, s, la)
            checked += 1
    assert checked > 20


def test_verify_lemma_sgcrit():
    pm = build_map([[1], [0]])
    la = ListAssignment(1, {0: {1}, 1: {1}})
    s = Subgraph.of([0])
    part_a = Subgraph.of([0])
    part_b = Subgraph.of([0, 1], [(0, 1)])
    assert verify_lemma_sgcrit(pm, s, la, 1, part_a, part_b)
    with pytest.raises(HypothesisError):
        verify_lemma_sgcrit(pm, s, la, 1, part_a, Subgraph.of([0]))


def test_find_critical_subcanvas():
    # critical core (a forced edge) plus a pendant: the pendant is shed
    pm = build_map([[1], [0, 2], [1]])
    la = ListAssignment(1, {0: {1}, 1: {1}, 2: {1, 2, 3}})
    s = Subgraph.of([0], [])
    sub = find_critical_subcanvas(pm, s, la)
    assert 2 not in sub.vertices
    rep = is_critical(sub, s, la.drop([2]))
    assert rep.critical

    pm2 = build_map([[1], [0]])
    la2 = ListAssignment(1, {0: {1}, 1: {1}})
    sub2 = find_critical_subcanvas(pm2, Subgraph.of([0]), la2)
    assert sorted(sub2.edges) == [(0, 1)]

    with pytest.raises(HypothesisError):
        find_critical_subcanvas(cycle_map(5), Subgraph.of([0]), uniform_lists(range(5), 1, (1, 2, 3)))


def test_enumerate_marked_colorings_symmetry():
    pm = path_map(2)
    la = uniform_lists(range(2), 1, (1, 2, 3))
    s = Subgraph.of([0, 1], [(0, 1)])
    cols = list(enumerate_marked_colorings(pm, s, la))
    # up to relabeling the three interchangeable colors: one proper pattern
    assert len(cols) == 1
    full = list(enumerate_marked_colorings(pm, s, la, up_to_symmetry=False))
    assert len(full) == 6
