"""Property-based checks for the combinatorial invariants."""

import math

from hypothesis import given, settings, strategies as st

from fraccol.canvas import Canvas, cross_q, potentials, sub_super
from fraccol.coloring import uniform_lists
from fraccol.common import Subgraph
from fraccol.harness.generate import random_plane_girth5
from fraccol.harness.lists import enumerate_mask_tuples, first_use_count, subset_masks
from fraccol.planemap import girth, validate_plane


@given(st.integers(2, 6), st.lists(st.integers(1, 4), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_first_use_count_matches_enumeration(universe, sizes):
    sizes = [min(s, universe) for s in sizes]
    got = first_use_count(sizes, universe)
    assert got == len(list(enumerate_mask_tuples(sizes, universe, "firstuse")))


@given(st.integers(1, 8), st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_subset_masks_shape(universe, size):
    if size > universe:
        return
    masks = subset_masks(universe, size)
    assert len(masks) == math.comb(universe, size)
    assert masks == sorted(masks)
    assert all(bin(m).count("1") == size for m in masks)
    assert all(m < (1 << universe) for m in masks)


@given(st.integers(0, 3000), st.integers(4, 10))
@settings(max_examples=40, deadline=None)
def test_random_maps_satisfy_generator_contract(seed, n):
    pm = random_plane_girth5(n, seed=seed)
    assert validate_plane(pm).ok
    assert girth(pm) >= 5


@given(st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_potential_splitting_identities(seed):
    import random

    rng = random.Random(seed)
    pm = random_plane_girth5(rng.randrange(2, 10), seed=seed)
    verts = list(pm.vertices)
    sv = frozenset(v for v in verts if rng.random() < 0.5)
    se = frozenset(e for e in pm.edges if e[0] in sv and e[1] in sv and rng.random() < 0.6)
    s = Subgraph(sv, se)
    hv = sv | frozenset(v for v in verts if rng.random() < 0.5)
    he = se | frozenset(
        e for e in pm.edges if e[0] in hv and e[1] in hv and e not in se and rng.random() < 0.5
    )
    h = Subgraph(hv, he)
    t = Canvas(1, pm, s, uniform_lists(verts, 1, (0, 1, 2)))
    ss = sub_super(t, h)
    pt, psub, psup = potentials(t), potentials(ss.sub), potentials(ss.sup)
    assert pt.v == psub.v + psup.v
    assert pt.e == psub.e + psup.e
    assert pt.def88 == psub.def88 + psup.def88
    assert pt.q == psub.q + psup.q - ss.q_cross
    assert pt.d88 == ss.d_sub_rel88 + psup.d88
