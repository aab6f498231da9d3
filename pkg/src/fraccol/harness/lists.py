"""List-assignment enumeration with color-symmetry reduction.

Assignments draw every list from a bounded universe ``{0..u-1}``.  Two
reductions are offered: ``firstuse`` keeps exactly the assignments fixed
under relabeling colors in order of first appearance (at least one
representative per color-permutation orbit, occasionally more when several
new colors enter through one set), and ``exact`` additionally keeps only the
lexicographic minimum of each orbit (feasible for small universes).  The
``auto`` mode picks ``exact`` when the universe is small enough.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..coloring import ListAssignment

EXACT_FACTORIAL_LIMIT = 40320  # 8!


@dataclass(frozen=True)
class ListPolicy:
    sizes: Mapping[int, int]  # vertex -> list size
    universe: int
    symmetry: str = "auto"  # exact | firstuse | none | auto

    def __post_init__(self) -> None:
        if self.universe < 1 or self.universe > 60:
            raise ValueError("universe must be within 1..60")
        if self.symmetry not in ("exact", "firstuse", "none", "auto"):
            raise ValueError(f"unknown symmetry mode {self.symmetry}")
        for v, s in self.sizes.items():
            if s < 1 or s > self.universe:
                raise ValueError(f"size {s} at vertex {v} outside 1..universe")

    def mode(self) -> str:
        if self.symmetry != "auto":
            return self.symmetry
        return "exact" if math.factorial(self.universe) <= EXACT_FACTORIAL_LIMIT else "firstuse"


def subset_masks(universe: int, size: int) -> List[int]:
    """All size-subsets of the universe as bitmasks, ascending."""
    out = []
    for comb in itertools.combinations(range(universe), size):
        m = 0
        for c in comb:
            m |= 1 << c
        out.append(m)
    return sorted(out)


def first_use_ok(mask: int, used: int) -> Optional[int]:
    """If the mask's colors beyond the used prefix form the next contiguous
    run, return the new used count, else None."""
    new = mask & ~((1 << used) - 1)
    if new == 0:
        return used
    k = bin(new).count("1")
    run = ((1 << (used + k)) - 1) ^ ((1 << used) - 1)
    return used + k if new == run else None


def _mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def perm_mask_tables(universe: int) -> np.ndarray:
    """Flattened per-permutation mask translation tables.

    Row ``p`` maps each mask over the universe through permutation ``p``;
    used by the exact orbit filter.
    """
    perms = list(itertools.permutations(range(universe)))
    width = 1 << universe
    tab = np.zeros(len(perms) * width, np.int64)
    for pi, perm in enumerate(perms):
        base = pi * width
        for m in range(width):
            out = 0
            for i in range(universe):
                if (m >> i) & 1:
                    out |= 1 << perm[i]
            tab[base + m] = out
    return tab


def _is_orbit_min(masks: Sequence[int], tab: np.ndarray, width: int) -> bool:
    nperms = len(tab) // width
    for p in range(nperms):
        base = p * width
        for m in masks:
            pm_ = int(tab[base + m])
            if pm_ < m:
                return False
            if pm_ > m:
                break
    return True


def enumerate_mask_tuples(sizes: Sequence[int], universe: int, mode: str) -> Iterator[Tuple[int, ...]]:
    """Canonical tuples of list masks, one entry per position."""
    cands = {s: subset_masks(universe, s) for s in set(sizes)}
    tab = perm_mask_tables(universe) if mode == "exact" else None
    width = 1 << universe
    n = len(sizes)
    cur: List[int] = [0] * n

    def rec(i: int, used: int) -> Iterator[Tuple[int, ...]]:
        if i == n:
            t = tuple(cur)
            if tab is None or _is_orbit_min(t, tab, width):
                yield t
            return
        for m in cands[sizes[i]]:
            if mode in ("firstuse", "exact"):
                nu = first_use_ok(m, used)
                if nu is None:
                    continue
            else:
                nu = used
            cur[i] = m
            yield from rec(i + 1, nu)

    yield from rec(0, 0)


def first_use_count(size_options: Sequence, universe: int) -> int:
    """Exact number of first-use-canonical tuples for the given list sizes.

    Each position carries one size or a tuple of allowed sizes.  DP over the
    number of colors already in use: a list of size s may reuse j of the c
    used colors and must take its s - j new colors as the next contiguous
    block.
    """
    state = {0: 1}
    for opt in size_options:
        sizes = opt if isinstance(opt, (tuple, list)) else (opt,)
        nxt: Dict[int, int] = {}
        for c, ways in state.items():
            for s in sizes:
                for j in range(max(0, s - (universe - c)), min(s, c) + 1):
                    c2 = c + (s - j)
                    nxt[c2] = nxt.get(c2, 0) + ways * math.comb(c, j)
        state = nxt
    return sum(state.values())


def enumerate_lists(vertices: Sequence[int], a: int, policy: ListPolicy) -> Iterator[ListAssignment]:
    """Canonical list assignments for the given vertices under the policy."""
    verts = sorted(vertices)
    sizes = [policy.sizes[v] for v in verts]
    if not verts:
        yield ListAssignment(a, {})
        return
    for masks in enumerate_mask_tuples(sizes, policy.universe, policy.mode()):
        yield ListAssignment(a, {v: _mask_to_set(m) for v, m in zip(verts, masks)})


def count_orbits_naive(sizes: Sequence[int], universe: int) -> int:
    """Orbit count by explicit quotient (tiny cases only): enumerate all raw
    tuples and count distinct orbits under all color permutations."""
    cands = [subset_masks(universe, s) for s in sizes]
    perms = list(itertools.permutations(range(universe)))

    def apply(perm, mask):
        out = 0
        for i in range(universe):
            if (mask >> i) & 1:
                out |= 1 << perm[i]
        return out

    seen = set()
    orbits = 0
    for tup in itertools.product(*cands):
        if tup in seen:
            continue
        orbits += 1
        for perm in perms:
            seen.add(tuple(apply(perm, m) for m in tup))
    return orbits
