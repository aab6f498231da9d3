"""Bitmask search kernels.

Instances are lowered to ``int64`` color masks (at most 63 distinct colors)
and adjacency bitmasks (at most 63 vertices).  The same source functions are
compiled with numba when available and also kept as plain-Python/numpy
fallbacks; ``FRACCOL_KERNEL`` selects the backend:

* ``auto`` (default) - numba when importable, else pure;
* ``numba``          - require numba, fail otherwise;
* ``py``             - force the pure path.

The two backends execute identical code, so results are bit-for-bit equal;
``benchmarks/bench_solver.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - environment-dependent
    HAS_NUMBA = False

    def _njit(*a, **k):  # type: ignore[misc]
        def deco(f):
            return f

        return deco


_MODE = os.environ.get("FRACCOL_KERNEL", "auto").strip().lower()
if _MODE not in ("auto", "numba", "py"):
    raise RuntimeError(f"FRACCOL_KERNEL must be auto|numba|py, got {_MODE!r}")
if _MODE == "numba" and not HAS_NUMBA:
    raise RuntimeError("FRACCOL_KERNEL=numba but numba is not importable")

USE_NUMBA = HAS_NUMBA and _MODE != "py"

KERNEL_MAX_VERTICES = 63
KERNEL_MAX_COLORS = 63

SAT = 1
UNSAT = 0
CAPPED = -1


def active_backend() -> str:
    return "numba" if USE_NUMBA else "py"


def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def _lowest_k(mask, k):
    out = mask & 0
    for _ in range(k):
        b = mask & -mask
        out |= b
        mask ^= b
    return out


def _first_combination(comb, k):
    for i in range(k):
        comb[i] = i


def _next_combination(comb, t, k):
    # next k-subset of {0..t-1} as ascending indices; returns 0 when exhausted
    i = k - 1
    while i >= 0 and comb[i] == t - k + i:
        i -= 1
    if i < 0:
        return 0
    comb[i] += 1
    for j in range(i + 1, k):
        comb[j] = comb[j - 1] + 1
    return 1


def _solve_core(n, a, adj, masks, fixed, out, node_cap):
    # Returns SAT/UNSAT/CAPPED.  Deterministic: dynamic most-constrained
    # vertex (ties to the lowest index), candidate a-subsets of the residual
    # list in increasing mask order (lowest colors first).
    assigned = np.zeros(n, np.int64)
    forb = np.zeros(n, np.int64)
    is_set = np.zeros(n, np.uint8)
    free_total = n
    for v in range(n):
        if fixed[v] != 0:
            if _popcount(fixed[v]) != a or (fixed[v] & ~masks[v]) != 0:
                return UNSAT
            assigned[v] = fixed[v]
            is_set[v] = 1
            free_total -= 1
    for v in range(n):
        if is_set[v]:
            for u in range(n):
                if (adj[v] >> u) & 1:
                    if is_set[u] and (assigned[u] & assigned[v]) != 0:
                        return UNSAT
                    forb[u] |= assigned[v]
    if free_total == 0:
        for v in range(n):
            out[v] = assigned[v]
        return SAT

    chosen = np.empty(n, np.int64)
    pos = np.empty((n, 64), np.int64)
    tcount = np.empty(n, np.int64)
    comb = np.empty((n, a), np.int64)
    nodes = 0
    depth = 0
    # modes: 0 descend, 1 try current combination, 2 advance, 3 fail
    mode = 0
    while True:
        if mode == 0:
            best_v = -1
            best_c = 64 + 1
            for v in range(n):
                if is_set[v] == 0:
                    c = _popcount(masks[v] & ~forb[v])
                    if c < best_c:
                        best_c = c
                        best_v = v
            if best_v == -1:
                for v in range(n):
                    out[v] = assigned[v]
                return SAT
            if best_c < a:
                mode = 3
                continue
            resid = masks[best_v] & ~forb[best_v]
            t = 0
            for b in range(64):
                if (resid >> b) & 1:
                    pos[depth, t] = b
                    t += 1
            chosen[depth] = best_v
            tcount[depth] = t
            _first_combination(comb[depth], a)
            mode = 1
        elif mode == 1:
            nodes += 1
            if node_cap > 0 and nodes > node_cap:
                return CAPPED
            v = chosen[depth]
            m = np.int64(0)
            for i in range(a):
                m |= np.int64(1) << pos[depth, comb[depth, i]]
            assigned[v] = m
            is_set[v] = 1
            ok = 1
            for u in range(n):
                if (adj[v] >> u) & 1:
                    forb[u] |= m
                    if is_set[u] == 0 and _popcount(masks[u] & ~forb[u]) < a:
                        ok = 0
            if ok:
                depth += 1
                mode = 0
            else:
                is_set[v] = 0
                assigned[v] = 0
                for u in range(n):
                    if (adj[v] >> u) & 1:
                        f = np.int64(0)
                        for w in range(n):
                            if ((adj[u] >> w) & 1) and is_set[w]:
                                f |= assigned[w]
                        forb[u] = f
                mode = 2
        elif mode == 2:
            if _next_combination(comb[depth], tcount[depth], a):
                mode = 1
            else:
                mode = 3
        else:  # fail: give up on this depth, undo the parent and advance it
            depth -= 1
            if depth < 0:
                return UNSAT
            v = chosen[depth]
            is_set[v] = 0
            assigned[v] = 0
            for u in range(n):
                if (adj[v] >> u) & 1:
                    f = np.int64(0)
                    for w in range(n):
                        if ((adj[u] >> w) & 1) and is_set[w]:
                            f |= assigned[w]
                    forb[u] = f
            mode = 2


def _check_leaf(n, a, adj, cur, w, ctype, cu, cx, cy, plen, pverts, node_cap, fixed, out, ppos, pt, pcomb, pmask):
    # Conclusion check for one full list assignment `cur`.  plen == -1: the
    # instance must be solvable outright.  plen >= 0: every coloring of the
    # marked path whose first set avoids the derived color set must extend.
    # Returns 0 ok / 1 violation (pmask holds the failing path coloring) /
    # 2 inconclusive (node cap hit).
    for i in range(3):
        pmask[i] = 0
    if plen < 0:
        for v in range(n):
            fixed[v] = 0
        st = _solve_core(n, a, adj, cur, fixed, out, node_cap)
        if st == CAPPED:
            return 2
        return 0 if st == SAT else 1
    cset = np.int64(0)
    if ctype[w] == 1:
        cset = cur[cu[w]]
    elif ctype[w] == 2:
        cp = _lowest_k(cur[cy[w]] & ~cur[cu[w]], a)
        cset = _lowest_k(cur[cx[w]] & ~cp, a)
    lvl = 0
    base0 = cur[pverts[0]] & ~cset
    t = 0
    for b in range(64):
        if (base0 >> b) & 1:
            ppos[0, t] = b
            t += 1
    pt[0] = t
    if t < a:
        return 0  # no eligible precoloring: vacuous
    _first_combination(pcomb[0], a)
    bad = 0
    fresh = 0
    while lvl >= 0:
        if fresh == 0:
            m = np.int64(0)
            for i in range(a):
                m |= np.int64(1) << ppos[lvl, pcomb[lvl, i]]
            pmask[lvl] = m
            if lvl < plen:
                lvl += 1
                basel = cur[pverts[lvl]] & ~pmask[lvl - 1]
                t = 0
                for b in range(64):
                    if (basel >> b) & 1:
                        ppos[lvl, t] = b
                        t += 1
                pt[lvl] = t
                if t < a:
                    fresh = 1
                    lvl -= 1
                else:
                    _first_combination(pcomb[lvl], a)
            else:
                for v in range(n):
                    fixed[v] = 0
                for i in range(plen + 1):
                    fixed[pverts[i]] = pmask[i]
                st = _solve_core(n, a, adj, cur, fixed, out, node_cap)
                if st == CAPPED:
                    return 2
                if st != SAT:
                    bad = 1
                    break
                fresh = 1
        else:
            if _next_combination(pcomb[lvl], pt[lvl], a):
                fresh = 0
            else:
                lvl -= 1
    return bad


def _enum_core(
    n,
    a,
    adj,
    cand_flat,
    cand_ptr,
    two_a,
    flex_idx,
    valid,
    ctype,
    cu,
    cx,
    cy,
    plen,
    pverts,
    firstuse,
    perm_tab,
    nperms,
    permwidth,
    stride,
    viol_out,
    viol_cap,
    node_cap,
    counts,
):
    # DFS over per-vertex candidate list masks in vertex order 0..n-1.
    # With firstuse=1 only assignments fixed under first-use color relabeling
    # are visited (at least one per color-permutation orbit).  With nperms>0
    # a leaf survives only if it is the lexicographic minimum of its orbit.
    # Every surviving valid leaf (subsampled by `stride`) has its conclusion
    # checked.  counts: [leaves, eligible, checked, violations, capped]
    cur = np.zeros(n, np.int64)
    idx = np.zeros(n, np.int64)
    cused = np.zeros(n + 1, np.int64)
    fixed = np.zeros(n, np.int64)
    out = np.zeros(n, np.int64)
    ppos = np.empty((3, 64), np.int64)
    pt = np.empty(3, np.int64)
    pcomb = np.empty((3, a), np.int64)
    pmask = np.empty(3, np.int64)
    nviol = 0
    depth = 0
    idx[0] = cand_ptr[0]
    while depth >= 0:
        if depth == n:
            counts[0] += 1
            keep = 1
            if nperms > 0:
                for p in range(nperms):
                    base = p * permwidth
                    for v in range(n):
                        pmv = perm_tab[base + cur[v]]
                        if pmv < cur[v]:
                            keep = 0
                            break
                        if pmv > cur[v]:
                            break
                    if keep == 0:
                        break
            if keep:
                w = 0
                for v in range(n):
                    if flex_idx[v] >= 0 and _popcount(cur[v]) == two_a:
                        w |= 1 << flex_idx[v]
                if valid[w]:
                    counts[1] += 1
                    if stride <= 1 or (counts[1] - 1) % stride == 0:
                        counts[2] += 1
                        bad = _check_leaf(
                            n, a, adj, cur, w, ctype, cu, cx, cy, plen, pverts,
                            node_cap, fixed, out, ppos, pt, pcomb, pmask,
                        )
                        if bad == 2:
                            counts[4] += 1
                        elif bad == 1:
                            counts[3] += 1
                            if nviol < viol_cap:
                                for v in range(n):
                                    viol_out[nviol, v] = cur[v]
                                for i in range(3):
                                    viol_out[nviol, n + i] = pmask[i]
                                viol_out[nviol, n + 3] = w
                                nviol += 1
            depth -= 1
            continue
        advanced = 0
        while idx[depth] < cand_ptr[depth + 1]:
            m = cand_flat[idx[depth]]
            idx[depth] += 1
            if firstuse:
                c = cused[depth]
                new = m & ~((np.int64(1) << c) - 1)
                if new != 0:
                    k = _popcount(new)
                    run = ((np.int64(1) << (c + k)) - 1) ^ ((np.int64(1) << c) - 1)
                    if new != run:
                        continue
                    cused[depth + 1] = c + k
                else:
                    cused[depth + 1] = c
            cur[depth] = m
            depth += 1
            if depth < n:
                idx[depth] = cand_ptr[depth]
            advanced = 1
            break
        if not advanced:
            depth -= 1
    return nviol


def _batch_core(
    n,
    a,
    adj,
    rows,
    two_a,
    flex_idx,
    valid,
    ctype,
    cu,
    cx,
    cy,
    plen,
    pverts,
    viol_out,
    viol_cap,
    node_cap,
    counts,
):
    # Conclusion check over pre-drawn list assignments (one per row).
    fixed = np.zeros(n, np.int64)
    out = np.zeros(n, np.int64)
    ppos = np.empty((3, 64), np.int64)
    pt = np.empty(3, np.int64)
    pcomb = np.empty((3, a), np.int64)
    pmask = np.empty(3, np.int64)
    nviol = 0
    for r in range(rows.shape[0]):
        cur = rows[r]
        w = 0
        for v in range(n):
            if flex_idx[v] >= 0 and _popcount(cur[v]) == two_a:
                w |= 1 << flex_idx[v]
        if not valid[w]:
            continue
        counts[1] += 1
        counts[2] += 1
        bad = _check_leaf(
            n, a, adj, cur, w, ctype, cu, cx, cy, plen, pverts,
            node_cap, fixed, out, ppos, pt, pcomb, pmask,
        )
        if bad == 2:
            counts[4] += 1
        elif bad == 1:
            counts[3] += 1
            if nviol < viol_cap:
                for v in range(n):
                    viol_out[nviol, v] = cur[v]
                for i in range(3):
                    viol_out[nviol, n + i] = pmask[i]
                viol_out[nviol, n + 3] = w
                nviol += 1
    return nviol


if USE_NUMBA:
    _popcount = _njit(cache=True, nogil=True)(_popcount)
    _lowest_k = _njit(cache=True, nogil=True)(_lowest_k)
    _first_combination = _njit(cache=True, nogil=True)(_first_combination)
    _next_combination = _njit(cache=True, nogil=True)(_next_combination)
    _solve_core = _njit(cache=True, nogil=True)(_solve_core)
    _check_leaf = _njit(cache=True, nogil=True)(_check_leaf)
    _enum_core = _njit(cache=True, nogil=True)(_enum_core)
    _batch_core = _njit(cache=True, nogil=True)(_batch_core)


def solve_masks(n: int, a: int, adj: np.ndarray, masks: np.ndarray, fixed: np.ndarray, node_cap: int = 0):
    """Run the solve kernel; returns (status, assignment array)."""
    out = np.zeros(n, np.int64)
    st = _solve_core(
        np.int64(n), np.int64(a), adj, masks, fixed, out, np.int64(node_cap)
    )
    return int(st), out


def enum_and_check(
    n: int,
    a: int,
    adj: np.ndarray,
    cand_flat: np.ndarray,
    cand_ptr: np.ndarray,
    two_a: int,
    flex_idx: np.ndarray,
    valid: np.ndarray,
    ctype: np.ndarray,
    cu: np.ndarray,
    cx: np.ndarray,
    cy: np.ndarray,
    plen: int,
    pverts: np.ndarray,
    firstuse: bool,
    perm_tab: np.ndarray | None,
    permwidth: int,
    stride: int = 1,
    viol_cap: int = 16,
    node_cap: int = 0,
):
    """Enumerate canonical list assignments and check the conclusion on each.

    Returns ``(counts, violations)`` where counts = (leaves, valid, checked,
    violations) and violations rows are ``n`` list masks, 3 path-coloring
    masks and the flexible-size pattern bits.
    """
    if perm_tab is None:
        perm_tab = np.zeros(0, np.int64)
        nperms = 0
        permwidth = 1
    else:
        nperms = len(perm_tab) // permwidth
    viol_out = np.zeros((viol_cap, n + 4), np.int64)
    counts = np.zeros(5, np.int64)
    nv = _enum_core(
        np.int64(n),
        np.int64(a),
        adj,
        cand_flat,
        cand_ptr,
        np.int64(two_a),
        flex_idx,
        valid,
        ctype,
        cu,
        cx,
        cy,
        np.int64(plen),
        pverts,
        np.uint8(1 if firstuse else 0),
        perm_tab,
        np.int64(nperms),
        np.int64(permwidth),
        np.int64(stride),
        viol_out,
        np.int64(viol_out.shape[0]),
        np.int64(node_cap),
        counts,
    )
    return tuple(int(x) for x in counts), viol_out[: int(nv)]


def batch_check(
    n: int,
    a: int,
    adj: np.ndarray,
    rows: np.ndarray,
    two_a: int,
    flex_idx: np.ndarray,
    valid: np.ndarray,
    ctype: np.ndarray,
    cu: np.ndarray,
    cx: np.ndarray,
    cy: np.ndarray,
    plen: int,
    pverts: np.ndarray,
    viol_cap: int = 16,
    node_cap: int = 0,
):
    """Check the conclusion over pre-drawn list assignments (sampling mode)."""
    viol_out = np.zeros((viol_cap, n + 4), np.int64)
    counts = np.zeros(5, np.int64)
    counts[0] = rows.shape[0]
    nv = _batch_core(
        np.int64(n),
        np.int64(a),
        adj,
        rows,
        np.int64(two_a),
        flex_idx,
        valid,
        ctype,
        cu,
        cx,
        cy,
        np.int64(plen),
        pverts,
        viol_out,
        np.int64(viol_out.shape[0]),
        np.int64(node_cap),
        counts,
    )
    return tuple(int(x) for x in counts), viol_out[: int(nv)]
