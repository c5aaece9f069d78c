"""Compiled inner loop for exhaustive orientation enumeration.

Orientations are visited as a mixed-radix counter over the edges (edge 0 is
the most significant digit, radix r!). For every vertex subset S and every
vertex u outside S the kernel keeps ``cnt[S, u]``, the number of edges whose
prefix lies in S and which hold u after the prefix. S dominates iff
``deficit[S]`` (vertices outside S with a zero count) is 0, and ``zeros[s]``
counts dominating sets of size s, so gamma is the smallest s with
``zeros[s] > 0``. Changing one edge order patches the counts of the supersets
of its old and new prefix only.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_KERNEL_VERTICES = 16


@njit(cache=True, nogil=True)
def _apply(cnt, deficit, zeros, pop, full, pmask, restv, nrest, sign):
    free = full & ~pmask
    sub = free
    while True:
        s = pmask | sub
        for t in range(nrest):
            u = restv[t]
            if (s >> u) & 1:
                continue
            if sign > 0:
                cnt[s, u] += 1
                if cnt[s, u] == 1:
                    deficit[s] -= 1
                    if deficit[s] == 0:
                        zeros[pop[s]] += 1
            else:
                cnt[s, u] -= 1
                if cnt[s, u] == 0:
                    if deficit[s] == 0:
                        zeros[pop[s]] -= 1
                    deficit[s] += 1
        if sub == 0:
            break
        sub = (sub - 1) & free


@njit(cache=True, nogil=True)
def enumerate_range(n, m, radix, pre, restv, nrest, lo, hi):
    """Max gamma over counter indices [lo, hi) for each prefix length slot.

    Returns (best value, smallest counter index attaining it) per slot.
    """
    nk = pre.shape[0]
    size = 1 << n
    full = size - 1
    pop = np.zeros(size, dtype=np.int64)
    for s in range(size):
        c = 0
        x = s
        while x:
            x &= x - 1
            c += 1
        pop[s] = c

    cnt = np.zeros((nk, size, max(n, 1)), dtype=np.int32)
    deficit = np.zeros((nk, size), dtype=np.int32)
    zeros = np.zeros((nk, n + 1), dtype=np.int64)
    for k in range(nk):
        for s in range(size):
            deficit[k, s] = n - pop[s]
        zeros[k, n] = 1

    digits = np.zeros(max(m, 1), dtype=np.int64)
    x = lo
    for e in range(m - 1, -1, -1):
        digits[e] = x % radix
        x //= radix

    for k in range(nk):
        for e in range(m):
            j = digits[e]
            _apply(cnt[k], deficit[k], zeros[k], pop, full, pre[k, e, j],
                   restv[k, e, j], nrest[k], 1)

    best = np.full(nk, -1, dtype=np.int64)
    best_idx = np.full(nk, -1, dtype=np.int64)
    idx = lo
    while idx < hi:
        for k in range(nk):
            g = 0
            while zeros[k, g] == 0:
                g += 1
            if g > best[k]:
                best[k] = g
                best_idx[k] = idx
        idx += 1
        if idx >= hi:
            break
        e = m - 1
        while e >= 0:
            old = digits[e]
            new = old + 1
            if new == radix:
                new = 0
            for k in range(nk):
                _apply(cnt[k], deficit[k], zeros[k], pop, full, pre[k, e, old],
                       restv[k, e, old], nrest[k], -1)
                _apply(cnt[k], deficit[k], zeros[k], pop, full, pre[k, e, new],
                       restv[k, e, new], nrest[k], 1)
            digits[e] = new
            if new != 0:
                break
            e -= 1
    return best, best_idx


def build_tables(edges, r, ps, perms):
    """Prefix masks and post-prefix vertex lists for every (p, edge, order)."""
    m = len(edges)
    radix = len(perms)
    mm = max(m, 1)
    pre = np.zeros((len(ps), mm, radix), dtype=np.int64)
    restv = np.zeros((len(ps), mm, radix, r), dtype=np.int64)
    nrest = np.array([r - p for p in ps], dtype=np.int64)
    for k, p in enumerate(ps):
        for e, edge in enumerate(edges):
            for j, perm in enumerate(perms):
                order = [edge[i] for i in perm]
                mask = 0
                for v in order[:p]:
                    mask |= 1 << v
                pre[k, e, j] = mask
                for t, v in enumerate(order[p:]):
                    restv[k, e, j, t] = v
    return pre, restv, nrest
