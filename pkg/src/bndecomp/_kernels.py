"""Hot loops: vertex elimination, ordering scores, and branch-and-bound over
orderings.

Every kernel has a numba variant (``*_jit``) and a pure numpy or Python
variant (``*_numpy``, ``*_python``); the public wrappers dispatch on
``_accel.USE_NUMBA``. Jitted state counts are int64 with saturating overflow
detection; on overflow the wrappers redo the work with Python integers, so
results never depend on the backend.
"""

from __future__ import annotations

import numpy as np

from . import _accel

INT64_LIMIT = (1 << 62)
MASK_BITS = 62

MTNS, MAX_CLIQUE, FILL_IN = 0, 1, 2


# -- elimination ---------------------------------------------------------------

def _eliminate_loops(adj, order):
    n = adj.shape[0]
    filled = adj.copy()
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[order[r]] = r
    size = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    nb = np.empty(n, np.int64)
    nfill = 0
    for r in range(n):
        v = order[r]
        k = 0
        for u in range(n):
            if filled[v, u] != 0 and rank[u] > r:
                nb[k] = u
                k += 1
        size[v] = k + 1
        low = n
        for a in range(k):
            x = nb[a]
            if rank[x] < low:
                low = rank[x]
                parent[v] = x
            for b in range(a + 1, k):
                y = nb[b]
                if filled[x, y] == 0:
                    filled[x, y] = 1
                    filled[y, x] = 1
                    nfill += 1
    # C_p is non-maximal iff some child u has |C_u| = |C_p| + 1
    maximal = np.ones(n, np.bool_)
    for u in range(n):
        p = parent[u]
        if p >= 0 and size[u] == size[p] + 1:
            maximal[p] = False
    return filled, size, maximal, nfill


_eliminate_jit = _accel.njit(_eliminate_loops)


def _eliminate_numpy(adj, order):
    n = adj.shape[0]
    filled = adj.astype(bool)
    rank = np.empty(n, np.int64)
    rank[order] = np.arange(n)
    alive = np.ones(n, bool)
    size = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    nfill = 0
    for v in order:
        alive[v] = False
        nb = np.flatnonzero(filled[v] & alive)
        size[v] = nb.size + 1
        if nb.size:
            parent[v] = nb[np.argmin(rank[nb])]
            block = np.ix_(nb, nb)
            nfill += (int(np.count_nonzero(~filled[block])) - nb.size) // 2
            filled[block] = True
            filled[nb, nb] = False
    maximal = np.ones(n, bool)
    child = np.flatnonzero(parent >= 0)
    hit = size[child] == size[parent[child]] + 1
    maximal[parent[child[hit]]] = False
    return filled.astype(np.uint8), size, maximal, nfill


def eliminate(adj: np.ndarray, order: np.ndarray):
    """Eliminate nodes in ``order`` (node indices by rank).

    Returns ``(filled, clique_size, maximal, n_fill)``: the elimination graph
    adjacency, the size of each elimination clique ``{v} + higher neighbours``,
    whether that clique is maximal, and the number of fill edges.
    """
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    order = np.ascontiguousarray(order, dtype=np.int64)
    if _accel.USE_NUMBA:
        return _eliminate_jit(adj, order)
    return _eliminate_numpy(adj, order)


# -- scoring -------------------------------------------------------------------

def _score_loops(adj, order, arity, limit):
    filled, size, maximal, nfill = _eliminate_jit(adj, order)
    n = adj.shape[0]
    rank = np.empty(n, np.int64)
    for r in range(n):
        rank[order[r]] = r
    total = 0
    biggest = 0
    overflow = False
    for v in range(n):
        if not maximal[v]:
            continue
        states = arity[v]
        for u in range(n):
            if filled[v, u] != 0 and rank[u] > rank[v]:
                if states > limit // arity[u]:
                    overflow = True
                    states = limit
                else:
                    states *= arity[u]
        if states > biggest:
            biggest = states
        if total > limit - states:
            overflow = True
            total = limit
        else:
            total += states
    return total, biggest, nfill, overflow


_score_jit = _accel.njit(_score_loops)


def _score_numpy(adj, order, arity):
    filled, size, maximal, nfill = _eliminate_numpy(adj, order)
    rank = np.empty(len(order), np.int64)
    rank[order] = np.arange(len(order))
    ar = [int(a) for a in arity]
    total = 0
    biggest = 0
    for v in np.flatnonzero(maximal):
        members = np.flatnonzero(filled[v].astype(bool) & (rank > rank[v]))
        states = ar[v]
        for u in members:
            states *= ar[u]
        total += states
        biggest = max(biggest, states)
    return total, biggest, int(nfill)


def score(adj: np.ndarray, order: np.ndarray, arity: np.ndarray) -> tuple[int, int, int]:
    """``(mtns, max_clique_states, n_fill)`` for one ordering, exact."""
    order = np.ascontiguousarray(order, dtype=np.int64)
    if _accel.USE_NUMBA:
        total, biggest, nfill, overflow = _score_jit(adj, order, arity, INT64_LIMIT)
        if not overflow:
            return int(total), int(biggest), int(nfill)
    return _score_numpy(adj, order, arity)


# -- branch and bound ------------------------------------------------------------

def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


_popcount_jit = _accel.njit(_popcount)


def _bb_loops(masks, arity, criterion, limit):
    """Depth-first search over elimination prefixes in node-index order.

    A prefix is pruned when its (criterion, mtns) lower bound is already no
    better than the incumbent; leaves replace the incumbent only on strict
    improvement, so the first optimal ordering in lexicographic order wins.
    Only elimination cliques known to be maximal are charged, which keeps the
    bound admissible.
    """
    n = masks.shape[0]
    work = np.zeros((n + 1, n), np.int64)
    for i in range(n):
        work[0, i] = masks[i]
    alive = np.zeros(n + 1, np.int64)
    alive[0] = (np.int64(1) << n) - 1
    prim = np.zeros(n + 1, np.int64)
    sec = np.zeros(n + 1, np.int64)
    nxt = np.zeros(n + 1, np.int64)
    cliques = np.zeros(n + 1, np.int64)
    order = np.zeros(n, np.int64)
    best = np.arange(n)
    best_p = np.int64(-1)
    best_s = np.int64(-1)
    overflow = False
    depth = 0
    while depth >= 0:
        if depth == n:
            p, s = prim[n], sec[n]
            if best_p < 0 or p < best_p or (p == best_p and s < best_s):
                best_p, best_s = p, s
                best[:] = order
            depth -= 1
            continue
        v = nxt[depth]
        while v < n and ((alive[depth] >> v) & 1) == 0:
            v += 1
        if v >= n:
            depth -= 1
            continue
        nxt[depth] = v + 1
        bit = np.int64(1) << v
        nb = work[depth, v] & alive[depth] & ~bit
        cl = nb | bit
        is_max = True
        for k in range(depth):
            if (cl & ~cliques[k]) == 0:
                is_max = False
                break
        cost = np.int64(0)
        if is_max:
            cost = np.int64(1)
            for u in range(n):
                if (cl >> u) & 1:
                    if cost > limit // arity[u]:
                        overflow = True
                        cost = limit
                    else:
                        cost *= arity[u]
        nf = 0
        for u in range(n):
            if (nb >> u) & 1:
                nf += _popcount_jit(nb & ~work[depth, u] & ~(np.int64(1) << u))
        nf //= 2
        if sec[depth] > limit - cost:
            overflow = True
            s = limit
        else:
            s = sec[depth] + cost
        if criterion == 0:
            p = s
        elif criterion == 1:
            p = max(prim[depth], cost)
        else:
            p = prim[depth] + nf
        if best_p >= 0 and (p > best_p or (p == best_p and s >= best_s)):
            continue
        order[depth] = v
        cliques[depth] = cl
        for u in range(n):
            w = work[depth, u]
            if (nb >> u) & 1:
                w |= nb & ~(np.int64(1) << u)
            work[depth + 1, u] = w
        alive[depth + 1] = alive[depth] & ~bit
        prim[depth + 1] = p
        sec[depth + 1] = s
        nxt[depth + 1] = 0
        depth += 1
    return best, best_p, best_s, overflow


_bb_jit = _accel.njit(_bb_loops)


def _bb_python(masks, arity, criterion):
    """Recursive twin of ``_bb_loops`` on unbounded Python integers."""
    n = len(masks)
    arity = [int(a) for a in arity]
    best: list = [None, None, None]  # primary, secondary, order
    order: list[int] = []
    cliques: list[int] = []

    def rec(work, alive, p0, s0):
        if not alive:
            if best[0] is None or (p0, s0) < (best[0], best[1]):
                best[:] = [p0, s0, list(order)]
            return
        for v in range(n):
            bit = 1 << v
            if not alive & bit:
                continue
            nb = work[v] & alive & ~bit
            cl = nb | bit
            cost = 0
            if not any(cl & ~c == 0 for c in cliques):
                cost = 1
                for u in range(n):
                    if cl >> u & 1:
                        cost *= arity[u]
            nf = sum(bin(nb & ~work[u] & ~(1 << u)).count("1")
                     for u in range(n) if nb >> u & 1) // 2
            s = s0 + cost
            if criterion == MTNS:
                p = s
            elif criterion == MAX_CLIQUE:
                p = max(p0, cost)
            else:
                p = p0 + nf
            if best[0] is not None and (p, s) >= (best[0], best[1]):
                continue
            new = list(work)
            for u in range(n):
                if nb >> u & 1:
                    new[u] |= nb & ~(1 << u)
            order.append(v)
            cliques.append(cl)
            rec(new, alive & ~bit, p, s)
            order.pop()
            cliques.pop()

    rec(list(masks), (1 << n) - 1, 0, 0)
    return best[2], best[0], best[1]


def branch_and_bound(masks: list[int], arity, criterion: int):
    """Optimal ordering (node indices by rank) with its (criterion, mtns)."""
    n = len(masks)
    if n == 0:
        return [], 0, 0
    if _accel.USE_NUMBA and n <= MASK_BITS:
        order, p, s, overflow = _bb_jit(np.asarray(masks, np.int64),
                                        np.asarray(arity, np.int64),
                                        criterion, INT64_LIMIT)
        if not overflow:
            return [int(i) for i in order], int(p), int(s)
    return _bb_python(masks, arity, criterion)
