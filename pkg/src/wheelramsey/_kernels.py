"""Hot loops for fixed-length cycle search.

Two exact engines, each with a numba kernel and a fallback:

* subset DP (Held-Karp style) over vertex subsets whose lowest vertex is the
  path start, for graphs of at most ``DP_MAX_ORDER`` vertices;
* depth-first search with distance-to-close pruning and full backtracking on
  multi-word bitset rows, for anything larger.

Both return the lexicographically least cycle sequence, so the two engines
and the two backends are interchangeable bit-for-bit.
"""

import numpy as np

from . import _jit
from ._jit import njit

DP_MAX_ORDER = 24

FOUND = 1
ABSENT = 0
BUDGET_EXHAUSTED = -1


# --------------------------------------------------------------------------
# subset DP: reach[mask] = endpoints v such that a path starts at the lowest
# vertex of mask, visits exactly mask, and ends at v


@njit
def _ctz(x):
    n = 0
    while (x & 1) == 0:
        x >>= 1
        n += 1
    return n


@njit
def _popcount(x):
    n = 0
    while x:
        x &= x - 1
        n += 1
    return n


@njit
def _reach_table_jit(adj, length):
    n = adj.shape[0]
    size = 1 << n
    full = size - 1
    reach = np.zeros(size, np.int32)
    for s in range(n):
        reach[1 << s] = 1 << s
    for mask in range(1, size):
        r = np.int64(reach[mask])
        if r == 0:
            continue
        if _popcount(mask) >= length:
            continue
        low = mask & -mask
        allowed = full & ~mask & ~((low << 1) - 1)
        ext = np.int64(0)
        rr = r
        while rr:
            b = rr & -rr
            ext |= adj[_ctz(b)]
            rr ^= b
        ext &= allowed
        while ext:
            b = ext & -ext
            reach[mask | b] |= b
            ext ^= b
    return reach


def _reach_table_numpy(adj, length):
    n = len(adj)
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pop = np.bitwise_count(masks)
    low = masks & -masks
    bits = np.int64(1) << np.arange(n, dtype=np.int64)
    reach = np.zeros(size, np.int32)
    reach[bits] = bits
    by_pop = np.argsort(pop, kind="stable")
    bounds = np.searchsorted(pop[by_pop], np.arange(n + 2))
    for p in range(1, min(length, n)):
        layer = by_pop[bounds[p]:bounds[p + 1]]
        layer = layer[reach[layer] != 0]
        if layer.size == 0:
            break
        r = reach[layer].astype(np.int64)
        lo = low[layer]
        for w in range(n):
            bit = bits[w]
            sel = ((layer & bit) == 0) & (lo < bit) & ((r & adj[w]) != 0)
            reach[layer[sel] | bit] |= np.int32(bit)
    return reach


def reach_table(adj, length):
    """Subset-DP table for a graph given as int64 neighbour masks."""
    adj = np.ascontiguousarray(adj, dtype=np.int64)
    if len(adj) > DP_MAX_ORDER:
        raise ValueError(f"subset DP limited to {DP_MAX_ORDER} vertices")
    if len(adj) == 0:
        return np.zeros(1, np.int32)
    if _jit.get_backend() == "numba":
        return _reach_table_jit(adj, length)
    return _reach_table_numpy(adj, length)


def _low_index(masks):
    low = masks & -masks
    return np.bitwise_count(low - 1).astype(np.int64)


def closing_masks(reach, adj):
    """Masks (size >= 3) on which some DP path closes back to its start."""
    masks = np.flatnonzero(reach).astype(np.int64)
    masks = masks[np.bitwise_count(masks) >= 3]
    if masks.size == 0:
        return masks
    start = _low_index(masks)
    closes = (reach[masks].astype(np.int64) & adj[start]) != 0
    return masks[closes]


def dp_cycle_lengths(reach, adj):
    return sorted(int(x) for x in np.unique(np.bitwise_count(closing_masks(reach, adj))))


def dp_extract_cycle(reach, adj, length):
    """Lexicographically least cycle of ``length`` vertices, or None.

    A cycle x0 x1 ... x_{l-1} read backwards from x1 is a DP path from x0 that
    ends at x1, so every prefix choice can be checked against the table.
    """
    adj = np.asarray(adj, dtype=np.int64)
    masks = closing_masks(reach, adj)
    masks = masks[np.bitwise_count(masks) == length]
    if masks.size == 0:
        return None
    start = _low_index(masks)
    x0 = int(start.min())
    rest = masks[start == x0]
    cycle = [x0]
    prev = x0
    for _ in range(length - 1):
        cand = reach[rest].astype(np.int64) & adj[prev]
        ok = cand != 0
        rest, cand = rest[ok], cand[ok]
        nxt = int(_low_index(cand).min())
        bit = np.int64(1) << nxt
        keep = (cand & bit) != 0
        rest = rest[keep] & ~bit
        cycle.append(nxt)
        prev = nxt
    return cycle


# --------------------------------------------------------------------------
# pruned DFS on multi-word rows (int64 view of the uint64 bitsets)


@njit
def _dfs_cycle_jit(rows, length, budget):
    n, w = rows.shape
    path = np.zeros(length, np.int64)
    cand = np.zeros((length + 1, w), np.int64)
    visited = np.zeros(w, np.int64)
    allowed = np.zeros(w, np.int64)
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    nodes = 0
    for s in range(n):
        for k in range(w):
            lo = k * 64
            if lo + 64 <= s:
                allowed[k] = 0
            elif lo >= s:
                allowed[k] = -1
            else:
                allowed[k] = -1 << (s - lo)
        deg = 0
        for k in range(w):
            deg += _popcount(rows[s, k] & allowed[k])
        if deg < 2:
            continue
        # distances from s inside the allowed region bound the closing length
        for i in range(n):
            dist[i] = n + 1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(w):
                x = rows[u, k] & allowed[k]
                while x:
                    b = x & -x
                    v = k * 64 + _ctz(b)
                    x ^= b
                    if dist[v] > n:
                        dist[v] = dist[u] + 1
                        queue[tail] = v
                        tail += 1
        for k in range(w):
            visited[k] = 0
        visited[s >> 6] |= np.int64(1) << (s & 63)
        path[0] = s
        depth = 1
        for k in range(w):
            cand[1, k] = rows[s, k] & allowed[k] & ~visited[k]
        while depth >= 1:
            v = -1
            for k in range(w):
                x = cand[depth, k]
                if x:
                    b = x & -x
                    cand[depth, k] = x ^ b
                    v = k * 64 + _ctz(b)
                    break
            if v < 0:
                depth -= 1
                if depth == 0:
                    break
                u = path[depth]
                visited[u >> 6] &= ~(np.int64(1) << (u & 63))
                continue
            nodes += 1
            if budget >= 0 and nodes > budget:
                return BUDGET_EXHAUSTED, path
            if depth + 1 == length:
                if (rows[v, s >> 6] >> (s & 63)) & 1:
                    path[depth] = v
                    return FOUND, path
                continue
            if dist[v] > length - depth:
                continue
            path[depth] = v
            visited[v >> 6] |= np.int64(1) << (v & 63)
            depth += 1
            for k in range(w):
                cand[depth, k] = rows[v, k] & allowed[k] & ~visited[k]
    return ABSENT, path


def _dfs_cycle_python(masks, length, budget):
    n = len(masks)
    full = (1 << n) - 1
    nodes = 0
    for s in range(n):
        allowed = full & ~((1 << s) - 1)
        if (masks[s] & allowed).bit_count() < 2:
            continue
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                x = masks[u] & allowed
                while x:
                    b = x & -x
                    v = b.bit_length() - 1
                    x ^= b
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        far = n + 1
        path = [s]
        visited = 1 << s
        cand = [0, masks[s] & allowed & ~visited]
        depth = 1
        while depth >= 1:
            x = cand[depth]
            if not x:
                cand.pop()
                depth -= 1
                if depth == 0:
                    break
                visited &= ~(1 << path.pop())
                continue
            b = x & -x
            cand[depth] = x ^ b
            v = b.bit_length() - 1
            nodes += 1
            if budget >= 0 and nodes > budget:
                return BUDGET_EXHAUSTED, path
            if depth + 1 == length:
                if masks[v] >> s & 1:
                    return FOUND, path + [v]
                continue
            if dist.get(v, far) > length - depth:
                continue
            path.append(v)
            visited |= b
            depth += 1
            cand.append(masks[v] & allowed & ~visited)
    return ABSENT, []


def dfs_cycle(rows, length, budget=-1):
    """Lexicographically least ``length``-cycle by pruned DFS.

    ``rows`` is the (order, words) uint64 adjacency; returns (status, cycle)
    with status one of FOUND / ABSENT / BUDGET_EXHAUSTED.
    """
    rows = np.ascontiguousarray(rows)
    if _jit.get_backend() == "numba":
        status, path = _dfs_cycle_jit(rows.view(np.int64), length, budget)
        status = int(status)
        return status, [int(v) for v in path] if status == FOUND else []
    masks = [int.from_bytes(r.tobytes(), "little") for r in rows]
    status, path = _dfs_cycle_python(masks, length, budget)
    return status, path if status == FOUND else []
