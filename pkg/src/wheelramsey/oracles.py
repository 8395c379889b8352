"""Brute-force enumerators used to audit the detectors.

Nothing here shares code with the detection ladder: graphs are read through
their boolean adjacency matrix and searched with plain itertools / DFS.
Inputs are capped at ``MAX_ORACLE_ORDER`` vertices.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations

import numpy as np

from .graph import DomainError, EdgeColoring, Graph

MAX_ORACLE_ORDER = 12
MAX_ENUMERATION_ORDER = 6


def _check_cap(order: int, cap: int = MAX_ORACLE_ORDER) -> None:
    if order > cap:
        raise DomainError(f"oracle refuses order {order} (cap {cap})")


def _adjacency_lists(g: Graph) -> list[list[int]]:
    adj = g.adjacency
    return [np.flatnonzero(adj[v]).tolist() for v in range(g.order)]


def cycle_census(g: Graph) -> Counter:
    """Number of distinct cycles of each length, by full enumeration.

    Each cycle is counted once: it starts at its least vertex and its second
    vertex is smaller than its last.
    """
    _check_cap(g.order)
    nbrs = _adjacency_lists(g)
    adj = g.adjacency
    census: Counter = Counter()

    def extend(path, on_path):
        start, last = path[0], path[-1]
        for v in nbrs[last]:
            if v <= start or v in on_path:
                continue
            path.append(v)
            on_path.add(v)
            if len(path) >= 3 and adj[v, start] and path[1] < v:
                census[len(path)] += 1
            extend(path, on_path)
            path.pop()
            on_path.discard(v)

    for s in range(g.order):
        extend([s], {s})
    return census


def has_cycle(g: Graph, length: int) -> bool:
    """Whether a cycle on exactly ``length`` vertices exists (plain DFS)."""
    _check_cap(g.order)
    nbrs = _adjacency_lists(g)
    adj = g.adjacency

    def extend(path, on_path):
        start, last = path[0], path[-1]
        if len(path) == length:
            return bool(adj[last, start])
        for v in nbrs[last]:
            if v > start and v not in on_path:
                path.append(v)
                on_path.add(v)
                if extend(path, on_path):
                    return True
                path.pop()
                on_path.discard(v)
        return False

    return any(extend([s], {s}) for s in range(g.order))


def cycle_lengths(g: Graph) -> set[int]:
    return set(cycle_census(g))


def _is_cycle_sequence(m, seq, c) -> bool:
    return all(m[seq[i], seq[(i + 1) % len(seq)]] == c for i in range(len(seq)))


def wheel_count(coloring: EdgeColoring, n: int, c: int, stop_at: int | None = None) -> int:
    """Count color-``c`` copies of W_n as (center, rim cycle) pairs.

    Tries every center, every (n-1)-subset of the other vertices and every
    cyclic order of it (first vertex fixed, one of each reflection pair).
    """
    _check_cap(coloring.order, 10)
    m = coloring.matrix
    count = 0
    for center in range(coloring.order):
        others = [v for v in range(coloring.order) if v != center]
        for rim in combinations(others, n - 1):
            if any(m[center, v] != c for v in rim):
                continue
            first, rest = rim[0], rim[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue
                if _is_cycle_sequence(m, (first,) + perm, c):
                    count += 1
                    if stop_at is not None and count >= stop_at:
                        return count
    return count


def has_wheel(coloring: EdgeColoring, n: int, c: int) -> bool:
    return wheel_count(coloring, n, c, stop_at=1) > 0


def _pattern_edges_needed(name: str, size: int) -> int:
    full = size * (size - 1) // 2
    return full - 1 if name == "k4-" else full


def pattern_count(coloring: EdgeColoring, name: str, size: int, c: int) -> int:
    """Vertex subsets of ``size`` whose color-``c`` edges contain the pattern.

    ``name`` is 'triangle', 'k4-' or 'clique'.
    """
    _check_cap(coloring.order)
    m = coloring.matrix
    need = _pattern_edges_needed(name, size)
    count = 0
    for subset in combinations(range(coloring.order), size):
        edges = sum(1 for u, v in combinations(subset, 2) if m[u, v] == c)
        if edges >= need:
            count += 1
    return count


def colorings_without_mono_triangle(order: int) -> int:
    """Count 2-colorings of K_order with no monochromatic triangle.

    Enumerates all 2^(order choose 2) colorings at once as bit patterns.
    """
    if order > MAX_ENUMERATION_ORDER:
        raise DomainError(f"exhaustive coloring scan refuses order {order}")
    pairs = list(combinations(range(order), 2))
    index = {p: i for i, p in enumerate(pairs)}
    codes = np.arange(1 << len(pairs), dtype=np.int64)
    bad = np.zeros(codes.size, dtype=bool)
    for a, b, c in combinations(range(order), 3):
        e1 = (codes >> index[(a, b)]) & 1
        e2 = (codes >> index[(a, c)]) & 1
        e3 = (codes >> index[(b, c)]) & 1
        bad |= (e1 == e2) & (e2 == e3)
    return int(np.count_nonzero(~bad))
