"""Exact detection of monochromatic wheels, fixed-length cycles and small
patterns, plus girth / circumference / weak-pancyclicity analyzers.

Fixed-length cycle search walks a ladder per connected piece of the 2-core:

1. ``trivial``: fewer than ``length`` vertices survive degree pruning;
2. ``bipartite-shortcut``: odd ``length`` in a bipartite piece;
3. ``subset-dp``: exact subset DP for pieces of at most 24 vertices;
4. ``pruned-dfs``: exhaustive DFS with distance-to-close pruning.

Every rung is complete, so absence is certified whichever rung answers.
Witnesses are the lexicographically least cycle sequence.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .graph import (
    Bipartition,
    CycleWitness,
    DomainError,
    EdgeColoring,
    Graph,
    WheelWitness,
    bits_of,
    color_class,
    induced_subgraph,
    is_bipartite,
)

METHODS = ("trivial", "bipartite-shortcut", "subset-dp", "pruned-dfs", "exhaustive")
_RANK = {m: i for i, m in enumerate(METHODS)}
EXACT_CIRCUMFERENCE_ORDER = 32
CENTER_BLOCK = 32


def _stronger(a: str, b: str) -> str:
    return a if _RANK[a] >= _RANK[b] else b


def default_threads() -> int:
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# fixed-length cycles


def two_core_components(g: Graph) -> list[list[int]]:
    """Components of the 2-core, each sorted, ordered by least vertex."""
    masks = list(g.masks)
    alive = (1 << g.order) - 1
    stack = [v for v in range(g.order) if masks[v].bit_count() < 2]
    while stack:
        v = stack.pop()
        if not alive >> v & 1:
            continue
        alive &= ~(1 << v)
        for u in bits_of(masks[v] & alive):
            masks[u] &= ~(1 << v)
            if masks[u].bit_count() < 2:
                stack.append(u)
    comps = []
    seen = ~alive
    for root in range(g.order):
        if seen >> root & 1:
            continue
        comp_mask = 1 << root
        frontier = comp_mask
        while frontier:
            nxt = 0
            for u in bits_of(frontier):
                nxt |= masks[u] & alive
            frontier = nxt & ~comp_mask
            comp_mask |= frontier
        seen |= comp_mask
        comps.append(bits_of(comp_mask))
    return comps


class CycleSearch(NamedTuple):
    witness: CycleWitness | None
    method: str
    complete: bool = True


def search_cycle(g: Graph, length: int, budget: int = -1) -> CycleSearch:
    """Run the ladder; ``complete`` is False only if a DFS budget ran out."""
    if length < 3:
        raise DomainError(f"cycle length must be at least 3, got {length}")
    method = "trivial"
    if g.order < length:
        return CycleSearch(None, method)
    best = None
    complete = True
    for comp in two_core_components(g):
        if len(comp) < length:
            continue
        sub, labels = induced_subgraph(g, comp)
        if length % 2 and isinstance(is_bipartite(sub), Bipartition):
            method = _stronger(method, "bipartite-shortcut")
            continue
        if sub.order <= _kernels.DP_MAX_ORDER:
            method = _stronger(method, "subset-dp")
            adj = np.array(sub.masks, dtype=np.int64)
            cyc = _kernels.dp_extract_cycle(_kernels.reach_table(adj, length), adj, length)
        else:
            method = _stronger(method, "pruned-dfs")
            status, cyc = _kernels.dfs_cycle(sub.rows, length, budget)
            if status == _kernels.BUDGET_EXHAUSTED:
                complete = False
                cyc = None
        if cyc:
            mapped = tuple(labels[i] for i in cyc)
            if best is None or mapped < best:
                best = mapped
    return CycleSearch(CycleWitness(best) if best else None, method, complete)


def find_cycle_of_length(g: Graph, length: int) -> CycleWitness | None:
    """Lexicographically least cycle on exactly ``length`` vertices, or None."""
    return search_cycle(g, length).witness


def cycle_spectrum(g: Graph) -> list[int]:
    """Sorted list of every cycle length present in ``g``."""
    lengths: set[int] = set()
    for comp in two_core_components(g):
        sub, _ = induced_subgraph(g, comp)
        if sub.order <= _kernels.DP_MAX_ORDER:
            adj = np.array(sub.masks, dtype=np.int64)
            reach = _kernels.reach_table(adj, sub.order)
            lengths.update(_kernels.dp_cycle_lengths(reach, adj))
        else:
            for length in range(3, sub.order + 1):
                if search_cycle(sub, length).witness is not None:
                    lengths.add(length)
    return sorted(lengths)


def girth(g: Graph) -> float:
    """Shortest cycle length by BFS from every vertex; ``math.inf`` for forests."""
    best = math.inf
    masks = g.masks
    for root in range(g.order):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for u in queue:
            if 2 * dist[u] + 1 >= best:
                break
            for w in bits_of(masks[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def circumference(g: Graph) -> int:
    """Longest cycle length (0 if acyclic). Exact for order <= 32."""
    if g.order > EXACT_CIRCUMFERENCE_ORDER:
        raise DomainError(
            f"exact circumference needs order <= {EXACT_CIRCUMFERENCE_ORDER}; "
            "use circumference_lower_bound for larger graphs"
        )
    best = 0
    for comp in two_core_components(g):
        sub, _ = induced_subgraph(g, comp)
        if sub.order <= _kernels.DP_MAX_ORDER:
            adj = np.array(sub.masks, dtype=np.int64)
            found = _kernels.dp_cycle_lengths(_kernels.reach_table(adj, sub.order), adj)
            best = max(best, max(found, default=0))
            continue
        for length in range(sub.order, max(best, 2), -1):
            if search_cycle(sub, length).witness is not None:
                best = length
                break
    return best


def circumference_lower_bound(g: Graph, budget: int = 1_000_000) -> tuple[int, bool]:
    """Longest cycle found under a per-length DFS node budget.

    Returns ``(length, exact)``; ``exact`` is True only when every longer
    length was ruled out by a complete search.
    """
    best, exact = 0, True
    for comp in two_core_components(g):
        sub, _ = induced_subgraph(g, comp)
        for length in range(sub.order, max(best, 2), -1):
            res = search_cycle(sub, length, budget)
            if res.witness is not None:
                best = length
                break
            if not res.complete:
                exact = False
    return best, exact


class Pancyclicity(NamedTuple):
    weakly_pancyclic: bool
    missing: tuple[int, ...]


def is_weakly_pancyclic(g: Graph) -> Pancyclicity:
    """Whether every length from girth to circumference occurs as a cycle."""
    if g.order > EXACT_CIRCUMFERENCE_ORDER:
        raise DomainError(f"weak pancyclicity is decided for order <= {EXACT_CIRCUMFERENCE_ORDER}")
    spectrum = cycle_spectrum(g)
    if not spectrum:
        return Pancyclicity(True, ())
    present = set(spectrum)
    missing = tuple(x for x in range(spectrum[0], spectrum[-1] + 1) if x not in present)
    return Pancyclicity(not missing, missing)


# --------------------------------------------------------------------------
# wheels


@dataclass(frozen=True)
class ColorResult:
    color: int
    witness: object | None
    census: dict[str, int]
    centers_scanned: int

    @property
    def absent(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class DetectionReport:
    pattern: str
    order: int
    num_colors: int
    results: tuple[ColorResult, ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(r.absent for r in self.results)

    def census(self) -> dict[str, int]:
        total: dict[str, int] = {}
        for r in self.results:
            for k, v in r.census.items():
                total[k] = total.get(k, 0) + v
        return {m: total[m] for m in METHODS if m in total}

    def status_line(self) -> str:
        census = ",".join(f"{k}:{v}" for k, v in self.census().items()) or "none"
        status = "PASS" if self.passed else "FAIL"
        return f"RESULT: {status} pattern={self.pattern} order={self.order} method-census={census}"

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "order": self.order,
            "num_colors": self.num_colors,
            "status": "PASS" if self.passed else "FAIL",
            "colors": [
                {
                    "color": r.color,
                    "absent": r.absent,
                    "witness": _witness_dict(r.witness),
                    "centers_scanned": r.centers_scanned,
                    "census": r.census,
                }
                for r in self.results
            ],
        }

    def to_text(self) -> str:
        """Deterministic rendering; timing is deliberately left out."""
        lines = [f"pattern: {self.pattern}", f"order: {self.order}", f"colors: {self.num_colors}"]
        for r in self.results:
            census = ",".join(f"{k}:{v}" for k, v in r.census.items()) or "none"
            if r.absent:
                lines.append(f"color {r.color}: absent (scanned={r.centers_scanned} census={census})")
            else:
                lines.append(f"color {r.color}: FOUND {_witness_text(r.witness)}")
        lines.append(self.status_line())
        return "\n".join(lines) + "\n"


def _witness_dict(w):
    if w is None:
        return None
    if isinstance(w, WheelWitness):
        return {"color": w.color, "center": w.center, "rim": list(w.rim)}
    return {"vertices": list(w)}


def _witness_text(w) -> str:
    if isinstance(w, WheelWitness):
        return f"center={w.center} rim={'-'.join(map(str, w.rim))}"
    return "vertices=" + "-".join(map(str, w))


def _scan_center(cls: Graph, v: int, rim_len: int) -> tuple[str, tuple[int, ...] | None]:
    nb = cls.masks[v]
    if nb.bit_count() < rim_len:
        return "trivial", None
    sub, labels = induced_subgraph(cls, bits_of(nb))
    res = search_cycle(sub, rim_len)
    if res.witness is None:
        return res.method, None
    return res.method, tuple(labels[i] for i in res.witness.vertices)


def _check_wheel_args(coloring: EdgeColoring, n: int, c: int) -> None:
    if n < 4:
        raise DomainError(f"wheel W_n needs n >= 4, got {n}")
    if not 0 <= c < coloring.num_colors:
        raise DomainError(f"color {c} out of range for {coloring.num_colors} colors")


def scan_wheels(coloring: EdgeColoring, n: int, c: int, threads: int | None = None) -> ColorResult:
    """Scan centers in fixed blocks, stopping after the first block with a hit.

    The block size does not depend on ``threads``, so the scanned prefix,
    census and witness are identical for every worker count.
    """
    _check_wheel_args(coloring, n, c)
    threads = threads or default_threads()
    cls = color_class(coloring, c)
    cls.masks  # warm caches before fanning out
    cls.adjacency
    census: dict[str, int] = {}
    scanned = 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for start in range(0, coloring.order, CENTER_BLOCK):
            centers = range(start, min(start + CENTER_BLOCK, coloring.order))
            if pool is None:
                results = [_scan_center(cls, v, n - 1) for v in centers]
            else:
                results = list(pool.map(lambda v: _scan_center(cls, v, n - 1), centers))
            hit = None
            for v, (method, rim) in zip(centers, results):
                census[method] = census.get(method, 0) + 1
                if rim is not None and hit is None:
                    hit = WheelWitness(c, v, rim)
            scanned += len(centers)
            if hit is not None:
                return ColorResult(c, hit, _ordered(census), scanned)
    finally:
        if pool is not None:
            pool.shutdown()
    return ColorResult(c, None, _ordered(census), scanned)


def _ordered(census: dict[str, int]) -> dict[str, int]:
    return {m: census[m] for m in METHODS if m in census}


def find_mono_wheel(
    coloring: EdgeColoring, n: int, c: int, threads: int | None = None
) -> WheelWitness | None:
    """Monochromatic W_n of color ``c``: lowest center, then least rim."""
    return scan_wheels(coloring, n, c, threads).witness


def verify_wheel_free(
    coloring: EdgeColoring, n: int, colors=None, threads: int | None = None
) -> DetectionReport:
    t0 = time.perf_counter()
    colors = range(coloring.num_colors) if colors is None else colors
    results = tuple(scan_wheels(coloring, n, c, threads) for c in colors)
    return DetectionReport(
        f"wheel({n})", coloring.order, coloring.num_colors, results, time.perf_counter() - t0
    )


# --------------------------------------------------------------------------
# small patterns


def parse_pattern(pattern) -> tuple[str, int]:
    """Normalise 'triangle', 'k4-', 'clique:m' / ('clique', m)."""
    if isinstance(pattern, tuple):
        name, size = pattern
    else:
        name, _, size = str(pattern).lower().partition(":")
        size = int(size) if size else 0
    name = {"k3": "triangle", "diamond": "k4-", "k4minus": "k4-"}.get(name, name)
    if name == "triangle":
        return "triangle", 3
    if name == "k4-":
        return "k4-", 4
    if name == "clique" and size >= 2:
        return "clique", int(size)
    raise DomainError(f"unknown pattern {pattern!r}")


def pattern_label(pattern) -> str:
    name, size = parse_pattern(pattern)
    return f"clique({size})" if name == "clique" else name


def _find_clique(masks, m: int, cand: int, chosen: list[int]):
    if len(chosen) == m:
        return tuple(chosen)
    while cand:
        if cand.bit_count() < m - len(chosen):
            return None
        b = cand & -cand
        v = b.bit_length() - 1
        cand ^= b
        found = _find_clique(masks, m, cand & masks[v], chosen + [v])
        if found:
            return found
    return None


def _find_diamond(masks):
    best = None
    for u in range(len(masks)):
        for v in bits_of(masks[u] & ~((2 << u) - 1)):
            common = bits_of(masks[u] & masks[v])
            if len(common) >= 2:
                quad = tuple(sorted((u, v, common[0], common[1])))
                if best is None or quad < best:
                    best = quad
    return best


def find_mono_pattern(coloring: EdgeColoring, pattern, c: int) -> tuple[int, ...] | None:
    """Vertex set of a color-``c`` copy of ``pattern``, or None.

    Triangles and cliques come back as the lexicographically least vertex
    set; a K4- comes back sorted, least over all diamonds.
    """
    name, size = parse_pattern(pattern)
    if not 0 <= c < coloring.num_colors:
        raise DomainError(f"color {c} out of range for {coloring.num_colors} colors")
    if size > coloring.order:
        raise DomainError(f"pattern on {size} vertices exceeds order {coloring.order}")
    masks = color_class(coloring, c).masks
    if name == "k4-":
        return _find_diamond(masks)
    return _find_clique(masks, size, (1 << coloring.order) - 1, [])


def verify_pattern_free(coloring: EdgeColoring, pattern, colors=None) -> DetectionReport:
    t0 = time.perf_counter()
    colors = range(coloring.num_colors) if colors is None else colors
    results = []
    for c in colors:
        w = find_mono_pattern(coloring, pattern, c)
        results.append(ColorResult(c, w, {"exhaustive": 1}, coloring.order))
    return DetectionReport(
        pattern_label(pattern), coloring.order, coloring.num_colors, tuple(results),
        time.perf_counter() - t0,
    )
