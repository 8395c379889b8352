"""Graphs on dense labels 0..N-1 and edge colorings of complete graphs.

Adjacency is stored as bit-packed rows: an ``(order, words)`` uint64 array
with bit ``v % 64`` of word ``v // 64`` in row ``u`` set iff ``uv`` is an
edge. Orders up to 64 use a single word per row.

Colorings keep one small integer per unordered pair, laid out in pair-rank
order ``(0,1), (0,2), ..., (0,N-1), (1,2), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 4096


class DomainError(ValueError):
    """Argument outside the domain an operation is defined on."""


def _words(order: int) -> int:
    return max(1, (order + 63) // 64)


def pack_rows(matrix: np.ndarray) -> np.ndarray:
    """Pack a square boolean matrix into uint64 rows (little-endian bits)."""
    order = matrix.shape[0]
    words = _words(order)
    padded = np.zeros((order, words * 64), dtype=bool)
    padded[:, :order] = matrix
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(order, words)


def _check_order(order: int) -> None:
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"order must be in [0, {MAX_ORDER}], got {order}")


def _check_vertex(order: int, v: int) -> None:
    if not 0 <= v < order:
        raise DomainError(f"vertex {v} out of range for order {order}")


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph with bit-packed adjacency rows."""

    rows: np.ndarray

    def __post_init__(self):
        rows = np.ascontiguousarray(self.rows, dtype=np.uint64)
        if rows.ndim != 2 or rows.shape[1] != _words(rows.shape[0]):
            raise DomainError(f"bad row array shape {rows.shape}")
        _check_order(rows.shape[0])
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    # construction

    @classmethod
    def from_adjacency(cls, matrix) -> Graph:
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("adjacency matrix must be square")
        if np.any(np.diag(m)):
            raise DomainError("loops are not allowed")
        if not np.array_equal(m, m.T):
            raise DomainError("adjacency matrix must be symmetric")
        return cls(pack_rows(m))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> Graph:
        _check_order(order)
        m = np.zeros((order, order), dtype=bool)
        for u, v in edges:
            _check_vertex(order, u)
            _check_vertex(order, v)
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            m[u, v] = m[v, u] = True
        return cls(pack_rows(m))

    @classmethod
    def empty(cls, order: int) -> Graph:
        _check_order(order)
        return cls(np.zeros((order, _words(order)), dtype=np.uint64))

    @classmethod
    def complete(cls, order: int) -> Graph:
        _check_order(order)
        return cls.from_adjacency(~np.eye(order, dtype=bool))

    @classmethod
    def cycle(cls, order: int) -> Graph:
        if order < 3:
            raise DomainError("a cycle needs at least 3 vertices")
        return cls.from_edges(order, [(i, (i + 1) % order) for i in range(order)])

    @classmethod
    def complete_multipartite(cls, *sizes: int) -> Graph:
        part = np.repeat(np.arange(len(sizes)), sizes)
        return cls.from_adjacency(part[:, None] != part[None, :])

    # queries

    @property
    def order(self) -> int:
        return self.rows.shape[0]

    @cached_property
    def adjacency(self) -> np.ndarray:
        order = self.order
        bits = np.unpackbits(self.rows.astype("<u8").view(np.uint8), axis=1, bitorder="little")
        m = np.ascontiguousarray(bits[:, :order].astype(bool))
        m.setflags(write=False)
        return m

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Each row as a Python int bitset."""
        return tuple(int.from_bytes(r.tobytes(), "little") for r in self.rows.astype("<u8"))

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self.order, u)
        _check_vertex(self.order, v)
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        _check_vertex(self.order, v)
        return self.masks[v].bit_count()

    def degrees(self) -> np.ndarray:
        return np.bitwise_count(self.rows).sum(axis=1).astype(np.int64)

    def min_degree(self) -> int:
        return int(self.degrees().min()) if self.order else 0

    def num_edges(self) -> int:
        return int(self.degrees().sum()) // 2

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def complement(self) -> Graph:
        m = ~self.adjacency
        np.fill_diagonal(m, False)
        return Graph.from_adjacency(m)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash((self.order, self.rows.tobytes()))

    def __repr__(self):
        return f"Graph(order={self.order}, edges={self.num_edges()})"


def pair_rank(order: int, u: int, v: int) -> int:
    """Index of the pair {u, v} in pair-rank order."""
    if u > v:
        u, v = v, u
    return u * (2 * order - u - 1) // 2 + (v - u - 1)


def num_pairs(order: int) -> int:
    return order * (order - 1) // 2


@dataclass(frozen=True, eq=False)
class EdgeColoring:
    """Edge coloring of K_order with colors 0..num_colors-1.

    In two-color contexts color 0 is red and color 1 is blue.
    """

    order: int
    num_colors: int
    colors: np.ndarray

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise DomainError(f"order must be in [1, {MAX_ORDER}], got {self.order}")
        if not 1 <= self.num_colors <= 255:
            raise DomainError(f"num_colors must be in [1, 255], got {self.num_colors}")
        colors = np.array(self.colors, dtype=np.int64).ravel()
        if colors.size != num_pairs(self.order):
            raise DomainError(
                f"expected {num_pairs(self.order)} pair colors, got {colors.size}"
            )
        if colors.size and (colors.min() < 0 or colors.max() >= self.num_colors):
            raise DomainError("pair color out of range")
        colors = colors.astype(np.uint8)
        colors.setflags(write=False)
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_matrix(cls, matrix, num_colors: int) -> EdgeColoring:
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError("color matrix must be square")
        iu = np.triu_indices(m.shape[0], 1)
        if not np.array_equal(m[iu], m.T[iu]):
            raise DomainError("color matrix must be symmetric")
        return cls(m.shape[0], num_colors, m[iu])

    @classmethod
    def monochromatic(cls, order: int, num_colors: int = 1, color: int = 0) -> EdgeColoring:
        return cls(order, num_colors, np.full(num_pairs(order), color))

    @classmethod
    def from_function(cls, order: int, num_colors: int, fn) -> EdgeColoring:
        iu, iv = np.triu_indices(order, 1)
        return cls(order, num_colors, [fn(u, v) for u, v in zip(iu.tolist(), iv.tolist())])

    @cached_property
    def matrix(self) -> np.ndarray:
        """Symmetric color matrix with -1 on the diagonal."""
        m = np.full((self.order, self.order), -1, dtype=np.int16)
        iu = np.triu_indices(self.order, 1)
        m[iu] = self.colors
        m.T[iu] = self.colors
        m.setflags(write=False)
        return m

    def color(self, u: int, v: int) -> int:
        _check_vertex(self.order, u)
        _check_vertex(self.order, v)
        if u == v:
            raise DomainError("a pair needs two distinct vertices")
        return int(self.colors[pair_rank(self.order, u, v)])

    def color_class(self, c: int) -> Graph:
        return color_class(self, c)

    def relabel(self, perm: Sequence[int]) -> EdgeColoring:
        """Coloring in which vertex ``perm[v]`` plays the role of ``v``."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.order)):
            raise DomainError("perm must be a permutation of the vertices")
        m = np.empty_like(self.matrix)
        m[np.ix_(perm, perm)] = self.matrix
        return EdgeColoring.from_matrix(m, self.num_colors)

    def permute_colors(self, mapping: Sequence[int]) -> EdgeColoring:
        mapping = np.asarray(mapping, dtype=np.int64)
        if sorted(mapping.tolist()) != list(range(self.num_colors)):
            raise DomainError("mapping must permute the colors")
        return EdgeColoring(self.order, self.num_colors, mapping[self.colors])

    def swap_red_blue(self) -> EdgeColoring:
        if self.num_colors != 2:
            raise DomainError("red/blue swap needs a 2-coloring")
        return self.permute_colors([1, 0])

    def __eq__(self, other):
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return (
            self.order == other.order
            and self.num_colors == other.num_colors
            and np.array_equal(self.colors, other.colors)
        )

    def __hash__(self):
        return hash((self.order, self.num_colors, self.colors.tobytes()))

    def __repr__(self):
        return f"EdgeColoring(order={self.order}, num_colors={self.num_colors})"


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def is_valid_in(self, g: Graph) -> bool:
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            return False
        if any(not 0 <= v < g.order for v in vs):
            return False
        adj = g.adjacency
        return all(adj[vs[i], vs[(i + 1) % len(vs)]] for i in range(len(vs)))


@dataclass(frozen=True)
class WheelWitness:
    color: int
    center: int
    rim: tuple[int, ...]

    @property
    def n(self) -> int:
        """Number of wheel vertices (rim plus center)."""
        return len(self.rim) + 1

    def is_valid_in(self, coloring: EdgeColoring) -> bool:
        """Edge-by-edge re-check, independent of the detection code path."""
        rim, c = self.rim, self.center
        if len(rim) < 3 or len(set(rim)) != len(rim) or c in rim:
            return False
        if any(not 0 <= v < coloring.order for v in (c, *rim)):
            return False
        m = coloring.matrix
        spokes = all(m[c, v] == self.color for v in rim)
        hoops = all(m[rim[i], rim[(i + 1) % len(rim)]] == self.color for i in range(len(rim)))
        return spokes and hoops


def color_class(coloring: EdgeColoring, c: int) -> Graph:
    """Spanning subgraph formed by the edges of color ``c``."""
    if not 0 <= c < coloring.num_colors:
        raise DomainError(f"color {c} out of range for {coloring.num_colors} colors")
    return Graph(pack_rows(coloring.matrix == c))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``vertices``; new label i maps to ``labels[i]``.

    Labels keep increasing order, so lexicographic order of vertex sequences
    is preserved by the mapping.
    """
    labels = tuple(sorted(set(int(v) for v in vertices)))
    for v in labels:
        _check_vertex(g.order, v)
    idx = np.asarray(labels, dtype=np.int64)
    sub = g.adjacency[np.ix_(idx, idx)]
    return Graph(pack_rows(sub)), labels


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g.order, v)
    return frozenset(np.flatnonzero(g.adjacency[v]).tolist())


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class OddCycle:
    witness: CycleWitness


def is_bipartite(g: Graph) -> Bipartition | OddCycle:
    """Two-color every component by BFS, or return an odd cycle.

    Lowest unvisited vertex gets side ``left``; isolated vertices land there.
    """
    masks = g.masks
    side = [-1] * g.order
    parent = [-1] * g.order
    for root in range(g.order):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = [root]
        for u in queue:
            for v in bits_of(masks[u]):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return OddCycle(_odd_cycle(parent, u, v))
    left = frozenset(v for v in range(g.order) if side[v] == 0)
    right = frozenset(v for v in range(g.order) if side[v] == 1)
    return Bipartition(left, right)


def _odd_cycle(parent: list[int], u: int, v: int) -> CycleWitness:
    # u, v share a side and are adjacent: tree paths to their meeting point
    # plus the edge uv close an odd cycle
    up = [u]
    while parent[up[-1]] >= 0:
        up.append(parent[up[-1]])
    vp = [v]
    while parent[vp[-1]] >= 0:
        vp.append(parent[vp[-1]])
    common = set(up) & set(vp)
    i = next(k for k, x in enumerate(up) if x in common)
    meet = up[i]
    j = vp.index(meet)
    return CycleWitness(tuple(up[: i + 1] + vp[:j][::-1]))
