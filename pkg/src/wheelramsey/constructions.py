"""Lower-bound colorings for wheel Ramsey numbers.

Parts are contiguous label ranges in the order they are listed, so every
construction is deterministic and a BlockSpec is enough to audit it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import DomainError, EdgeColoring

RED, BLUE = 0, 1


@dataclass(frozen=True)
class BlockSpec:
    parts: tuple[tuple[str, int], ...]
    special: dict[str, int] = field(default_factory=dict)
    notes: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if any(size <= 0 for _, size in self.parts):
            raise DomainError("block sizes must be positive")

    @property
    def order(self) -> int:
        return sum(size for _, size in self.parts)

    def ranges(self) -> dict[str, range]:
        out, start = {}, 0
        for label, size in self.parts:
            out[label] = range(start, start + size)
            start += size
        return out

    def labels(self) -> np.ndarray:
        """Part index of every vertex."""
        return np.repeat(np.arange(len(self.parts)), [s for _, s in self.parts])

    def to_dict(self) -> dict:
        return {
            "parts": [[label, size] for label, size in self.parts],
            "special": dict(self.special),
            "notes": dict(self.notes),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> BlockSpec:
        return cls(
            tuple((str(label), int(size)) for label, size in obj["parts"]),
            {str(k): int(v) for k, v in obj.get("special", {}).items()},
            dict(obj.get("notes", {})),
        )


@dataclass(frozen=True)
class BaseColoring:
    """A small coloring plus the pattern each color class must avoid."""

    coloring: EdgeColoring
    forbidden: str


def construct_even_lower(n: int) -> tuple[EdgeColoring, BlockSpec]:
    """K_{3n-3}: blue inside three blocks of n-1, red between blocks."""
    if n < 4 or n % 2:
        raise DomainError(f"even lower-bound coloring needs even n >= 4, got {n}")
    spec = BlockSpec((("A", n - 1), ("B", n - 1), ("C", n - 1)), notes={"family": "even-lower", "n": n})
    part = spec.labels()
    m = np.where(part[:, None] == part[None, :], BLUE, RED)
    return EdgeColoring.from_matrix(m, 2), spec


# blue pairs between parts of the odd construction; everything else is red
_ODD_BLUE = {("A", "A"), ("C", "C"), ("A", "B"), ("B", "D"), ("C", "D"), ("A", "v0"), ("C", "v0")}


def construct_odd_lower(n: int) -> tuple[EdgeColoring, BlockSpec]:
    """K_{2n-1} on parts A, B, C, D of size (n-1)/2 and a vertex v0."""
    if n < 5 or n % 2 == 0:
        raise DomainError(f"odd lower-bound coloring needs odd n >= 5, got {n}")
    h = (n - 1) // 2
    spec = BlockSpec(
        (("A", h), ("B", h), ("C", h), ("D", h), ("v0", 1)),
        special={"v0": 4 * h},
        notes={"family": "odd-lower", "n": n},
    )
    names = [label for label, _ in spec.parts]
    part = spec.labels()
    blue = np.zeros((len(names), len(names)), dtype=bool)
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            blue[i, j] = (a, b) in _ODD_BLUE or (b, a) in _ODD_BLUE
    m = np.where(blue[part[:, None], part[None, :]], BLUE, RED)
    return EdgeColoring.from_matrix(m, 2), spec


def mono_base(order: int, forbidden: str = "k4-") -> BaseColoring:
    """Single-color K_order; triangle-free for order 2, K4- free for order <= 3."""
    return BaseColoring(EdgeColoring.monochromatic(order), forbidden)


def paley5() -> BaseColoring:
    """K_5 split into the 5-cycle 0-1-2-3-4 (color 0) and its complement."""
    coloring = EdgeColoring.from_function(5, 2, lambda u, v: 0 if (v - u) % 5 in (1, 4) else 1)
    return BaseColoring(coloring, "triangle")


def rook9() -> BaseColoring:
    """K_9 split into the 3x3 rook's graph (color 0) and its complement."""
    def color(u, v):
        return 0 if (u // 3 == v // 3 or u % 3 == v % 3) else 1

    return BaseColoring(EdgeColoring.from_function(9, 2, color), "k4-")


def blowup(base: BaseColoring | EdgeColoring, inner: EdgeColoring) -> tuple[EdgeColoring, BlockSpec]:
    """Replace each vertex of the base K_s by a block carrying ``inner``.

    Pairs across blocks i, j take base color of ij; pairs inside a block take
    the inner color shifted past the base colors.
    """
    base_coloring = base.coloring if isinstance(base, BaseColoring) else base
    s, t = base_coloring.order, inner.order
    if s < 2:
        raise DomainError("blow-up needs a base of order at least 2")
    ell = base_coloring.num_colors
    k = ell + inner.num_colors
    block = np.repeat(np.arange(s), t)
    pos = np.tile(np.arange(t), s)
    outer = np.asarray(base_coloring.matrix)[block[:, None], block[None, :]]
    within = np.asarray(inner.matrix)[pos[:, None], pos[None, :]] + ell
    m = np.where(block[:, None] == block[None, :], within, outer)
    spec = BlockSpec(
        tuple((f"V{i + 1}", t) for i in range(s)),
        notes={"family": "blowup", "base_colors": ell, "inner_colors": inner.num_colors},
    )
    return EdgeColoring.from_matrix(m, k), spec


def iterated_blowup(k: int, n: int) -> tuple[EdgeColoring, BlockSpec]:
    """k-coloring of K_{3^{k-1}(n-1)} (even n) or K_{2^{k-2}(2n-1)} (odd n).

    Starts from the two-color lower-bound coloring and blows it up k-2 times
    with a single-color K_3 (even n) or K_2 (odd n), one new color per level.
    """
    if k < 2:
        raise DomainError(f"need k >= 2 colors, got {k}")
    if n < 4:
        raise DomainError(f"wheels need n >= 4, got {n}")
    if n % 2 == 0:
        coloring, first = construct_even_lower(n)
        base = mono_base(3, "k4-")
    else:
        coloring, first = construct_odd_lower(n)
        base = mono_base(2, "triangle")
    for _ in range(k - 2):
        coloring, _ = blowup(base, coloring)
    s = base.coloring.order
    parts = first.parts if k == 2 else tuple((f"V{i + 1}", coloring.order // s) for i in range(s))
    spec = BlockSpec(
        parts,
        special=first.special if k == 2 else {},
        notes={"family": "iterated-blowup", "k": k, "n": n, "levels": k - 2, "base_order": s},
    )
    return coloring, spec
