import itertools

import numpy as np
import pytest

from wheelramsey import oracles
from wheelramsey.bounds import k_color_wheel_lower
from wheelramsey.constructions import (
    BLUE,
    RED,
    BlockSpec,
    blowup,
    construct_even_lower,
    construct_odd_lower,
    iterated_blowup,
    mono_base,
    paley5,
    rook9,
)
from wheelramsey.detection import find_mono_pattern
from wheelramsey.graph import (
    Bipartition,
    DomainError,
    EdgeColoring,
    induced_subgraph,
    is_bipartite,
    neighborhood,
)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_even_lower_shape(n):
    coloring, spec = construct_even_lower(n)
    assert coloring.order == spec.order == 3 * n - 3
    blue, red = coloring.color_class(BLUE), coloring.color_class(RED)
    assert set(blue.degrees()) == {n - 2}
    assert set(red.degrees()) == {2 * n - 2}
    # red class is K_{n-1,n-1,n-1}
    assert red.num_edges() == 3 * (n - 1) ** 2


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
def test_odd_lower_shape(n):
    coloring, spec = construct_odd_lower(n)
    h = (n - 1) // 2
    assert coloring.order == 2 * n - 1
    r = spec.ranges()
    v0 = spec.special["v0"]
    assert r["v0"] == range(v0, v0 + 1)
    red = coloring.color_class(RED)
    A, B, C, D = (set(r[x]) for x in "ABCD")
    for a in A:
        assert neighborhood(red, a) == C | D
    for b in B:
        assert neighborhood(red, b) == (B - {b}) | {v0} | C
    assert neighborhood(red, v0) == B | D
    # both classes are (n-1)-regular
    assert set(red.degrees()) == {n - 1}
    assert set(coloring.color_class(BLUE).degrees()) == {n - 1}
    assert len(A) == len(B) == len(C) == len(D) == h


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_odd_lower_is_self_complementary(n):
    # A -> B, B -> C, D -> A, C -> D, v0 fixed carries red onto blue
    coloring, spec = construct_odd_lower(n)
    r = spec.ranges()
    perm = np.empty(coloring.order, dtype=int)
    for src, dst in {"A": "B", "B": "C", "D": "A", "C": "D", "v0": "v0"}.items():
        perm[list(r[dst])] = list(r[src])
    assert coloring.relabel(perm) == coloring.swap_red_blue()


@pytest.mark.parametrize("n", [6, 8, 10])
def test_even_red_neighborhoods_are_bipartite(n):
    coloring, _ = construct_even_lower(n)
    red = coloring.color_class(RED)
    for v in (0, n - 1, 2 * n - 2):
        sub, _ = induced_subgraph(red, neighborhood(red, v))
        assert isinstance(is_bipartite(sub), Bipartition)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_even_lower_rejects_bad_n(n):
    with pytest.raises(DomainError):
        construct_even_lower(n)


@pytest.mark.parametrize("n", [3, 4, 8])
def test_odd_lower_rejects_bad_n(n):
    with pytest.raises(DomainError):
        construct_odd_lower(n)


def test_paley5_is_triangle_free_and_self_complementary():
    base = paley5()
    assert base.forbidden == "triangle"
    for c in (0, 1):
        assert oracles.pattern_count(base.coloring, "triangle", 3, c) == 0
        assert set(base.coloring.color_class(c).degrees()) == {2}
    perm = [(2 * v) % 5 for v in range(5)]
    assert base.coloring.relabel(perm) == base.coloring.swap_red_blue()


def test_rook9_is_diamond_free_and_every_edge_in_one_triangle():
    base = rook9()
    m = base.coloring.matrix
    for c in (0, 1):
        assert oracles.pattern_count(base.coloring, "k4-", 4, c) == 0
        g = base.coloring.color_class(c)
        assert set(g.degrees()) == {4}
        for u, v in g.edges():
            common = [w for w in range(9) if m[u, w] == c and m[v, w] == c]
            assert len(common) == 1


def test_mono_bases_avoid_their_pattern():
    assert find_mono_pattern(mono_base(2, "triangle").coloring, "clique:2", 0) == (0, 1)
    for size in (1, 2, 3):
        base = mono_base(size, "k4-")
        assert all(base.coloring.color(u, v) == 0 for u, v in itertools.combinations(range(size), 2))


def test_blowup_colors_and_blocks():
    base = paley5()
    inner = EdgeColoring.from_function(4, 2, lambda u, v: (u + v) % 2)
    coloring, spec = blowup(base, inner)
    assert coloring.order == 20 and coloring.num_colors == 4
    assert spec.parts == tuple((f"V{i + 1}", 4) for i in range(5))
    for u, v in itertools.combinations(range(20), 2):
        bu, bv = divmod(u, 4), divmod(v, 4)
        if bu[0] == bv[0]:
            assert coloring.color(u, v) == inner.color(bu[1], bv[1]) + 2
        else:
            assert coloring.color(u, v) == base.coloring.color(bu[0], bv[0])


def test_blowup_with_single_vertex_blocks_is_the_base():
    base = rook9()
    coloring, _ = blowup(base, EdgeColoring.monochromatic(1))
    assert coloring.num_colors == 3
    assert np.array_equal(coloring.colors, base.coloring.colors)


def test_blowup_base_neighbourhoods_are_unions_of_blocks():
    coloring, _ = blowup(rook9(), EdgeColoring.monochromatic(3))
    # base colors never join two vertices of one block, so every color-c
    # neighbourhood meets each block in all or nothing
    g = coloring.color_class(0)
    for v in range(coloring.order):
        blocks = {w // 3 for w in neighborhood(g, v)}
        assert neighborhood(g, v) == {w for w in range(coloring.order) if w // 3 in blocks}


@pytest.mark.parametrize("k,n", [(2, 7), (2, 8), (3, 7), (3, 8), (4, 7), (4, 8), (5, 7)])
def test_iterated_blowup_order_matches_lower_bound(k, n):
    coloring, spec = iterated_blowup(k, n)
    assert coloring.order == k_color_wheel_lower(k, n) - 1 == spec.order
    assert coloring.num_colors == k


def test_blockspec_dict_roundtrip():
    _, spec = construct_odd_lower(9)
    assert BlockSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(DomainError):
        BlockSpec((("A", 0),))
