import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_graph
from wheelramsey import oracles
from wheelramsey.formats import (
    decode_coloring,
    decode_graph_json,
    encode_coloring,
    encode_graph_json,
    from_graph6,
    read_coloring,
    to_graph6,
    write_coloring,
)
from wheelramsey.graph import (
    Bipartition,
    DomainError,
    EdgeColoring,
    Graph,
    OddCycle,
    color_class,
    induced_subgraph,
    is_bipartite,
    neighborhood,
    num_pairs,
    pair_rank,
)


@st.composite
def colorings(draw, max_order=12, max_colors=3):
    order = draw(st.integers(2, max_order))
    k = draw(st.integers(1, max_colors))
    colors = draw(st.lists(st.integers(0, k - 1), min_size=num_pairs(order), max_size=num_pairs(order)))
    return EdgeColoring(order, k, np.array(colors, dtype=np.uint8))


def test_pair_rank_is_a_bijection():
    n = 9
    ranks = sorted(pair_rank(n, u, v) for u, v in itertools.combinations(range(n), 2))
    assert ranks == list(range(num_pairs(n)))
    assert pair_rank(n, 5, 2) == pair_rank(n, 2, 5)


def test_color_class_small_example():
    # K_4: edges 01, 23 red, the rest blue
    m = np.ones((4, 4), dtype=int)
    m[0, 1] = m[1, 0] = m[2, 3] = m[3, 2] = 0
    coloring = EdgeColoring.from_matrix(m, 2)
    assert color_class(coloring, 0).edges() == [(0, 1), (2, 3)]
    assert color_class(coloring, 1).num_edges() == 4
    with pytest.raises(DomainError):
        color_class(coloring, 2)


@settings(max_examples=60, deadline=None)
@given(colorings())
def test_color_classes_partition_the_complete_graph(coloring):
    classes = [color_class(coloring, c) for c in range(coloring.num_colors)]
    total = np.zeros((coloring.order, coloring.order), dtype=int)
    for g in classes:
        total += g.adjacency
    assert np.array_equal(total, Graph.complete(coloring.order).adjacency)


@settings(max_examples=60, deadline=None)
@given(colorings(max_order=10), st.data())
def test_induced_subgraph_composes(coloring, data):
    g = color_class(coloring, 0)
    outer = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1))
    sub, labels = induced_subgraph(g, outer)
    assert labels == tuple(sorted(outer))
    inner = data.draw(st.sets(st.integers(0, sub.order - 1), min_size=1))
    subsub, inner_labels = induced_subgraph(sub, inner)
    direct, direct_labels = induced_subgraph(g, [labels[i] for i in inner])
    assert subsub == direct
    assert tuple(labels[i] for i in inner_labels) == direct_labels


def test_induced_subgraph_rejects_bad_vertices():
    with pytest.raises(DomainError):
        induced_subgraph(Graph.cycle(5), [0, 7])


def test_neighborhood_matches_adjacency():
    g = Graph.cycle(6)
    assert neighborhood(g, 0) == frozenset({1, 5})
    assert neighborhood(Graph.empty(3), 1) == frozenset()


def test_complement_and_degrees():
    g = Graph.complete_multipartite(2, 3)
    assert g.num_edges() == 6
    assert list(g.degrees()) == [3, 3, 2, 2, 2]
    assert g.complement().num_edges() == 1 + 3


@pytest.mark.parametrize("order", [1, 5, 63, 64, 65, 130])
def test_rows_roundtrip_across_word_boundaries(order):
    rng = np.random.default_rng(order)
    g = random_graph(rng, order, 0.4)
    assert np.array_equal(Graph.from_adjacency(g.adjacency).adjacency, g.adjacency)
    assert g.num_edges() == int(g.adjacency.sum()) // 2


def test_from_adjacency_rejects_loops_and_asymmetry():
    with pytest.raises(DomainError):
        Graph.from_adjacency(np.eye(3, dtype=bool))
    m = np.zeros((3, 3), dtype=bool)
    m[0, 1] = True
    with pytest.raises(DomainError):
        Graph.from_adjacency(m)


def test_is_bipartite_returns_certificates(petersen):
    part = is_bipartite(Graph.cycle(8))
    assert isinstance(part, Bipartition)
    odd = is_bipartite(petersen)
    assert isinstance(odd, OddCycle)
    assert len(odd.witness.vertices) % 2 == 1
    assert odd.witness.is_valid_in(petersen)


@pytest.mark.parametrize("seed", range(40))
def test_is_bipartite_agrees_with_odd_cycle_oracle(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(3, 11)), float(rng.uniform(0.1, 0.5)))
    odd = any(length % 2 for length in oracles.cycle_lengths(g))
    result = is_bipartite(g)
    assert isinstance(result, OddCycle) == odd
    if isinstance(result, Bipartition):
        left = set(result.left)
        assert all((u in left) != (v in left) for u, v in g.edges())


@settings(max_examples=80, deadline=None)
@given(colorings())
def test_coloring_serialization_roundtrip(coloring):
    data = encode_coloring(coloring)
    assert data.endswith(b"\n")
    back = decode_coloring(data)
    assert back == coloring
    assert encode_coloring(back) == data


def test_coloring_file_format_is_byte_exact(tmp_path):
    coloring = EdgeColoring.from_function(3, 2, lambda u, v: int(u + v == 3))
    digest = write_coloring(tmp_path / "c.json", coloring)
    assert (tmp_path / "c.json").read_bytes() == b'{"order":3,"colors":2,"edges":[0,0,1]}\n'
    assert len(digest) == 64
    assert read_coloring(tmp_path / "c.json") == coloring


def test_decode_coloring_rejects_bad_input():
    with pytest.raises(DomainError):
        decode_coloring('{"order":3,"colors":2,"edges":[0,0]}')
    with pytest.raises(DomainError):
        decode_coloring('{"order":3,"colors":2,"edges":[0,0,2]}')


def test_graph_json_roundtrip(petersen):
    assert decode_graph_json(encode_graph_json(petersen)) == petersen


@pytest.mark.parametrize("order", [0, 1, 2, 5, 10, 62, 63, 64, 100])
def test_graph6_matches_networkx(order):
    rng = np.random.default_rng(100 + order)
    g = random_graph(rng, order, 0.35) if order else Graph.empty(0)
    nxg = nx.Graph()
    nxg.add_nodes_from(range(order))
    nxg.add_edges_from(g.edges())
    expected = nx.to_graph6_bytes(nxg, header=False).strip()
    assert to_graph6(g) == expected
    assert from_graph6(expected) == g
    back = nx.from_graph6_bytes(to_graph6(g))
    assert sorted(map(tuple, map(sorted, back.edges()))) == g.edges()
