import itertools

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from msrlab.graph import (EXHAUSTIVE_LIMIT, Graph, Graph6HeaderError, Graph6TrailingDataError,
                          Graph6TruncatedError, SizeGateError, check_exhaustive, complete_graph, cycle_graph,
                          fmt_vertices, from_pattern, induced_subgraph, is_connected, is_tree, mask_of,
                          parse_graph6, path_graph, pendant_vertices, star_graph, to_graph6)
from msrlab.ratlinalg import RationalMatrix


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_known_encodings():
    assert to_graph6(complete_graph(3)) == "Bw"
    assert to_graph6(path_graph(3)) == "Bg"
    assert parse_graph6("Bw") == complete_graph(3)
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)


def test_errors():
    with pytest.raises(Graph6HeaderError):
        parse_graph6("")
    with pytest.raises(Graph6HeaderError):
        parse_graph6("~~~~")
    with pytest.raises(Graph6TruncatedError):
        parse_graph6("F??")
    with pytest.raises(Graph6TrailingDataError):
        parse_graph6("Bww")
    with pytest.raises(Graph6TrailingDataError):
        parse_graph6("Bx")  # padding bits set
    with pytest.raises(Graph6TrailingDataError):
        parse_graph6("B w")


@given(st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_matches_networkx(data):
    n, pairs = data
    g = Graph.from_edges(n, {(min(a, b), max(a, b)) for a, b in pairs if a != b})
    s = to_graph6(g)
    assert s == nx.to_graph6_bytes(_nx(g), header=False).decode().strip()
    assert parse_graph6(s) == g


def test_rejects_bad_graphs():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (1,))
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(33, (0,) * 33)


def test_structure():
    g = cycle_graph(5)
    assert is_connected(g) and not is_tree(g)
    assert is_tree(path_graph(4)) and is_tree(star_graph(3))
    assert pendant_vertices(path_graph(4)) == mask_of([0, 3])
    sub = induced_subgraph(g, [0, 1, 2])
    assert sub == path_graph(3)
    assert not is_connected(Graph.from_edges(3, [(0, 1)]))
    assert fmt_vertices(0b101) == "{v1,v3}"


def test_from_pattern():
    a = RationalMatrix.from_rows([[1, 1, 0], [1, 2, 1], [0, 1, 1]])
    assert from_pattern(a) == path_graph(3)
    with pytest.raises(ValueError):
        from_pattern(RationalMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(ValueError):
        from_pattern(RationalMatrix.from_rows([[1, 1]]))


def test_size_gate():
    check_exhaustive(EXHAUSTIVE_LIMIT)
    with pytest.raises(SizeGateError):
        check_exhaustive(EXHAUSTIVE_LIMIT + 1)


def test_round_trip_exhaustive_small():
    # every labelled graph on up to 5 vertices
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(1 << len(pairs)):
            g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if m >> i & 1])
            assert parse_graph6(to_graph6(g)) == g
