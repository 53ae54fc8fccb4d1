import itertools

import pytest
from hypothesis import given, settings, strategies as st

from segalsets import graphs, segal, simplicial
from segalsets.graphs import Multigraph


def oracle_subgraphs(G):
    """(vertex set, edge set) pairs, counted from scratch."""
    out = []
    for r in range(len(G.vertices) + 1):
        for vs in itertools.combinations(G.vertices, r):
            inner = [e for e, (u, w) in G.edges.items() if u in vs and w in vs]
            for k in range(len(inner) + 1):
                for es in itertools.combinations(inner, k):
                    out.append((frozenset(vs), frozenset(es)))
    return out


def oracle_level_size(G, n):
    # an n-simplex is a subgraph together with a block label in 0..n-1 for each vertex
    return sum(n ** len(vs) for vs, _ in oracle_subgraphs(G))


def oracle_face(G, n, i, verts, edges, blocks):
    """Face on an explicit list of blocks, written without the library helpers."""
    layers = [set() for _ in range(n)]
    for v, b in zip(verts, blocks):
        layers[b].add(v)
    if i == 0:
        layers = layers[1:]
    elif i == n:
        layers = layers[:-1]
    else:
        layers = layers[: i - 1] + [layers[i - 1] | layers[i]] + layers[i + 1:]
    alive = set().union(*layers) if layers else set()
    kept = [e for e in edges if G.edges[e][0] in alive and G.edges[e][1] in alive]
    return graphs.graph_simplex(layers, kept)


@st.composite
def multigraphs(draw):
    names = ("a", "b", "c")[: draw(st.integers(1, 3))]
    ends = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=3))
    return Multigraph(names, {f"e{k}": e for k, e in enumerate(ends)})


@pytest.mark.parametrize(
    "G, count",
    [
        (graphs.edge_graph(), 5),
        (graphs.loop_graph(), 3),
        (graphs.parallel_edges(2), 7),
        (graphs.path_graph(), 13),
        (graphs.triangle_graph(), 18),
    ],
)
def test_subgraph_counts(G, count):
    assert len(graphs.subgraphs(G)) == count == len(oracle_subgraphs(G))


@pytest.mark.parametrize("G", [graphs.edge_graph(), graphs.loop_graph(), graphs.path_graph(), graphs.triangle_graph()])
def test_level_sizes_match_oracle(G):
    X = graphs.build_XG(G, 4)
    assert X.sizes() == [oracle_level_size(G, n) for n in range(5)]


def test_edge_graph_sizes():
    assert graphs.build_XG(graphs.edge_graph(), 3).sizes() == [1, 5, 13, 25]


def test_faces_on_path_graph():
    G = graphs.path_graph()
    X = graphs.build_XG(G, 3)
    # (a,b,c with both edges; blocks {a}, {b}, {c})
    s = graphs.graph_simplex([["a"], ["b"], ["c"]], ["ab", "bc"])
    k = X.index(3, s)
    assert X.descriptor(2, X.face(3, 0, k)) == graphs.graph_simplex([["b"], ["c"]], ["bc"])
    assert X.descriptor(2, X.face(3, 1, k)) == graphs.graph_simplex([["a", "b"], ["c"]], ["ab", "bc"])
    assert X.descriptor(2, X.face(3, 3, k)) == graphs.graph_simplex([["a"], ["b"]], ["ab"])


@pytest.mark.parametrize("G", [graphs.path_graph(), graphs.triangle_graph(), graphs.parallel_edges(2)])
def test_face_tables_match_oracle(G):
    X = graphs.build_XG(G, 3)
    for n in (1, 2, 3):
        for k, (verts, edges, blocks) in enumerate(X.levels[n]):
            for i in range(n + 1):
                assert X.descriptor(n - 1, X.face(n, i, k)) == oracle_face(G, n, i, verts, edges, blocks)


def test_degeneracy_inserts_empty_block():
    X = graphs.build_XG(graphs.edge_graph(), 3)
    s = graphs.graph_simplex([["a"], ["b"]], ["e1"])
    k = X.index(2, s)
    assert X.descriptor(3, X.degeneracy(2, 1, k)) == graphs.graph_simplex([["a"], [], ["b"]], ["e1"])


def test_reduced():
    assert graphs.build_XG(graphs.triangle_graph(), 2).is_reduced()


def test_json_round_trip():
    G = graphs.triangle_graph()
    assert Multigraph.from_json(G.to_json()) == G


@pytest.mark.parametrize(
    "bad",
    [
        {"vertices": ["a", "a"]},
        {"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "z"]}]},
        {"vertices": ["a"], "edges": [{"id": "e", "ends": ["a"]}]},
        {"edges": []},
    ],
)
def test_bad_graph_json(bad):
    with pytest.raises(ValueError):
        Multigraph.from_json(bad)


def test_graph_simplex_rejects_repeats():
    with pytest.raises(ValueError):
        graphs.graph_simplex([["a"], ["a"]])


def test_format_descriptor():
    assert graphs.format_graph_descriptor(graphs.graph_simplex([["a"], ["b"]], ["e1"])) == "a|b{e1}"
    assert graphs.format_graph_descriptor(((), (), ())) == "∅"


@settings(max_examples=25)
@given(multigraphs())
def test_random_graphs_are_2segal(G):
    X = graphs.build_XG(G, 4)
    assert X.sizes() == [oracle_level_size(G, n) for n in range(5)]
    assert simplicial.validate(X).ok
    assert segal.segal2_check(X).verdict
