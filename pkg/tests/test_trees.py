import itertools

import pytest
from hypothesis import given, settings, strategies as st

from segalsets import graphs, segal, simplicial, trees
from segalsets.trees import RootedTree


def oracle_lower(T):
    # parent-closed subsets by brute force over all subsets
    out = []
    for r in range(len(T.vertices) + 1):
        for s in itertools.combinations(T.vertices, r):
            if all(v == T.root or T.parent[v] in s for v in s):
                out.append(frozenset(s))
    return out


@st.composite
def rooted_trees(draw):
    size = draw(st.integers(1, 4))
    names = "abcd"[:size]
    parent = {names[k]: names[draw(st.integers(0, k - 1))] for k in range(1, size)}
    return RootedTree(tuple(names), "a", parent)


@pytest.mark.parametrize(
    "T, lower, admissible",
    [
        (trees.single_vertex_tree(), 2, 2),
        (trees.edge_tree(), 3, 4),
        (trees.path_tree(), 4, 7),
        (trees.cherry_tree(), 5, 8),
    ],
)
def test_subtree_counts(T, lower, admissible):
    assert len(trees.lower_subtrees(T)) == lower
    assert set(trees.lower_subtrees(T)) == set(oracle_lower(T))
    assert len(trees.admissible_subforests(T)) == admissible


def test_edge_tree_level_one():
    X = trees.build_XT(trees.edge_tree(), 3)
    assert X.levels[1] == (((), ()), (("a",), (0,)), (("a", "b"), (0, 0)), (("b",), (0,)))


def test_layering_respects_parents():
    X = trees.build_XT(trees.edge_tree(), 2)
    # b cannot sit below its parent a
    assert (2, (("a", "b"), (1, 0))) not in X
    assert (2, (("a", "b"), (0, 1))) in X


def test_d0_d2_injectivity_scan():
    # a 2-simplex is determined by its outer faces, so (d_2, d_0) is injective
    for T in (trees.edge_tree(), trees.path_tree(), trees.cherry_tree()):
        X = trees.build_XT(T, 2)
        d0, _, d2 = X.faces[2]
        assert len(set(zip(d2.tolist(), d0.tolist()))) == X.size(2)


@pytest.mark.parametrize("T", [trees.edge_tree(), trees.path_tree(), trees.cherry_tree()])
def test_embeds_into_graph_set(T):
    X = trees.build_XT(T, 3)
    Y = graphs.build_XG(T.underlying_graph(), 3)
    for n in range(4):
        image = [Y.index(n, trees.to_graph_descriptor(T, d)) for d in X.levels[n]]
        assert len(set(image)) == X.size(n)
        for k, d in enumerate(X.levels[n]):
            for i in range(n + 1) if n else ():
                assert Y.face(n, i, image[k]) == Y.index(n - 1, trees.to_graph_descriptor(T, X.descriptor(n - 1, X.face(n, i, k))))


def test_tree_validation():
    with pytest.raises(ValueError):
        RootedTree(("a", "b"), "a", {})
    with pytest.raises(ValueError):
        RootedTree(("a", "b"), "a", {"a": "b", "b": "a"})
    with pytest.raises(ValueError):
        RootedTree(("a", "b", "c"), "a", {"b": "c", "c": "b"})
    with pytest.raises(ValueError):
        RootedTree(("a",), "z", {})


def test_json_round_trip():
    T = trees.cherry_tree()
    assert RootedTree.from_json(T.to_json()) == T
    with pytest.raises(ValueError):
        RootedTree.from_json({"vertices": ["a"]})


def test_format_descriptor():
    assert trees.format_tree_descriptor(trees.tree_simplex(trees.edge_tree(), [["a"], ["b"]])) == "a|b"


@settings(max_examples=25)
@given(rooted_trees())
def test_random_trees(T):
    X = trees.build_XT(T, 4)
    assert simplicial.validate(X).ok
    assert segal.segal2_check(X).verdict
    assert not segal.segal1_check(X).verdict
    whole = X.index(1, trees.subforest_descriptor(T.vertices))
    assert (whole, whole) in segal.segal1_gaps(X, 2)
    assert set(trees.lower_subtrees(T)) == set(oracle_lower(T))
