import csv
import io
import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from segalsets import graphs, hall, simplicial, trees

from suite import SUITE_NAMES, build


def scan_constants(X):
    """Structure constants by a plain loop over the 2-simplices."""
    g = {}
    for k in range(X.size(2)):
        key = (X.face(2, 2, k), X.face(2, 0, k), X.face(2, 1, k))
        g[key] = g.get(key, 0) + 1
    return g


def graph_product_oracle(G, x, y):
    # x·y: every subgraph on V(x) ⊔ V(y) restricting to x and y, i.e. plus any set of cross edges
    vx, ex, _ = x
    vy, ey, _ = y
    if set(vx) & set(vy):
        return {}
    cross = [e for e, (u, w) in G.edges.items() if (u in vx and w in vy) or (u in vy and w in vx)]
    verts = tuple(sorted(vx + vy))
    out = {}
    for r in range(len(cross) + 1):
        for extra in itertools.combinations(cross, r):
            z = (verts, tuple(sorted(ex + ey + extra)), (0,) * len(verts))
            out[z] = out.get(z, 0) + 1
    return out


def tree_product_oracle(T, x, y):
    # x·y is the union when it is admissible and x is parent-closed inside it
    vx, vy = set(x[0]), set(y[0])
    if vx & vy:
        return {}
    union = frozenset(vx | vy)
    if union not in set(trees.admissible_subforests(T)):
        return {}
    if any(T.parent.get(v) in vy for v in vx):
        return {}
    return {trees.subforest_descriptor(union): 1}


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_constants_match_scan(name):
    X = build(name, 3)
    A = hall.hall_algebra(X)
    got = {(x, y, z): g for (x, y), row in A.constants.items() for z, g in row.items()}
    assert got == scan_constants(X)


@pytest.mark.parametrize("G", [graphs.edge_graph(), graphs.loop_graph(), graphs.parallel_edges(3), graphs.path_graph(), graphs.triangle_graph()])
def test_graph_products_match_oracle(G):
    A = hall.hall_algebra(graphs.build_XG(G, 2))
    for x, y in itertools.product(A.basis, repeat=2):
        assert A.basis_product(x, y) == graph_product_oracle(G, x, y), (x, y)


@pytest.mark.parametrize("T", [trees.edge_tree(), trees.path_tree(), trees.cherry_tree()])
def test_tree_products_match_oracle(T):
    A = hall.hall_algebra(trees.build_XT(T, 2))
    for x, y in itertools.product(A.basis, repeat=2):
        assert A.basis_product(x, y) == tree_product_oracle(T, x, y), (x, y)


def test_group_algebra_of_z3():
    # the nerve of a group gives its group algebra
    A = hall.hall_algebra(build("z3", 3))
    for (x,), (y,) in itertools.product(A.basis, repeat=2):
        assert A.basis_product((x,), (y,)) == {(str((int(x) + int(y)) % 3),): 1}


def test_square_zero_algebra():
    A = hall.hall_algebra(build("square_zero", 3))
    x = next(b for b in A.basis if b != A.unit)
    assert A.basis_product(x, x) == {}
    assert hall.multiply(A, A.one, {x: 2}) == {x: 2}


def test_multiply_is_bilinear():
    A = hall.hall_algebra(build("edge", 3))
    a, b = (("a",), (), (0,)), (("b",), (), (0,))
    s = hall.multiply(A, {a: 2, b: 1}, {b: 3})
    assert s == {z: 6 for z in A.basis_product(a, b)}
    assert hall.multiply(A, {}, {a: 1}) == {}


def test_element_helper():
    A = hall.hall_algebra(build("edge", 3))
    a = (("a",), (), (0,))
    assert A.element(a, a) == {a: 2}
    with pytest.raises(KeyError):
        A.element("nope")


@settings(max_examples=30)
@given(st.data())
def test_associativity_on_random_elements(data):
    A = hall.hall_algebra(build(data.draw(st.sampled_from(["path3", "tree_cherry", "z3"])), 3))
    coeff = st.dictionaries(st.sampled_from(A.basis), st.integers(-3, 3), max_size=4)
    u, v, w = data.draw(coeff), data.draw(coeff), data.draw(coeff)
    left = hall.multiply(A, hall.multiply(A, u, v), w)
    right = hall.multiply(A, u, hall.multiply(A, v, w))
    assert left == right


def test_law_reports():
    A = hall.hall_algebra(build("tree_path", 3))
    assert hall.check_associative(A).ok
    assert hall.check_unital(A).ok
    r = hall.check_commutative(A)
    assert not r.ok
    assert r.to_json()["verdict"] == "fail"
    x, y = r.witness
    assert A.basis_product(x, y) != A.basis_product(y, x)


def test_requires_reduced_input():
    with pytest.raises(ValueError):
        hall.hall_algebra(simplicial.standard_simplex(1, 2))


def test_export_json():
    A = hall.hall_algebra(build("edge", 2))
    data = json.loads(hall.export_table(A, "json"))
    assert len(data["basis"]) == 5
    total = sum(g for *_, g in data["constants"])
    assert total == build("edge", 2).size(2)


def test_export_csv():
    A = hall.hall_algebra(build("loop", 2))
    rows = list(csv.reader(io.StringIO(hall.export_table(A, "csv"))))
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)
    # products of two nonempty loop subgraphs vanish
    assert rows[2][2] == "0"


def test_export_text_and_errors():
    A = hall.hall_algebra(build("edge", 2))
    text = hall.export_table(A, "text", graphs.format_graph_descriptor)
    assert "ab+ab{e1}" in text
    with pytest.raises(ValueError):
        hall.export_table(A, "xml")
