import dataclasses
import json

import numpy as np
import pytest

from segalsets import doublecat as dc, graphs, nerves, segal, simplicial, trees
from segalsets.simplicial import MonotoneMap

from suite import SUITE_NAMES, build


def without_square(D, s):
    squares = {k: v for k, v in D.squares.items() if k != s}
    return dataclasses.replace(D, squares=squares)


def test_w2_shape_and_validity():
    D = dc.w2()
    assert D.sizes() == {"objects": 4, "hor": 8, "ver": 8, "squares": 13}
    report = dc.validate_double_category(D)
    assert report.ok, report.problems
    assert dc.check_pointed(D).ok
    assert D.unique_hor_from_point("02") == "z02"
    assert D.unique_ver_to_point("02") == "t02"


def test_w2_without_its_square_is_unstable():
    D = without_square(dc.w2(), "sigma")
    r = dc.check_stable(D)
    assert not r.ok
    assert r.witness == ("span", "m", "t01")
    assert not dc.validate_double_category(D).ok


def test_two_fillers_on_one_span():
    D = dc.w2()
    squares = dict(D.squares)
    squares["sigma2"] = squares["sigma"]
    D2 = dataclasses.replace(D, squares=squares)
    r = dc.check_stable(D2)
    assert not r.ok and r.witness[0] == "span"
    with pytest.raises(ValueError):
        D2.fill_span("m", "t01")


def test_pointed_failures():
    D = dataclasses.replace(dc.w2(), point="01")
    assert not dc.check_pointed(D).ok
    with pytest.raises(ValueError):
        dc.check_pointed(dataclasses.replace(dc.w2(), point=None))


def test_boundary_problems_detected():
    D = dc.w2()
    squares = dict(D.squares)
    squares["sigma"] = ("m", "z12", "t01", "t02")
    assert dc.boundary_problems(dataclasses.replace(D, squares=squares))


def test_identity_squares():
    D = dc.w2()
    assert D.vertical_identity_square("m") == "vid(m)"
    assert D.horizontal_identity_square("e") == "hid(e)"


def test_square_composition():
    D = dc.w2()
    # identity squares on each edge of sigma act as units
    assert dc.compose_squares_h(D, "sigma", "hid(e)") == "sigma"
    assert dc.compose_squares_v(D, "sigma", "vid(z12)") == "sigma"
    assert dc.compose_squares_v(D, "vid(m)", "sigma") == "sigma"
    assert dc.compose_squares_h(D, "hid(t01)", "sigma") == "sigma"
    with pytest.raises(ValueError):
        dc.compose_squares_h(D, "sigma", "sigma")
    with pytest.raises(ValueError):
        dc.compose_squares_v(D, "sigma", "sigma")


def test_interchange_grid_count():
    assert dc.interchange_grids(dc.w2()) > 0


def test_json_round_trip():
    D = dc.w2()
    E = dc.DoubleCategory.from_json(json.loads(json.dumps(D.to_json())))
    assert E.sizes() == D.sizes()
    assert dict(E.squares) == dict(D.squares)
    assert dc.counit_comparison(E).ok
    with pytest.raises(ValueError):
        dc.DoubleCategory.from_json({"objects": []})


def test_json_round_trip_with_tuple_ids():
    D = dc.p_construction(build("edge", 3))
    E = dc.DoubleCategory.from_json(json.loads(json.dumps(D.to_json())))
    assert dict(E.squares) == dict(D.squares)
    assert dict(E.hor_id) == dict(D.hor_id)


def test_staircases_match_s_construction():
    D = dc.w2()
    S = dc.s_construction(D, 4)
    for n in range(5):
        assert len(dc.staircases(D, n)) == S.size(n)
    assert simplicial.validate(S).ok


def test_staircase_problems_detected():
    D = dc.w2()
    s = dc.staircase_from_top_row(D, ["m"], "z01")
    assert dc.staircase_problems(D, s) == []
    bad = dataclasses.replace(s, hor={**s.hor, (0, 1): "z12"})
    assert dc.staircase_problems(D, bad)


def test_reindex_is_functorial():
    D = dc.w2()
    for s in dc.staircases(D, 3):
        for alpha in simplicial.monotone_maps(2, 3):
            for beta in simplicial.monotone_maps(1, 2):
                once = dc.reindex(D, s, alpha.compose(beta))
                twice = dc.reindex(D, dc.reindex(D, s, alpha), beta)
                assert once.descriptor == twice.descriptor


def test_s_of_w2_is_the_tree_set():
    # both have four 1-simplices and one nondegenerate 2-simplex glued the same way
    S = dc.s_construction(dc.w2(), 4)
    X = trees.build_XT(trees.edge_tree(), 4)
    assert simplicial.levelwise_isomorphic(S, X).ok


def test_s_of_trivial():
    T = dc.trivial_double_category()
    assert dc.s_construction(T, 4).sizes() == [1] * 5
    assert dc.counit_comparison(T).ok


def test_s_construction_is_2segal():
    S = dc.s_construction(dc.p_construction(build("path3", 3)), 4)
    assert segal.segal2_check(S).verdict


def test_p_construction_sizes_for_group_nerve():
    # for the nerve of a group G: objects G, morphisms G^2, squares G^3
    D = dc.p_construction(build("z3", 3))
    assert D.sizes() == {"objects": 3, "hor": 9, "ver": 9, "squares": 27}
    assert dc.validate_double_category(D).ok


def test_p_construction_names_the_failed_bijection():
    Y = graphs.build_XG(graphs.parallel_edges(2), 3)
    e1 = Y.index(2, (("a", "b"), ("e1",), (0, 0)))
    e2 = Y.index(2, (("a", "b"), ("e2",), (0, 0)))
    faces = [list(level) for level in Y.faces]
    for i in range(4):
        arr = np.array(faces[3][i])
        arr[arr == e2] = e1
        faces[3][i] = arr
    Z = Y.with_tables(faces=tuple(tuple(level) for level in faces))
    with pytest.raises(ValueError, match="bijection"):
        dc.p_construction(Z)


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_unit_comparison_on_suite(name):
    r = dc.unit_comparison(build(name, 4), 4)
    assert r.ok, r.reason


def test_unit_comparison_requirements():
    with pytest.raises(ValueError):
        dc.unit_comparison(simplicial.standard_simplex(1, 3))
    with pytest.raises(ValueError):
        dc.unit_comparison(build("edge", 4), 2)


@pytest.mark.parametrize("name", ["edge", "tree_cherry", "z2", "square_zero"])
def test_counit_on_p_construction(name):
    D = dc.p_construction(build(name, 3))
    assert dc.validate_double_category(D).ok
    assert dc.check_stable(D).ok and dc.check_pointed(D).ok
    r = dc.counit_comparison(D)
    assert r.ok, r.reason


def test_double_functor_check_rejects_wrong_maps():
    D = dc.w2()
    ident = {x: x for x in D.objects}
    hmap = {f: f for f in D.hor}
    vmap = {g: g for g in D.ver}
    smap = {s: s for s in D.squares}
    assert dc.check_double_functor_iso(D, D, ident, hmap, vmap, smap) == ""
    swapped = dict(hmap, m="z02", z02="m")
    assert dc.check_double_functor_iso(D, D, ident, swapped, vmap, smap) != ""


def test_monotone_map_reindex_identity():
    D = dc.w2()
    for s in dc.staircases(D, 2):
        assert dc.reindex(D, s, MonotoneMap.identity(2)).descriptor == s.descriptor


def test_nerve_of_square_zero_double_category():
    D = dc.p_construction(nerves.nerve_partial_monoid(nerves.square_zero_partial_monoid(), 3))
    assert D.sizes() == {"objects": 2, "hor": 3, "ver": 3, "squares": 4}
