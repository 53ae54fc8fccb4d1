import itertools

import pytest
from hypothesis import given, settings, strategies as st

from segalsets import nerves, segal, simplicial
from segalsets.nerves import FiniteCategory, PartialMonoid


def chain_count(C, n):
    # composable strings of n morphisms, by direct enumeration
    if n == 0:
        return len(C.objects)
    return sum(
        1
        for fs in itertools.product(C.morphisms, repeat=n)
        if all(C.target(f) == C.source(g) for f, g in zip(fs, fs[1:]))
    )


def poset3():
    return FiniteCategory.from_poset(["x", "y", "z"], lambda p, q: p <= q)


def v_poset():
    # x <= y, x <= z, y and z incomparable
    order = {("x", "y"), ("x", "z")}
    return FiniteCategory.from_poset(["x", "y", "z"], lambda p, q: p == q or (p, q) in order)


@pytest.mark.parametrize("C", [poset3(), v_poset(), nerves.ordinal_category(1), FiniteCategory.from_monoid(nerves.cyclic_monoid(3))])
def test_nerve_level_sizes(C):
    K = nerves.nerve_category(C.check(), 4)
    assert K.sizes() == [chain_count(C, n) for n in range(5)]
    assert simplicial.validate(K).ok
    assert segal.segal1_check(K).verdict


def test_ordinal_nerve_is_simplex():
    # the nerve of [n] is Delta[n]
    for n in range(3):
        K = nerves.nerve_category(nerves.ordinal_category(n), 3)
        assert K.sizes() == simplicial.standard_simplex(n, 3).sizes()
        assert simplicial.levelwise_isomorphic(K, simplicial.standard_simplex(n, 3)).ok


def test_cyclic_monoid_sizes():
    assert nerves.nerve_partial_monoid(nerves.cyclic_monoid(3), 4).sizes() == [1, 3, 9, 27, 81]


def test_square_zero_nerve():
    K = nerves.nerve_partial_monoid(nerves.square_zero_partial_monoid(), 4)
    # at most one x per tuple
    assert K.sizes() == [1, 2, 3, 4, 5]
    assert simplicial.validate(K).ok


@pytest.mark.parametrize("C", [poset3(), v_poset(), FiniteCategory.from_monoid(nerves.cyclic_monoid(2))])
def test_category_round_trip(C):
    D = nerves.category_from_1segal(nerves.nerve_category(C, 3))
    omap, mmap = nerves.nerve_index_map(C)
    assert nerves.is_functor_iso(C, D, omap, mmap)
    assert nerves.category_isomorphism(C, D) is not None


def test_isomorphism_search_negative():
    assert nerves.category_isomorphism(poset3(), v_poset()) is None
    z2 = FiniteCategory.from_monoid(nerves.cyclic_monoid(2))
    assert nerves.category_isomorphism(z2, nerves.ordinal_category(1)) is None


def test_category_from_non_1segal_raises():
    with pytest.raises(ValueError):
        nerves.category_from_1segal(nerves.nerve_partial_monoid(nerves.square_zero_partial_monoid(), 3))


def test_category_problems():
    C = poset3()
    broken = FiniteCategory(C.objects, C.morphisms, C.identity, {k: v for k, v in list(C.compose.items())[1:]})
    assert broken.problems()
    with pytest.raises(ValueError):
        broken.check()
    Z = FiniteCategory.from_monoid(nerves.cyclic_monoid(3))
    products = dict(Z.compose)
    # (1*1)*2 = 1 but 1*(1*2) = 2
    products[("1", "2")] = "1"
    problems = FiniteCategory(Z.objects, Z.morphisms, Z.identity, products).problems()
    assert any("associativity" in p for p in problems)


def test_partial_monoid_checks():
    assert PartialMonoid(("1", "x"), "1", {("1", "1"): "1", ("1", "x"): "x"}).problems()
    assert PartialMonoid(("1",), "z", {}).problems()
    assert nerves.square_zero_partial_monoid().check().is_total is False
    assert nerves.cyclic_monoid(2).is_total


def test_monoid_category_requires_total():
    with pytest.raises(ValueError):
        FiniteCategory.from_monoid(nerves.square_zero_partial_monoid())


def test_json_round_trips():
    Z = FiniteCategory.from_monoid(nerves.cyclic_monoid(3))
    back = FiniteCategory.from_json(Z.to_json())
    assert back.morphisms == dict(Z.morphisms) and back.compose == dict(Z.compose)
    M = nerves.square_zero_partial_monoid()
    assert PartialMonoid.from_json(M.to_json()).products == M.products
    with pytest.raises(ValueError):
        FiniteCategory.from_json({"objects": []})


@settings(max_examples=20)
@given(st.integers(2, 5))
def test_cyclic_groups(k):
    K = nerves.nerve_partial_monoid(nerves.cyclic_monoid(k), 3)
    assert K.sizes() == [k**n for n in range(4)]
    assert segal.segal1_check(K).verdict
    assert segal.segal2_check(K).verdict
    C = nerves.category_from_1segal(K)
    assert nerves.category_isomorphism(C, FiniteCategory.from_monoid(nerves.cyclic_monoid(k))) is not None
