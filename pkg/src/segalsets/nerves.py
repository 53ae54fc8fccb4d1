"""Nerves of finite categories and partial monoids, and the inverse for 1-Segal sets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping, Sequence

from .simplicial import TruncatedSimplicialSet, build_simplicial_set


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """Objects, morphisms ``id -> (source, target)``, identities, and composition.

    ``compose[(f, g)]`` is ``g ∘ f``: ``f`` first, defined exactly when
    ``target(f) == source(g)``.
    """

    objects: tuple[Hashable, ...]
    morphisms: Mapping[Hashable, tuple[Hashable, Hashable]]
    identity: Mapping[Hashable, Hashable]
    compose: Mapping[tuple[Hashable, Hashable], Hashable]

    def source(self, f):
        return self.morphisms[f][0]

    def target(self, f):
        return self.morphisms[f][1]

    def composable_pairs(self):
        by_source: dict[Hashable, list] = {}
        for g, (s, _) in self.morphisms.items():
            by_source.setdefault(s, []).append(g)
        for f, (_, t) in self.morphisms.items():
            for g in by_source.get(t, []):
                yield f, g

    def problems(self) -> list[str]:
        """Every violated category axiom, as messages."""
        out = []
        objs = set(self.objects)
        for f, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                out.append(f"morphism {f!r} has an endpoint outside the objects")
        for x in self.objects:
            i = self.identity.get(x)
            if i not in self.morphisms or self.morphisms[i] != (x, x):
                out.append(f"identity of {x!r} is missing or not an endomorphism")
        if out:
            return out
        for f, g in self.composable_pairs():
            h = self.compose.get((f, g))
            if h is None:
                out.append(f"composite of {f!r} then {g!r} is undefined")
            elif self.morphisms.get(h) != (self.source(f), self.target(g)):
                out.append(f"composite of {f!r} then {g!r} has the wrong endpoints")
        for (f, g) in self.compose:
            if self.target(f) != self.source(g):
                out.append(f"composite listed for non-composable pair ({f!r}, {g!r})")
        if out:
            return out
        for f, (s, t) in self.morphisms.items():
            if self.compose[(self.identity[s], f)] != f or self.compose[(f, self.identity[t])] != f:
                out.append(f"unit law fails at {f!r}")
        for f, g in self.composable_pairs():
            fg = self.compose[(f, g)]
            for h in self.morphisms:
                if self.source(h) == self.target(g):
                    if self.compose[(fg, h)] != self.compose[(f, self.compose[(g, h)])]:
                        out.append(f"associativity fails at ({f!r}, {g!r}, {h!r})")
        return out

    def check(self) -> "FiniteCategory":
        problems = self.problems()
        if problems:
            raise ValueError("invalid category: " + "; ".join(problems[:5]))
        return self

    @classmethod
    def from_poset(cls, elements: Sequence[Hashable], leq) -> "FiniteCategory":
        """Thin category with a morphism ``(x, y)`` whenever ``leq(x, y)``."""
        morphisms = {(x, y): (x, y) for x in elements for y in elements if leq(x, y)}
        compose = {((x, y), (y2, z)): (x, z) for (x, y) in morphisms for (y2, z) in morphisms if y == y2}
        return cls(tuple(elements), morphisms, {x: (x, x) for x in elements}, compose)

    @classmethod
    def from_monoid(cls, monoid: "PartialMonoid", obj: Hashable = "*") -> "FiniteCategory":
        if len(monoid.products) != len(monoid.elements) ** 2:
            raise ValueError("only total monoids give one-object categories")
        morphisms = {m: (obj, obj) for m in monoid.elements}
        return cls((obj,), morphisms, {obj: monoid.unit}, dict(monoid.products))

    def to_json(self) -> dict[str, Any]:
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": f, "src": s, "tgt": t} for f, (s, t) in self.morphisms.items()],
            "identity": [[x, i] for x, i in self.identity.items()],
            "compose": [[f, g, h] for (f, g), h in self.compose.items()],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FiniteCategory":
        try:
            return cls(
                tuple(data["objects"]),
                {m["id"]: (m["src"], m["tgt"]) for m in data["morphisms"]},
                {x: i for x, i in data["identity"]},
                {(f, g): h for f, g, h in data["compose"]},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed category JSON: {exc}") from exc


def ordinal_category(n: int) -> FiniteCategory:
    """``[n]`` as the poset category ``0 < 1 < ... < n``."""
    return FiniteCategory.from_poset(list(range(n + 1)), lambda x, y: x <= y)


def nerve_category(C: FiniteCategory, N: int) -> TruncatedSimplicialSet:
    """Level ``n`` holds ``(objects, morphisms)`` of composable chains ``x_0 -> ... -> x_n``."""
    C.check()
    by_source: dict[Hashable, list] = {}
    for f, (s, _) in C.morphisms.items():
        by_source.setdefault(s, []).append(f)
    levels = [[((x,), ()) for x in C.objects]]
    for n in range(1, N + 1):
        levels.append(
            [
                (objs + (C.target(f),), fs + (f,))
                for objs, fs in levels[-1]
                for f in by_source.get(objs[-1], [])
            ]
        )

    def face(n, i, d):
        objs, fs = d
        if i == 0:
            return objs[1:], fs[1:]
        if i == n:
            return objs[:-1], fs[:-1]
        return objs[:i] + objs[i + 1:], fs[: i - 1] + (C.compose[(fs[i - 1], fs[i])],) + fs[i + 1:]

    def degeneracy(n, i, d):
        objs, fs = d
        return objs[: i + 1] + objs[i:], fs[:i] + (C.identity[objs[i]],) + fs[i:]

    return build_simplicial_set(levels, face, degeneracy, "nerve(C)")


@dataclass(frozen=True, eq=False)
class PartialMonoid:
    """A set with unit and a product defined on ``domain = products.keys()``."""

    elements: tuple[Hashable, ...]
    unit: Hashable
    products: Mapping[tuple[Hashable, Hashable], Hashable] = field(default_factory=dict)

    def defined(self, x, y) -> bool:
        return (x, y) in self.products

    def problems(self) -> list[str]:
        out = []
        elems = set(self.elements)
        if self.unit not in elems:
            return ["unit is not an element"]
        for (x, y), z in self.products.items():
            if x not in elems or y not in elems or z not in elems:
                out.append(f"product {x!r}*{y!r}={z!r} leaves the element set")
        for m in self.elements:
            if self.products.get((self.unit, m)) != m or self.products.get((m, self.unit)) != m:
                out.append(f"unit law fails at {m!r}")
        if out:
            return out
        p = self.products
        for x, y, z in itertools.product(self.elements, repeat=3):
            left = p[(p[(x, y)], z)] if (x, y) in p and (p[(x, y)], z) in p else None
            right = p[(x, p[(y, z)])] if (y, z) in p and (x, p[(y, z)]) in p else None
            if left != right:
                out.append(f"associativity fails at ({x!r}, {y!r}, {z!r})")
        return out

    def check(self) -> "PartialMonoid":
        problems = self.problems()
        if problems:
            raise ValueError("invalid partial monoid: " + "; ".join(problems[:5]))
        return self

    @property
    def is_total(self) -> bool:
        return len(self.products) == len(self.elements) ** 2

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "PartialMonoid":
        try:
            return cls(tuple(data["elements"]), data["unit"], {(x, y): z for x, y, z in data["products"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed partial-monoid JSON: {exc}") from exc

    def to_json(self) -> dict[str, Any]:
        return {
            "elements": list(self.elements),
            "unit": self.unit,
            "products": [[x, y, z] for (x, y), z in self.products.items()],
        }


def cyclic_monoid(k: int) -> PartialMonoid:
    """``Z/k`` with elements ``"0".."k-1"``; ``"0"`` is the unit."""
    elems = tuple(str(i) for i in range(k))
    return PartialMonoid(elems, "0", {(str(a), str(b)): str((a + b) % k) for a in range(k) for b in range(k)})


def square_zero_partial_monoid() -> PartialMonoid:
    """``{1, x}`` with ``x * x`` undefined."""
    return PartialMonoid(("1", "x"), "1", {("1", "1"): "1", ("1", "x"): "x", ("x", "1"): "x"})


def nerve_partial_monoid(M: PartialMonoid, N: int) -> TruncatedSimplicialSet:
    """Level ``k`` holds the composable ``k``-tuples; level 0 is ``()``."""
    M.check()
    p = M.products
    levels = [[()]]
    prefix = {(): M.unit}
    for _ in range(N):
        nxt, nxt_prefix = [], {}
        for t in levels[-1]:
            for m in M.elements:
                if (prefix[t], m) in p:
                    u = t + (m,)
                    nxt.append(u)
                    nxt_prefix[u] = p[(prefix[t], m)]
        levels.append(nxt)
        prefix = nxt_prefix

    def face(n, i, t):
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[: i - 1] + (p[(t[i - 1], t[i])],) + t[i + 1:]

    def degeneracy(n, i, t):
        return t[:i] + (M.unit,) + t[i:]

    return build_simplicial_set(levels, face, degeneracy, "nerve(M)")


def category_from_1segal(K: TruncatedSimplicialSet) -> FiniteCategory:
    """Read a category off ``K``: objects ``K_0``, morphisms ``K_1``, composition through ``K_2``.

    Source is ``d_1``, target ``d_0``, identities ``s_0``; the composite of
    ``(f, g)`` is ``d_1`` of the unique 2-simplex with ``(d_2, d_0) = (f, g)``.
    """
    from .segal import segal1_check

    if K.truncation < 2:
        raise ValueError("need truncation >= 2")
    report = segal1_check(K, [2])
    if not report:
        raise ValueError(f"1-Segal condition fails at level 2: {report.witness.kind}")
    d0, d1, d2 = (K.faces[2][i] for i in range(3))
    inverse = {(int(a), int(b)): k for k, (a, b) in enumerate(zip(d2, d0))}
    obj = K.levels[0]
    mor = K.levels[1]
    morphisms = {mor[f]: (obj[K.faces[1][1][f]], obj[K.faces[1][0][f]]) for f in range(K.size(1))}
    identity = {obj[x]: mor[K.degeneracies[0][0][x]] for x in range(K.size(0))}
    compose = {(mor[f], mor[g]): mor[d1[k]] for (f, g), k in inverse.items()}
    return FiniteCategory(obj, morphisms, identity, compose).check()


def category_isomorphism(C: FiniteCategory, D: FiniteCategory) -> tuple[dict, dict] | None:
    """Search for an isomorphism ``C -> D``; returns (object map, morphism map) or ``None``.

    Backtracking over object bijections, then over hom-set bijections.  Meant
    for small categories.
    """
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None

    def hom(cat, x, y):
        return sorted((f for f, st in cat.morphisms.items() if st == (x, y)), key=repr)

    mor_c = sorted(C.morphisms, key=repr)
    for perm in itertools.permutations(D.objects):
        omap = dict(zip(C.objects, perm))
        if any(len(hom(C, x, y)) != len(hom(D, omap[x], omap[y])) for x in C.objects for y in C.objects):
            continue
        choices = {f: hom(D, omap[C.source(f)], omap[C.target(f)]) for f in mor_c}
        mmap: dict = {}
        used: set = set()

        def extend(k: int) -> bool:
            if k == len(mor_c):
                return all(
                    mmap[C.compose[(f, g)]] == D.compose[(mmap[f], mmap[g])] for f, g in C.composable_pairs()
                ) and all(mmap[C.identity[x]] == D.identity[omap[x]] for x in C.objects)
            f = mor_c[k]
            for g in choices[f]:
                if g in used:
                    continue
                mmap[f] = g
                used.add(g)
                if extend(k + 1):
                    return True
                used.discard(g)
                del mmap[f]
            return False

        if extend(0):
            return omap, dict(mmap)
    return None


def nerve_index_map(C: FiniteCategory) -> tuple[dict, dict]:
    """Canonical maps ``C -> category_from_1segal(nerve(C))`` on objects and morphisms."""
    omap = {x: ((x,), ()) for x in C.objects}
    mmap = {f: ((s, t), (f,)) for f, (s, t) in C.morphisms.items()}
    return omap, mmap


def is_functor_iso(C: FiniteCategory, D: FiniteCategory, omap: dict, mmap: dict) -> bool:
    """Check that the given maps form an isomorphism of categories."""
    if sorted(map(repr, omap.values())) != sorted(map(repr, D.objects)):
        return False
    if len(set(mmap.values())) != len(D.morphisms) or set(mmap.values()) != set(D.morphisms):
        return False
    for f, (s, t) in C.morphisms.items():
        if D.morphisms[mmap[f]] != (omap[s], omap[t]):
            return False
    if any(mmap[C.identity[x]] != D.identity[omap[x]] for x in C.objects):
        return False
    return all(mmap[C.compose[(f, g)]] == D.compose[(mmap[f], mmap[g])] for f, g in C.composable_pairs())

