"""Pointed stable double categories, the S-construction and its inverse.

Conventions:

* ``hor[f] = (source, target)`` and likewise for ``ver``.
* ``hor_comp[(f, g)]`` is ``f`` followed by ``g`` (``g ∘ f``); same for ``ver_comp``.
* ``squares[s] = (top, bottom, left, right)``.  ``top`` and ``left`` leave the
  top-left corner, ``bottom`` and ``right`` enter the bottom-right corner.

Square composition is never stored.  In a stable double category a square is
pinned down by its source span, so composites and identity squares are found
by filling spans and then checked against the expected targets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .nerves import FiniteCategory
from .simplicial import (
    MonotoneMap,
    TruncatedSimplicialSet,
    build_simplicial_set,
    face_on,
    from_jsonable,
    levelwise_isomorphic,
    to_jsonable,
)

Square = tuple[Hashable, Hashable, Hashable, Hashable]


@dataclass(frozen=True, eq=False)
class DoubleCategory:
    objects: tuple[Hashable, ...]
    hor: Mapping[Hashable, tuple[Hashable, Hashable]]
    ver: Mapping[Hashable, tuple[Hashable, Hashable]]
    hor_id: Mapping[Hashable, Hashable]
    ver_id: Mapping[Hashable, Hashable]
    hor_comp: Mapping[tuple[Hashable, Hashable], Hashable]
    ver_comp: Mapping[tuple[Hashable, Hashable], Hashable]
    squares: Mapping[Hashable, Square]
    point: Hashable | None = None
    label: str = ""

    def hor_category(self) -> FiniteCategory:
        return FiniteCategory(self.objects, self.hor, self.hor_id, self.hor_comp)

    def ver_category(self) -> FiniteCategory:
        return FiniteCategory(self.objects, self.ver, self.ver_id, self.ver_comp)

    @cached_property
    def spans(self) -> dict[tuple[Hashable, Hashable], list[Hashable]]:
        out: dict = {}
        for s, (top, _, left, _) in self.squares.items():
            out.setdefault((top, left), []).append(s)
        return out

    @cached_property
    def cospans(self) -> dict[tuple[Hashable, Hashable], list[Hashable]]:
        out: dict = {}
        for s, (_, bottom, _, right) in self.squares.items():
            out.setdefault((bottom, right), []).append(s)
        return out

    @cached_property
    def hor_from(self) -> dict[Hashable, list[Hashable]]:
        out: dict = {x: [] for x in self.objects}
        for f, (s, _) in self.hor.items():
            out.setdefault(s, []).append(f)
        return out

    @cached_property
    def ver_from(self) -> dict[Hashable, list[Hashable]]:
        out: dict = {x: [] for x in self.objects}
        for g, (s, _) in self.ver.items():
            out.setdefault(s, []).append(g)
        return out

    def fill_span(self, top: Hashable, left: Hashable) -> Hashable:
        found = self.spans.get((top, left), [])
        if len(found) != 1:
            raise ValueError(f"span ({top!r}, {left!r}) has {len(found)} fillers, expected 1")
        return found[0]

    def fill_cospan(self, bottom: Hashable, right: Hashable) -> Hashable:
        found = self.cospans.get((bottom, right), [])
        if len(found) != 1:
            raise ValueError(f"cospan ({bottom!r}, {right!r}) has {len(found)} fillers, expected 1")
        return found[0]

    def vertical_identity_square(self, f: Hashable) -> Hashable:
        """The square with ``f`` on top and bottom and identity sides."""
        return self.fill_span(f, self.ver_id[self.hor[f][0]])

    def horizontal_identity_square(self, g: Hashable) -> Hashable:
        """The square with ``g`` on both sides and identity top and bottom."""
        return self.fill_span(self.hor_id[self.ver[g][0]], g)

    def unique_hor_from_point(self, a: Hashable) -> Hashable:
        found = [f for f in self.hor_from.get(self.point, []) if self.hor[f][1] == a]
        if len(found) != 1:
            raise ValueError(f"{len(found)} horizontal morphisms from the point to {a!r}")
        return found[0]

    def unique_ver_to_point(self, a: Hashable) -> Hashable:
        found = [g for g in self.ver_from.get(a, []) if self.ver[g][1] == self.point]
        if len(found) != 1:
            raise ValueError(f"{len(found)} vertical morphisms from {a!r} to the point")
        return found[0]

    def sizes(self) -> dict[str, int]:
        return {"objects": len(self.objects), "hor": len(self.hor), "ver": len(self.ver), "squares": len(self.squares)}

    # JSON ------------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        J = to_jsonable
        string_objects = all(isinstance(x, str) for x in self.objects)

        def id_table(table):
            if string_objects:
                return {x: J(i) for x, i in table.items()}
            return [[J(x), J(i)] for x, i in table.items()]

        return {
            "objects": [J(x) for x in self.objects],
            "point": J(self.point),
            "hor": [{"id": J(f), "src": J(s), "tgt": J(t)} for f, (s, t) in self.hor.items()],
            "ver": [{"id": J(f), "src": J(s), "tgt": J(t)} for f, (s, t) in self.ver.items()],
            "hor_comp": [[J(f), J(g), J(h)] for (f, g), h in self.hor_comp.items()],
            "ver_comp": [[J(f), J(g), J(h)] for (f, g), h in self.ver_comp.items()],
            "hor_id": id_table(self.hor_id),
            "ver_id": id_table(self.ver_id),
            "squares": [
                {"id": J(s), "top": J(t), "bottom": J(b), "left": J(l), "right": J(r)}
                for s, (t, b, l, r) in self.squares.items()
            ],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DoubleCategory":
        """Read the JSON format; list-valued ids become tuples."""
        F = from_jsonable

        def id_table(raw):
            pairs = raw.items() if isinstance(raw, dict) else raw
            return {F(x): F(i) for x, i in pairs}

        try:
            return cls(
                objects=tuple(F(x) for x in data["objects"]),
                hor={F(m["id"]): (F(m["src"]), F(m["tgt"])) for m in data["hor"]},
                ver={F(m["id"]): (F(m["src"]), F(m["tgt"])) for m in data["ver"]},
                hor_id=id_table(data["hor_id"]),
                ver_id=id_table(data["ver_id"]),
                hor_comp={(F(f), F(g)): F(h) for f, g, h in data.get("hor_comp", [])},
                ver_comp={(F(f), F(g)): F(h) for f, g, h in data.get("ver_comp", [])},
                squares={
                    F(s["id"]): (F(s["top"]), F(s["bottom"]), F(s["left"]), F(s["right"]))
                    for s in data["squares"]
                },
                point=F(data.get("point")),
                label=data.get("label", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed double category JSON: {exc}") from exc


# checks ------------------------------------------------------------------


@dataclass
class DoubleCategoryReport:
    check: str
    problems: list[str] = field(default_factory=list)
    witness: Any = None

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "verdict": "pass" if self.ok else "fail",
            "problems": self.problems,
            "witness": to_jsonable(self.witness),
        }


def boundary_problems(D: DoubleCategory) -> list[str]:
    out = []
    for s, (top, bottom, left, right) in D.squares.items():
        try:
            t0, t1 = D.hor[top]
            b0, b1 = D.hor[bottom]
            l0, l1 = D.ver[left]
            r0, r1 = D.ver[right]
        except KeyError as exc:
            out.append(f"square {s!r} uses unknown morphism {exc}")
            continue
        if not (t0 == l0 and t1 == r0 and l1 == b0 and b1 == r1):
            out.append(f"square {s!r} has inconsistent corners")
    return out


def check_pointed(D: DoubleCategory) -> DoubleCategoryReport:
    """The point must be initial in Hor and terminal in Ver."""
    if D.point is None:
        raise ValueError("no point designated")
    report = DoubleCategoryReport("pointed")
    if D.point not in D.objects:
        report.problems.append(f"point {D.point!r} is not an object")
        return report
    for a in D.objects:
        into = [f for f in D.hor_from[D.point] if D.hor[f][1] == a]
        out = [g for g in D.ver_from[a] if D.ver[g][1] == D.point]
        if len(into) != 1 or len(out) != 1:
            report.problems.append(
                f"object {a!r}: {len(into)} horizontal morphisms from the point, {len(out)} vertical to it"
            )
            report.witness = a
            return report
    return report


def check_stable(D: DoubleCategory) -> DoubleCategoryReport:
    """Every corner-compatible span and every cospan has exactly one square."""
    report = DoubleCategoryReport("stable")
    for a in D.objects:
        for top in D.hor_from[a]:
            for left in D.ver_from[a]:
                n = len(D.spans.get((top, left), []))
                if n != 1:
                    report.problems.append(f"span ({top!r}, {left!r}) has {n} fillers")
                    report.witness = ("span", top, left)
                    return report
    ver_into: dict = {}
    for g, (_, t) in D.ver.items():
        ver_into.setdefault(t, []).append(g)
    for bottom, (_, d) in D.hor.items():
        for right in ver_into.get(d, []):
            n = len(D.cospans.get((bottom, right), []))
            if n != 1:
                report.problems.append(f"cospan ({bottom!r}, {right!r}) has {n} fillers")
                report.witness = ("cospan", bottom, right)
                return report
    # stray squares whose span is not corner-compatible are caught by the boundary check
    return report


def compose_squares_h(D: DoubleCategory, alpha: Hashable, beta: Hashable) -> Hashable:
    """``alpha`` to the left of ``beta``."""
    at, ab, al, ar = D.squares[alpha]
    bt, bb, bl, br = D.squares[beta]
    if ar != bl:
        raise ValueError(f"squares {alpha!r} and {beta!r} do not share a vertical edge")
    s = D.fill_span(D.hor_comp[(at, bt)], al)
    _, bottom, _, right = D.squares[s]
    if bottom != D.hor_comp[(ab, bb)] or right != br:
        raise ValueError(f"horizontal composite of {alpha!r} and {beta!r} is incoherent")
    return s


def compose_squares_v(D: DoubleCategory, alpha: Hashable, beta: Hashable) -> Hashable:
    """``alpha`` above ``beta``."""
    at, ab, al, ar = D.squares[alpha]
    bt, bb, bl, br = D.squares[beta]
    if ab != bt:
        raise ValueError(f"squares {alpha!r} and {beta!r} do not share a horizontal edge")
    s = D.fill_span(at, D.ver_comp[(al, bl)])
    _, bottom, _, right = D.squares[s]
    if bottom != bb or right != D.ver_comp[(ar, br)]:
        raise ValueError(f"vertical composite of {alpha!r} and {beta!r} is incoherent")
    return s


def validate_double_category(D: DoubleCategory) -> DoubleCategoryReport:
    """Category axioms, square boundaries, stability, derived composition and interchange.

    Associativity of square composition is not checked separately: with
    stability it reduces to associativity in Hor and Ver.
    """
    report = DoubleCategoryReport("double-category")
    report.problems += [f"Hor: {p}" for p in D.hor_category().problems()]
    report.problems += [f"Ver: {p}" for p in D.ver_category().problems()]
    report.problems += boundary_problems(D)
    if report.problems:
        return report
    stable = check_stable(D)
    if not stable:
        report.problems += stable.problems
        report.witness = stable.witness
        return report
    try:
        for f, (a, b) in D.hor.items():
            s = D.vertical_identity_square(f)
            if D.squares[s] != (f, f, D.ver_id[a], D.ver_id[b]):
                report.problems.append(f"identity square on {f!r} has the wrong boundary")
        for g, (a, c) in D.ver.items():
            s = D.horizontal_identity_square(g)
            if D.squares[s] != (D.hor_id[a], D.hor_id[c], g, g):
                report.problems.append(f"identity square on {g!r} has the wrong boundary")
        if report.problems:
            return report
        by_left: dict = {}
        by_top: dict = {}
        for s, (t, _, l, _) in D.squares.items():
            by_left.setdefault(l, []).append(s)
            by_top.setdefault(t, []).append(s)
        hcomp = {}
        for a, (_, _, _, r) in D.squares.items():
            for b in by_left.get(r, []):
                hcomp[(a, b)] = compose_squares_h(D, a, b)
        vcomp = {}
        for a, (_, bot, _, _) in D.squares.items():
            for b in by_top.get(bot, []):
                vcomp[(a, b)] = compose_squares_v(D, a, b)
        for s, (t, b, l, r) in D.squares.items():
            if hcomp[(D.horizontal_identity_square(l), s)] != s or hcomp[(s, D.horizontal_identity_square(r))] != s:
                report.problems.append(f"horizontal unit law fails at {s!r}")
            if vcomp[(D.vertical_identity_square(t), s)] != s or vcomp[(s, D.vertical_identity_square(b))] != s:
                report.problems.append(f"vertical unit law fails at {s!r}")
        for (a, b), ab in hcomp.items():
            for c in by_top.get(D.squares[a][1], []):
                for d in by_top.get(D.squares[b][1], []):
                    if (c, d) not in hcomp:
                        continue
                    if vcomp[(ab, hcomp[(c, d)])] != hcomp[(vcomp[(a, c)], vcomp[(b, d)])]:
                        report.problems.append(f"interchange fails on grid {(a, b, c, d)!r}")
                        report.witness = (a, b, c, d)
                        return report
    except (KeyError, ValueError) as exc:
        report.problems.append(str(exc))
    return report


def interchange_grids(D: DoubleCategory) -> int:
    """Number of composable 2x2 grids (for reporting)."""
    by_left: dict = {}
    by_top: dict = {}
    for s, (t, _, l, _) in D.squares.items():
        by_left.setdefault(l, []).append(s)
        by_top.setdefault(t, []).append(s)
    count = 0
    for a, (_, bot_a, _, r) in D.squares.items():
        for b in by_left.get(r, []):
            for c in by_top.get(bot_a, []):
                for d in by_top.get(D.squares[b][1], []):
                    if D.squares[d][2] == D.squares[c][3]:
                        count += 1
    return count


# examples ----------------------------------------------------------------


def _category_with_units(objects, morphisms: dict, prefix: str, extra: dict):
    """Add identities and unit-law composites to explicit non-identity composites."""
    ids = {x: f"{prefix}({x})" for x in objects}
    allm = dict(morphisms)
    allm.update({i: (x, x) for x, i in ids.items()})
    comp = dict(extra)
    for f, (s, t) in allm.items():
        comp[(ids[s], f)] = f
        comp[(f, ids[t])] = f
    return allm, ids, comp


def _with_identity_squares(hor, ver, hor_id, ver_id, squares: dict) -> dict:
    out = {f"vid({f})": (f, f, ver_id[s], ver_id[t]) for f, (s, t) in hor.items()}
    for g, (s, t) in ver.items():
        if g not in ver_id.values():
            out[f"hid({g})"] = (hor_id[s], hor_id[t], g, g)
    out.update(squares)
    return out


def w2() -> DoubleCategory:
    """The staircase for ``n = 2`` with the three diagonal objects collapsed to ``*``.

    Objects ``*``, ``01``, ``02``, ``12``; the one non-identity square has
    top ``m: 01 -> 02``, left ``t01: 01 -> *``, right ``e: 02 -> 12`` and
    bottom ``z12: * -> 12``.
    """
    objects = ("*", "01", "02", "12")
    hor, hor_id, hor_comp = _category_with_units(
        objects,
        {"z01": ("*", "01"), "m": ("01", "02"), "z02": ("*", "02"), "z12": ("*", "12")},
        "1h",
        {("z01", "m"): "z02"},
    )
    ver, ver_id, ver_comp = _category_with_units(
        objects,
        {"t01": ("01", "*"), "e": ("02", "12"), "t12": ("12", "*"), "t02": ("02", "*")},
        "1v",
        {("e", "t12"): "t02"},
    )
    squares = _with_identity_squares(hor, ver, hor_id, ver_id, {"sigma": ("m", "z12", "t01", "e")})
    return DoubleCategory(objects, hor, ver, hor_id, ver_id, hor_comp, ver_comp, squares, "*", "W_2")


def trivial_double_category() -> DoubleCategory:
    hor, hor_id, hor_comp = _category_with_units(("*",), {}, "1h", {})
    ver, ver_id, ver_comp = _category_with_units(("*",), {}, "1v", {})
    squares = _with_identity_squares(hor, ver, hor_id, ver_id, {})
    return DoubleCategory(("*",), hor, ver, hor_id, ver_id, hor_comp, ver_comp, squares, "*", "point")


# staircases ----------------------------------------------------------------


def _pairs(n: int, lo: int, hi: int) -> list[tuple[int, int]]:
    """``(i, j)`` with ``0 <= i``, ``i + lo <= j <= n - hi``, in lexicographic order."""
    return [(i, j) for i in range(n + 1) for j in range(i + lo, n - hi + 1)]


@dataclass
class Staircase:
    """One element of ``S_n``.

    ``obj[i, j]`` for ``i < j`` (the diagonal is the point), ``hor[i, j]``
    from ``a_ij`` to ``a_i,j+1``, ``ver[i, j]`` from ``a_ij`` to ``a_i+1,j``
    and ``cell[i, j]`` for ``i < j < n`` bounded by ``hor[i, j]``,
    ``ver[i, j]``, ``ver[i, j+1]`` and ``hor[i+1, j]``.
    """

    n: int
    obj: dict[tuple[int, int], Hashable]
    hor: dict[tuple[int, int], Hashable]
    ver: dict[tuple[int, int], Hashable]
    cell: dict[tuple[int, int], Hashable]

    @property
    def descriptor(self) -> tuple:
        n = self.n
        return (
            tuple(self.obj[p] for p in _pairs(n, 1, 0)),
            tuple(self.hor[p] for p in _pairs(n, 0, 1)),
            tuple(self.ver[p] for p in _pairs(n, 1, 0)),
            tuple(self.cell[p] for p in _pairs(n, 1, 1)),
        )

    @classmethod
    def from_descriptor(cls, d: tuple) -> "Staircase":
        objs, hors, vers, cells = d
        n = 0
        while n * (n + 1) // 2 < len(hors):
            n += 1
        return cls(
            n,
            dict(zip(_pairs(n, 1, 0), objs)),
            dict(zip(_pairs(n, 0, 1), hors)),
            dict(zip(_pairs(n, 1, 0), vers)),
            dict(zip(_pairs(n, 1, 1), cells)),
        )

    def object_at(self, D: DoubleCategory, i: int, j: int) -> Hashable:
        return D.point if i == j else self.obj[i, j]


def staircase_problems(D: DoubleCategory, s: Staircase) -> list[str]:
    out = []
    a = lambda i, j: s.object_at(D, i, j)  # noqa: E731
    for (i, j), f in s.hor.items():
        if D.hor.get(f) != (a(i, j), a(i, j + 1)):
            out.append(f"hor[{i},{j}] = {f!r} has the wrong endpoints")
    for (i, j), g in s.ver.items():
        if D.ver.get(g) != (a(i, j), a(i + 1, j)):
            out.append(f"ver[{i},{j}] = {g!r} has the wrong endpoints")
    for (i, j), c in s.cell.items():
        if D.squares.get(c) != (s.hor[i, j], s.hor[i + 1, j], s.ver[i, j], s.ver[i, j + 1]):
            out.append(f"cell[{i},{j}] = {c!r} has the wrong boundary")
    return out


def staircase_from_top_row(D: DoubleCategory, top: Sequence[Hashable], a01: Hashable | None = None) -> Staircase:
    """Fill the grid below a chain of horizontal morphisms ``a_01 -> ... -> a_0n``.

    ``top`` holds ``hor[0, 1], ..., hor[0, n-1]``; for ``n = 1`` pass an empty
    chain together with ``a01``.  Each cell is the unique filler of its
    source span and the result is re-validated.
    """
    if top:
        a01 = D.hor[top[0]][0]
    if a01 is None:
        raise ValueError("an empty top row needs the object a_01")
    n = len(top) + 1
    obj = {(0, 1): a01}
    hor = {(0, 0): D.unique_hor_from_point(a01)}
    ver: dict = {}
    cell: dict = {}
    for j, f in enumerate(top, start=1):
        hor[0, j] = f
        obj[0, j + 1] = D.hor[f][1]
    for i in range(n):
        ver[i, i + 1] = D.unique_ver_to_point(obj[i, i + 1])
        for j in range(i + 1, n):
            c = D.fill_span(hor[i, j], ver[i, j])
            _, bottom, _, right = D.squares[c]
            cell[i, j] = c
            ver[i, j + 1] = right
            hor[i + 1, j] = bottom
            obj[i + 1, j + 1] = D.ver[right][1]
    s = Staircase(n, obj, hor, ver, cell)
    problems = staircase_problems(D, s)
    if problems:
        raise ValueError("stability fill produced an invalid staircase: " + "; ".join(problems[:3]))
    return s


def staircases(D: DoubleCategory, n: int) -> list[Staircase]:
    """All of ``S_n(D)``, enumerated from top rows."""
    if n == 0:
        return [Staircase(0, {}, {}, {}, {})]
    chains: list[tuple[Hashable, list]] = [(a, []) for a in D.objects]
    for _ in range(n - 1):
        chains = [
            (a, chain + [f])
            for a, chain in chains
            for f in D.hor_from[D.hor[chain[-1]][1] if chain else a]
        ]
    return [staircase_from_top_row(D, chain, a) for a, chain in chains]


def _hor_path(D: DoubleCategory, arrows: Iterable[Hashable], start: Hashable) -> Hashable:
    out = D.hor_id[start]
    for f in arrows:
        out = D.hor_comp[(out, f)]
    return out


def _ver_path(D: DoubleCategory, arrows: Iterable[Hashable], start: Hashable) -> Hashable:
    out = D.ver_id[start]
    for g in arrows:
        out = D.ver_comp[(out, g)]
    return out


def reindex(D: DoubleCategory, s: Staircase, theta: MonotoneMap) -> Staircase:
    """The staircase ``b_pq = a_(theta p, theta q)`` for ``theta: [m] -> [n]``.

    Arrows are composites along the skipped range, cells are composites of
    the covered block of cells, and empty ranges give identities.
    """
    m = theta.source_arity
    t = theta.values
    a = lambda i, j: s.object_at(D, i, j)  # noqa: E731
    obj = {(p, q): a(t[p], t[q]) for p, q in _pairs(m, 1, 0)}
    hor = {
        (p, q): _hor_path(D, (s.hor[t[p], k] for k in range(t[q], t[q + 1])), a(t[p], t[q]))
        for p, q in _pairs(m, 0, 1)
    }
    ver = {
        (p, q): _ver_path(D, (s.ver[k, t[q]] for k in range(t[p], t[p + 1])), a(t[p], t[q]))
        for p, q in _pairs(m, 1, 0)
    }
    cell = {}
    for p, q in _pairs(m, 1, 1):
        rows = range(t[p], t[p + 1])
        cols = range(t[q], t[q + 1])
        if not rows:
            cell[p, q] = D.vertical_identity_square(hor[p, q])
            continue
        if not cols:
            cell[p, q] = D.horizontal_identity_square(ver[p, q])
            continue
        block = None
        for r in rows:
            row = None
            for k in cols:
                row = s.cell[r, k] if row is None else compose_squares_h(D, row, s.cell[r, k])
            block = row if block is None else compose_squares_v(D, block, row)
        cell[p, q] = block
    return Staircase(m, obj, hor, ver, cell)


def _require_input(D: DoubleCategory) -> None:
    for report in (validate_double_category(D), check_pointed(D)):
        if not report:
            raise ValueError(f"{report.check} check failed: " + "; ".join(report.problems[:3]))


def s_construction(D: DoubleCategory, N: int, checked: bool = False) -> TruncatedSimplicialSet:
    """``S_0, ..., S_N`` of a pointed stable double category."""
    if not checked:
        _require_input(D)
    levels = [[st.descriptor for st in staircases(D, n)] for n in range(N + 1)]

    def face(n, i, d):
        return reindex(D, Staircase.from_descriptor(d), MonotoneMap.coface(i, n - 1)).descriptor

    def degeneracy(n, i, d):
        return reindex(D, Staircase.from_descriptor(d), MonotoneMap.codegeneracy(i, n + 1)).descriptor

    return build_simplicial_set(levels, face, degeneracy, f"S({D.label or 'D'})")


# the inverse construction --------------------------------------------------


def _composition_from_level3(
    X: TruncatedSimplicialSet, first: int, second: int, result: int, shared: tuple[int, int], name: str
) -> dict:
    """Invert ``(d_first, d_second): X_3 -> X_2 x_{X_1} X_2`` and read off ``d_result``.

    A pair ``(f, g)`` is composable when face ``shared[0]`` of ``f`` equals
    face ``shared[1]`` of ``g``.
    """
    d = X.faces[3]
    table: dict = {}
    for k in range(X.size(3)):
        key = (int(d[first][k]), int(d[second][k]))
        if key in table:
            raise ValueError(
                f"bijection {name} fails: 3-simplices {table[key][0]} and {k} have the same faces {key}"
            )
        table[key] = (k, int(d[result][k]))
    src_face = X.faces[2][shared[0]]
    tgt_face = X.faces[2][shared[1]]
    by_edge: dict = {}
    for g in range(X.size(2)):
        by_edge.setdefault(int(tgt_face[g]), []).append(g)
    for f in range(X.size(2)):
        for g in by_edge.get(int(src_face[f]), []):
            if (f, g) not in table:
                raise ValueError(f"bijection {name} fails: composable pair {(f, g)} has no preimage")
    return {key: h for key, (_, h) in table.items()}


def p_construction(X: TruncatedSimplicialSet) -> DoubleCategory:
    """The double category read off levels 1 to 3 of a 2-Segal set.

    Raises ``ValueError`` naming the face pair whose bijection fails when
    ``X`` is not 2-Segal in low degrees.
    """
    if X.truncation < 3:
        raise ValueError("the construction needs truncation >= 3")
    L1, L2, L3 = X.levels[1], X.levels[2], X.levels[3]
    d0, d1, d2 = X.faces[2]
    hor = {L2[k]: (L1[d2[k]], L1[d1[k]]) for k in range(X.size(2))}
    ver = {L2[k]: (L1[d1[k]], L1[d0[k]]) for k in range(X.size(2))}
    hor_id = {L1[k]: L2[X.degeneracies[1][1][k]] for k in range(X.size(1))}
    ver_id = {L1[k]: L2[X.degeneracies[1][0][k]] for k in range(X.size(1))}
    hc = _composition_from_level3(X, 3, 1, 2, (1, 2), "(d_3, d_1)")
    vc = _composition_from_level3(X, 2, 0, 1, (0, 1), "(d_2, d_0)")
    f3 = X.faces[3]
    squares = {L3[k]: (L2[f3[1][k]], L2[f3[0][k]], L2[f3[3][k]], L2[f3[2][k]]) for k in range(X.size(3))}
    point = L1[X.degeneracies[0][0][0]] if X.is_reduced() else None
    return DoubleCategory(
        tuple(L1),
        hor,
        ver,
        hor_id,
        ver_id,
        {(L2[f], L2[g]): L2[h] for (f, g), h in hc.items()},
        {(L2[f], L2[g]): L2[h] for (f, g), h in vc.items()},
        squares,
        point,
        f"P({X.label})",
    )


# comparisons -------------------------------------------------------------


@dataclass
class ComparisonReport:
    direction: str
    ok: bool
    reason: str = ""
    level: int | None = None
    maps: Any = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "check": f"{self.direction}-comparison",
            "verdict": "pass" if self.ok else "fail",
            "reason": self.reason,
            "level": self.level,
        }


def unit_comparison(X: TruncatedSimplicialSet, N: int | None = None) -> ComparisonReport:
    """Send each simplex to the staircase of its faces and verify a levelwise isomorphism.

    ``a_ij``, ``hor[i, j]``, ``ver[i, j]`` and ``cell[i, j]`` are the faces
    on ``{i, j}``, ``{i, j, j+1}``, ``{i, i+1, j}`` and ``{i, i+1, j, j+1}``.
    """
    N = X.truncation if N is None else N
    if not X.is_reduced():
        raise ValueError("the comparison needs a reduced simplicial set")
    if N < 3 or N > X.truncation:
        raise ValueError(f"comparison level {N} must lie in 3..{X.truncation}")
    X = X.truncate(N)
    D = p_construction(X)
    S = s_construction(D, N)
    L1, L2, L3 = X.levels[1], X.levels[2], X.levels[3]
    maps = []
    for n in range(N + 1):
        tables = {}

        def col(vertices, level_inv):
            key = tuple(vertices)
            if key not in tables:
                tables[key] = face_on(X, vertices, n)
            return [level_inv[k] for k in tables[key]]

        parts = [
            [col((i, j), L1) for i, j in _pairs(n, 1, 0)],
            [col((i, j, j + 1), L2) for i, j in _pairs(n, 0, 1)],
            [col((i, i + 1, j), L2) for i, j in _pairs(n, 1, 0)],
            [col((i, i + 1, j, j + 1), L3) for i, j in _pairs(n, 1, 1)],
        ]
        phi = np.empty(X.size(n), dtype=np.int64)
        for k in range(X.size(n)):
            d = tuple(tuple(c[k] for c in part) for part in parts)
            try:
                phi[k] = S.index(n, d)
            except KeyError:
                return ComparisonReport("unit", False, f"simplex {k} has no staircase", n)
        maps.append(phi)
    report = levelwise_isomorphic(X, S, maps)
    return ComparisonReport("unit", report.ok, report.reason, report.level, maps)


def check_double_functor_iso(D: DoubleCategory, E: DoubleCategory, omap, hmap, vmap, smap) -> str:
    """Empty string when the four maps form an isomorphism ``D -> E``, else the first problem."""
    for name, mp, src, tgt in (
        ("objects", omap, D.objects, E.objects),
        ("hor", hmap, D.hor, E.hor),
        ("ver", vmap, D.ver, E.ver),
        ("squares", smap, D.squares, E.squares),
    ):
        if set(mp) != set(src) or len(set(mp.values())) != len(mp) or set(mp.values()) != set(tgt):
            return f"{name} map is not a bijection"
    for f, (s, t) in D.hor.items():
        if E.hor[hmap[f]] != (omap[s], omap[t]):
            return f"hor {f!r} endpoints not preserved"
    for g, (s, t) in D.ver.items():
        if E.ver[vmap[g]] != (omap[s], omap[t]):
            return f"ver {g!r} endpoints not preserved"
    for x in D.objects:
        if E.hor_id[omap[x]] != hmap[D.hor_id[x]] or E.ver_id[omap[x]] != vmap[D.ver_id[x]]:
            return f"identities at {x!r} not preserved"
    for (f, g), h in D.hor_comp.items():
        if E.hor_comp.get((hmap[f], hmap[g])) != hmap[h]:
            return f"hor composite ({f!r}, {g!r}) not preserved"
    for (f, g), h in D.ver_comp.items():
        if E.ver_comp.get((vmap[f], vmap[g])) != vmap[h]:
            return f"ver composite ({f!r}, {g!r}) not preserved"
    for s, (t, b, l, r) in D.squares.items():
        if E.squares[smap[s]] != (hmap[t], hmap[b], vmap[l], vmap[r]):
            return f"boundary of square {s!r} not preserved"
    if D.point is not None and omap[D.point] != E.point:
        return "point not preserved"
    return ""


def counit_comparison(D: DoubleCategory) -> ComparisonReport:
    """Compare ``D`` with the double category of its own ``S_1, S_2, S_3``.

    Objects go to ``* -> a -> *``, a horizontal ``f`` to the 2-staircase with
    top arrow ``f``, a vertical ``g`` to the 2-staircase with ``ver[0, 2] = g``
    and a square to the 3-staircase whose cell ``(0, 2)`` it is.
    """
    _require_input(D)
    S = s_construction(D, 3, checked=True)
    E = p_construction(S)
    omap = {a: staircase_from_top_row(D, [], a).descriptor for a in D.objects}
    hmap = {f: staircase_from_top_row(D, [f]).descriptor for f in D.hor}

    def index_by(level, pick):
        out: dict = {}
        for d in S.levels[level]:
            out.setdefault(pick(Staircase.from_descriptor(d)), []).append(d)
        return out

    by_v02 = index_by(2, lambda st: st.ver[0, 2])
    by_c02 = index_by(3, lambda st: st.cell[0, 2])
    for table, what in ((by_v02, "vertical morphism"), (by_c02, "square")):
        for key, found in table.items():
            if len(found) != 1:
                return ComparisonReport("counit", False, f"{what} {key!r} appears in {len(found)} staircases")
    vmap = {g: by_v02[g][0] for g in D.ver if g in by_v02}
    smap = {s: by_c02[s][0] for s in D.squares if s in by_c02}
    problem = check_double_functor_iso(D, E, omap, hmap, vmap, smap)
    return ComparisonReport("counit", not problem, problem, None, (omap, hmap, vmap, smap))
