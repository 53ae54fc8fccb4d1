"""Hall algebras of reduced, levelwise-finite 2-Segal sets.

The basis is ``X_1`` and ``x · y = Σ_z g[x, y, z] z`` where ``g[x, y, z]``
counts 2-simplices ``σ`` with ``d_2 σ = x``, ``d_0 σ = y`` and
``d_1 σ = z``.  Coefficients are Python integers.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Mapping

from . import kernels
from .simplicial import TruncatedSimplicialSet, to_jsonable

HallElement = dict[Hashable, int]


@dataclass(frozen=True, eq=False)
class HallAlgebra:
    basis: tuple[Hashable, ...]
    unit: Hashable
    # (x index, y index) -> {z index: g}
    constants: Mapping[tuple[int, int], Mapping[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {b: k for k, b in enumerate(self.basis)})

    def position(self, b: Hashable) -> int:
        try:
            return self._pos[b]
        except KeyError:
            raise KeyError(f"{b!r} is not a basis element") from None

    def constant(self, x: Hashable, y: Hashable, z: Hashable) -> int:
        return self.constants.get((self.position(x), self.position(y)), {}).get(self.position(z), 0)

    def basis_product(self, x: Hashable, y: Hashable) -> HallElement:
        row = self.constants.get((self.position(x), self.position(y)), {})
        return {self.basis[z]: g for z, g in row.items() if g}

    def element(self, *terms: Hashable) -> HallElement:
        """Sum of the given basis elements (repeats add up)."""
        out: HallElement = {}
        for t in terms:
            self.position(t)
            out[t] = out.get(t, 0) + 1
        return out

    @property
    def one(self) -> HallElement:
        return {self.unit: 1}


def hall_algebra(X: TruncatedSimplicialSet) -> HallAlgebra:
    """Structure constants by one scan of ``X_2``.

    Does not re-check the 2-Segal condition; callers run
    :func:`segalsets.segal.segal2_check` first when it is in doubt.
    """
    if not X.is_reduced():
        raise ValueError(f"Hall algebra needs a reduced set; X_0 has {X.size(0)} elements")
    if X.truncation < 2:
        raise ValueError("Hall algebra needs truncation >= 2")
    d0, d1, d2 = X.faces[2]
    n1 = X.size(1)
    counts = kernels.count_triples(d2, d0, d1, n1, n1, n1)
    constants: dict[tuple[int, int], dict[int, int]] = {}
    for (x, y, z), g in sorted(counts.items()):
        constants.setdefault((x, y), {})[z] = g
    unit = X.levels[1][int(X.degeneracies[0][0][0])]
    return HallAlgebra(X.levels[1], unit, constants)


def multiply(A: HallAlgebra, u: HallElement, v: HallElement) -> HallElement:
    """Bilinear product of two elements given as ``{basis element: coefficient}``."""
    out: dict[int, int] = {}
    for x, a in u.items():
        px = A.position(x)
        for y, b in v.items():
            py = A.position(y)
            for z, g in A.constants.get((px, py), {}).items():
                out[z] = out.get(z, 0) + a * b * g
    return {A.basis[z]: c for z, c in sorted(out.items()) if c}


@dataclass
class LawReport:
    law: str
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "law": self.law,
            "verdict": "pass" if self.ok else "fail",
            "witness": [to_jsonable(w) for w in self.witness] if self.witness else None,
        }


def check_associative(A: HallAlgebra) -> LawReport:
    for x, y, z in itertools.product(A.basis, repeat=3):
        if multiply(A, multiply(A, {x: 1}, {y: 1}), {z: 1}) != multiply(A, {x: 1}, multiply(A, {y: 1}, {z: 1})):
            return LawReport("associative", False, (x, y, z))
    return LawReport("associative", True)


def check_unital(A: HallAlgebra) -> LawReport:
    for x in A.basis:
        if multiply(A, A.one, {x: 1}) != {x: 1}:
            return LawReport("unital", False, (A.unit, x))
        if multiply(A, {x: 1}, A.one) != {x: 1}:
            return LawReport("unital", False, (x, A.unit))
    return LawReport("unital", True)


def check_commutative(A: HallAlgebra) -> LawReport:
    for x, y in itertools.combinations(A.basis, 2):
        if A.basis_product(x, y) != A.basis_product(y, x):
            return LawReport("commutative", False, (x, y))
    return LawReport("commutative", True)


LAWS: dict[str, Callable[[HallAlgebra], LawReport]] = {
    "assoc": check_associative,
    "unital": check_unital,
    "comm": check_commutative,
}


def _default_name(b: Hashable) -> str:
    return json.dumps(to_jsonable(b), separators=(",", ":"), ensure_ascii=False)


def format_element(e: HallElement, name: Callable[[Hashable], str] = _default_name) -> str:
    if not e:
        return "0"
    return "+".join(name(z) if c == 1 else f"{c}*{name(z)}" for z, c in e.items())


def export_table(A: HallAlgebra, fmt: str = "text", name: Callable[[Hashable], str] | None = None) -> str:
    """Full multiplication table; rows are the left factor, basis in stored order."""
    name = name or _default_name
    if fmt == "json":
        constants = [
            [to_jsonable(A.basis[x]), to_jsonable(A.basis[y]), to_jsonable(A.basis[z]), g]
            for (x, y), row in sorted(A.constants.items())
            for z, g in sorted(row.items())
            if g
        ]
        return json.dumps({"basis": [to_jsonable(b) for b in A.basis], "constants": constants})
    cells = [[format_element(A.basis_product(x, y), name) for y in A.basis] for x in A.basis]
    headers = [name(b) for b in A.basis]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + headers)
        for h, row in zip(headers, cells):
            writer.writerow([h] + row)
        return buf.getvalue()
    if fmt == "text":
        width = max(len(s) for s in headers + [c for row in cells for c in row] + ["·"])
        lines = [" · ".ljust(width) + " | " + " | ".join(h.ljust(width) for h in headers)]
        lines.append("-" * len(lines[0]))
        for h, row in zip(headers, cells):
            lines.append(h.ljust(width) + " | " + " | ".join(c.ljust(width) for c in row))
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}; use text, csv or json")
