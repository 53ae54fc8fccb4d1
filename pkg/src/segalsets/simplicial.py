"""Finite truncated simplicial sets with explicit face and degeneracy tables.

A :class:`TruncatedSimplicialSet` stores levels ``0..N``.  Level ``n`` is a
tuple of hashable descriptors; the position of a descriptor in that tuple is
its simplex index.  Face and degeneracy maps are stored as read-only integer
arrays indexed by simplex index, so composite operators are plain numpy
fancy indexing.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

Descriptor = Hashable


@dataclass(frozen=True)
class SimplexId:
    level: int
    index: int


@dataclass(frozen=True)
class MonotoneMap:
    """Weakly increasing map ``[m] -> [n]`` given by its list of values."""

    values: tuple[int, ...]
    target_arity: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise ValueError("a monotone map needs at least one value")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} are not weakly increasing")
        if self.values[0] < 0 or self.values[-1] > self.target_arity:
            raise ValueError(f"values {self.values} fall outside [0, {self.target_arity}]")

    @property
    def source_arity(self) -> int:
        return len(self.values) - 1

    @classmethod
    def identity(cls, n: int) -> "MonotoneMap":
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def coface(cls, i: int, n: int) -> "MonotoneMap":
        """``d^i: [n] -> [n+1]``, skipping ``i``."""
        return cls(tuple(j if j < i else j + 1 for j in range(n + 1)), n + 1)

    @classmethod
    def codegeneracy(cls, i: int, n: int) -> "MonotoneMap":
        """``s^i: [n] -> [n-1]``, hitting ``i`` twice."""
        return cls(tuple(j if j <= i else j - 1 for j in range(n + 1)), n - 1)

    def __call__(self, j: int) -> int:
        return self.values[j]

    def compose(self, inner: "MonotoneMap") -> "MonotoneMap":
        """Return ``self o inner`` (apply ``inner`` first)."""
        if inner.target_arity != self.source_arity:
            raise ValueError("maps are not composable")
        return MonotoneMap(tuple(self.values[v] for v in inner.values), self.target_arity)

    def missing(self) -> list[int]:
        return sorted(set(range(self.target_arity + 1)) - set(self.values))

    def repeats(self) -> list[int]:
        return [p for p in range(self.source_arity) if self.values[p] == self.values[p + 1]]


def monotone_maps(m: int, n: int) -> list[MonotoneMap]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order."""
    return [MonotoneMap(v, n) for v in itertools.combinations_with_replacement(range(n + 1), m + 1)]


def _frozen(arr: Iterable[int]) -> np.ndarray:
    out = np.asarray(list(arr) if not isinstance(arr, np.ndarray) else arr, dtype=np.int64)
    out = np.array(out, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


def sort_descriptors(descriptors: Iterable[Descriptor]) -> list[Descriptor]:
    unique = set(descriptors)
    try:
        return sorted(unique)
    except TypeError:
        return sorted(unique, key=repr)


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialSet:
    """Levelwise-finite simplicial set stored up to level ``truncation``.

    ``faces[n][i]`` maps indices of level ``n`` to indices of level ``n-1``
    (``faces[0]`` is empty); ``degeneracies[n][i]`` maps level ``n`` into
    level ``n+1`` for ``n < truncation``.
    """

    levels: tuple[tuple[Descriptor, ...], ...]
    faces: tuple[tuple[np.ndarray, ...], ...]
    degeneracies: tuple[tuple[np.ndarray, ...], ...]
    label: str = ""

    def __post_init__(self):
        N = len(self.levels) - 1
        if N < 0:
            raise ValueError("need at least level 0")
        if len(self.faces) != N + 1 or len(self.degeneracies) != N:
            raise ValueError("table shapes do not match the number of levels")
        for n, level in enumerate(self.levels):
            if len(set(level)) != len(level):
                raise ValueError(f"level {n} has repeated descriptors")
            expected = n + 1 if n > 0 else 0
            if len(self.faces[n]) != expected:
                raise ValueError(f"level {n} needs {expected} face maps")
            for i, table in enumerate(self.faces[n]):
                if table.shape != (len(level),):
                    raise ValueError(f"d_{i} at level {n} has the wrong length")
                if len(table) and (table.min() < 0 or table.max() >= len(self.levels[n - 1])):
                    raise ValueError(f"d_{i} at level {n} points outside level {n - 1}")
        for n in range(N):
            if len(self.degeneracies[n]) != n + 1:
                raise ValueError(f"level {n} needs {n + 1} degeneracy maps")
            for i, table in enumerate(self.degeneracies[n]):
                if table.shape != (len(self.levels[n]),):
                    raise ValueError(f"s_{i} at level {n} has the wrong length")
                if len(table) and (table.min() < 0 or table.max() >= len(self.levels[n + 1])):
                    raise ValueError(f"s_{i} at level {n} points outside level {n + 1}")

    @property
    def truncation(self) -> int:
        return len(self.levels) - 1

    def size(self, n: int) -> int:
        return len(self.levels[n])

    def sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    @cached_property
    def _lookup(self) -> tuple[dict, ...]:
        return tuple({d: k for k, d in enumerate(level)} for level in self.levels)

    def index(self, n: int, descriptor: Descriptor) -> int:
        try:
            return self._lookup[n][descriptor]
        except KeyError:
            raise KeyError(f"{descriptor!r} is not a {n}-simplex of {self.label or 'this set'}") from None

    def __contains__(self, item: tuple[int, Descriptor]) -> bool:
        n, descriptor = item
        return 0 <= n <= self.truncation and descriptor in self._lookup[n]

    def descriptor(self, n: int, index: int) -> Descriptor:
        return self.levels[n][index]

    def face(self, n: int, i: int, index: int) -> int:
        return int(self.faces[n][i][index])

    def degeneracy(self, n: int, i: int, index: int) -> int:
        return int(self.degeneracies[n][i][index])

    def is_reduced(self) -> bool:
        return len(self.levels[0]) == 1

    def degenerate_mask(self, n: int) -> np.ndarray:
        """Boolean mask of the degenerate simplices at level ``n``."""
        mask = np.zeros(self.size(n), dtype=bool)
        if n > 0:
            for table in self.degeneracies[n - 1]:
                mask[table] = True
        return mask

    def truncate(self, N: int) -> "TruncatedSimplicialSet":
        if N > self.truncation:
            raise ValueError(f"cannot extend truncation {self.truncation} to {N}")
        return TruncatedSimplicialSet(
            self.levels[: N + 1], self.faces[: N + 1], self.degeneracies[:N], self.label
        )

    # serialization -------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        faces = [
            [n, i, src, int(dst)]
            for n in range(1, self.truncation + 1)
            for i, table in enumerate(self.faces[n])
            for src, dst in enumerate(table)
        ]
        degeneracies = [
            [n, i, src, int(dst)]
            for n in range(self.truncation)
            for i, table in enumerate(self.degeneracies[n])
            for src, dst in enumerate(table)
        ]
        return {
            "truncation": self.truncation,
            "levels": [[to_jsonable(d) for d in level] for level in self.levels],
            "faces": faces,
            "degeneracies": degeneracies,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "TruncatedSimplicialSet":
        try:
            N = int(data["truncation"])
            levels = tuple(tuple(from_jsonable(d) for d in level) for level in data["levels"])
            if len(levels) != N + 1:
                raise ValueError(f"expected {N + 1} levels, found {len(levels)}")
            faces = [[[-1] * len(levels[n]) for _ in range(n + 1 if n else 0)] for n in range(N + 1)]
            degens = [[[-1] * len(levels[n]) for _ in range(n + 1)] for n in range(N)]
            for n, i, src, dst in data["faces"]:
                faces[n][i][src] = dst
            for n, i, src, dst in data["degeneracies"]:
                degens[n][i][src] = dst
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"malformed simplicial-set JSON: {exc}") from exc
        for tables in faces + degens:
            for table in tables:
                if -1 in table:
                    raise ValueError("malformed simplicial-set JSON: incomplete table")
        return cls(
            levels,
            tuple(tuple(_frozen(t) for t in tables) for tables in faces),
            tuple(tuple(_frozen(t) for t in tables) for tables in degens),
            str(data.get("label", "")),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> "TruncatedSimplicialSet":
        return cls.from_json(json.loads(text))

    def with_tables(self, faces=None, degeneracies=None, label=None) -> "TruncatedSimplicialSet":
        """Copy with some tables replaced (used to build mutated test inputs)."""
        return TruncatedSimplicialSet(
            self.levels,
            self.faces if faces is None else faces,
            self.degeneracies if degeneracies is None else degeneracies,
            self.label if label is None else label,
        )


def to_jsonable(descriptor: Any) -> Any:
    if isinstance(descriptor, (tuple, list)):
        return [to_jsonable(x) for x in descriptor]
    if isinstance(descriptor, frozenset):
        return sorted(to_jsonable(x) for x in descriptor)
    if isinstance(descriptor, np.integer):
        return int(descriptor)
    return descriptor


def from_jsonable(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(from_jsonable(x) for x in value)
    return value


def build_simplicial_set(
    levels: Sequence[Iterable[Descriptor]],
    face: Callable[[int, int, Descriptor], Descriptor],
    degeneracy: Callable[[int, int, Descriptor], Descriptor],
    label: str = "",
    presorted: bool = False,
) -> TruncatedSimplicialSet:
    """Tabulate ``face(n, i, x)`` and ``degeneracy(n, i, x)`` over descriptor levels.

    Raises ``ValueError`` when a map leaves the inventory, which means the
    caller's levels are not closed under its own structure maps.
    """
    inv = [tuple(level) if presorted else tuple(sort_descriptors(level)) for level in levels]
    lookup = [{d: k for k, d in enumerate(level)} for level in inv]
    N = len(inv) - 1

    def table(n_from, n_to, fn, i):
        out = np.empty(len(inv[n_from]), dtype=np.int64)
        for k, d in enumerate(inv[n_from]):
            image = fn(n_from, i, d)
            try:
                out[k] = lookup[n_to][image]
            except KeyError:
                kind = "face" if n_to < n_from else "degeneracy"
                raise ValueError(
                    f"{kind} {i} of {d!r} at level {n_from} is {image!r}, not a {n_to}-simplex"
                ) from None
        out.setflags(write=False)
        return out

    faces = tuple(
        tuple(table(n, n - 1, face, i) for i in range(n + 1)) if n else () for n in range(N + 1)
    )
    degens = tuple(tuple(table(n, n + 1, degeneracy, i) for i in range(n + 1)) for n in range(N))
    return TruncatedSimplicialSet(tuple(inv), faces, degens, label)


# operators ---------------------------------------------------------------


def operator_table(K: TruncatedSimplicialSet, alpha: MonotoneMap) -> np.ndarray:
    """Tabulate ``K(alpha): K_n -> K_m`` for ``alpha: [m] -> [n]``.

    Faces ``d_j`` for ``j`` outside the image are applied in decreasing order
    of ``j``, then ``s_p`` for each repeated position ``p`` in increasing
    order.
    """
    n, m = alpha.target_arity, alpha.source_arity
    if n > K.truncation or m > K.truncation:
        raise ValueError(f"operator [{m}] -> [{n}] exceeds truncation {K.truncation}")
    current = np.arange(K.size(n), dtype=np.int64)
    level = n
    for j in reversed(alpha.missing()):
        current = K.faces[level][j][current]
        level -= 1
    for p in alpha.repeats():
        current = K.degeneracies[level][p][current]
        level += 1
    assert level == m
    return current


def apply_operator(K: TruncatedSimplicialSet, alpha: MonotoneMap, sigma: SimplexId | int, level: int | None = None) -> SimplexId:
    """Return ``K(alpha)(sigma)``.

    ``sigma`` is a :class:`SimplexId` or a bare index together with ``level``.
    """
    if not isinstance(sigma, SimplexId):
        if level is None:
            raise TypeError("a bare simplex index needs its level")
        sigma = SimplexId(level, int(sigma))
    if sigma.level != alpha.target_arity:
        raise ValueError(
            f"operator has target [{alpha.target_arity}] but the simplex lives at level {sigma.level}"
        )
    if not 0 <= sigma.index < K.size(sigma.level):
        raise IndexError(f"no simplex {sigma.index} at level {sigma.level}")
    current = sigma.index
    lvl = sigma.level
    for j in reversed(alpha.missing()):
        current = int(K.faces[lvl][j][current])
        lvl -= 1
    for p in alpha.repeats():
        if lvl >= K.truncation:
            raise ValueError(f"operator [{alpha.source_arity}] -> [{alpha.target_arity}] exceeds truncation")
        current = int(K.degeneracies[lvl][p][current])
        lvl += 1
    return SimplexId(lvl, current)


def face_on(K: TruncatedSimplicialSet, vertices: Sequence[int], n: int) -> np.ndarray:
    """Table of the face of each ``n``-simplex spanned by ``vertices`` (weakly increasing)."""
    return operator_table(K, MonotoneMap(tuple(vertices), n))


# validation --------------------------------------------------------------


@dataclass
class ValidationReport:
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "check": "validate",
            "verdict": "pass" if self.ok else "fail",
            "witness": self.failures[0] if self.failures else None,
            "failures": self.failures,
        }


def validate(K: TruncatedSimplicialSet, limit: int | None = None) -> ValidationReport:
    """Check every simplicial identity that fits inside the truncation.

    Each failure is recorded as ``{"identity", "level", "simplex"}`` where
    ``simplex`` is the index (and descriptor) of an offending simplex at
    ``level``.
    """
    report = ValidationReport()
    d, s, N = K.faces, K.degeneracies, K.truncation

    def record(name: str, n: int, lhs: np.ndarray, rhs: np.ndarray):
        for k in np.flatnonzero(lhs != rhs):
            if limit is not None and len(report.failures) >= limit:
                return
            report.failures.append(
                {"identity": name, "level": n, "simplex": int(k), "descriptor": to_jsonable(K.levels[n][k])}
            )

    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                record(f"d{i} d{j} = d{j - 1} d{i}", n, d[n - 1][i][d[n][j]], d[n - 1][j - 1][d[n][i]])
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                record(f"s{i} s{j} = s{j + 1} s{i}", n, s[n + 1][i][s[n][j]], s[n + 1][j + 1][s[n][i]])
    ident = None
    for n in range(N):
        ident = np.arange(K.size(n), dtype=np.int64)
        for j in range(n + 1):
            up = s[n][j]
            record(f"d{j} s{j} = id", n, d[n + 1][j][up], ident)
            record(f"d{j + 1} s{j} = id", n, d[n + 1][j + 1][up], ident)
            if n == 0:
                continue
            for i in range(j):
                record(f"d{i} s{j} = s{j - 1} d{i}", n, d[n + 1][i][up], s[n - 1][j - 1][d[n][i]])
            for i in range(j + 2, n + 2):
                record(f"d{i} s{j} = s{j} d{i - 1}", n, d[n + 1][i][up], s[n - 1][j][d[n][i - 1]])
    return report


# standard examples -------------------------------------------------------


def _reindex_face(n, i, t):
    return t[:i] + t[i + 1:]


def _reindex_degeneracy(n, i, t):
    return t[: i + 1] + t[i:]


def standard_simplex(n: int, N: int) -> TruncatedSimplicialSet:
    """The representable simplicial set: level ``k`` is all monotone ``[k] -> [n]``."""
    if n < 0 or N < 0:
        raise ValueError("n and N must be non-negative")
    levels = [list(itertools.combinations_with_replacement(range(n + 1), k + 1)) for k in range(N + 1)]
    return build_simplicial_set(levels, _reindex_face, _reindex_degeneracy, f"Delta[{n}]", presorted=True)


def spine(n: int, N: int) -> TruncatedSimplicialSet:
    """The spine ``G(n)``: edges ``(i, i+1)`` of ``Delta[n]`` and their degeneracies."""
    if n < 1:
        raise ValueError("the spine needs n >= 1")
    levels = [
        [t for t in itertools.combinations_with_replacement(range(n + 1), k + 1) if t[-1] - t[0] <= 1]
        for k in range(N + 1)
    ]
    return build_simplicial_set(levels, _reindex_face, _reindex_degeneracy, f"G({n})", presorted=True)


def boundary_of_simplex(n: int, N: int) -> TruncatedSimplicialSet:
    """``∂Δ[n]``: the monotone maps into ``[n]`` that miss at least one vertex."""
    levels = [
        [t for t in itertools.combinations_with_replacement(range(n + 1), k + 1) if len(set(t)) < n + 1]
        for k in range(N + 1)
    ]
    return build_simplicial_set(levels, _reindex_face, _reindex_degeneracy, f"boundary Delta[{n}]", presorted=True)


# isomorphism -------------------------------------------------------------


@dataclass
class IsomorphismReport:
    ok: bool
    reason: str = ""
    level: int | None = None
    mapping: list[np.ndarray] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {"verdict": "pass" if self.ok else "fail", "reason": self.reason, "level": self.level}


def _normalize_witness(K, L, witness) -> list[np.ndarray]:
    maps = []
    for n, level_map in enumerate(witness):
        if isinstance(level_map, dict):
            arr = np.array([L.index(n, level_map[d]) for d in K.levels[n]], dtype=np.int64)
        else:
            arr = np.asarray(level_map, dtype=np.int64)
        maps.append(arr)
    return maps


def check_simplicial_map(K: TruncatedSimplicialSet, L: TruncatedSimplicialSet, maps: Sequence[np.ndarray]) -> IsomorphismReport:
    """Verify that ``maps`` commutes with every face and degeneracy table."""
    for n in range(K.truncation + 1):
        phi = maps[n]
        if n > 0:
            for i in range(n + 1):
                bad = np.flatnonzero(maps[n - 1][K.faces[n][i]] != L.faces[n][i][phi])
                if len(bad):
                    return IsomorphismReport(False, f"does not commute with d{i} at simplex {int(bad[0])}", n)
        if n < K.truncation:
            for i in range(n + 1):
                bad = np.flatnonzero(maps[n + 1][K.degeneracies[n][i]] != L.degeneracies[n][i][phi])
                if len(bad):
                    return IsomorphismReport(False, f"does not commute with s{i} at simplex {int(bad[0])}", n)
    return IsomorphismReport(True, "", None, list(maps))


def levelwise_isomorphic(
    K: TruncatedSimplicialSet, L: TruncatedSimplicialSet, witness_map: Sequence | None = None
) -> IsomorphismReport:
    """Decide whether ``K`` and ``L`` are isomorphic within truncation.

    With ``witness_map`` (one index array or descriptor dict per level) the
    candidate is only verified.  Without it a backtracking search runs over
    all simplices level by level; keep the inputs small.
    """
    if K.truncation != L.truncation:
        raise ValueError(f"truncation mismatch: {K.truncation} vs {L.truncation}")
    for n in range(K.truncation + 1):
        if K.size(n) != L.size(n):
            return IsomorphismReport(False, f"level {n} sizes differ: {K.size(n)} vs {L.size(n)}", n)
    if witness_map is not None:
        if len(witness_map) != K.truncation + 1:
            return IsomorphismReport(False, "witness has the wrong number of levels")
        try:
            maps = _normalize_witness(K, L, witness_map)
        except KeyError as exc:
            return IsomorphismReport(False, f"witness leaves the target: {exc}")
        for n, phi in enumerate(maps):
            if phi.shape != (K.size(n),) or len(np.unique(phi)) != K.size(n) or (len(phi) and (phi.min() < 0 or phi.max() >= L.size(n))):
                return IsomorphismReport(False, f"witness is not a bijection at level {n}", n)
        return check_simplicial_map(K, L, maps)
    found = _search_isomorphism(K, L)
    if found is None:
        return IsomorphismReport(False, "no isomorphism exists (exhaustive search)")
    return check_simplicial_map(K, L, found)


def _search_isomorphism(K, L) -> list[np.ndarray] | None:
    order = [(n, k) for n in range(K.truncation + 1) for k in range(K.size(n))]
    # For each simplex, the lower-level simplices it is tied to by a face or by being a degeneracy.
    degenerate_of = [dict() for _ in range(K.truncation + 1)]
    for n in range(K.truncation):
        for j, table in enumerate(K.degeneracies[n]):
            for x, y in enumerate(table):
                degenerate_of[n + 1].setdefault(int(y), []).append((j, x))
    phi = [np.full(K.size(n), -1, dtype=np.int64) for n in range(K.truncation + 1)]
    used = [np.zeros(L.size(n), dtype=bool) for n in range(K.truncation + 1)]

    def candidates(n, k):
        out = []
        for t in range(L.size(n)):
            if used[n][t]:
                continue
            if n > 0 and any(phi[n - 1][K.faces[n][i][k]] != L.faces[n][i][t] for i in range(n + 1)):
                continue
            if any(L.degeneracies[n - 1][j][phi[n - 1][x]] != t for j, x in degenerate_of[n].get(k, ())):
                continue
            out.append(t)
        return out

    stack = [iter(candidates(*order[0]))] if order else []
    pos = 0
    while stack:
        n, k = order[pos]
        if phi[n][k] >= 0:
            used[n][phi[n][k]] = False
            phi[n][k] = -1
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            pos -= 1
            continue
        phi[n][k] = nxt
        used[n][nxt] = True
        if pos + 1 == len(order):
            return [p.copy() for p in phi]
        pos += 1
        stack.append(iter(candidates(*order[pos])))
    return None
