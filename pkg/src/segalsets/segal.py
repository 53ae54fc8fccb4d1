"""1-Segal and 2-Segal conditions, checked exhaustively within truncation.

Segal maps are tabulated for every simplex at once with
:func:`~segalsets.simplicial.operator_table`.  Their targets, the fiber
products of edges or triangles, are enumerated independently by joining
pieces one at a time through :func:`segalsets.kernels.fiber_join`.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import kernels
from .simplicial import MonotoneMap, TruncatedSimplicialSet, face_on, to_jsonable

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of the polygon with vertices ``0..n`` in cyclic order."""

    polygon_size: int
    triangles: tuple[Triangle, ...]

    @property
    def n(self) -> int:
        return self.polygon_size - 1

    @property
    def internal_edges(self) -> frozenset[Edge]:
        n = self.n
        edges = {e for t in self.triangles for e in triangle_edges(t)}
        return frozenset(e for e in edges if not _is_boundary(e, n))

    def problems(self) -> list[str]:
        n = self.n
        out = []
        if len(self.triangles) != n - 1:
            out.append(f"expected {n - 1} triangles, found {len(self.triangles)}")
        counts: dict[Edge, int] = {}
        for t in self.triangles:
            if not (0 <= t[0] < t[1] < t[2] <= n):
                out.append(f"bad triangle {t}")
            for e in triangle_edges(t):
                counts[e] = counts.get(e, 0) + 1
        for i in range(n):
            if counts.get((i, i + 1)) != 1:
                out.append(f"boundary edge {(i, i + 1)} used {counts.get((i, i + 1), 0)} times")
        if counts.get((0, n)) != 1:
            out.append(f"boundary edge {(0, n)} used {counts.get((0, n), 0)} times")
        for e, c in counts.items():
            if not _is_boundary(e, n) and c != 2:
                out.append(f"diagonal {e} used {c} times")
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "polygon_size": self.polygon_size,
            "triangles": [list(t) for t in self.triangles],
            "internal_edges": sorted(list(e) for e in self.internal_edges),
        }


def _is_boundary(e: Edge, n: int) -> bool:
    return e[1] - e[0] == 1 or e == (0, n)


def triangle_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    """Edges of ``(i, j, k)`` in face order ``d_0, d_1, d_2``: ``(j,k), (i,k), (i,j)``."""
    i, j, k = t
    return (j, k), (i, k), (i, j)


def enumerate_triangulations(n: int) -> list[Triangulation]:
    """All triangulations of the ``(n+1)``-gon; there are ``catalan(n-1)``."""
    if n < 2:
        raise ValueError("a polygon needs at least 3 vertices (n >= 2)")

    def tri(i: int, j: int) -> list[list[Triangle]]:
        if j - i < 2:
            return [[]]
        out = []
        for k in range(i + 1, j):
            for left in tri(i, k):
                for right in tri(k, j):
                    out.append([(i, k, j)] + left + right)
        return out

    return [Triangulation(n + 1, tuple(sorted(ts))) for ts in tri(0, n)]


# witnesses and reports ---------------------------------------------------


@dataclass
class SegalWitness:
    kind: str
    level: int
    data: dict[str, Any]
    triangulation: Triangulation | None = None

    def to_json(self) -> dict[str, Any]:
        out = {"kind": self.kind, "level": self.level, **self.data}
        if self.triangulation is not None:
            out["triangulation"] = self.triangulation.to_json()
        return out


@dataclass
class CheckReport:
    check: str
    levels: list[int]
    verdict: bool
    witness: SegalWitness | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "levels": self.levels,
            "verdict": "pass" if self.verdict else "fail",
            "witness": self.witness.to_json() if self.witness else None,
        }
        out.update(self.details)
        return out


# joins -------------------------------------------------------------------


def _csr(values: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(values, kind="stable").astype(np.int64)
    offsets = np.zeros(size + 1, dtype=np.int64)
    np.cumsum(np.bincount(values, minlength=size), out=offsets[1:])
    return offsets, order


@dataclass
class _Piece:
    size: int
    # (earlier piece, table on earlier piece, table on this piece, glue level size)
    glue: tuple[int, np.ndarray, np.ndarray, int] | None


def _join_pieces(pieces: Sequence[_Piece]) -> np.ndarray:
    rows = np.arange(pieces[0].size, dtype=np.int64)[:, None]
    for piece in pieces[1:]:
        q, left, right, glue_size = piece.glue
        keys = np.ascontiguousarray(left[rows[:, q]])
        offsets, items = _csr(right, glue_size)
        rows = kernels.fiber_join(np.ascontiguousarray(rows), keys, offsets, items)
    return rows


def _bruteforce_pieces(pieces: Sequence[_Piece], constraints) -> np.ndarray:
    out = []
    for combo in itertools.product(*(range(p.size) for p in pieces)):
        if all(l_tab[combo[a]] == r_tab[combo[b]] for a, l_tab, b, r_tab in constraints):
            out.append(combo)
    return np.array(out, dtype=np.int64).reshape(len(out), len(pieces))


def _spine_pieces(K: TruncatedSimplicialSet, n: int) -> list[_Piece]:
    d0, d1 = K.faces[1][0], K.faces[1][1]
    pieces = [_Piece(K.size(1), None)]
    for i in range(1, n):
        pieces.append(_Piece(K.size(1), (i - 1, d0, d1, K.size(0))))
    return pieces


def _triangulation_pieces(K: TruncatedSimplicialSet, T: Triangulation):
    """Pieces in dual-tree order, plus the permutation back to lexicographic order."""
    tris = list(T.triangles)
    edge_owner: dict[Edge, list[int]] = {}
    for idx, t in enumerate(tris):
        for e in triangle_edges(t):
            edge_owner.setdefault(e, []).append(idx)
    order, parent_edge = [0], {0: None}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for e in triangle_edges(tris[a]):
            for b in edge_owner[e]:
                if b not in parent_edge:
                    parent_edge[b] = (a, e)
                    order.append(b)
                    queue.append(b)
    position = {tri_idx: pos for pos, tri_idx in enumerate(order)}
    pieces = []
    for tri_idx in order:
        link = parent_edge[tri_idx]
        if link is None:
            pieces.append(_Piece(K.size(2), None))
            continue
        a, e = link
        fa = K.faces[2][triangle_edges(tris[a]).index(e)]
        fb = K.faces[2][triangle_edges(tris[tri_idx]).index(e)]
        pieces.append(_Piece(K.size(2), (position[a], fa, fb, K.size(1))))
    back = [position[i] for i in range(len(tris))]
    return pieces, back


def spine_fiber_product(K: TruncatedSimplicialSet, n: int, method: str = "join") -> np.ndarray:
    """Rows of ``K_1 x_{K_0} ... x_{K_0} K_1`` (``n`` factors) as index tuples."""
    pieces = _spine_pieces(K, n)
    if method == "join":
        return _join_pieces(pieces)
    d0, d1 = K.faces[1][0], K.faces[1][1]
    return _bruteforce_pieces(pieces, [(i - 1, d0, i, d1) for i in range(1, n)])


def triangulation_fiber_product(K: TruncatedSimplicialSet, T: Triangulation, method: str = "join") -> np.ndarray:
    """Compatible assignments triangle -> 2-simplex, columns in lexicographic triangle order."""
    if method == "join":
        pieces, back = _triangulation_pieces(K, T)
        return _join_pieces(pieces)[:, back]
    tris = list(T.triangles)
    constraints = []
    for a, b in itertools.combinations(range(len(tris)), 2):
        for e in set(triangle_edges(tris[a])) & set(triangle_edges(tris[b])):
            constraints.append(
                (a, K.faces[2][triangle_edges(tris[a]).index(e)], b, K.faces[2][triangle_edges(tris[b]).index(e)])
            )
    return _bruteforce_pieces([_Piece(K.size(2), None) for _ in tris], constraints)


# segal maps --------------------------------------------------------------


def _check_level(K: TruncatedSimplicialSet, n: int, lo: int):
    if not lo <= n <= K.truncation:
        raise ValueError(f"level {n} outside {lo}..{K.truncation}")


def segal1_images(K: TruncatedSimplicialSet, n: int) -> np.ndarray:
    return np.stack([face_on(K, (i - 1, i), n) for i in range(1, n + 1)], axis=1)


def segal1_map(K: TruncatedSimplicialSet, n: int, sigma: int) -> tuple[int, ...]:
    """The ``n`` spine edges of ``sigma`` as indices into ``K_1``."""
    _check_level(K, n, 2)
    return tuple(int(x) for x in segal1_images(K, n)[sigma])


def segal2_images(K: TruncatedSimplicialSet, T: Triangulation) -> np.ndarray:
    return np.stack([face_on(K, t, T.n) for t in T.triangles], axis=1)


def segal2_map(K: TruncatedSimplicialSet, T: Triangulation, sigma: int) -> dict[Triangle, int]:
    """Assign to each triangle ``(i, j, k)`` of ``T`` the face of ``sigma`` on those vertices."""
    _check_level(K, T.n, 3)
    row = segal2_images(K, T)[sigma]
    return {t: int(x) for t, x in zip(T.triangles, row)}


def _compare(K, n, images, target, piece_level):
    """Return ``(kind, data)`` for the first failure of ``images`` to biject onto ``target``."""
    both = np.concatenate([images, target], axis=0)
    _, dense = np.unique(both, axis=0, return_inverse=True)
    dense = dense.reshape(-1).astype(np.int64)
    img_keys, tgt_keys = dense[: len(images)], dense[len(images):]
    i, j = kernels.first_repeat(np.ascontiguousarray(img_keys))
    if i >= 0:
        return "non-injective", {
            "simplices": [int(i), int(j)],
            "descriptors": [to_jsonable(K.levels[n][i]), to_jsonable(K.levels[n][j])],
            "image": [int(x) for x in images[i]],
            "image_descriptors": [to_jsonable(K.levels[piece_level][x]) for x in images[i]],
        }
    outside = ~np.isin(img_keys, tgt_keys)
    if outside.any():
        k = int(np.flatnonzero(outside)[0])
        raise AssertionError(f"Segal image of simplex {k} is not in the fiber product; tables are inconsistent")
    missing = np.flatnonzero(~np.isin(tgt_keys, img_keys))
    if len(missing):
        row = target[missing[0]]
        return "non-surjective", {
            "tuple": [int(x) for x in row],
            "descriptors": [to_jsonable(K.levels[piece_level][x]) for x in row],
            "gap_count": int(len(missing)),
        }
    return None, None


def segal1_gaps(K: TruncatedSimplicialSet, n: int) -> list[tuple[int, ...]]:
    """Every tuple of the spine fiber product missing from the image of the Segal map."""
    image = {tuple(r) for r in segal1_images(K, n).tolist()}
    return [tuple(r) for r in spine_fiber_product(K, n).tolist() if tuple(r) not in image]


def segal1_collisions(K: TruncatedSimplicialSet, n: int) -> list[tuple[int, int]]:
    """Every pair ``(i, j)``, ``i < j``, of ``n``-simplices with equal Segal image."""
    images = segal1_images(K, n).tolist()
    by_image: dict[tuple, list[int]] = {}
    for k, r in enumerate(images):
        by_image.setdefault(tuple(r), []).append(k)
    return [p for ks in by_image.values() for p in itertools.combinations(ks, 2)]


def segal1_check(K: TruncatedSimplicialSet, levels: Sequence[int] | None = None) -> CheckReport:
    """Pass iff every Segal map ``K_n -> K_1 x_{K_0} ... x_{K_0} K_1`` is a bijection."""
    levels = list(range(2, K.truncation + 1)) if levels is None else list(levels)
    for n in levels:
        _check_level(K, n, 2)
        kind, data = _compare(K, n, segal1_images(K, n), spine_fiber_product(K, n), 1)
        if kind:
            return CheckReport("1-segal", levels, False, SegalWitness(kind, n, data))
    return CheckReport("1-segal", levels, True)


def segal2_level_verdicts(K: TruncatedSimplicialSet, n: int) -> dict[Triangle, tuple[str | None, dict | None]]:
    out = {}
    for T in enumerate_triangulations(n):
        out[T.triangles] = _compare(K, n, segal2_images(K, T), triangulation_fiber_product(K, T), 2)
    return out


def segal2_check(K: TruncatedSimplicialSet, levels: Sequence[int] | None = None) -> CheckReport:
    """Pass iff every triangulation's Segal map ``K_n -> K_2 x_{K_1} ... x_{K_1} K_2`` is a bijection."""
    levels = list(range(3, K.truncation + 1)) if levels is None else list(levels)
    for n in levels:
        _check_level(K, n, 3)
        for T in enumerate_triangulations(n):
            kind, data = _compare(K, n, segal2_images(K, T), triangulation_fiber_product(K, T), 2)
            if kind:
                return CheckReport("2-segal", levels, False, SegalWitness(kind, n, data, T))
    return CheckReport("2-segal", levels, True)


def verify_witness(K: TruncatedSimplicialSet, w: SegalWitness) -> bool:
    """Recompute the images behind ``w`` and confirm the collision or gap it claims."""
    n = w.level
    if w.triangulation is None:
        images = segal1_images(K, n)
        target = spine_fiber_product(K, n)
    else:
        images = segal2_images(K, w.triangulation)
        target = triangulation_fiber_product(K, w.triangulation)
    if w.kind == "non-injective":
        i, j = w.data["simplices"]
        return i != j and bool((images[i] == images[j]).all())
    row = np.array(w.data["tuple"], dtype=np.int64)
    in_target = bool((target == row).all(axis=1).any())
    in_image = bool((images == row).all(axis=1).any())
    return in_target and not in_image


# path spaces -------------------------------------------------------------


@dataclass
class PathSpace:
    space: TruncatedSimplicialSet
    comparison: list[np.ndarray]


def path_space_left(K: TruncatedSimplicialSet) -> PathSpace:
    """Precompose with ``[n] -> [0] * [n]``: level ``n`` is ``K_{n+1}``, ``d_i`` is ``d_{i+1}``."""
    if K.truncation < 1:
        raise ValueError("path spaces need truncation >= 1")
    N = K.truncation - 1
    faces = tuple(tuple(K.faces[n + 1][i + 1] for i in range(n + 1)) if n else () for n in range(N + 1))
    degens = tuple(tuple(K.degeneracies[n + 1][i + 1] for i in range(n + 1)) for n in range(N))
    space = TruncatedSimplicialSet(K.levels[1:], faces, degens, f"P<({K.label})")
    return PathSpace(space, [K.faces[n + 1][0] for n in range(N + 1)])


def path_space_right(K: TruncatedSimplicialSet) -> PathSpace:
    """Precompose with ``[n] -> [n] * [0]``: level ``n`` is ``K_{n+1}``, the last face is dropped."""
    if K.truncation < 1:
        raise ValueError("path spaces need truncation >= 1")
    N = K.truncation - 1
    faces = tuple(tuple(K.faces[n + 1][i] for i in range(n + 1)) if n else () for n in range(N + 1))
    degens = tuple(tuple(K.degeneracies[n + 1][i] for i in range(n + 1)) for n in range(N))
    space = TruncatedSimplicialSet(K.levels[1:], faces, degens, f"P>({K.label})")
    return PathSpace(space, [K.faces[n + 1][n + 1] for n in range(N + 1)])


@dataclass
class CriterionReport:
    direct: CheckReport
    left: CheckReport
    right: CheckReport

    @property
    def agree(self) -> bool:
        return self.direct.verdict == (self.left.verdict and self.right.verdict)

    @property
    def verdict(self) -> bool:
        return self.direct.verdict and self.agree

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict[str, Any]:
        witness = self.direct.witness or self.left.witness or self.right.witness
        return {
            "check": "path-criterion",
            "levels": self.direct.levels,
            "verdict": "pass" if self.verdict else "fail",
            "witness": witness.to_json() if witness else None,
            "direct": self.direct.to_json(),
            "left_path_space": self.left.to_json(),
            "right_path_space": self.right.to_json(),
            "agree": self.agree,
        }


def path_space_criterion_check(K: TruncatedSimplicialSet) -> CriterionReport:
    """Compare the direct 2-Segal verdict (levels 3..N) with 1-Segal of both path spaces (2..N-1)."""
    if K.truncation < 3:
        raise ValueError("the criterion needs truncation >= 3")
    return CriterionReport(
        segal2_check(K),
        segal1_check(path_space_left(K).space),
        segal1_check(path_space_right(K).space),
    )
