"""The 2-Segal set of a rooted tree.

A lower subforest is a parent-closed vertex set.  An ``n``-simplex is an
admissible subforest ``H`` with a chain ``∅ = M_0 ⊆ ... ⊆ M_n = V(H)`` of
lower subforests of ``H``; it is stored as ``(vertices, blocks)`` where
``blocks[k]`` is the 0-based layer of ``vertices[k]`` (layer 0 is the root
side).  The structure maps are those of the graph builder restricted to
these simplices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .graphs import Multigraph, block_degeneracy, block_face
from .simplicial import TruncatedSimplicialSet, build_simplicial_set

TreeDescriptor = tuple[tuple[str, ...], tuple[int, ...]]


@dataclass(frozen=True)
class RootedTree:
    vertices: tuple[str, ...]
    root: str
    parent: Mapping[str, str]

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise ValueError("repeated vertex labels")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "parent", dict(self.parent))
        if self.root not in verts:
            raise ValueError("the root is not a vertex")
        if self.root in self.parent:
            raise ValueError("the root cannot have a parent")
        if set(self.parent) != set(verts) - {self.root}:
            raise ValueError("every non-root vertex needs exactly one parent")
        for v in verts:
            seen = set()
            while v != self.root:
                if v in seen or self.parent[v] not in verts:
                    raise ValueError("parent map has a cycle or leaves the vertex set")
                seen.add(v)
                v = self.parent[v]

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RootedTree":
        try:
            return cls(tuple(data["vertices"]), data["root"], dict(data.get("parent", {})))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed tree JSON: {exc}") from exc

    def to_json(self) -> dict[str, Any]:
        return {"vertices": list(self.vertices), "root": self.root, "parent": dict(self.parent)}

    def children(self, v: str) -> list[str]:
        return sorted(c for c, p in self.parent.items() if p == v)

    def edge_id(self, child: str) -> str:
        return f"{self.parent[child]}->{child}"

    def underlying_graph(self) -> Multigraph:
        return Multigraph(self.vertices, {self.edge_id(c): (p, c) for c, p in self.parent.items()})


def is_parent_closed(T: RootedTree, subset: Iterable[str], within: Iterable[str] | None = None) -> bool:
    """True when every vertex of ``subset`` whose parent lies in ``within`` has that parent in ``subset``."""
    s = set(subset)
    ambient = set(T.vertices) if within is None else set(within)
    return all(T.parent.get(v) not in ambient or T.parent[v] in s for v in s)


def lower_subtrees(T: RootedTree) -> list[frozenset[str]]:
    """Every parent-closed vertex set of ``T`` (∅, or a subtree containing the root)."""

    def closed_from(v: str) -> list[frozenset[str]]:
        options = [[frozenset()] + closed_from(c) for c in T.children(v)]
        return [frozenset({v}).union(*combo) for combo in itertools.product(*options)]

    return sorted([frozenset()] + closed_from(T.root), key=lambda s: (len(s), sorted(s)))


def admissible_subforests(T: RootedTree) -> list[frozenset[str]]:
    """Differences ``L - L'`` of nested lower subtrees, deduplicated."""
    lowers = lower_subtrees(T)
    found = {upper - lower for upper in lowers for lower in lowers if lower <= upper}
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def tree_simplex(T: RootedTree, layers: list[Iterable[str]]) -> TreeDescriptor:
    """Descriptor from explicit layers ``S_1, ..., S_n`` (root side first)."""
    assign = {}
    for b, layer in enumerate(layers):
        for v in layer:
            assign[v] = b
    verts = tuple(sorted(assign))
    return (verts, tuple(assign[v] for v in verts))


def subforest_descriptor(vertices: Iterable[str]) -> TreeDescriptor:
    verts = tuple(sorted(vertices))
    return (verts, (0,) * len(verts))


def _layerings(T: RootedTree, H: frozenset[str], n: int):
    verts = tuple(sorted(H))
    pos = {v: k for k, v in enumerate(verts)}
    inner_edges = [(pos[T.parent[v]], pos[v]) for v in verts if T.parent.get(v) in H]
    for blocks in itertools.product(range(n), repeat=len(verts)):
        if all(blocks[p] <= blocks[c] for p, c in inner_edges):
            yield (verts, blocks)


def build_XT(T: RootedTree, N: int) -> TruncatedSimplicialSet:
    """The simplicial set of ``T`` up to level ``N``."""
    forests = admissible_subforests(T)
    levels = [[d for H in forests for d in _layerings(T, H, n)] for n in range(N + 1)]

    def face(n, i, d):
        return block_face(n, i, d[0], d[1])

    def degeneracy(n, i, d):
        return (d[0], block_degeneracy(i, d[1]))

    return build_simplicial_set(levels, face, degeneracy, f"X^T[{len(T.vertices)}v, root {T.root}]")


def to_graph_descriptor(T: RootedTree, d: TreeDescriptor):
    """The same simplex read inside the graph builder's set for the underlying graph."""
    verts, blocks = d
    keep = set(verts)
    edges = tuple(sorted(T.edge_id(c) for c, p in T.parent.items() if c in keep and p in keep))
    return (verts, edges, blocks)


def format_tree_descriptor(d: TreeDescriptor) -> str:
    verts, blocks = d
    if not verts:
        return "∅"
    n = max(blocks) + 1
    return "|".join("".join(v for v, b in zip(verts, blocks) if b == k) or "∅" for k in range(n))


# standard suite trees ----------------------------------------------------


def single_vertex_tree() -> RootedTree:
    return RootedTree(("a",), "a", {})


def edge_tree() -> RootedTree:
    """Root ``a`` with one child ``b``."""
    return RootedTree(("a", "b"), "a", {"b": "a"})


def path_tree() -> RootedTree:
    return RootedTree(("a", "b", "c"), "a", {"b": "a", "c": "b"})


def cherry_tree() -> RootedTree:
    return RootedTree(("a", "b", "c"), "a", {"b": "a", "c": "a"})
