"""The 2-Segal set of a finite multigraph.

An ``n``-simplex is a subgraph ``H`` together with an ordered partition of
its vertices into ``n`` possibly empty blocks.  Descriptors are
``(vertices, edge_ids, blocks)`` with ``vertices`` and ``edge_ids`` sorted
and ``blocks[k]`` the 0-based block of ``vertices[k]``.  Outer faces drop the
first or last block and keep the induced subgraph on what remains; inner
faces merge adjacent blocks; degeneracies insert an empty block.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .simplicial import TruncatedSimplicialSet, build_simplicial_set

GraphDescriptor = tuple[tuple[str, ...], tuple[str, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Multigraph:
    """Finite multigraph; loops and parallel edges are allowed."""

    vertices: tuple[str, ...]
    edges: Mapping[str, tuple[str, str]]

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise ValueError("repeated vertex labels")
        object.__setattr__(self, "vertices", verts)
        edges = {}
        for eid, ends in self.edges.items():
            if len(ends) != 2:
                raise ValueError(f"edge {eid} needs two endpoints")
            u, v = sorted(ends)
            if u not in verts or v not in verts:
                raise ValueError(f"edge {eid} has an endpoint outside the vertex set")
            edges[eid] = (u, v)
        object.__setattr__(self, "edges", dict(sorted(edges.items())))

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Multigraph":
        try:
            return cls(
                tuple(data["vertices"]),
                {e["id"]: tuple(e["ends"]) for e in data.get("edges", [])},
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "ends": list(ends)} for e, ends in self.edges.items()],
        }

    def induced_edges(self, vertices: Iterable[str], among: Iterable[str] | None = None) -> tuple[str, ...]:
        keep = set(vertices)
        pool = self.edges if among is None else among
        return tuple(sorted(e for e in pool if self.edges[e][0] in keep and self.edges[e][1] in keep))


@dataclass(frozen=True, order=True)
class Subgraph:
    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    @property
    def descriptor(self) -> GraphDescriptor:
        return (self.vertices, self.edges, (0,) * len(self.vertices))


def subgraphs(G: Multigraph) -> list[Subgraph]:
    """Every subgraph: a vertex subset plus any subset of the edges inside it."""
    out = []
    for k in range(len(G.vertices) + 1):
        for verts in itertools.combinations(G.vertices, k):
            inner = G.induced_edges(verts)
            for r in range(len(inner) + 1):
                for es in itertools.combinations(inner, r):
                    out.append(Subgraph(verts, es))
    return sorted(out)


def graph_simplex(blocks: Sequence[Iterable[str]], edges: Iterable[str] = ()) -> GraphDescriptor:
    """Descriptor of ``(H; S_1, ..., S_n)`` from explicit blocks and edge ids."""
    assign = {}
    for b, block in enumerate(blocks):
        for v in block:
            if v in assign:
                raise ValueError(f"vertex {v} appears in two blocks")
            assign[v] = b
    verts = tuple(sorted(assign))
    return (verts, tuple(sorted(edges)), tuple(assign[v] for v in verts))


def subgraph_descriptor(vertices: Iterable[str], edges: Iterable[str] = ()) -> GraphDescriptor:
    return graph_simplex([list(vertices)], edges)


def blocks_of(descriptor: GraphDescriptor, n: int) -> list[set[str]]:
    verts, _, blocks = descriptor
    out = [set() for _ in range(n)]
    for v, b in zip(verts, blocks):
        out[b].add(v)
    return out


# structure maps shared with the tree builder ------------------------------


def restrict_blocks(verts, blocks, drop: int, shift: bool):
    keep = [k for k, b in enumerate(blocks) if b != drop]
    return (
        tuple(verts[k] for k in keep),
        tuple(blocks[k] - 1 if shift else blocks[k] for k in keep),
    )


def block_face(n: int, i: int, verts, blocks):
    """Face ``d_i`` on (vertices, blocks); returns the surviving vertices and new blocks."""
    if i == 0:
        return restrict_blocks(verts, blocks, 0, True)
    if i == n:
        return restrict_blocks(verts, blocks, n - 1, False)
    return verts, tuple(b if b < i else b - 1 for b in blocks)


def block_degeneracy(i: int, blocks):
    return tuple(b if b < i else b + 1 for b in blocks)


def build_XG(G: Multigraph, N: int) -> TruncatedSimplicialSet:
    """The simplicial set of ``G`` up to level ``N``."""
    subs = subgraphs(G)
    levels = [
        [(H.vertices, H.edges, blocks) for H in subs for blocks in itertools.product(range(n), repeat=len(H.vertices))]
        for n in range(N + 1)
    ]

    def face(n, i, d):
        verts, edges, blocks = d
        new_verts, new_blocks = block_face(n, i, verts, blocks)
        if len(new_verts) != len(verts):
            edges = G.induced_edges(new_verts, among=edges)
        return (new_verts, edges, new_blocks)

    def degeneracy(n, i, d):
        verts, edges, blocks = d
        return (verts, edges, block_degeneracy(i, blocks))

    return build_simplicial_set(levels, face, degeneracy, f"X^G[{len(G.vertices)}v,{len(G.edges)}e]")


def format_graph_descriptor(d: GraphDescriptor) -> str:
    """Compact label such as ``a|b{e1}`` (blocks separated by ``|``, edge ids in braces)."""
    verts, edges, blocks = d
    if not verts:
        return "∅"
    n = max(blocks) + 1
    parts = ["".join(v for v, b in zip(verts, blocks) if b == k) or "∅" for k in range(n)]
    label = "|".join(parts)
    return label + ("{" + ",".join(edges) + "}" if edges else "")


# standard suite graphs ---------------------------------------------------


def edge_graph() -> Multigraph:
    return Multigraph(("a", "b"), {"e1": ("a", "b")})


def loop_graph() -> Multigraph:
    return Multigraph(("a",), {"l": ("a", "a")})


def parallel_edges(k: int) -> Multigraph:
    return Multigraph(("a", "b"), {f"e{i}": ("a", "b") for i in range(1, k + 1)})


def path_graph(labels: Sequence[str] = ("a", "b", "c")) -> Multigraph:
    return Multigraph(tuple(labels), {f"{u}{v}": (u, v) for u, v in zip(labels, labels[1:])})


def triangle_graph() -> Multigraph:
    return Multigraph(("a", "b", "c"), {"ab": ("a", "b"), "bc": ("b", "c"), "ac": ("a", "c")})
