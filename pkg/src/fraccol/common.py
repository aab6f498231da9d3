"""Shared primitives: errors, normalized edges, marked subgraphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Tuple

Edge = Tuple[int, int]


class FraccolError(Exception):
    """Base class for all toolkit errors."""


class MapBuildError(FraccolError):
    """Raised when a rotation table cannot be assembled into a plane map.

    The offending element (vertex, half-edge, ...) is embedded in the message.
    """


class InputError(FraccolError):
    """Malformed instance files or CLI arguments (exit status 2)."""


class HypothesisError(FraccolError):
    """A caller invoked an operation outside its stated preconditions."""


def edge(u: int, v: int) -> Edge:
    """Normalized undirected edge (endpoints sorted)."""
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def edges_of(pairs: Iterable[Tuple[int, int]]) -> FrozenSet[Edge]:
    return frozenset(edge(u, v) for u, v in pairs)


@dataclass(frozen=True)
class Subgraph:
    """A marked subgraph given by explicit vertex and edge sets.

    Edges are normalized pairs and must have both ends in ``vertices``;
    the edge set need not be induced.
    """

    vertices: FrozenSet[int] = field(default_factory=frozenset)
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u >= v:
                raise ValueError(f"edge {(u, v)} not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {(u, v)} has an end outside the vertex set")

    @staticmethod
    def empty() -> "Subgraph":
        return Subgraph(frozenset(), frozenset())

    @staticmethod
    def of(vertices: Iterable[int], edge_pairs: Iterable[Tuple[int, int]] = ()) -> "Subgraph":
        return Subgraph(frozenset(vertices), edges_of(edge_pairs))

    def contains(self, other: "Subgraph") -> bool:
        return other.vertices <= self.vertices and other.edges <= self.edges

    def union(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.vertices | other.vertices, self.edges | other.edges)

    def intersection(self, other: "Subgraph") -> "Subgraph":
        return Subgraph(self.vertices & other.vertices, self.edges & other.edges)

    def component_count(self) -> int:
        """Number of connected components of the marked subgraph itself.

        Isolated marked vertices count as components.
        """
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in self.vertices})

    def key(self) -> tuple:
        return (tuple(sorted(self.vertices)), tuple(sorted(self.edges)))
