"""Simple undirected graphs over dense indices, plus the cut and component
primitives the solver is written in."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

EdgeSet = frozenset[int]
VertexSet = frozenset[int]


class GraphError(ValueError):
    """Raised when a graph would contain a loop, a parallel edge or a bad index."""


class DisjointSet:
    """Union-find with union by size and path halving."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.size = [1] * size
        self.count = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets holding a and b; False if they were already one set."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges keep the index they were given in, so edge sets are plain sets of
    integers.  Endpoints are stored with the smaller vertex first.
    """

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        self.n = n
        normalized: list[tuple[int, int]] = []
        seen: dict[tuple[int, int], int] = {}
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {idx} = ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"edge {idx} = ({u}, {v}) is a loop")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise GraphError(f"edge {idx} = ({u}, {v}) duplicates edge {seen[pair]}")
            seen[pair] = idx
            normalized.append(pair)
            adjacency[u].append((v, idx))
            adjacency[v].append((u, idx))
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self.adjacency: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adjacency)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def edge_cut(g: Graph, s: Iterable[int]) -> EdgeSet:
    """Edges with exactly one endpoint in ``s``."""
    s = set(s)
    return frozenset(idx for v in s for w, idx in g.adjacency[v] if w not in s)


def neighbors(g: Graph, s: Iterable[int]) -> VertexSet:
    """Vertices outside ``s`` adjacent to some vertex of ``s``."""
    s = set(s)
    return frozenset(w for v in s for w, _ in g.adjacency[v] if w not in s)


def component_count_spanning(g: Graph, x: Iterable[int]) -> int:
    """Number of components of ``(V(g), x)``; isolated vertices count."""
    dsu = DisjointSet(g.n)
    for idx in x:
        u, v = g.edges[idx]
        dsu.union(u, v)
    return dsu.count


def component_count_after_removal(g: Graph, s: Iterable[int]) -> int:
    """Number of components of ``g - s``; zero when every vertex is removed."""
    removed = set(s)
    dsu = DisjointSet(g.n)
    for u, v in g.edges:
        if u not in removed and v not in removed:
            dsu.union(u, v)
    return dsu.count - len(removed)


def is_stable(g: Graph, u: Iterable[int]) -> bool:
    u = set(u)
    return not any(a in u and b in u for a, b in g.edges)


def is_spanning_tree(g: Graph, x: Iterable[int]) -> bool:
    x = list(x)
    if len(set(x)) != len(x) or len(x) != g.n - 1:
        return False
    return component_count_spanning(g, x) == 1


def tree_degrees(g: Graph, x: Iterable[int]) -> list[int]:
    """Degree of every vertex in the spanning subgraph ``(V(g), x)``."""
    deg = [0] * g.n
    for idx in x:
        u, v = g.edges[idx]
        deg[u] += 1
        deg[v] += 1
    return deg
