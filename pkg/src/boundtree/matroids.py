"""The two matroids on E(G): degree bounds at a stable set, and the cycle matroid.

Both oracles also expose ``exchanges(current)``, which lists in one pass the
single-element additions and swaps that keep ``current`` independent.  The
intersection engine uses it when present and falls back to repeated
``is_independent`` calls otherwise.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

from .graph import DisjointSet, Graph, component_count_spanning, is_stable

OUTSIDE = -1  # class of an edge with no endpoint in the constrained set


@runtime_checkable
class MatroidOracle(Protocol):
    ground_size: int

    def rank(self, x: Iterable[int]) -> int: ...

    def is_independent(self, x: Iterable[int]) -> bool: ...


Exchanges = tuple[set[int], dict[int, list[int]]]


@dataclass(frozen=True)
class DegreeBounds:
    """Lower and upper tree-degree bounds for the constrained vertices."""

    alpha: Mapping[int, int]
    beta: Mapping[int, int]
    constrained: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if set(self.alpha) != set(self.beta):
            raise ValueError("alpha and beta must be given for the same vertices")
        for v in self.alpha:
            a, b = self.alpha[v], self.beta[v]
            if a < 0 or b < 0:
                raise ValueError(f"vertex {v}: bounds must be non-negative (alpha={a}, beta={b})")
            if a > b:
                raise ValueError(f"vertex {v}: alpha ({a}) exceeds beta ({b})")
        object.__setattr__(self, "constrained", tuple(sorted(self.alpha)))

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, int]]) -> DegreeBounds:
        alpha: dict[int, int] = {}
        beta: dict[int, int] = {}
        for v, a, b in triples:
            if v in alpha:
                raise ValueError(f"vertex {v} is constrained twice")
            alpha[v], beta[v] = a, b
        return cls(alpha, beta)

    @classmethod
    def none(cls) -> DegreeBounds:
        return cls({}, {})


class FailureKind(enum.Enum):
    ALPHA_EXCEEDS_CAPACITY = "alpha_exceeds_capacity"
    ALPHA_SUM_TOO_LARGE = "alpha_sum_too_large"
    CAPACITY_TOO_SMALL = "capacity_too_small"


@dataclass(frozen=True)
class WellDefinednessFailure:
    """Which inequality of the well-definedness test broke, with both sides.

    For ALPHA_EXCEEDS_CAPACITY, ``lhs`` is alpha_v and ``rhs`` is
    min(beta_v, d(v)).  For the two sum inequalities the sides are read left to
    right, so the failure is always ``lhs > rhs``.
    """

    kind: FailureKind
    lhs: int
    rhs: int
    vertex: int | None = None


class NotWellDefined(ValueError):
    def __init__(self, failure: WellDefinednessFailure) -> None:
        super().__init__(f"degree-bound matroid is not well defined: {failure}")
        self.failure = failure


def check_well_defined(g: Graph, bounds: DegreeBounds) -> WellDefinednessFailure | None:
    for v in bounds.constrained:
        cap = min(bounds.beta[v], g.degree(v))
        if bounds.alpha[v] > cap:
            return WellDefinednessFailure(FailureKind.ALPHA_EXCEEDS_CAPACITY, bounds.alpha[v], cap, v)
    alpha_sum = sum(bounds.alpha.values())
    if alpha_sum > g.n - 1:
        return WellDefinednessFailure(FailureKind.ALPHA_SUM_TOO_LARGE, alpha_sum, g.n - 1)
    u = set(bounds.constrained)
    free_edges = sum(1 for a, b in g.edges if a not in u and b not in u)
    capacity = sum(min(bounds.beta[v], g.degree(v)) for v in bounds.constrained) + free_edges
    if g.n - 1 > capacity:
        return WellDefinednessFailure(FailureKind.CAPACITY_TOO_SMALL, g.n - 1, capacity)
    return None


class PartitionMatroid:
    """Generalized partition matroid on E(G) whose bases are the (n-1)-sets
    meeting every cut delta(v), v constrained, between alpha_v and beta_v times.

    Because the constrained set is stable, every edge lies in at most one such
    cut; ``edge_class[e]`` is that vertex or ``OUTSIDE``.
    """

    def __init__(self, g: Graph, bounds: DegreeBounds) -> None:
        for v in bounds.constrained:
            if not 0 <= v < g.n:
                raise ValueError(f"constrained vertex {v} is outside 0..{g.n - 1}")
        if not is_stable(g, bounds.constrained):
            raise ValueError("constrained vertices must form a stable set")
        failure = check_well_defined(g, bounds)
        if failure is not None:
            raise NotWellDefined(failure)
        self.graph = g
        self.bounds = bounds
        self.ground_size = g.m
        self.edge_class = [OUTSIDE] * g.m
        for v in bounds.constrained:
            for _, idx in g.adjacency[v]:
                self.edge_class[idx] = v

    def _counts(self, x: Iterable[int]) -> tuple[dict[int, int], int, int]:
        counts = dict.fromkeys(self.bounds.constrained, 0)
        outside = total = 0
        for e in x:
            c = self.edge_class[e]
            if c == OUTSIDE:
                outside += 1
            else:
                counts[c] += 1
            total += 1
        return counts, outside, total

    def lower_term(self, x: Iterable[int]) -> int:
        """n - 1 - sum over v of max(alpha_v - |x & delta(v)|, 0)."""
        counts, _, _ = self._counts(x)
        alpha = self.bounds.alpha
        return self.graph.n - 1 - sum(max(alpha[v] - c, 0) for v, c in counts.items())

    def upper_term(self, x: Iterable[int]) -> int:
        """sum over v of min(beta_v, |x & delta(v)|) plus edges of x outside every cut."""
        counts, outside, _ = self._counts(x)
        beta = self.bounds.beta
        return sum(min(beta[v], c) for v, c in counts.items()) + outside

    def rank(self, x: Iterable[int]) -> int:
        counts, outside, _ = self._counts(x)
        alpha, beta = self.bounds.alpha, self.bounds.beta
        lower = self.graph.n - 1 - sum(max(alpha[v] - c, 0) for v, c in counts.items())
        upper = sum(min(beta[v], c) for v, c in counts.items()) + outside
        return min(lower, upper)

    def is_independent(self, x: Iterable[int]) -> bool:
        x = list(x)
        return self.rank(x) == len(x)

    def exchanges(self, current: Collection[int]) -> Exchanges:
        # For x in class k replacing y in class j only the per-class counts move,
        # so independence reduces to: every count within beta, and
        # sum_v max(alpha_v, c_v) + outside <= n - 1.
        counts, outside, _ = self._counts(current)
        alpha, beta = self.bounds.alpha, self.bounds.beta
        budget = self.graph.n - 1 - (sum(max(alpha[v], c) for v, c in counts.items()) + outside)

        def grow(k: int) -> int | None:
            if k == OUTSIDE:
                return 1
            if counts[k] + 1 > beta[k]:
                return None
            return 1 if counts[k] >= alpha[k] else 0

        def shrink(j: int) -> int:
            if j == OUTSIDE:
                return -1
            return -1 if counts[j] > alpha[j] else 0

        by_class: dict[int, list[int]] = {}
        for y in sorted(current):
            by_class.setdefault(self.edge_class[y], []).append(y)
        inside = set(current)
        free: set[int] = set()
        swaps: dict[int, list[int]] = {}
        for x in range(self.ground_size):
            if x in inside:
                continue
            k = self.edge_class[x]
            up = grow(k)
            if up is not None and up <= budget:
                free.add(x)
                continue
            ys: list[int] = []
            for j, members in by_class.items():
                if j == k:
                    ys.extend(members)
                elif up is not None and up + shrink(j) <= budget:
                    ys.extend(members)
            ys.sort()
            swaps[x] = ys
        return free, swaps


class GraphicMatroid:
    """Cycle matroid of a graph: independent sets are the forests."""

    def __init__(self, g: Graph) -> None:
        self.graph = g
        self.ground_size = g.m

    def rank(self, x: Iterable[int]) -> int:
        return self.graph.n - component_count_spanning(self.graph, x)

    def is_independent(self, x: Iterable[int]) -> bool:
        dsu = DisjointSet(self.graph.n)
        edges = self.graph.edges
        seen: set[int] = set()
        for e in x:
            if e in seen:
                return False
            seen.add(e)
            if not dsu.union(*edges[e]):
                return False
        return True

    def exchanges(self, current: Collection[int]) -> Exchanges:
        g = self.graph
        forest: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for e in current:
            a, b = g.edges[e]
            forest[a].append((b, e))
            forest[b].append((a, e))
        # Root every tree; record parent, the edge to it, depth and tree id.
        parent = [-1] * g.n
        parent_edge = [-1] * g.n
        depth = [0] * g.n
        root = [-1] * g.n
        for r in range(g.n):
            if root[r] != -1:
                continue
            root[r] = r
            queue = deque([r])
            while queue:
                a = queue.popleft()
                for b, e in forest[a]:
                    if root[b] == -1:
                        root[b] = r
                        parent[b], parent_edge[b], depth[b] = a, e, depth[a] + 1
                        queue.append(b)
        inside = set(current)
        free: set[int] = set()
        swaps: dict[int, list[int]] = {}
        for x, (a, b) in enumerate(g.edges):
            if x in inside:
                continue
            if root[a] != root[b]:
                free.add(x)
                continue
            path: list[int] = []
            while a != b:
                if depth[a] < depth[b]:
                    a, b = b, a
                path.append(parent_edge[a])
                a = parent[a]
            path.sort()
            swaps[x] = path
        return free, swaps
