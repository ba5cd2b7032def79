"""Infeasibility certificates for degree-bounded spanning trees.

A certificate is a set S of constrained vertices breaking one of the two
counting conditions that characterize feasibility:

* lower bounds: sum of alpha over S <= |S| + |N(S)| - 1 for every nonempty S,
* upper bounds: sum of beta over S >= components(G - S) + |S| - 1 for every S.

This module holds the exhaustive checkers and tree enumerator used as ground
truth, and the routines turning a matroid-intersection failure into a
certificate without any enumeration.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import InternalInvariantBroken, LimitExceeded
from .graph import (
    DisjointSet,
    Graph,
    component_count_after_removal,
    edge_cut,
    neighbors,
    tree_degrees,
)
from .matroids import OUTSIDE, DegreeBounds, FailureKind, PartitionMatroid, WellDefinednessFailure

DEFAULT_SUBSET_LIMIT = 20
DEFAULT_ENUM_LIMIT = 8


class Violated(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"


@dataclass(frozen=True)
class Certificate:
    violated: Violated
    witness_set: tuple[int, ...]
    lhs: int
    rhs: int

    def to_json(self) -> dict[str, object]:
        return {"violated": self.violated.value, "S": list(self.witness_set), "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class OracleVerdict:
    feasible: bool
    best_tree: tuple[int, ...] | None = None
    best_cost: int | None = None
    violating_set: Certificate | None = None


def alpha_sides(g: Graph, bounds: DegreeBounds, s: Iterable[int]) -> tuple[int, int]:
    s = set(s)
    return sum(bounds.alpha[v] for v in s), len(s) + len(neighbors(g, s)) - 1


def beta_sides(g: Graph, bounds: DegreeBounds, s: Iterable[int]) -> tuple[int, int]:
    s = set(s)
    return sum(bounds.beta[v] for v in s), component_count_after_removal(g, s) + len(s) - 1


def _subsets(items: Sequence[int], *, include_empty: bool) -> Iterator[tuple[int, ...]]:
    for k in range(0 if include_empty else 1, len(items) + 1):
        yield from combinations(items, k)


def check_condition_alpha(
    g: Graph, bounds: DegreeBounds, limit: int = DEFAULT_SUBSET_LIMIT
) -> Certificate | None:
    """First nonempty S (by size, then lexicographically) breaking the lower-bound condition."""
    u = bounds.constrained
    if len(u) > limit:
        raise LimitExceeded("number of constrained vertices", len(u), limit)
    for s in _subsets(u, include_empty=False):
        lhs, rhs = alpha_sides(g, bounds, s)
        if lhs > rhs:
            return Certificate(Violated.ALPHA, s, lhs, rhs)
    return None


def check_condition_beta(
    g: Graph, bounds: DegreeBounds, limit: int = DEFAULT_SUBSET_LIMIT
) -> Certificate | None:
    """First S, the empty set included, breaking the upper-bound condition."""
    u = bounds.constrained
    if len(u) > limit:
        raise LimitExceeded("number of constrained vertices", len(u), limit)
    for s in _subsets(u, include_empty=True):
        lhs, rhs = beta_sides(g, bounds, s)
        if lhs < rhs:
            return Certificate(Violated.BETA, s, lhs, rhs)
    return None


def spanning_trees(g: Graph) -> Iterator[tuple[int, ...]]:
    """All spanning trees as sorted edge-index tuples, by include/exclude recursion."""
    n, edges = g.n, g.edges
    if n == 0:
        return
    chosen: list[int] = []

    def connectable(start: int) -> bool:
        dsu = DisjointSet(n)
        for e in chosen:
            dsu.union(*edges[e])
        for e in range(start, len(edges)):
            dsu.union(*edges[e])
        return dsu.count == 1

    def forms_cycle(e: int) -> bool:
        dsu = DisjointSet(n)
        for f in chosen:
            dsu.union(*edges[f])
        return not dsu.union(*edges[e])

    def walk(i: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == n - 1:
            yield tuple(chosen)
            return
        if i == len(edges) or not connectable(i):
            return
        if not forms_cycle(i):
            chosen.append(i)
            yield from walk(i + 1)
            chosen.pop()
        yield from walk(i + 1)

    yield from walk(0)


def enumerate_feasible_trees(
    g: Graph,
    bounds: DegreeBounds,
    weights: Sequence[int] | None = None,
    limit: int = DEFAULT_ENUM_LIMIT,
    subset_limit: int = DEFAULT_SUBSET_LIMIT,
) -> OracleVerdict:
    """Brute-force verdict over every spanning tree.

    With weights, the cheapest feasible tree is returned (ties broken by the
    lexicographically smallest edge-index tuple).  An infeasible verdict carries
    the first violation found by the exhaustive condition checkers.
    """
    if g.n > limit:
        raise LimitExceeded("number of vertices", g.n, limit)
    best: tuple[int, ...] | None = None
    best_cost: int | None = None
    for tree in spanning_trees(g):
        deg = tree_degrees(g, tree)
        if not all(bounds.alpha[v] <= deg[v] <= bounds.beta[v] for v in bounds.constrained):
            continue
        cost = sum(weights[e] for e in tree) if weights is not None else 0
        if best is None or (cost, tree) < (best_cost, best):
            best, best_cost = tree, cost
    if best is not None:
        return OracleVerdict(True, best, best_cost if weights is not None else None)
    cert = check_condition_alpha(g, bounds, subset_limit) or check_condition_beta(g, bounds, subset_limit)
    if cert is None:
        raise InternalInvariantBroken("no feasible tree, yet both counting conditions hold")
    return OracleVerdict(False, violating_set=cert)


def verify_certificate(g: Graph, bounds: DegreeBounds, cert: Certificate) -> bool:
    """Recompute both sides from scratch and confirm the strict violation."""
    s = cert.witness_set
    if len(set(s)) != len(s) or not set(s) <= set(bounds.constrained):
        return False
    if cert.violated is Violated.ALPHA:
        if not s:
            return False
        lhs, rhs = alpha_sides(g, bounds, s)
        return (lhs, rhs) == (cert.lhs, cert.rhs) and lhs > rhs
    lhs, rhs = beta_sides(g, bounds, s)
    return (lhs, rhs) == (cert.lhs, cert.rhs) and lhs < rhs


def _checked(g: Graph, bounds: DegreeBounds, cert: Certificate) -> Certificate:
    if not verify_certificate(g, bounds, cert):
        raise InternalInvariantBroken(f"emitted certificate does not verify: {cert}")
    return cert


def _make(g: Graph, bounds: DegreeBounds, kind: Violated, s: Iterable[int]) -> Certificate:
    s = tuple(sorted(s))
    sides = alpha_sides(g, bounds, s) if kind is Violated.ALPHA else beta_sides(g, bounds, s)
    return _checked(g, bounds, Certificate(kind, s, *sides))


def map_welldefinedness_failure(
    g: Graph, bounds: DegreeBounds, failure: WellDefinednessFailure
) -> Certificate:
    """Certificate implied by a failed well-definedness test of the degree matroid."""
    if failure.kind is FailureKind.ALPHA_EXCEEDS_CAPACITY:
        assert failure.vertex is not None
        return _make(g, bounds, Violated.ALPHA, [failure.vertex])
    if failure.kind is FailureKind.ALPHA_SUM_TOO_LARGE:
        return _make(g, bounds, Violated.ALPHA, bounds.constrained)
    saturated = [v for v in bounds.constrained if g.degree(v) >= bounds.beta[v]]
    return _make(g, bounds, Violated.BETA, saturated)


def _cut_counts(m1: PartitionMatroid, x: Iterable[int]) -> dict[int, int]:
    counts = dict.fromkeys(m1.bounds.constrained, 0)
    for e in x:
        c = m1.edge_class[e]
        if c != OUTSIDE:
            counts[c] += 1
    return counts


def _split_by_cut_components(g: Graph, s: Sequence[int]) -> list[list[int]]:
    """Group S by the components of the graph on S + N(S) with edge set delta(S)."""
    dsu = DisjointSet(g.n)
    for e in edge_cut(g, s):
        dsu.union(*g.edges[e])
    groups: dict[int, list[int]] = {}
    for v in sorted(s):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values())


def extract_certificate(g: Graph, m1: PartitionMatroid, x: Iterable[int]) -> Certificate:
    """Turn a set X with r1(X) + r2(E - X) <= n - 2 into a violated condition.

    When the lower-bound term attains r1(X) (ties included), cuts holding fewer
    than alpha_v but more than zero edges of X are dropped until none remain;
    the vertices whose cut X misses then break the lower-bound condition on one
    of their groups.  Otherwise X is restricted to the cuts of constrained
    vertices, partially used cuts below beta_v are dropped, and the saturated
    vertices break the upper-bound condition.
    """
    bounds = m1.bounds
    x = set(x)
    if m1.lower_term(x) <= m1.upper_term(x):
        limit = bounds.alpha
        kind = Violated.ALPHA
    else:
        x = {e for e in x if m1.edge_class[e] != OUTSIDE}
        limit = bounds.beta
        kind = Violated.BETA
    for _ in range(len(bounds.constrained) + 1):
        counts = _cut_counts(m1, x)
        partial = [v for v in bounds.constrained if 0 < counts[v] < limit[v]]
        if not partial:
            break
        v0 = partial[0]
        x = {e for e in x if m1.edge_class[e] != v0}
    else:
        raise InternalInvariantBroken("shrink loop did not terminate")

    if kind is Violated.BETA:
        saturated = [v for v in bounds.constrained if counts[v] >= bounds.beta[v]]
        return _make(g, bounds, Violated.BETA, saturated)
    untouched = [v for v in bounds.constrained if counts[v] == 0]
    if not untouched:
        raise InternalInvariantBroken("lower-bound case produced an empty vertex set")
    for group in _split_by_cut_components(g, untouched):
        lhs, rhs = alpha_sides(g, bounds, group)
        if lhs > rhs:
            return _make(g, bounds, Violated.ALPHA, group)
    raise InternalInvariantBroken(f"no group of {untouched} breaks the lower-bound condition")
