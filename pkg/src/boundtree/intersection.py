"""Two-matroid intersection over rank/independence oracles.

Cardinality and weighted intersection share one augmenting-path loop.  Each
round rebuilds the exchange graph for the current common independent set I:

* ``y -> x`` (y in I, x not in I) when I - y + x is independent in the first matroid,
* ``x -> y`` when I - y + x is independent in the second matroid,
* sources are the x with I + x independent in the first matroid,
* sinks are the x with I + x independent in the second matroid.

Entering an element costs its weight and leaving costs minus its weight.  A
path of minimum weight, then fewest arcs, then lexicographically smallest
element sequence is augmented along.  Starting from the empty set this keeps
I of minimum weight among common independent sets of its size, which also
covers negative weights.  When no path exists the elements unreachable from
the sources form a set X with r1(X) + r2(E - X) = |I|, proving I is maximum.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InternalInvariantBroken
from .matroids import Exchanges, MatroidOracle

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class IntersectionResult:
    common_set: frozenset[int]
    minimizer: frozenset[int] | None = None
    cost: int | None = None

    @property
    def size(self) -> int:
        return len(self.common_set)


@dataclass(frozen=True)
class AugmentStep:
    """Outcome of one round: the enlarged set, or the source-reachable elements."""

    common_set: frozenset[int] | None
    reachable: frozenset[int] | None = None

    @property
    def augmented(self) -> bool:
        return self.common_set is not None


def generic_exchanges(oracle: MatroidOracle, current: frozenset[int]) -> Exchanges:
    """Exchange data computed from ``is_independent`` alone."""
    free: set[int] = set()
    swaps: dict[int, list[int]] = {}
    ordered = sorted(current)
    for x in range(oracle.ground_size):
        if x in current:
            continue
        if oracle.is_independent([*ordered, x]):
            free.add(x)
            continue
        swaps[x] = [y for y in ordered if oracle.is_independent([*(z for z in ordered if z != y), x])]
    return free, swaps


def _exchanges(oracle: MatroidOracle, current: frozenset[int]) -> Exchanges:
    fast = getattr(oracle, "exchanges", None)
    if fast is not None:
        return fast(current)
    return generic_exchanges(oracle, current)


def _exchange_graph(
    m1: MatroidOracle, m2: MatroidOracle, current: frozenset[int]
) -> tuple[list[list[int]], list[int], set[int]]:
    size = m1.ground_size
    free1, swaps1 = _exchanges(m1, current)
    free2, swaps2 = _exchanges(m2, current)
    ordered = sorted(current)
    succ: list[list[int]] = [[] for _ in range(size)]
    for x in range(size):
        if x in current:
            continue
        # y -> x for the first matroid.
        for y in ordered if x in free1 else swaps1[x]:
            succ[y].append(x)
        # x -> y for the second matroid.
        succ[x] = list(ordered) if x in free2 else list(swaps2[x])
    for y in ordered:
        succ[y].sort()
    sources = sorted(free1)
    return succ, sources, free2


def _reachable(succ: list[list[int]], sources: Sequence[int]) -> set[int]:
    seen = set(sources)
    queue = deque(sources)
    while queue:
        a = queue.popleft()
        for b in succ[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def _shortest_labels(
    succ: list[list[int]], sources: Sequence[int], node_weight: list[int], stride: int
) -> dict[int, int]:
    """Label-correcting search for min (weight, arcs) labels packed as weight*stride + arcs."""
    label: dict[int, int] = {s: node_weight[s] * stride for s in sources}
    queue = deque(sources)
    queued = set(sources)
    budget = (len(succ) + 1) * (sum(len(a) for a in succ) + len(sources) + 1)
    while queue:
        budget -= 1
        if budget < 0:
            raise InternalInvariantBroken("negative cycle in exchange graph")
        a = queue.popleft()
        queued.discard(a)
        base = label[a] + 1
        for b in succ[a]:
            cand = base + node_weight[b] * stride
            if b not in label or cand < label[b]:
                label[b] = cand
                if b not in queued:
                    queued.add(b)
                    queue.append(b)
    return label


def _unweighted_labels(succ: list[list[int]], sources: Sequence[int]) -> dict[int, int]:
    label = dict.fromkeys(sources, 0)
    queue = deque(sources)
    while queue:
        a = queue.popleft()
        for b in succ[a]:
            if b not in label:
                label[b] = label[a] + 1
                queue.append(b)
    return label


def _pick_path(
    succ: list[list[int]],
    sources: Sequence[int],
    sinks: set[int],
    label: dict[int, int],
    node_weight: list[int] | None,
    stride: int,
) -> list[int] | None:
    """Lexicographically smallest path among those ending at a best-labelled sink."""
    reached_sinks = [t for t in sinks if t in label]
    if not reached_sinks:
        return None
    best = min(label[t] for t in reached_sinks)
    targets = {t for t in reached_sinks if label[t] == best}
    if node_weight is None:
        inc = [1] * len(succ)
    else:
        inc = [1 + w * stride for w in node_weight]
    # Tight arcs strictly increase the arc count, so they form a DAG.
    tight_pred: dict[int, list[int]] = {}
    for a, lab in label.items():
        for b in succ[a]:
            if label.get(b) == lab + inc[b]:
                tight_pred.setdefault(b, []).append(a)
    useful = set(targets)
    stack = list(targets)
    while stack:
        b = stack.pop()
        for a in tight_pred.get(b, ()):
            if a not in useful:
                useful.add(a)
                stack.append(a)
    starts = [s for s in sources if s in useful and label[s] == inc[s] - 1]
    node = min(starts)
    path = [node]
    while node not in targets:
        node = min(b for b in succ[node] if b in useful and label[b] == label[node] + inc[b])
        path.append(node)
    return path


def augment_step(
    current: frozenset[int],
    m1: MatroidOracle,
    m2: MatroidOracle,
    weights: Sequence[int] | None = None,
) -> AugmentStep:
    """Enlarge a common independent set by one element, or report that none exists."""
    current = frozenset(current)
    succ, sources, sinks = _exchange_graph(m1, m2, current)
    if weights is None:
        label = _unweighted_labels(succ, sources)
        node_weight = None
        stride = 1
    else:
        stride = len(succ) + 2
        node_weight = [-w if e in current else w for e, w in enumerate(weights)]
        label = _shortest_labels(succ, sources, node_weight, stride)
    path = _pick_path(succ, sources, sinks, label, node_weight, stride)
    if path is None:
        return AugmentStep(None, frozenset(_reachable(succ, sources)))
    return AugmentStep(current.symmetric_difference(path))


def _check_common(m1: MatroidOracle, m2: MatroidOracle, common: frozenset[int]) -> None:
    if not (m1.is_independent(sorted(common)) and m2.is_independent(sorted(common))):
        raise InternalInvariantBroken(f"result {sorted(common)} is not common independent")


def _minimizer(m1: MatroidOracle, m2: MatroidOracle, size: int, reachable: frozenset[int]) -> frozenset[int]:
    ground = frozenset(range(m1.ground_size))
    for x in (ground - reachable, reachable):
        if m1.rank(x) + m2.rank(ground - x) == size:
            return x
    raise InternalInvariantBroken("no minimizer recovered from the final exchange graph")


def _run(
    m1: MatroidOracle, m2: MatroidOracle, target: int, weights: Sequence[int] | None
) -> IntersectionResult:
    if m1.ground_size != m2.ground_size:
        raise ValueError(f"ground sizes differ: {m1.ground_size} vs {m2.ground_size}")
    if target < 1:
        raise ValueError(f"target must be positive, got {target}")
    current: frozenset[int] = frozenset()
    minimizer = None
    while len(current) < target:
        step = augment_step(current, m1, m2, weights)
        if not step.augmented:
            assert step.reachable is not None
            minimizer = _minimizer(m1, m2, len(current), step.reachable)
            break
        assert step.common_set is not None and len(step.common_set) == len(current) + 1
        current = step.common_set
    _check_common(m1, m2, current)
    cost = None
    if weights is not None:
        cost = 0
        for e in sorted(current):
            cost += weights[e]
            if not INT64_MIN <= cost <= INT64_MAX:
                raise OverflowError("total cost does not fit in a signed 64-bit integer")
    return IntersectionResult(current, minimizer, cost)


def max_common_independent(m1: MatroidOracle, m2: MatroidOracle, target: int) -> IntersectionResult:
    """Largest common independent set, stopping once ``target`` elements are reached.

    If the maximum falls short of ``target`` the result carries a minimizer X
    with ``m1.rank(X) + m2.rank(E - X) == size``.
    """
    return _run(m1, m2, target, None)


def min_weight_common_basis(
    m1: MatroidOracle, m2: MatroidOracle, weights: Sequence[int], target: int
) -> IntersectionResult:
    """Minimum-weight common independent set of size ``target`` with its cost.

    Weights must be signed 64-bit integers.  When no common independent set of
    that size exists, the largest one found is returned with a minimizer, as in
    :func:`max_common_independent`.
    """
    if len(weights) != m1.ground_size:
        raise ValueError(f"expected {m1.ground_size} weights, got {len(weights)}")
    for w in weights:
        if isinstance(w, bool) or not isinstance(w, int) or not INT64_MIN <= w <= INT64_MAX:
            raise OverflowError(f"weight {w!r} is not a signed 64-bit integer")
    return _run(m1, m2, target, list(weights))
