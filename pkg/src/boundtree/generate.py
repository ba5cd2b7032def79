"""Seeded random instance generator."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph
from .instance import Instance
from .matroids import DegreeBounds


def random_instance(
    n: int,
    *,
    seed: int,
    m: int | None = None,
    edge_prob: float | None = None,
    stable_size: int = 0,
    alpha_max: int = 1,
    beta_max: int = 3,
    weight_range: tuple[int, int] = (0, 0),
    connected: bool = False,
) -> tuple[Instance, int]:
    """Random instance and the size of the constrained set actually reached.

    Exactly one of ``m`` and ``edge_prob`` must be given.  With ``connected``
    a random spanning tree is laid down first.  The constrained set is built
    greedily, so it may come out smaller than ``stable_size`` on dense graphs.
    """
    if n < 1:
        raise ValueError(f"--n must be at least 1, got {n}")
    if (m is None) == (edge_prob is None):
        raise ValueError("give exactly one of --m and --edge-prob")
    if stable_size < 0 or stable_size > n:
        raise ValueError(f"--stable-size must lie in 0..{n}, got {stable_size}")
    if alpha_max < 0 or beta_max < 0:
        raise ValueError("--alpha-max and --beta-max must be non-negative")
    lo, hi = weight_range
    if lo > hi:
        raise ValueError(f"--weight-range is empty: {lo} > {hi}")
    max_edges = n * (n - 1) // 2
    if m is not None and not 0 <= m <= max_edges:
        raise ValueError(f"--m must lie in 0..{max_edges} for n={n}, got {m}")
    if m is not None and connected and m < n - 1:
        raise ValueError(f"--connected needs --m of at least n - 1 = {n - 1}")
    if edge_prob is not None and not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"--edge-prob must lie in [0, 1], got {edge_prob}")

    rng = random.Random(seed)
    chosen: set[tuple[int, int]] = set()
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            a, b = order[i], order[rng.randrange(i)]
            chosen.add((min(a, b), max(a, b)))
    if m is not None:
        while len(chosen) < m:
            a, b = rng.sample(range(n), 2)
            chosen.add((min(a, b), max(a, b)))
    else:
        assert edge_prob is not None
        for pair in combinations(range(n), 2):
            if rng.random() < edge_prob:
                chosen.add(pair)
    pairs = sorted(chosen)
    graph = Graph(n, pairs)

    # Min-degree greedy on the residual graph, ties broken at random.
    alive = set(range(n))
    residual = [len(graph.adjacency[v]) for v in range(n)]
    stable: list[int] = []
    while alive and len(stable) < stable_size:
        low = min(residual[v] for v in alive)
        v = rng.choice(sorted(w for w in alive if residual[w] == low))
        stable.append(v)
        dropped = {v} | {w for w, _ in graph.adjacency[v] if w in alive}
        alive -= dropped
        for d in dropped:
            for w, _ in graph.adjacency[d]:
                if w in alive:
                    residual[w] -= 1
    triples = []
    for v in sorted(stable):
        beta = rng.randint(0, beta_max)
        alpha = rng.randint(0, min(alpha_max, beta))
        triples.append((v, alpha, beta))
    weights = tuple(rng.randint(lo, hi) for _ in pairs)
    return Instance(graph, DegreeBounds.from_triples(triples), weights), len(stable)
