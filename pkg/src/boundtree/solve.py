"""Decide feasibility and find a cheapest degree-bounded spanning tree."""

from __future__ import annotations

from dataclasses import dataclass

from .certify import Certificate, extract_certificate, map_welldefinedness_failure
from .errors import InternalInvariantBroken
from .graph import is_spanning_tree, tree_degrees
from .instance import Instance
from .intersection import min_weight_common_basis
from .matroids import GraphicMatroid, NotWellDefined, PartitionMatroid

WELL_DEFINEDNESS = "well-definedness"
EXTRACTION = "extraction"


@dataclass(frozen=True)
class SolveOutcome:
    feasible: bool
    tree: tuple[int, ...] | None = None
    cost: int | None = None
    certificate: Certificate | None = None
    # Which route produced the certificate: WELL_DEFINEDNESS or EXTRACTION.
    certificate_path: str | None = None

    def degrees(self, instance: Instance) -> dict[int, int]:
        assert self.tree is not None
        deg = tree_degrees(instance.graph, self.tree)
        return {v: deg[v] for v in instance.bounds.constrained}


def solve(instance: Instance) -> SolveOutcome:
    g, bounds = instance.graph, instance.bounds
    try:
        m1 = PartitionMatroid(g, bounds)
    except NotWellDefined as exc:
        cert = map_welldefinedness_failure(g, bounds, exc.failure)
        return SolveOutcome(False, certificate=cert, certificate_path=WELL_DEFINEDNESS)
    if g.n == 1:
        return SolveOutcome(True, (), 0)
    m2 = GraphicMatroid(g)
    result = min_weight_common_basis(m1, m2, instance.weights, g.n - 1)
    if result.size == g.n - 1:
        tree = tuple(sorted(result.common_set))
        if not is_spanning_tree(g, tree):
            raise InternalInvariantBroken(f"solver returned a non-tree {tree}")
        return SolveOutcome(True, tree, result.cost)
    assert result.minimizer is not None
    cert = extract_certificate(g, m1, result.minimizer)
    return SolveOutcome(False, certificate=cert, certificate_path=EXTRACTION)
