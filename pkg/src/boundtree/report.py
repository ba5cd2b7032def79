"""Result documents: JSON and DOT rendering, and independent re-verification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .certify import (
    Certificate,
    OracleVerdict,
    Violated,
    alpha_sides,
    beta_sides,
    verify_certificate,
)
from .graph import is_spanning_tree, tree_degrees
from .instance import Instance
from .solve import SolveOutcome


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def feasible_doc(instance: Instance, tree: tuple[int, ...], cost: int) -> dict[str, Any]:
    deg = tree_degrees(instance.graph, tree)
    return {
        "status": "feasible",
        "tree_edges": sorted(tree),
        "cost": cost,
        "degrees": {str(v): deg[v] for v in instance.bounds.constrained},
    }


def infeasible_doc(cert: Certificate) -> dict[str, Any]:
    return {"status": "infeasible", "certificate": cert.to_json()}


def malformed_doc(reason: str) -> dict[str, Any]:
    return {"status": "malformed", "reason": reason}


def solve_doc(instance: Instance, outcome: SolveOutcome) -> dict[str, Any]:
    if outcome.feasible:
        assert outcome.tree is not None and outcome.cost is not None
        return feasible_doc(instance, outcome.tree, outcome.cost)
    assert outcome.certificate is not None
    return infeasible_doc(outcome.certificate)


def oracle_doc(instance: Instance, verdict: OracleVerdict) -> dict[str, Any]:
    if verdict.feasible:
        assert verdict.best_tree is not None and verdict.best_cost is not None
        return feasible_doc(instance, verdict.best_tree, verdict.best_cost)
    assert verdict.violating_set is not None
    return infeasible_doc(verdict.violating_set)


def to_dot(instance: Instance, doc: dict[str, Any]) -> str:
    """Graphviz rendering: tree edges bold, constrained vertices labelled ``alpha..beta``,
    certificate vertices outlined in red."""
    g, bounds = instance.graph, instance.bounds
    tree = set(doc.get("tree_edges", ()))
    witness = set(doc.get("certificate", {}).get("S", ()))
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        attrs = []
        if v in bounds.alpha:
            attrs.append(f'label="{v}\\n{bounds.alpha[v]}..{bounds.beta[v]}"')
        if v in witness:
            attrs.append("color=red")
        lines.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    for idx, ((u, v), w) in enumerate(zip(g.edges, instance.weights)):
        style = ", style=bold" if idx in tree else ""
        lines.append(f'  {u} -- {v} [label="{w}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def _int_list(value: Any) -> bool:
    return isinstance(value, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in value)


def verify_doc(instance: Instance, doc: Any) -> list[Check]:
    """Re-check a claimed result against the instance from raw definitions."""
    if not isinstance(doc, dict) or doc.get("status") not in ("feasible", "infeasible"):
        return [Check("status", False, f"unsupported result status {doc.get('status') if isinstance(doc, dict) else doc!r}")]
    g, bounds = instance.graph, instance.bounds
    if doc["status"] == "feasible":
        tree = doc.get("tree_edges")
        if not _int_list(tree) or not all(0 <= e < g.m for e in tree):
            return [Check("tree_edges", False, "tree_edges must be a list of edge indices")]
        checks = [Check("spanning_tree", is_spanning_tree(g, tree), "" if is_spanning_tree(g, tree) else "not a spanning tree")]
        deg = tree_degrees(g, tree)
        broken = [v for v in bounds.constrained if not bounds.alpha[v] <= deg[v] <= bounds.beta[v]]
        checks.append(Check("degree_bounds", not broken, f"bounds violated at {broken}" if broken else ""))
        expected = {str(v): deg[v] for v in bounds.constrained}
        same = doc.get("degrees") == expected
        checks.append(Check("degrees", same, "" if same else f"degrees mismatch: expected {expected}"))
        cost = sum(instance.weights[e] for e in tree)
        same = doc.get("cost") == cost and not isinstance(doc.get("cost"), bool)
        checks.append(Check("cost", same, "" if same else f"cost mismatch: claimed {doc.get('cost')!r}, recomputed {cost}"))
        return checks
    raw = doc.get("certificate")
    try:
        cert = Certificate(
            Violated(raw["violated"]),
            tuple(raw["S"]),
            raw["lhs"],
            raw["rhs"],
        )
        if not _int_list(raw["S"]) or not _int_list([raw["lhs"], raw["rhs"]]):
            raise TypeError
    except (KeyError, TypeError, ValueError):
        return [Check("certificate", False, "certificate must have violated, S, lhs, rhs")]
    if not set(cert.witness_set) <= set(bounds.constrained):
        return [Check("certificate", False, f"S={list(cert.witness_set)} is not a subset of the constrained vertices")]
    ok = verify_certificate(g, bounds, cert)
    if ok:
        return [Check("certificate", True)]
    sides = alpha_sides if cert.violated is Violated.ALPHA else beta_sides
    lhs, rhs = sides(g, bounds, cert.witness_set)
    return [Check("certificate", False, f"certificate does not verify: recomputed lhs={lhs}, rhs={rhs}")]
