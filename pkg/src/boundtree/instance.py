"""Instance files: parsing, validation and serialization."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Any

from .graph import Graph, GraphError
from .intersection import INT64_MAX, INT64_MIN
from .matroids import DegreeBounds


class MalformedInstance(ValueError):
    """The instance file violates the format; the message names the field."""


@dataclass(frozen=True)
class Instance:
    graph: Graph
    bounds: DegreeBounds
    weights: tuple[int, ...]

    @classmethod
    def build(
        cls,
        n: int,
        edges: Sequence[Sequence[int]],
        constrained: Sequence[tuple[int, int, int]] = (),
    ) -> Instance:
        """Convenience constructor; edges are ``(u, v)`` or ``(u, v, w)`` (weight 0 if omitted)."""
        weights = tuple(e[2] if len(e) > 2 else 0 for e in edges)
        return cls(Graph(n, [(e[0], e[1]) for e in edges]), DegreeBounds.from_triples(constrained), weights)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.graph.n,
            "edges": [[u, v, w] for (u, v), w in zip(self.graph.edges, self.weights)],
            "constrained": [
                {"v": v, "alpha": self.bounds.alpha[v], "beta": self.bounds.beta[v]}
                for v in self.bounds.constrained
            ],
        }


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInstance(f"{where}: expected an integer, got {value!r}")
    return value


def parse_instance(data: Any) -> Instance:
    """Validate a decoded instance document and build the instance."""
    if not isinstance(data, dict):
        raise MalformedInstance("instance: expected a JSON object")
    unknown = set(data) - {"n", "edges", "constrained"}
    if unknown:
        raise MalformedInstance(f"instance: unknown fields {sorted(unknown)}")
    if "n" not in data:
        raise MalformedInstance("n: missing")
    n = _int(data["n"], "n")
    if n < 1:
        raise MalformedInstance(f"n: must be at least 1, got {n}")

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise MalformedInstance("edges: expected a list")
    pairs: list[tuple[int, int]] = []
    weights: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for i, item in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise MalformedInstance(f"{where}: expected [u, v, w]")
        u, v, w = (_int(x, f"{where}[{k}]") for k, x in enumerate(item))
        if not 0 <= u < v < n:
            raise MalformedInstance(f"{where}: need 0 <= u < v < n, got u={u}, v={v}, n={n}")
        if (u, v) in seen:
            raise MalformedInstance(f"{where}: duplicates edges[{seen[u, v]}] ({u}, {v})")
        if not INT64_MIN <= w <= INT64_MAX:
            raise MalformedInstance(f"{where}[2]: weight {w} is outside the signed 64-bit range")
        seen[u, v] = i
        pairs.append((u, v))
        weights.append(w)

    raw_constrained = data.get("constrained", [])
    if not isinstance(raw_constrained, list):
        raise MalformedInstance("constrained: expected a list")
    alpha: dict[int, int] = {}
    beta: dict[int, int] = {}
    for i, item in enumerate(raw_constrained):
        where = f"constrained[{i}]"
        if not isinstance(item, dict) or set(item) != {"v", "alpha", "beta"}:
            raise MalformedInstance(f"{where}: expected an object with fields v, alpha, beta")
        v = _int(item["v"], f"{where}.v")
        a = _int(item["alpha"], f"{where}.alpha")
        b = _int(item["beta"], f"{where}.beta")
        if not 0 <= v < n:
            raise MalformedInstance(f"{where}.v: vertex {v} is outside 0..{n - 1}")
        if v in alpha:
            raise MalformedInstance(f"{where}.v: vertex {v} is constrained twice")
        if a < 0:
            raise MalformedInstance(f"{where}.alpha: must be non-negative, got {a}")
        if a > b:
            raise MalformedInstance(f"{where}: alpha ({a}) exceeds beta ({b})")
        alpha[v], beta[v] = a, b
    for i, (u, v) in enumerate(pairs):
        if u in alpha and v in alpha:
            raise MalformedInstance(
                f"constrained: vertices {u} and {v} are joined by edges[{i}]; the constrained set must be stable"
            )
    try:
        graph = Graph(n, pairs)
    except GraphError as exc:  # unreachable after the checks above, kept as a guard
        raise MalformedInstance(f"edges: {exc}") from exc
    return Instance(graph, DegreeBounds(alpha, beta), tuple(weights))


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"instance: invalid JSON ({exc})") from exc
    return parse_instance(data)


def dumps_instance(instance: Instance) -> str:
    return json.dumps(instance.to_json(), separators=(",", ":")) + "\n"


def scale_weights(data: Any, factor: str) -> dict[str, Any]:
    """Multiply decimal edge weights by ``factor`` and require exact integers.

    ``data`` is a decoded instance whose weights may be JSON numbers or decimal
    strings.  Scaling is done in exact decimal arithmetic.
    """
    try:
        scale = Decimal(factor)
    except InvalidOperation as exc:
        raise MalformedInstance(f"--scale: not a decimal number: {factor!r}") from exc
    if scale <= 0:
        raise MalformedInstance("--scale: must be positive")
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise MalformedInstance("edges: expected a list")
    out = dict(data)
    edges = []
    for i, item in enumerate(data["edges"]):
        if not isinstance(item, list) or len(item) != 3:
            raise MalformedInstance(f"edges[{i}]: expected [u, v, w]")
        raw = item[2]
        if isinstance(raw, bool) or not isinstance(raw, (int, float, str, Decimal)):
            raise MalformedInstance(f"edges[{i}][2]: expected a number, got {raw!r}")
        try:
            scaled = Decimal(str(raw)) * scale
        except InvalidOperation as exc:
            raise MalformedInstance(f"edges[{i}][2]: not a decimal number: {raw!r}") from exc
        if scaled != scaled.to_integral_value():
            raise MalformedInstance(f"edges[{i}][2]: {raw} * {factor} = {scaled} is not an integer")
        edges.append([item[0], item[1], int(scaled)])
    out["edges"] = edges
    return out
