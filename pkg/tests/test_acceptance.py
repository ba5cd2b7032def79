"""Exit criteria for the solver, each at its stated sample size and tolerance.

Every comparison is exact (integer equality or 100% agreement).  Per-criterion
PASS/FAIL lines are printed in the pytest terminal summary.
"""

import io
import json
import random
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from boundtree.certify import (
    check_condition_alpha,
    check_condition_beta,
    enumerate_feasible_trees,
    extract_certificate,
    verify_certificate,
)
from boundtree.cli import main
from boundtree.graph import is_spanning_tree, tree_degrees
from boundtree.instance import Instance, loads_instance
from boundtree.intersection import max_common_independent
from boundtree.matroids import DegreeBounds, GraphicMatroid, PartitionMatroid, check_well_defined
from boundtree.report import dumps, solve_doc
from boundtree.solve import EXTRACTION, WELL_DEFINEDNESS, solve

import oracles

FIXTURES = Path(__file__).parent / "fixtures"


def _audit_certificate(pool, inst, outcome):
    """Record an infeasible verdict and whether its certificate re-verifies."""
    ok = outcome.certificate is not None and verify_certificate(inst.graph, inst.bounds, outcome.certificate)
    pool.append((outcome.certificate_path, ok))


@pytest.fixture(scope="module")
def characterization_run():
    rng = random.Random(20261019)
    disagreements = []
    certificates = []
    start = time.perf_counter()
    count = 0
    for n in range(1, 7):
        for _ in range(500):
            inst = oracles.random_connected_instance(rng, n, max_constrained=4, bound_max=3, weights=(-10, 10))
            outcome = solve(inst)
            conditions = (
                check_condition_alpha(inst.graph, inst.bounds) is None
                and check_condition_beta(inst.graph, inst.bounds) is None
            )
            enumerated = enumerate_feasible_trees(inst.graph, inst.bounds, inst.weights).feasible
            if not outcome.feasible == conditions == enumerated:
                disagreements.append(inst.to_json())
            if not outcome.feasible:
                _audit_certificate(certificates, inst, outcome)
            count += 1
    return {"count": count, "disagreements": disagreements, "certificates": certificates,
            "seconds": time.perf_counter() - start}


@pytest.fixture(scope="module")
def weighted_run():
    rng = random.Random(7_300)
    mismatches = []
    certificates = []
    start = time.perf_counter()
    feasible = 0
    while feasible < 300:
        n = rng.randint(2, 7)
        inst = oracles.random_connected_instance(rng, n, max_constrained=4, bound_max=3, weights=(-10, 10))
        outcome = solve(inst)
        verdict = enumerate_feasible_trees(inst.graph, inst.bounds, inst.weights)
        if not outcome.feasible:
            _audit_certificate(certificates, inst, outcome)
        if not verdict.feasible:
            continue
        feasible += 1
        tree_ok = (
            outcome.feasible
            and is_spanning_tree(inst.graph, outcome.tree)
            and oracles.degree_ok(inst.graph, inst.bounds, outcome.tree)
            and sum(inst.weights[e] for e in outcome.tree) == outcome.cost
        )
        if not tree_ok or outcome.cost != verdict.best_cost:
            mismatches.append((inst.to_json(), outcome.cost, verdict.best_cost))
    return {"count": feasible, "mismatches": mismatches, "certificates": certificates,
            "seconds": time.perf_counter() - start}


@pytest.fixture(scope="module")
def minmax_run():
    rng = random.Random(4_200)
    mismatches = []
    certificates = []
    shortfalls = 0
    checked = 0
    while checked < 200:
        n = rng.randint(2, 8)
        inst = oracles.random_instance(rng, n, rng.randint(0, 12), max_constrained=4, bound_max=3)
        outcome = solve(inst)
        if not outcome.feasible:
            _audit_certificate(certificates, inst, outcome)
        # The engine runs on the degree matroid only when it is well defined.
        if check_well_defined(inst.graph, inst.bounds) is not None:
            continue
        checked += 1
        m1 = PartitionMatroid(inst.graph, inst.bounds)
        m2 = GraphicMatroid(inst.graph)
        result = max_common_independent(m1, m2, n - 1)
        brute = oracles.min_max_value(m1, m2, inst.graph.m)
        if result.size != brute:
            mismatches.append((inst.to_json(), result.size, brute))
        if result.minimizer is not None:
            shortfalls += 1
            cert = extract_certificate(inst.graph, m1, result.minimizer)
            certificates.append((EXTRACTION, verify_certificate(inst.graph, inst.bounds, cert)))
    return {"count": checked, "mismatches": mismatches, "certificates": certificates, "shortfalls": shortfalls}


def test_criterion_1_characterization(characterization_run, report_criterion):
    run = characterization_run
    ok = not run["disagreements"] and run["count"] == 3000 and run["seconds"] < 120
    report_criterion(
        1, "three verdicts agree", ok,
        f"{run['count']} instances, {len(run['disagreements'])} disagreements, {run['seconds']:.1f}s (limit 120s)",
    )
    assert run["count"] == 3000
    assert run["disagreements"] == []
    assert run["seconds"] < 120


def test_criterion_2_weighted_optimality(weighted_run, report_criterion):
    run = weighted_run
    ok = not run["mismatches"] and run["seconds"] < 120
    report_criterion(
        2, "solve cost equals enumeration cost", ok,
        f"{run['count']} feasible instances, {len(run['mismatches'])} mismatches, {run['seconds']:.1f}s (limit 120s)",
    )
    assert run["mismatches"] == []
    assert run["seconds"] < 120


def test_criterion_3_min_max(minmax_run, report_criterion):
    run = minmax_run
    ok = not run["mismatches"]
    report_criterion(
        3, "max common independent size equals brute-force min of r1(X) + r2(E - X)", ok,
        f"{run['count']} instances ({run['shortfalls']} with shortfall), {len(run['mismatches'])} mismatches",
    )
    assert run["count"] == 200
    assert run["mismatches"] == []


def test_criterion_4_certificate_soundness(characterization_run, weighted_run, minmax_run, report_criterion):
    pool = characterization_run["certificates"] + weighted_run["certificates"] + minmax_run["certificates"]
    per_path = Counter(path for path, _ in pool)
    failures = sum(1 for _, ok in pool if not ok)
    ok = failures == 0 and per_path[WELL_DEFINEDNESS] >= 20 and per_path[EXTRACTION] >= 20
    report_criterion(
        4, "every infeasible verdict carries a verifying certificate", ok,
        f"{len(pool)} certificates, {failures} failures; well-definedness path {per_path[WELL_DEFINEDNESS]}, "
        f"extraction path {per_path[EXTRACTION]} (each needs >= 20)",
    )
    assert failures == 0
    assert per_path[WELL_DEFINEDNESS] >= 20
    assert per_path[EXTRACTION] >= 20


def _well_defined(rng, n_range, m_max):
    while True:
        n = rng.randint(*n_range)
        inst = oracles.random_instance(rng, n, rng.randint(n - 1, m_max), max_constrained=5, bound_max=3)
        if check_well_defined(inst.graph, inst.bounds) is None:
            return inst


def test_criterion_5_rank_axioms(report_criterion):
    rng = random.Random(5_555)
    violations = 0
    triples = 0
    for _ in range(2000):
        inst = _well_defined(rng, (2, 9), 16)
        m = inst.graph.m
        matroids = (PartitionMatroid(inst.graph, inst.bounds), GraphicMatroid(inst.graph))
        for _ in range(5):
            x = frozenset(e for e in range(m) if rng.random() < 0.5)
            y = frozenset(e for e in range(m) if rng.random() < 0.5)
            triples += 1
            for mat in matroids:
                rx, ry = mat.rank(x), mat.rank(y)
                ru, ri = mat.rank(x | y), mat.rank(x & y)
                if not (0 <= rx <= len(x) and 0 <= ry <= len(y)):
                    violations += 1
                if not (ri <= rx <= ru and ri <= ry <= ru):
                    violations += 1
                if ru + ri > rx + ry:
                    violations += 1

    # r1 against ranks derived from brute-force basis enumeration, on every X.
    rank_mismatches = 0
    for _ in range(100):
        inst = _well_defined(rng, (2, 7), 12)
        g = inst.graph
        m1 = PartitionMatroid(g, inst.bounds)
        bases = np.array(oracles.m1_bases(g, inst.bounds), dtype=np.uint16)
        masks = np.arange(1 << g.m, dtype=np.uint16)
        brute = np.bitwise_count(masks[:, None] & bases[None, :]).max(axis=1)
        formula = np.array([m1.rank([e for e in range(g.m) if mask >> e & 1]) for mask in range(1 << g.m)])
        rank_mismatches += int((brute != formula).sum())

    ok = violations == 0 and rank_mismatches == 0 and triples == 10_000
    report_criterion(
        5, "rank axioms and brute-force r1", ok,
        f"{triples} triples, {violations} axiom violations; 100 instances, {rank_mismatches} rank mismatches",
    )
    assert triples == 10_000
    assert violations == 0
    assert rank_mismatches == 0


def _cli(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def test_criterion_6_scale_smoke(tmp_path, report_criterion):
    code, text = _cli("gen", "--n", "200", "--m", "1000", "--stable-size", "50", "--seed", "1",
                      "--connected", "--weight-range", "-10", "10")
    generated = loads_instance(text)
    # A second instance with every beta at least 2 so the engine runs all n - 1 rounds.
    rng = random.Random(1)
    u = generated.bounds.constrained
    roomy = Instance(
        generated.graph,
        DegreeBounds({v: rng.randint(0, 2) for v in u}, {v: rng.randint(2, 6) for v in u}),
        generated.weights,
    )
    timings = []
    verified = True
    for inst in (generated, roomy):
        start = time.perf_counter()
        outcome = solve(inst)
        timings.append((outcome.feasible, time.perf_counter() - start))
        path = tmp_path / "i.json"
        path.write_text(json.dumps(inst.to_json()))
        _, result = _cli("solve", path)
        (tmp_path / "r.json").write_text(result)
        verified &= _cli("verify", path, tmp_path / "r.json")[0] == 0
    ok = (code == 0 and len(u) == 50 and generated.graph.m == 1000 and verified
          and all(t < 60 for _, t in timings))
    report_criterion(
        6, "n=200, m=1000, |U|=50 solves in < 60s", ok,
        ", ".join(f"{'feasible' if f else 'certified infeasible'} in {t:.1f}s" for f, t in timings),
    )
    assert code == 0 and len(u) == 50 and generated.graph.m == 1000
    assert verified
    assert all(t < 60 for _, t in timings)


def test_criterion_7_determinism(report_criterion):
    fixtures = sorted(FIXTURES.glob("*.json"))
    unstable = []
    for path in fixtures:
        cmd = [sys.executable, "-m", "boundtree", "solve", str(path)]
        outputs = {subprocess.run(cmd, capture_output=True, check=False).stdout for _ in range(2)}
        if len(outputs) != 1:
            unstable.append(path.name)
    rng = random.Random(77)
    for _ in range(30):
        inst = oracles.random_connected_instance(rng, rng.randint(2, 12), weights=(-3, 3))
        payload = json.dumps(inst.to_json())
        docs = {dumps(solve_doc(inst, solve(loads_instance(payload)))) for _ in range(2)}
        if len(docs) != 1:
            unstable.append(payload)
    gen = [sys.executable, "-m", "boundtree", "gen", "--n", "40", "--m", "90", "--stable-size", "8",
           "--weight-range", "-5", "5", "--seed", "13", "--connected"]
    gen_outputs = {subprocess.run(gen, capture_output=True, check=True).stdout for _ in range(2)}
    ok = not unstable and len(gen_outputs) == 1
    report_criterion(
        7, "byte-identical reruns", ok,
        f"{len(fixtures)} fixtures via subprocess + 30 generated instances, {len(unstable)} unstable; "
        f"gen reruns identical: {len(gen_outputs) == 1}",
    )
    assert unstable == []
    assert len(gen_outputs) == 1


FIXTURE_EXPECTATIONS = {
    "k4_beta1.json": {"status": "feasible", "tree_edges": [0, 3, 4], "cost": 10, "degrees": {"0": 1}},
    "triangles_apex.json": {"status": "infeasible", "certificate": {"violated": "beta", "S": [0], "lhs": 1, "rhs": 2}},
    "c5_beta1.json": {"status": "infeasible", "certificate": {"violated": "beta", "S": [0, 2], "lhs": 2, "rhs": 3}},
    "c4_double_neighbor.json": {
        "status": "infeasible",
        "certificate": {"violated": "alpha", "S": [0, 1], "lhs": 4, "rhs": 3},
    },
    "p3_alpha1_beta1.json": {"status": "infeasible", "certificate": {"violated": "beta", "S": [1], "lhs": 1, "rhs": 2}},
}


def _brute_force_expectation(inst):
    """The expected document rebuilt from enumeration and exhaustive conditions only."""
    best = oracles.best_tree_cost(inst)
    if best is not None:
        trees = [
            t for t in oracles.all_spanning_trees(inst.graph)
            if oracles.degree_ok(inst.graph, inst.bounds, t) and sum(inst.weights[e] for e in t) == best
        ]
        return best, None, trees
    alpha = check_condition_alpha(inst.graph, inst.bounds)
    beta = check_condition_beta(inst.graph, inst.bounds)
    # Each fixture has exactly one violated condition, so the certificate is forced.
    assert (alpha is None) != (beta is None)
    return None, (alpha or beta).to_json(), []


def test_criterion_8_fixture_regression(report_criterion):
    failures = []
    for name, expected in FIXTURE_EXPECTATIONS.items():
        inst = loads_instance((FIXTURES / name).read_text())
        best, cert, trees = _brute_force_expectation(inst)
        if expected["status"] == "feasible":
            recomputed_ok = best == expected["cost"] and tuple(expected["tree_edges"]) in trees
            deg = tree_degrees(inst.graph, expected["tree_edges"])
            recomputed_ok &= expected["degrees"] == {str(v): deg[v] for v in inst.bounds.constrained}
        else:
            recomputed_ok = best is None and cert == expected["certificate"]
        code, out = _cli("solve", FIXTURES / name)
        if not recomputed_ok or json.loads(out) != expected:
            failures.append(name)
    ok = not failures
    report_criterion(
        8, "hand-analyzed fixtures reproduce", ok,
        f"{len(FIXTURE_EXPECTATIONS)} fixtures, failures: {failures or 'none'}",
    )
    assert failures == []
