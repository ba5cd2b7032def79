"""Minimum-cost spanning trees with degree bounds on a stable vertex set."""

from .certify import (
    Certificate,
    OracleVerdict,
    Violated,
    check_condition_alpha,
    check_condition_beta,
    enumerate_feasible_trees,
    extract_certificate,
    map_welldefinedness_failure,
    verify_certificate,
)
from .errors import InternalInvariantBroken, LimitExceeded
from .graph import Graph, GraphError
from .instance import Instance, MalformedInstance, loads_instance, parse_instance
from .intersection import IntersectionResult, augment_step, max_common_independent, min_weight_common_basis
from .matroids import (
    DegreeBounds,
    FailureKind,
    GraphicMatroid,
    MatroidOracle,
    NotWellDefined,
    PartitionMatroid,
    WellDefinednessFailure,
    check_well_defined,
)
from .solve import SolveOutcome, solve

__all__ = [
    "Certificate",
    "DegreeBounds",
    "FailureKind",
    "Graph",
    "GraphError",
    "GraphicMatroid",
    "Instance",
    "InternalInvariantBroken",
    "IntersectionResult",
    "LimitExceeded",
    "MalformedInstance",
    "MatroidOracle",
    "NotWellDefined",
    "OracleVerdict",
    "PartitionMatroid",
    "SolveOutcome",
    "Violated",
    "WellDefinednessFailure",
    "augment_step",
    "check_condition_alpha",
    "check_condition_beta",
    "check_well_defined",
    "enumerate_feasible_trees",
    "extract_certificate",
    "loads_instance",
    "map_welldefinedness_failure",
    "max_common_independent",
    "min_weight_common_basis",
    "parse_instance",
    "solve",
    "verify_certificate",
]
