"""Sum-graph labeling toolkit: induction, constructions, and exact search."""
from __future__ import annotations

from .core import (
    Domain,
    InducedResult,
    Labeling,
    OptimalityReport,
    SimpleGraph,
    find_isomorphism,
    graph,
    graph_from_json,
    graph_to_json,
    induce,
    is_valid_labeling,
    isd_lower_bound,
    isomorphic,
    label_range,
    labeling,
    labels_to_text,
    optimality_witness_check,
    parse_labels,
    sd_lower_bound,
)

__all__ = [
    "Domain",
    "InducedResult",
    "Labeling",
    "OptimalityReport",
    "SimpleGraph",
    "find_isomorphism",
    "graph",
    "graph_from_json",
    "graph_to_json",
    "induce",
    "is_valid_labeling",
    "isd_lower_bound",
    "isomorphic",
    "label_range",
    "labeling",
    "labels_to_text",
    "optimality_witness_check",
    "parse_labels",
    "sd_lower_bound",
]

__version__ = "0.1.0"
