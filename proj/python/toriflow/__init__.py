"""Toric ideals of flow and transportation polytopes."""

from ._core import (
    CapExceeded,
    InputError,
    Problem,
    birkhoff_family,
    flow_graph,
    run_acceptance,
    transport_family,
    transportation,
)

__all__ = [
    "CapExceeded",
    "InputError",
    "Problem",
    "birkhoff_family",
    "flow_graph",
    "run_acceptance",
    "transport_family",
    "transportation",
]
