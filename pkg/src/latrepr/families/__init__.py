"""Countable example lattices presented by oracles, with filter catalogs."""
from __future__ import annotations

from ..errors import UnknownFamily
from .base import (
    DEFAULT_BUDGET,
    Candidate,
    FilterDescriptor,
    OracleLattice,
    ProbeVerdict,
    check_descriptor,
    confirm_bound,
    probe_complete,
    probe_completely_prime,
    probe_prime,
    verdict_to_dict,
    witness_to_dict,
)
from .boolean import FiniteCofiniteBA, RationalIntervalBA, finite_cofinite_ba, rational_interval_ba
from .grids import (
    Nat,
    NBarSquaredOverNats,
    NBarSquaredWithBottom,
    nbar_squared_over_nats,
    nbar_squared_with_bottom,
)
from .qunit import QuadraticSurd, UnitIntervalRationals, unit_interval_rationals

REGISTRY = {
    "qunit": unit_interval_rationals,
    "nbar2bot": nbar_squared_with_bottom,
    "nbar2nat": nbar_squared_over_nats,
    "fincofin": finite_cofinite_ba,
    "ratint": rational_interval_ba,
}


def get_family(family_id: str) -> OracleLattice:
    try:
        return REGISTRY[family_id]()
    except KeyError:
        raise UnknownFamily(f"unknown family {family_id!r}; known: {', '.join(REGISTRY)}") from None


def truncate(F: OracleLattice, depth: int):
    return F.truncate(depth)


__all__ = [
    "DEFAULT_BUDGET", "REGISTRY", "Candidate", "FilterDescriptor", "FiniteCofiniteBA", "Nat",
    "NBarSquaredOverNats", "NBarSquaredWithBottom", "OracleLattice", "ProbeVerdict",
    "QuadraticSurd", "RationalIntervalBA", "UnitIntervalRationals", "check_descriptor",
    "confirm_bound", "finite_cofinite_ba", "get_family", "nbar_squared_over_nats",
    "nbar_squared_with_bottom", "probe_complete", "probe_completely_prime", "probe_prime",
    "rational_interval_ba", "truncate", "unit_interval_rationals", "verdict_to_dict",
    "witness_to_dict",
]
