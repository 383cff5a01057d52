"""
Phase one: connection-driven certificate search.
"""

from search.limits import OutcomeStatus, SearchLimits, SearchOutcome, SearchStatistics, TraceEvent
from search.portfolio import default_strategies, prove_portfolio
from search.prover import (
    FRESH, ConnectionSearch, Extension, ProofState, SearchTimeout, build_certificate, irredundant_connections,
    prove, used_multiplicity,
)

__all__ = [
    "OutcomeStatus", "SearchLimits", "SearchOutcome", "SearchStatistics", "TraceEvent",
    "default_strategies", "prove_portfolio", "FRESH", "ConnectionSearch", "Extension", "ProofState",
    "SearchTimeout", "build_certificate", "irredundant_connections", "prove", "used_multiplicity",
]
