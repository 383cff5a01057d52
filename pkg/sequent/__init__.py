"""
Phase two: sequent proofs reconstructed from certificates, and their checker.
"""

from sequent.builder import OrderingDeadlock, SequentBuilder, to_sequent
from sequent.checker import SequentVerdict, check_sequent, expected_premises
from sequent.proof import (
    CRITICAL_RULES, Rule, Sequent, SequentNode, SequentProof, number_nodes, proof_from_json,
    proof_to_json, render_proof,
)

__all__ = [
    "OrderingDeadlock", "SequentBuilder", "to_sequent", "SequentVerdict", "check_sequent",
    "expected_premises", "CRITICAL_RULES", "Rule", "Sequent", "SequentNode", "SequentProof",
    "number_nodes", "proof_from_json", "proof_to_json", "render_proof",
]
