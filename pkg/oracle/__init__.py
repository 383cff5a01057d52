"""
Independent propositional deciders used to cross-check the prover.
"""

from oracle.g4ip import FALSUM, G4ipProver, g4ip_valid
from oracle.kripke import KripkeModel, kripke_countermodel, rooted_orders
from oracle.random_formulas import random_corpus, random_formula
from oracle.truth_table import (
    AtomBoundExceeded, classical_valid, evaluate, falsifying_assignment, propositional_atoms,
)

__all__ = [
    "FALSUM", "G4ipProver", "g4ip_valid", "KripkeModel", "kripke_countermodel", "rooted_orders",
    "AtomBoundExceeded", "classical_valid", "evaluate", "falsifying_assignment", "propositional_atoms",
    "random_corpus", "random_formula",
]
