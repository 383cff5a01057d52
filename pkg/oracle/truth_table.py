"""
Classical propositional validity by exhaustive truth tables.
"""

from itertools import product
from typing import Dict, List, Optional

from config.settings import get_settings
from syntax.errors import ResourceBoundError
from syntax.formulas import And, Atom, Formula, Iff, Imp, Neg, Or, is_propositional, subformulas


class AtomBoundExceeded(ResourceBoundError):
    """More distinct atoms than the truth-table bound allows."""


def propositional_atoms(formula: Formula) -> List[str]:
    if not is_propositional(formula):
        raise ValueError("oracle expects a propositional formula")
    return sorted({sub.predicate for sub in subformulas(formula) if isinstance(sub, Atom)})


def evaluate(formula: Formula, assignment: Dict[str, bool]) -> bool:
    if isinstance(formula, Atom):
        return assignment[formula.predicate]
    if isinstance(formula, Neg):
        return not evaluate(formula.body, assignment)
    if isinstance(formula, And):
        return evaluate(formula.left, assignment) and evaluate(formula.right, assignment)
    if isinstance(formula, Or):
        return evaluate(formula.left, assignment) or evaluate(formula.right, assignment)
    if isinstance(formula, Imp):
        return not evaluate(formula.left, assignment) or evaluate(formula.right, assignment)
    if isinstance(formula, Iff):
        return evaluate(formula.left, assignment) == evaluate(formula.right, assignment)
    raise ValueError(f"not a propositional connective: {type(formula).__name__}")


def falsifying_assignment(formula: Formula, atom_bound: Optional[int] = None) -> Optional[Dict[str, bool]]:
    atoms = propositional_atoms(formula)
    bound = get_settings().atom_bound if atom_bound is None else atom_bound
    if len(atoms) > bound:
        raise AtomBoundExceeded(f"{len(atoms)} atoms exceed the truth-table bound {bound}")
    for values in product((False, True), repeat=len(atoms)):
        assignment = dict(zip(atoms, values))
        if not evaluate(formula, assignment):
            return assignment
    return None


def classical_valid(formula: Formula, atom_bound: Optional[int] = None) -> bool:
    """Truth-table verdict; raises AtomBoundExceeded above the atom bound (default 20)."""
    return falsifying_assignment(formula, atom_bound) is None
