"""
Terms, formulas, the TPTP FOF parser and canonical printing.
"""

from syntax.errors import (
    ArityClashError, DuplicateNameError, InputError, InternalCheckError, MissingConjectureError,
    ParseError, ProverError, ResourceBoundError,
)
from syntax.formulas import (
    And, Application, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, Term,
    Variable, constant, formula_size, free_variables, instantiate,
    is_propositional, substitute, substitute_term, symbols,
)
from syntax.normalize import alpha_equivalent, alpha_normalize
from syntax.printer import print_formula, print_problem, print_term
from syntax.tptp_parser import parse_problem, parse_statements

__all__ = [
    "And", "Application", "Atom", "Exists", "Forall", "Formula", "Iff", "Imp",
    "Neg", "Or", "Term", "Variable", "constant", "formula_size", "free_variables",
    "instantiate", "is_propositional", "substitute", "substitute_term", "symbols",
    "alpha_equivalent", "alpha_normalize", "print_formula", "print_problem",
    "print_term", "parse_problem", "parse_statements",
    "ArityClashError", "DuplicateNameError", "InputError", "InternalCheckError", "MissingConjectureError",
    "ParseError", "ProverError", "ResourceBoundError",
]
