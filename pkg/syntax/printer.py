"""
Canonical TPTP-style printing of terms and formulas.
Output is fully parenthesized and re-parseable by the FOF parser.
"""

import re
from typing import Dict, Mapping, Optional

from syntax.formulas import (
    And, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, QUANTIFIERS, Term, Variable, subformulas,
    term_variables,
)

_BINARY_SYMBOLS = {And: "&", Or: "|", Imp: "=>", Iff: "<=>"}
_UPPER_WORD = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


def upper_word(name: str) -> str:
    """TPTP variable spelling of a name: ``x`` -> ``X``, ``_y`` -> ``X_y``."""
    if _UPPER_WORD.match(name):
        return name
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", name)
    if cleaned[:1].isalpha():
        return cleaned[0].upper() + cleaned[1:]
    return "X" + cleaned


def variable_spelling(formula: Formula) -> Dict[str, str]:
    """Injective renaming of the formula's variables that are not TPTP upper words."""
    names = set()
    for sub in subformulas(formula):
        if isinstance(sub, QUANTIFIERS):
            names.add(sub.var)
        elif isinstance(sub, Atom):
            for term in sub.args:
                names.update(term_variables(term))

    taken = {name for name in names if _UPPER_WORD.match(name)}
    spelling = {}
    for name in sorted(names - taken):
        candidate = upper_word(name)
        while candidate in taken:
            candidate += "_"
        taken.add(candidate)
        spelling[name] = candidate
    return spelling


def print_term(term: Term, spelling: Optional[Mapping[str, str]] = None) -> str:
    if isinstance(term, Variable):
        return (spelling or {}).get(term.name) or upper_word(term.name)
    if not term.args:
        return term.functor
    return f"{term.functor}({','.join(print_term(a, spelling) for a in term.args)})"


def _print(formula: Formula, spelling: Mapping[str, str]) -> str:
    if isinstance(formula, Atom):
        if formula.predicate == "=" and len(formula.args) == 2:
            return f"({print_term(formula.args[0], spelling)} = {print_term(formula.args[1], spelling)})"
        if not formula.args:
            return formula.predicate
        return f"{formula.predicate}({','.join(print_term(a, spelling) for a in formula.args)})"
    if isinstance(formula, Neg):
        return f"~{_print(formula.body, spelling)}"
    if isinstance(formula, (Forall, Exists)):
        symbol = "!" if isinstance(formula, Forall) else "?"
        var = spelling.get(formula.var) or upper_word(formula.var)
        return f"({symbol} [{var}] : {_print(formula.body, spelling)})"
    symbol = _BINARY_SYMBOLS[type(formula)]
    return f"({_print(formula.left, spelling)} {symbol} {_print(formula.right, spelling)})"


def print_formula(formula: Formula) -> str:
    """Render a formula, e.g. ``(p => p)``, ``(~p | p)``, ``(! [X] : p(X))``.

    Variables that are not TPTP upper words are respelled consistently, so
    ``Forall x. p(x)`` prints as ``(! [X] : p(X))``.
    """
    return _print(formula, variable_spelling(formula))


def print_problem(formula: Formula, name: str = "goal") -> str:
    """Wrap a formula as a single-conjecture TPTP problem."""
    return f"fof({name}, conjecture, {print_formula(formula)}).\n"
