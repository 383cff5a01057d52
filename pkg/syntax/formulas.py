"""
Terms and first-order formulas.
All values are immutable and hashable; helpers are pure functions.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Mapping, Tuple, Union


@dataclass(frozen=True)
class Variable:
    """Quantifier-bound (or, inside the matrix, free instance) variable."""
    name: str


@dataclass(frozen=True)
class Application:
    """Function application; constants are zero-arity applications."""
    functor: str
    args: Tuple["Term", ...] = ()


Term = Union[Variable, Application]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Neg, And, Or, Imp, Iff, Forall, Exists]

BINARY = (And, Or, Imp, Iff)
QUANTIFIERS = (Forall, Exists)


def constant(name: str) -> Application:
    return Application(name, ())


def term_variables(term: Term) -> Iterator[str]:
    """Yield variable names of a term in left-to-right order (with repeats)."""
    if isinstance(term, Variable):
        yield term.name
    else:
        for arg in term.args:
            yield from term_variables(arg)


def term_occurs(name: str, term: Term) -> bool:
    return any(v == name for v in term_variables(term))


def substitute_term(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Variable):
        return mapping.get(term.name, term)
    if not term.args:
        return term
    return Application(term.functor, tuple(substitute_term(a, mapping) for a in term.args))


def free_variables(formula: Formula) -> FrozenSet[str]:
    if isinstance(formula, Atom):
        return frozenset(v for t in formula.args for v in term_variables(t))
    if isinstance(formula, Neg):
        return free_variables(formula.body)
    if isinstance(formula, BINARY):
        return free_variables(formula.left) | free_variables(formula.right)
    return free_variables(formula.body) - {formula.var}


def ordered_free_variables(formula: Formula) -> Tuple[str, ...]:
    """Free variables in order of first occurrence."""
    seen: Dict[str, None] = {}

    def walk(f: Formula, bound: FrozenSet[str]) -> None:
        if isinstance(f, Atom):
            for t in f.args:
                for v in term_variables(t):
                    if v not in bound:
                        seen.setdefault(v, None)
        elif isinstance(f, Neg):
            walk(f.body, bound)
        elif isinstance(f, BINARY):
            walk(f.left, bound)
            walk(f.right, bound)
        else:
            walk(f.body, bound | {f.var})

    walk(formula, frozenset())
    return tuple(seen)


def substitute(formula: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Replace free variables. Bound names shadow the mapping.

    Capture is impossible for alpha-normalized formulas whose bound names are
    disjoint from the variables introduced by ``mapping``.
    """
    if not mapping:
        return formula
    if isinstance(formula, Atom):
        return Atom(formula.predicate, tuple(substitute_term(t, mapping) for t in formula.args))
    if isinstance(formula, Neg):
        return Neg(substitute(formula.body, mapping))
    if isinstance(formula, BINARY):
        return type(formula)(substitute(formula.left, mapping), substitute(formula.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != formula.var}
    return type(formula)(formula.var, substitute(formula.body, inner))


def instantiate(quantified: Union[Forall, Exists], term: Term) -> Formula:
    """Body of a quantifier with its bound variable replaced by ``term``."""
    return substitute(quantified.body, {quantified.var: term})


def formula_size(formula: Formula) -> int:
    """Number of connectives and quantifiers."""
    if isinstance(formula, Atom):
        return 0
    if isinstance(formula, Neg):
        return 1 + formula_size(formula.body)
    if isinstance(formula, BINARY):
        return 1 + formula_size(formula.left) + formula_size(formula.right)
    return 1 + formula_size(formula.body)


def subformulas(formula: Formula) -> Iterator[Formula]:
    yield formula
    if isinstance(formula, Neg) or isinstance(formula, QUANTIFIERS):
        yield from subformulas(formula.body)
    elif isinstance(formula, BINARY):
        yield from subformulas(formula.left)
        yield from subformulas(formula.right)


def _term_functors(term: Term, acc: Dict[str, int]) -> None:
    if isinstance(term, Application):
        acc.setdefault(term.functor, len(term.args))
        for arg in term.args:
            _term_functors(arg, acc)


def symbols(formula: Formula) -> Tuple[Dict[str, int], Dict[str, int]]:
    """Return (functor arities, predicate arities), first arity seen wins."""
    functors: Dict[str, int] = {}
    predicates: Dict[str, int] = {}
    for sub in subformulas(formula):
        if isinstance(sub, Atom):
            predicates.setdefault(sub.predicate, len(sub.args))
            for t in sub.args:
                _term_functors(t, functors)
    return functors, predicates


def term_functors(term: Term) -> FrozenSet[str]:
    acc: Dict[str, int] = {}
    _term_functors(term, acc)
    return frozenset(acc)


def is_propositional(formula: Formula) -> bool:
    return all(
        not isinstance(sub, QUANTIFIERS) and not (isinstance(sub, Atom) and sub.args)
        for sub in subformulas(formula)
    )


def conjoin(formulas) -> Formula:
    """Left-associated conjunction of a non-empty sequence."""
    formulas = list(formulas)
    result = formulas[0]
    for f in formulas[1:]:
        result = And(result, f)
    return result
