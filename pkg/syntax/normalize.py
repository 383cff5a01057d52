"""
Alpha-normalization and alpha-equivalence.
"""

from typing import Dict, Optional, Set

from syntax.formulas import (
    BINARY, QUANTIFIERS, Application, Atom, Formula, Neg, Term, Variable,
    subformulas, substitute, term_variables,
)


def _all_names(formula: Formula) -> Set[str]:
    names: Set[str] = set()
    for sub in subformulas(formula):
        if isinstance(sub, QUANTIFIERS):
            names.add(sub.var)
        elif isinstance(sub, Atom):
            for t in sub.args:
                names.update(term_variables(t))
    return names


def _fresh_name(name: str, avoid: Set[str]) -> str:
    n = 1
    while f"{name}_{n}" in avoid:
        n += 1
    return f"{name}_{n}"


def alpha_normalize(formula: Formula, used: Optional[Set[str]] = None) -> Formula:
    """Rename bound variables so that every quantifier binds a distinct name.

    The first binder of a name keeps it; later ones get ``NAME_k`` with ``k``
    chosen so the new name occurs nowhere in the formula. Already normalized
    formulas come back unchanged.
    """
    used = set() if used is None else used
    avoid = _all_names(formula) | used

    def walk(f: Formula) -> Formula:
        if isinstance(f, Atom):
            return f
        if isinstance(f, Neg):
            return Neg(walk(f.body))
        if isinstance(f, BINARY):
            left = walk(f.left)
            return type(f)(left, walk(f.right))
        name = f.var if f.var not in used else _fresh_name(f.var, avoid)
        used.add(name)
        avoid.add(name)
        body = f.body if name == f.var else substitute(f.body, {f.var: Variable(name)})
        return type(f)(name, walk(body))

    return walk(formula)


def _terms_equivalent(a: Term, b: Term, left: Dict[str, int], right: Dict[str, int]) -> bool:
    if isinstance(a, Variable) and isinstance(b, Variable):
        la, rb = left.get(a.name), right.get(b.name)
        if la is None and rb is None:
            return a.name == b.name
        return la == rb
    if isinstance(a, Application) and isinstance(b, Application):
        return (
            a.functor == b.functor
            and len(a.args) == len(b.args)
            and all(_terms_equivalent(x, y, left, right) for x, y in zip(a.args, b.args))
        )
    return False


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    """Structural equality up to renaming of bound variables."""

    def walk(a: Formula, b: Formula, left: Dict[str, int], right: Dict[str, int], depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Atom):
            return (
                a.predicate == b.predicate
                and len(a.args) == len(b.args)
                and all(_terms_equivalent(x, y, left, right) for x, y in zip(a.args, b.args))
            )
        if isinstance(a, Neg):
            return walk(a.body, b.body, left, right, depth)
        if isinstance(a, BINARY):
            return walk(a.left, b.left, left, right, depth) and walk(a.right, b.right, left, right, depth)
        return walk(
            a.body, b.body,
            {**left, a.var: depth}, {**right, b.var: depth},
            depth + 1,
        )

    return walk(f, g, {}, {}, 0)
