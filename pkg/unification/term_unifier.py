"""
Term unification for the quantifier substitution σ_Q.
Robinson-style most general unifiers over immutable substitution values.
"""

from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from syntax.formulas import Application, Atom, Term, Variable


class TermSubstitution:
    """Immutable map from quantifier variable names to terms.

    Bindings are stored triangular (images may mention bound variables);
    ``apply`` resolves them. Extending returns a new value, so a snapshot
    is just a reference to the old one.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Optional[Mapping[str, Term]] = None):
        self._bindings: Dict[str, Term] = dict(bindings or {})

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def __len__(self) -> int:
        return len(self._bindings)

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TermSubstitution) and self.normalized()._bindings == other.normalized()._bindings

    def __hash__(self) -> int:
        return hash(frozenset(self.normalized()._bindings.items()))

    def __repr__(self) -> str:
        return f"TermSubstitution({self._bindings!r})"

    def get(self, name: str) -> Optional[Term]:
        return self._bindings.get(name)

    def items(self) -> Iterator[Tuple[str, Term]]:
        return iter(self._bindings.items())

    def bind(self, name: str, term: Term) -> "TermSubstitution":
        extended = TermSubstitution()
        extended._bindings = {**self._bindings, name: term}
        return extended

    def walk(self, term: Term) -> Term:
        """Resolve a variable head until it is unbound or an application."""
        while isinstance(term, Variable) and term.name in self._bindings:
            term = self._bindings[term.name]
        return term

    def apply(self, term: Term) -> Term:
        term = self.walk(term)
        if isinstance(term, Variable) or not term.args:
            return term
        return Application(term.functor, tuple(self.apply(a) for a in term.args))

    def apply_atom(self, atom: Atom) -> Atom:
        return Atom(atom.predicate, tuple(self.apply(t) for t in atom.args))

    def normalized(self) -> "TermSubstitution":
        """Idempotent form: every image fully applied."""
        result = TermSubstitution()
        result._bindings = {name: self.apply(term) for name, term in self._bindings.items()}
        return result

    def as_dict(self) -> Dict[str, Term]:
        return dict(self._bindings)


def occurs(name: str, term: Term, sigma: TermSubstitution) -> bool:
    term = sigma.walk(term)
    if isinstance(term, Variable):
        return term.name == name
    return any(occurs(name, arg, sigma) for arg in term.args)


def unify_term_pair(a: Term, b: Term, sigma: TermSubstitution) -> Optional[TermSubstitution]:
    a, b = sigma.walk(a), sigma.walk(b)
    if isinstance(a, Variable):
        if isinstance(b, Variable) and a.name == b.name:
            return sigma
        if occurs(a.name, b, sigma):
            return None
        return sigma.bind(a.name, b)
    if isinstance(b, Variable):
        return unify_term_pair(b, a, sigma)
    if a.functor != b.functor or len(a.args) != len(b.args):
        return None
    return unify_term_lists(a.args, b.args, sigma)


def unify_term_lists(xs: Sequence[Term], ys: Sequence[Term], sigma: TermSubstitution) -> Optional[TermSubstitution]:
    if len(xs) != len(ys):
        return None
    for x, y in zip(xs, ys):
        sigma = unify_term_pair(x, y, sigma)
        if sigma is None:
            return None
    return sigma


def unify_terms(a: Atom, b: Atom, sigma: Optional[TermSubstitution] = None) -> Optional[TermSubstitution]:
    """Extend σ_Q to a most general unifier of two atoms' argument lists.

    Returns None on a clash or an occurs-check violation; the input value is
    never modified.
    """
    sigma = sigma if sigma is not None else TermSubstitution()
    if a.predicate != b.predicate:
        return None
    return unify_term_lists(a.args, b.args, sigma)
