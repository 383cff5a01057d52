"""
Combined admissibility of σ = (σ_Q, σ_J).

The reduction ordering is the tree order of the matrix extended by
  - δ-position  -> γ-copy of x   for every Skolem term of the δ-position in σ_Q(x)
  - constant owner -> variable owner   for every constant in σ_J(V)
σ is admissible when that relation is acyclic, both substitutions are
cycle-free, and (intuitionistic mode) the domain condition holds.
"""

from graphlib import CycleError, TopologicalSorter
from typing import Dict, Iterator, List, Set, Tuple

from loguru import logger

from matrix.positions import Matrix, Mode, Prefix, PrefixChar
from syntax.formulas import Application, Term, Variable
from unification.prefix_unifier import PrefixSubstitution
from unification.term_unifier import TermSubstitution


def _is_acyclic(edges: Dict[object, Set[object]]) -> bool:
    try:
        TopologicalSorter(edges).prepare()
    except CycleError:
        return False
    return True


def skolem_owners(matrix: Matrix, term: Term) -> Iterator[str]:
    """δ-position ids of every Skolem functor occurring in a term."""
    if isinstance(term, Variable):
        return
    owner = matrix.skolem_owner(term.functor)
    if owner is not None:
        yield owner
    for arg in term.args:
        yield from skolem_owners(matrix, arg)


def domain_pairs(matrix: Matrix, sigma_q: TermSubstitution) -> Set[Tuple[str, str]]:
    """(variable, δ-position) pairs whose prefixes must be ordered."""
    pairs = set()
    for name in sigma_q:
        if name not in matrix.variable_positions:
            continue
        for owner in skolem_owners(matrix, sigma_q.apply(Variable(name))):
            pairs.add((name, owner))
    return pairs


def variable_prefix(matrix: Matrix, name: str) -> Prefix:
    return matrix.positions[matrix.variable_positions[name]].prefix


def _is_initial_segment(short: Prefix, long: Prefix) -> bool:
    return len(short) <= len(long) and long[: len(short)] == short


def substitution_cycles(sigma_q: TermSubstitution, sigma_j: PrefixSubstitution) -> bool:
    """True when either substitution binds a variable to something containing itself."""
    term_edges: Dict[object, Set[object]] = {}
    for name, term in sigma_q.items():
        term_edges[name] = set(_term_vars(term))
    if not _is_acyclic(term_edges):
        return True
    prefix_edges: Dict[object, Set[object]] = {}
    for var, value in sigma_j.items():
        prefix_edges[var] = {c for c in value if c.variable}
    return not _is_acyclic(prefix_edges)


def _term_vars(term: Term) -> Iterator[str]:
    if isinstance(term, Variable):
        yield term.name
    elif isinstance(term, Application):
        for arg in term.args:
            yield from _term_vars(arg)


def domain_condition_holds(matrix: Matrix, sigma_q: TermSubstitution, sigma_j: PrefixSubstitution) -> bool:
    if matrix.mode == Mode.CLASSICAL:
        return True
    for name, owner in domain_pairs(matrix, sigma_q):
        outer = sigma_j.apply(matrix.positions[owner].prefix)
        inner = sigma_j.apply(variable_prefix(matrix, name))
        if not _is_initial_segment(outer, inner):
            logger.debug(f"Domain condition fails for {name} against {owner}")
            return False
    return True


def reduction_edges(matrix: Matrix, sigma_q: TermSubstitution,
                    sigma_j: PrefixSubstitution) -> Dict[str, Set[str]]:
    """Predecessor sets of the reduction ordering over position ids."""
    edges: Dict[str, Set[str]] = {pid: set() for pid in matrix.positions}
    for position in matrix.positions.values():
        if position.parent is not None:
            edges[position.id].add(position.parent)

    for name, owner in domain_pairs(matrix, sigma_q):
        edges[matrix.variable_positions[name]].add(owner)

    owners: Dict[PrefixChar, str] = matrix.character_positions()
    for var, _ in sigma_j.items():
        target = owners.get(var)
        if target is None:
            continue
        for char in sigma_j.apply((var,)):
            source = owners.get(char)
            if source is not None and not char.variable:
                edges[target].add(source)
    return edges


def check_admissible(sigma_q: TermSubstitution, sigma_j: PrefixSubstitution, matrix: Matrix) -> bool:
    """True iff the combined reduction ordering induced by σ is irreflexive."""
    if substitution_cycles(sigma_q, sigma_j):
        return False
    if not domain_condition_holds(matrix, sigma_q, sigma_j):
        return False
    return _is_acyclic(reduction_edges(matrix, sigma_q, sigma_j))


def ordering_violations(matrix: Matrix, sigma_q: TermSubstitution, sigma_j: PrefixSubstitution) -> List[str]:
    """Human-readable reasons for inadmissibility, empty when admissible."""
    if substitution_cycles(sigma_q, sigma_j):
        # applying a cyclic substitution does not terminate
        return ["substitution binds a variable to a term or string containing itself"]
    reasons = []
    if not domain_condition_holds(matrix, sigma_q, sigma_j):
        reasons.append("eigenvariable prefix is not an initial segment of the instantiated variable's prefix")
    if not _is_acyclic(reduction_edges(matrix, sigma_q, sigma_j)):
        reasons.append("reduction ordering is cyclic")
    return reasons
