"""
Certificate-guided reconstruction of a sequent proof.

Every formula occurrence in a goal sequent is tied to a matrix position, so
the certificate decides everything but the order of the rules: instances are
read off σ_Q (Skolem terms become eigenvariable constants), branches close
only with certificate connections, and σ_J decides when a rule may fire.
A polarity-1 rule waits until every non-atomic position whose constant
occurs in the σ_J-image of its prefix has been reduced on the branch; the
critical rules (impR, notR, forallR) are chosen by backtracking, best σ_J
score first. When that order closes no proof, a second pass drops the σ_J
order and backtracks over the remaining rule choices.
"""

import time
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from loguru import logger

from certificate.model import Certificate
from config.settings import get_settings
from matrix.positions import Matrix, Mode, PrincipalType
from sequent.proof import CRITICAL_RULES, Rule, Sequent, SequentNode, SequentProof, number_nodes
from syntax.errors import ProverError
from syntax.formulas import (
    And, Application, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, Term, Variable, constant,
)
from unification.admissibility import skolem_owners
from utils.logger import log_performance_metric

BRANCHING_RULES = (Rule.AND_R, Rule.OR_L, Rule.IMP_L, Rule.IFF_R)


class OrderingDeadlock(ProverError):
    """No rule consistent with the certificate's ordering applies to an open sequent."""

    def __init__(self, message: str, sequent: Optional[Sequent] = None):
        self.sequent = sequent
        super().__init__(message if sequent is None else f"{message}: {sequent}")


class _NodeLimit(Exception):
    """One ordering pass built more nodes than allowed."""


@dataclass(frozen=True)
class Occurrence:
    position: str
    formula: Formula


@dataclass(frozen=True)
class Goal:
    left: Tuple[Occurrence, ...]
    right: Tuple[Occurrence, ...]
    # positions whose rule has been applied on this branch
    applied: FrozenSet[str] = frozenset()

    def sequent(self) -> Sequent:
        return Sequent((o.formula for o in self.left), (o.formula for o in self.right))


def _without(occurrences: Tuple[Occurrence, ...], target: Occurrence) -> List[Occurrence]:
    result = list(occurrences)
    result.remove(target)
    return result


class SequentBuilder:
    """Builds one proof; holds the rebuilt F^μ and the rendering caches."""

    def __init__(self, certificate: Certificate, backtrack_depth: Optional[int] = None,
                 node_limit: Optional[int] = None):
        self.certificate = certificate
        self.mode = certificate.mode
        self.matrix: Matrix = certificate.matrix()
        self.sigma_q = certificate.sigma_q
        self.sigma_j = certificate.sigma_j
        self.connections = certificate.connections
        settings = get_settings()
        self.backtrack_depth = settings.sequent_backtrack_depth if backtrack_depth is None else backtrack_depth
        self.node_limit = node_limit or 100 * len(self.matrix.positions) + 1000
        self.owners = self.matrix.character_positions()
        self.default_term = constant(f"{self.matrix.skolem_prefix}_inst")
        self.relevant: Set[str] = set()
        for pair in self.connections:
            for atom_id in pair:
                self.relevant.update(self.matrix.ancestors(atom_id) + (atom_id,))
        self._formulas: Dict[str, Formula] = {}
        self._nodes = 0
        self.guided = True

    # rendering

    def render_term(self, term: Term, bound: FrozenSet[str] = frozenset()) -> Term:
        if isinstance(term, Variable):
            if term.name in bound or term.name not in self.matrix.variable_positions:
                return term
            image = self.sigma_q.apply(term)
            if isinstance(image, Variable):
                return self.default_term
            return self.render_term(image)
        if self.matrix.skolem_owner(term.functor) is not None:
            return constant(term.functor)
        return Application(term.functor, tuple(self.render_term(a, bound) for a in term.args))

    def render_formula(self, formula: Formula, bound: FrozenSet[str] = frozenset()) -> Formula:
        if isinstance(formula, Atom):
            return Atom(formula.predicate, tuple(self.render_term(t, bound) for t in formula.args))
        if isinstance(formula, Neg):
            return Neg(self.render_formula(formula.body, bound))
        if isinstance(formula, (Forall, Exists)):
            return type(formula)(formula.var, self.render_formula(formula.body, bound | {formula.var}))
        return type(formula)(self.render_formula(formula.left, bound), self.render_formula(formula.right, bound))

    def occurrence(self, position_id: str) -> Occurrence:
        formula = self._formulas.get(position_id)
        if formula is None:
            formula = self.render_formula(self.matrix[position_id].label)
            self._formulas[position_id] = formula
        return Occurrence(position_id, formula)

    # rule selection

    def sites(self, occurrence: Occurrence) -> Tuple[str, ...]:
        """Positions whose rule acts on this occurrence; one per copy below a multiplier."""
        position = self.matrix[occurrence.position]
        if position.is_multiplier:
            return () if isinstance(position.label, Atom) else position.children
        return () if position.is_atom else (position.id,)

    def rule_of(self, site: str) -> Rule:
        position = self.matrix[site]
        label, left_side = position.label, position.polarity == 1
        if position.variable is not None:
            return Rule.FORALL_L if left_side else Rule.EXISTS_R
        if position.principal_type == PrincipalType.DELTA:
            return Rule.EXISTS_L if left_side else Rule.FORALL_R
        by_type = {
            And: (Rule.AND_L, Rule.AND_R), Or: (Rule.OR_L, Rule.OR_R), Imp: (Rule.IMP_L, Rule.IMP_R),
            Neg: (Rule.NOT_L, Rule.NOT_R), Iff: (Rule.IFF_L, Rule.IFF_R),
        }
        left_rule, right_rule = by_type[type(label)]
        return left_rule if left_side else right_rule

    def _is_critical(self, rule: Rule) -> bool:
        return self.mode == Mode.INTUITIONISTIC and rule in CRITICAL_RULES

    def _blocking(self, site: str, goal: Goal, prefixes: bool = True) -> List[str]:
        """Positions that must be reduced on the branch before ``site``.

        Eigenvariables always come first; ``prefixes`` adds the σ_J order.
        """
        position = self.matrix[site]
        blockers: List[str] = []
        if position.variable is not None:
            image = self.sigma_q.apply(Variable(position.variable))
            blockers.extend(o for o in skolem_owners(self.matrix, image) if o not in goal.applied)
        if prefixes and self.mode == Mode.INTUITIONISTIC and position.char is not None and position.char.variable:
            for char in self.sigma_j.apply(position.prefix):
                owner = self.owners.get(char)
                if char.variable or owner is None or self.matrix[owner].is_atom:
                    continue
                if owner not in goal.applied:
                    blockers.append(owner)
        return blockers

    def _open_sites(self, goal: Goal) -> List[Tuple[str, Occurrence]]:
        found = []
        for occurrence in goal.left + goal.right:
            for site in self.sites(occurrence):
                if site not in goal.applied and site in self.relevant:
                    found.append((site, occurrence))
        return found

    def _axiom(self, goal: Goal) -> Optional[Tuple[Tuple[str, str], Formula]]:
        available: Dict[str, Occurrence] = {}
        for occurrence in goal.left:
            position = self.matrix[occurrence.position]
            if position.is_atom:
                available[position.id] = occurrence
            elif position.is_multiplier and isinstance(position.label, Atom):
                for child in position.children:
                    available[child] = occurrence
        right = {o.position: o for o in goal.right if self.matrix[o.position].is_atom}
        for a, b in self.connections:
            for left_id, right_id in ((a, b), (b, a)):
                if left_id in available and right_id in right:
                    if available[left_id].formula == right[right_id].formula:
                        return (a, b), right[right_id].formula
        return None

    def _critical_order(self, candidates: List[Tuple[str, Occurrence]], goal: Goal) -> List[Tuple[str, Occurrence]]:
        waiting: Dict[str, int] = {}
        for site, _ in self._open_sites(goal):
            blockers = self._blocking(site, goal)
            if blockers:
                waiting[blockers[0]] = waiting.get(blockers[0], 0) + 1
        return sorted(candidates, key=lambda c: -waiting.get(c[0], 0))

    # construction

    def _apply(self, site: str, occurrence: Occurrence, goal: Goal) -> Tuple[SequentNode, List[Goal]]:
        position = self.matrix[site]
        rule = self.rule_of(site)
        kids = [self.occurrence(c) for c in position.children]
        left, right = list(goal.left), list(goal.right)
        applied = goal.applied | {site}
        intuitionistic = self.mode == Mode.INTUITIONISTIC
        node = SequentNode(goal.sequent(), rule, principal=occurrence.formula)

        def premise(l: Sequence[Occurrence], r: Sequence[Occurrence]) -> Goal:
            return Goal(tuple(l), tuple(r), applied)

        if rule in (Rule.AND_L, Rule.IFF_L, Rule.EXISTS_L):
            premises = [premise(_without(goal.left, occurrence) + kids, right)]
        elif rule in (Rule.AND_R, Rule.IFF_R):
            rest = _without(goal.right, occurrence)
            premises = [premise(left, rest + [kids[0]]), premise(left, rest + [kids[1]])]
        elif rule == Rule.OR_L:
            rest = _without(goal.left, occurrence)
            premises = [premise(rest + [kids[0]], right), premise(rest + [kids[1]], right)]
        elif rule == Rule.OR_R:
            premises = [premise(left, _without(goal.right, occurrence) + kids)]
        elif rule == Rule.IMP_L:
            premises = [premise(left, right + [kids[0]]), premise(left + [kids[1]], right)]
        elif rule == Rule.IMP_R:
            rest = [] if intuitionistic else _without(goal.right, occurrence)
            premises = [premise(left + [kids[0]], rest + [kids[1]])]
        elif rule == Rule.NOT_L:
            premises = [premise(left, right + kids)]
        elif rule == Rule.NOT_R:
            rest = [] if intuitionistic else _without(goal.right, occurrence)
            premises = [premise(left + kids, rest)]
        elif rule == Rule.FORALL_L:
            premises = [premise(left + kids, right)]
        elif rule == Rule.EXISTS_R:
            premises = [premise(left, right + kids)]
        else:
            rest = [] if intuitionistic else _without(goal.right, occurrence)
            premises = [premise(left, rest + kids)]

        if rule in (Rule.FORALL_L, Rule.EXISTS_R):
            node.term = self.render_term(Variable(position.variable))
        elif rule in (Rule.FORALL_R, Rule.EXISTS_L):
            node.eigen = position.skolem.functor
        return node, premises

    def _expand(self, site: str, occurrence: Occurrence, goal: Goal, budget: int) -> Optional[SequentNode]:
        node, premises = self._apply(site, occurrence, goal)
        for premise in premises:
            child = self._prove(premise, budget)
            if child is None:
                return None
            node.premises.append(child)
        return node

    def _prove(self, goal: Goal, budget: int) -> Optional[SequentNode]:
        self._nodes += 1
        if self._nodes > self.node_limit:
            raise _NodeLimit()

        closing = self._axiom(goal)
        if closing is not None:
            connection, atom = closing
            return SequentNode(goal.sequent(), Rule.AXIOM, principal=atom, connection=connection)

        open_sites = self._open_sites(goal)
        ready = [(s, o) for s, o in open_sites if self._is_ready(s, goal)]
        if ready:
            linear = [(s, o) for s, o in ready if self.rule_of(s) not in BRANCHING_RULES]
            site, occurrence = (linear or ready)[0]
            return self._expand(site, occurrence, goal, budget)

        critical = [(s, o) for s, o in open_sites if self._is_critical(self.rule_of(s))]
        waiting = [(s, o) for s, o in open_sites
                   if not self._is_critical(self.rule_of(s)) and not self._blocking(s, goal, prefixes=False)]
        candidates = self._critical_order(critical, goal) + waiting
        for index, (site, occurrence) in enumerate(candidates):
            if index > 0:
                if budget <= 0:
                    break
                logger.debug(f"Backtracking over rule choice at {site}")
            node = self._expand(site, occurrence, goal, budget - 1 if len(candidates) > 1 else budget)
            if node is not None:
                return node
        return None

    def _is_ready(self, site: str, goal: Goal) -> bool:
        """A rule that may fire without a choice: non-critical and unblocked.

        Without σ_J guidance, impL and notL also wait, since the formula they
        move into the succedent is lost at the next critical rule.
        """
        rule = self.rule_of(site)
        if self._is_critical(rule):
            return False
        if not self.guided and self.mode == Mode.INTUITIONISTIC and rule in (Rule.IMP_L, Rule.NOT_L):
            return False
        return not self._blocking(site, goal, prefixes=self.guided)

    def _attempt(self, root_goal: Goal, budget: int) -> Optional[SequentNode]:
        self._nodes = 0
        try:
            return self._prove(root_goal, budget)
        except _NodeLimit:
            logger.debug(f"Node limit {self.node_limit} reached ({'guided' if self.guided else 'unguided'} pass)")
            return None

    def build(self) -> SequentProof:
        """Order the rules by σ_J first; if that closes no proof, search the rule order without it.

        The second pass keeps the eigenvariable order from σ_Q and backtracks
        over every critical rule and every rule that feeds the succedent.
        """
        formula = self.certificate.formula
        root_goal = Goal((), (self.occurrence(self.matrix.root),))
        self.guided = True
        root = self._attempt(root_goal, self.backtrack_depth)
        if root is None:
            logger.info("σ_J-guided rule order found no proof, searching without it")
            self.guided = False
            root = self._attempt(root_goal, self.node_limit)
        if root is None:
            raise OrderingDeadlock("no rule order consistent with the certificate closes", root_goal.sequent())
        return SequentProof(formula, self.mode, number_nodes(root))


def to_sequent(formula: Formula, certificate: Certificate, mode: Mode,
               backtrack_depth: Optional[int] = None) -> SequentProof:
    """Translate an accepted certificate into a sequent proof of ⊢ formula.

    Raises OrderingDeadlock when no rule order consistent with σ closes every branch.
    """
    mode = Mode(mode)
    if certificate.mode != mode or certificate.formula != formula:
        raise ValueError("certificate does not belong to this formula and mode")
    start = time.time()
    proof = SequentBuilder(certificate, backtrack_depth).build()
    log_performance_metric("to_sequent", (time.time() - start) * 1000, {"nodes": proof.size()})
    return proof
