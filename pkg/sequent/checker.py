"""
Sequent proof checker.
Recomputes the premises of every node from its rule schema and compares them as multisets.
"""

from dataclasses import dataclass
from typing import FrozenSet, List, Optional

from loguru import logger

from matrix.positions import Mode
from sequent.proof import CRITICAL_RULES, Rule, Sequent, SequentNode, SequentProof
from syntax.formulas import (
    And, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, constant, instantiate, subformulas,
    term_functors,
)
from utils.logger import log_check_result


@dataclass(frozen=True)
class SequentVerdict:
    accepted: bool
    node: Optional[str] = None
    reason: str = "accepted"


class _SchemaViolation(Exception):
    pass


def _remove(side, formula: Formula) -> List[Formula]:
    remaining = list(side)
    remaining.remove(formula)
    return remaining


def _functors(sequent: Sequent) -> FrozenSet[str]:
    names = set()
    for formula in sequent.formulas():
        for sub in subformulas(formula):
            if isinstance(sub, Atom):
                for arg in sub.args:
                    names |= term_functors(arg)
    return frozenset(names)


def _principal(node: SequentNode, kind, on_left: bool):
    principal = node.principal
    side = node.sequent.antecedent if on_left else node.sequent.succedent
    if principal is None:
        raise _SchemaViolation(f"{node.rule.value} needs a principal formula")
    if not isinstance(principal, kind):
        raise _SchemaViolation(f"{node.rule.value} principal must be a {kind.__name__}")
    if principal not in side:
        raise _SchemaViolation(f"principal formula is not in the {'antecedent' if on_left else 'succedent'}")
    return principal


def _fresh_eigen(node: SequentNode):
    if not node.eigen:
        raise _SchemaViolation(f"{node.rule.value} needs an eigenvariable")
    if node.eigen in _functors(node.sequent):
        raise _SchemaViolation(f"eigenvariable {node.eigen} occurs in the conclusion")
    return constant(node.eigen)


def expected_premises(node: SequentNode, mode: Mode) -> List[Sequent]:
    """Premises the node's rule schema demands for its conclusion."""
    gamma, delta = list(node.sequent.antecedent), list(node.sequent.succedent)
    intuitionistic = Mode(mode) == Mode.INTUITIONISTIC
    rule = node.rule

    if rule == Rule.AXIOM:
        atom = _principal(node, Atom, True)
        if atom not in delta:
            raise _SchemaViolation("axiom atom is not in the succedent")
        return []
    if rule == Rule.AND_L:
        p = _principal(node, And, True)
        return [Sequent(_remove(gamma, p) + [p.left, p.right], delta)]
    if rule == Rule.AND_R:
        p = _principal(node, And, False)
        rest = _remove(delta, p)
        return [Sequent(gamma, rest + [p.left]), Sequent(gamma, rest + [p.right])]
    if rule == Rule.OR_L:
        p = _principal(node, Or, True)
        rest = _remove(gamma, p)
        return [Sequent(rest + [p.left], delta), Sequent(rest + [p.right], delta)]
    if rule == Rule.OR_R:
        p = _principal(node, Or, False)
        return [Sequent(gamma, _remove(delta, p) + [p.left, p.right])]
    if rule == Rule.IMP_L:
        p = _principal(node, Imp, True)
        return [Sequent(gamma, delta + [p.left]), Sequent(gamma + [p.right], delta)]
    if rule == Rule.IMP_R:
        p = _principal(node, Imp, False)
        rest = [] if intuitionistic else _remove(delta, p)
        return [Sequent(gamma + [p.left], rest + [p.right])]
    if rule == Rule.NOT_L:
        p = _principal(node, Neg, True)
        return [Sequent(gamma, delta + [p.body])]
    if rule == Rule.NOT_R:
        p = _principal(node, Neg, False)
        rest = [] if intuitionistic else _remove(delta, p)
        return [Sequent(gamma + [p.body], rest)]
    if rule == Rule.IFF_L:
        p = _principal(node, Iff, True)
        return [Sequent(_remove(gamma, p) + [Imp(p.left, p.right), Imp(p.right, p.left)], delta)]
    if rule == Rule.IFF_R:
        p = _principal(node, Iff, False)
        rest = _remove(delta, p)
        return [Sequent(gamma, rest + [Imp(p.left, p.right)]), Sequent(gamma, rest + [Imp(p.right, p.left)])]
    if rule in (Rule.FORALL_L, Rule.EXISTS_R):
        on_left = rule == Rule.FORALL_L
        p = _principal(node, Forall if on_left else Exists, on_left)
        if node.term is None:
            raise _SchemaViolation(f"{rule.value} needs an instance term")
        instance = instantiate(p, node.term)
        return [Sequent(gamma + [instance], delta)] if on_left else [Sequent(gamma, delta + [instance])]
    if rule == Rule.FORALL_R:
        p = _principal(node, Forall, False)
        eigen = _fresh_eigen(node)
        rest = [] if intuitionistic else _remove(delta, p)
        return [Sequent(gamma, rest + [instantiate(p, eigen)])]
    if rule == Rule.EXISTS_L:
        p = _principal(node, Exists, True)
        eigen = _fresh_eigen(node)
        return [Sequent(_remove(gamma, p) + [instantiate(p, eigen)], delta)]
    raise _SchemaViolation(f"unknown rule {rule}")


def _check_node(node: SequentNode, mode: Mode) -> Optional[str]:
    try:
        expected = expected_premises(node, mode)
    except _SchemaViolation as e:
        return str(e)
    if len(expected) != len(node.premises):
        return f"{node.rule.value} expects {len(expected)} premises, found {len(node.premises)}"
    for i, (want, premise) in enumerate(zip(expected, node.premises)):
        if premise.sequent != want:
            critical = " (single-succedent restriction)" if node.rule in CRITICAL_RULES else ""
            return f"premise {i} is {premise.sequent}, schema requires {want}{critical}"
    return None


def check_sequent(proof: SequentProof, mode: Mode) -> SequentVerdict:
    """Accept iff every node matches its rule schema and the end-sequent is ⊢ formula."""
    mode = Mode(mode)
    verdict = SequentVerdict(True)
    if proof.root.sequent != Sequent((), (proof.formula,)):
        verdict = SequentVerdict(False, proof.root.id, f"end-sequent {proof.root.sequent} is not |- the formula")
    else:
        for node in proof.nodes():
            reason = _check_node(node, mode)
            if reason is not None:
                verdict = SequentVerdict(False, node.id, f"node {node.id} ({node.rule.value}): {reason}")
                break

    log_check_result("sequent", verdict.accepted, verdict.reason)
    if not verdict.accepted:
        logger.info(f"Sequent proof rejected at {verdict.node}")
    return verdict
