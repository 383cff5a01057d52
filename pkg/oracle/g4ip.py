"""
Contraction-free intuitionistic propositional sequent calculus (G4ip).

Negation is read as implication into falsum and equivalence as a pair of
implications. Invertible rules are applied first; the only choices are the
disjunct in ∨R and the premise of a nested-implication ⇒L. Every rule
lowers the multiset weight of the sequent, so the search terminates.
"""

from typing import Dict, FrozenSet, Optional, Tuple

from syntax.formulas import And, Atom, Formula, Iff, Imp, Neg, Or, is_propositional

FALSUM = Atom("$false")

Context = FrozenSet[Formula]


def _desugar(formula: Formula) -> Formula:
    if isinstance(formula, Atom):
        return formula
    if isinstance(formula, Neg):
        return Imp(_desugar(formula.body), FALSUM)
    if isinstance(formula, Iff):
        left, right = _desugar(formula.left), _desugar(formula.right)
        return And(Imp(left, right), Imp(right, left))
    return type(formula)(_desugar(formula.left), _desugar(formula.right))


class G4ipProver:
    """Memoized G4ip decision procedure over sets of antecedent formulas."""

    def __init__(self):
        self._memo: Dict[Tuple[Context, Formula], bool] = {}

    def provable(self, context: Context, goal: Formula) -> bool:
        key = (context, goal)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._prove(context, goal)
            self._memo[key] = cached
        return cached

    def _left_invertible(self, context: Context) -> Optional[Tuple[Formula, Tuple[Formula, ...]]]:
        """One antecedent formula with an invertible left rule, plus its replacements."""
        for f in sorted(context, key=repr):
            if isinstance(f, And):
                return f, (f.left, f.right)
            if isinstance(f, Imp):
                a = f.left
                if a == FALSUM:
                    return f, ()
                if isinstance(a, Atom) and a in context:
                    return f, (f.right,)
                if isinstance(a, And):
                    return f, (Imp(a.left, Imp(a.right, f.right)),)
                if isinstance(a, Or):
                    return f, (Imp(a.left, f.right), Imp(a.right, f.right))
        return None

    def _prove(self, context: Context, goal: Formula) -> bool:
        if FALSUM in context or goal in context:
            return True

        if isinstance(goal, And):
            return self.provable(context, goal.left) and self.provable(context, goal.right)
        if isinstance(goal, Imp):
            return self.provable(context | {goal.left}, goal.right)

        step = self._left_invertible(context)
        if step is not None:
            principal, replacements = step
            return self.provable((context - {principal}) | frozenset(replacements), goal)

        disjunctions = sorted((f for f in context if isinstance(f, Or)), key=repr)
        if disjunctions:
            d = disjunctions[0]
            rest = context - {d}
            return self.provable(rest | {d.left}, goal) and self.provable(rest | {d.right}, goal)

        if isinstance(goal, Or) and (self.provable(context, goal.left) or self.provable(context, goal.right)):
            return True

        for f in sorted(context, key=repr):
            if isinstance(f, Imp) and isinstance(f.left, Imp):
                c, d, b = f.left.left, f.left.right, f.right
                rest = context - {f}
                if self.provable(rest | {Imp(d, b)}, Imp(c, d)) and self.provable(rest | {b}, goal):
                    return True
        return False


def g4ip_valid(formula: Formula) -> bool:
    """True iff the propositional formula is intuitionistically valid."""
    if not is_propositional(formula):
        raise ValueError("oracle expects a propositional formula")
    return G4ipProver().provable(frozenset(), _desugar(formula))
