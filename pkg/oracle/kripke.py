"""
Bounded search for finite Kripke countermodels of propositional formulas.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from oracle.truth_table import propositional_atoms
from syntax.formulas import And, Atom, Formula, Iff, Imp, Neg, Or


@dataclass(frozen=True)
class KripkeModel:
    """Rooted finite partial order (world 0 is the root) with a monotone valuation."""
    worlds: int
    order: FrozenSet[Tuple[int, int]]
    valuation: Dict[str, FrozenSet[int]]

    def above(self, world: int) -> List[int]:
        return [v for v in range(self.worlds) if (world, v) in self.order]

    def forces(self, world: int, formula: Formula) -> bool:
        if isinstance(formula, Atom):
            return world in self.valuation.get(formula.predicate, frozenset())
        if isinstance(formula, And):
            return self.forces(world, formula.left) and self.forces(world, formula.right)
        if isinstance(formula, Or):
            return self.forces(world, formula.left) or self.forces(world, formula.right)
        if isinstance(formula, Imp):
            return all(not self.forces(v, formula.left) or self.forces(v, formula.right)
                       for v in self.above(world))
        if isinstance(formula, Neg):
            return not any(self.forces(v, formula.body) for v in self.above(world))
        if isinstance(formula, Iff):
            return self.forces(world, Imp(formula.left, formula.right)) and \
                self.forces(world, Imp(formula.right, formula.left))
        raise ValueError(f"not a propositional connective: {type(formula).__name__}")


def rooted_orders(worlds: int) -> Iterator[FrozenSet[Tuple[int, int]]]:
    """Reflexive transitive orders on 0..n-1 whose edges go from lower to higher index, rooted at 0."""
    base = {(w, w) for w in range(worlds)} | {(0, w) for w in range(worlds)}
    optional = [(i, j) for i, j in combinations(range(1, worlds), 2)]
    for mask in product((False, True), repeat=len(optional)):
        order = base | {pair for pair, keep in zip(optional, mask) if keep}
        transitive = all(
            (a, d) in order for a, b in order for c, d in order if b == c
        )
        if transitive:
            yield frozenset(order)


def _upsets(worlds: int, order: FrozenSet[Tuple[int, int]]) -> List[FrozenSet[int]]:
    result = []
    for mask in product((False, True), repeat=worlds):
        chosen = frozenset(w for w in range(worlds) if mask[w])
        if all(v in chosen for w in chosen for v in range(worlds) if (w, v) in order):
            result.append(chosen)
    return result


def kripke_countermodel(formula: Formula, max_worlds: int = 4) -> Optional[KripkeModel]:
    """Smallest-first search for a model whose root does not force ``formula``."""
    atoms = propositional_atoms(formula)
    for worlds in range(1, max_worlds + 1):
        for order in rooted_orders(worlds):
            upsets = _upsets(worlds, order)
            for choice in product(upsets, repeat=len(atoms)):
                model = KripkeModel(worlds, order, dict(zip(atoms, choice)))
                if not model.forces(0, formula):
                    return model
    return None
