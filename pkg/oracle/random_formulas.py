"""
Seeded random propositional formulas for oracle cross-checks.
"""

import random
from typing import Iterator

from syntax.formulas import And, Atom, Formula, Iff, Imp, Neg, Or

# Iff is rare; it expands into two implications in every decider
_BINARY = (And, And, Or, Or, Imp, Imp, Imp, Iff)


def random_formula(rng: random.Random, atoms: int = 4, connectives: int = 8) -> Formula:
    """A formula over atoms p0..p{atoms-1} with exactly ``connectives`` connectives."""
    if connectives <= 0:
        return Atom(f"p{rng.randrange(atoms)}")
    if rng.random() < 0.2:
        return Neg(random_formula(rng, atoms, connectives - 1))
    left = rng.randint(0, connectives - 1)
    connective = rng.choice(_BINARY)
    return connective(random_formula(rng, atoms, left), random_formula(rng, atoms, connectives - 1 - left))


def random_corpus(seed: int, count: int, max_atoms: int = 8, max_connectives: int = 20) -> Iterator[Formula]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_formula(rng, rng.randint(1, max_atoms), rng.randint(1, max_connectives))
