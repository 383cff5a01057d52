"""
Single-field mutations of certificates, for checker robustness campaigns.
"""

import random
from dataclasses import replace
from typing import List, Tuple

from certificate.model import Certificate, normalize_connection
from matrix.positions import Mode
from syntax.formulas import constant
from unification.prefix_unifier import PrefixSubstitution

MUTANT_TERM = constant("mutant")


def certificate_mutants(cert: Certificate, rng: random.Random) -> List[Tuple[str, Certificate]]:
    """One mutant per applicable kind, each differing from ``cert`` in a single field.

    Kinds: ``drop_connection``, ``swap_atom``, ``decrement_multiplicity``,
    ``rebind_term``, ``erase_prefix``, ``drop_prefix_binding``,
    ``flip_mode`` and ``corrupt_digest``. No mutant equals its original.
    """
    matrix = cert.matrix()
    atoms = [p.id for p in matrix.atoms()]
    mutants: List[Tuple[str, Certificate]] = [
        ("flip_mode", replace(cert, mode=Mode.CLASSICAL if cert.mode == Mode.INTUITIONISTIC else Mode.INTUITIONISTIC)),
        ("corrupt_digest", replace(cert, formula_hash="0" * 64)),
    ]

    if cert.connections:
        i = rng.randrange(len(cert.connections))
        mutants.append(("drop_connection", replace(cert, connections=cert.connections[:i] + cert.connections[i + 1:])))
        keep, _ = cert.connections[i]
        others = [a for a in atoms if a not in cert.connections[i]]
        if others:
            swapped = list(cert.connections)
            swapped[i] = normalize_connection(keep, rng.choice(others))
            mutants.append(("swap_atom", replace(cert, connections=tuple(swapped))))

    copied = sorted(m for m, count in cert.multiplicity.items() if count > 1)
    if copied:
        target = rng.choice(copied)
        lowered = {**cert.multiplicity, target: cert.multiplicity[target] - 1}
        mutants.append(("decrement_multiplicity", replace(cert, multiplicity=lowered)))

    bound = sorted(name for name, term in cert.sigma_q.items() if term != MUTANT_TERM)
    if bound:
        name = rng.choice(bound)
        mutants.append(("rebind_term", replace(cert, sigma_q=cert.sigma_q.bind(name, MUTANT_TERM))))

    nonempty = sorted((var for var, value in cert.sigma_j.items() if value), key=str)
    if nonempty:
        var = rng.choice(nonempty)
        mutants.append(("erase_prefix", replace(cert, sigma_j=cert.sigma_j.bind(var, ()))))
        rest = {v: value for v, value in cert.sigma_j.items() if v != var}
        mutants.append((
            "drop_prefix_binding",
            replace(cert, sigma_j=PrefixSubstitution(rest, cert.sigma_j.fresh_counter)),
        ))
    return mutants
