"""
Term unification (σ_Q), prefix unification (σ_J) and combined admissibility.
"""

from unification.admissibility import (
    check_admissible, domain_pairs, ordering_violations, reduction_edges, skolem_owners,
    substitution_cycles, variable_prefix,
)
from unification.prefix_unifier import PrefixSubstitution, solves, unify_prefixes
from unification.term_unifier import (
    TermSubstitution, unify_term_lists, unify_term_pair, unify_terms,
)

__all__ = [
    "check_admissible", "domain_pairs", "ordering_violations", "reduction_edges",
    "skolem_owners", "substitution_cycles", "variable_prefix", "PrefixSubstitution", "solves", "unify_prefixes",
    "TermSubstitution", "unify_term_lists", "unify_term_pair", "unify_terms",
]
