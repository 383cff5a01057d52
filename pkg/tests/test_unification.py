import itertools
import random

import pytest

from matrix import Mode, PrefixChar, build_matrix
from syntax import Application, Atom, Variable, constant
from unification import (
    PrefixSubstitution, TermSubstitution, check_admissible, ordering_violations, solves,
    unify_prefixes, unify_terms,
)

X, Y, Z = Variable("X"), Variable("Y"), Variable("Z")
C = constant("c")


def f(*args):
    return Application("f", args)


def var(owner):
    return PrefixChar(variable=True, owner=owner)


def const(owner):
    return PrefixChar(variable=False, owner=owner)


class TestTermUnification:
    """Test cases for σ_Q unification"""

    def test_binds_variable(self):
        sigma = unify_terms(Atom("p", (X,)), Atom("p", (C,)))
        assert sigma == TermSubstitution({"X": C})

    def test_occurs_check(self):
        assert unify_terms(Atom("p", (X,)), Atom("p", (f(X),))) is None

    def test_predicate_clash(self):
        assert unify_terms(Atom("p", (X,)), Atom("q", (X,))) is None

    def test_functor_clash(self):
        assert unify_terms(Atom("p", (f(X),)), Atom("p", (Application("g", (X,)),))) is None

    def test_most_general_unifier(self):
        """Test the unifier makes both atoms equal without grounding Z"""
        a = Atom("p", (X, f(Y)))
        b = Atom("p", (Application("g", (Z,)), f(X)))
        sigma = unify_terms(a, b)
        assert sigma.apply_atom(a) == sigma.apply_atom(b)
        assert sigma.apply(Z) == Z

    def test_failure_leaves_input_unchanged(self):
        """Test a failed extension does not touch the given substitution"""
        start = TermSubstitution({"Y": C})
        assert unify_terms(Atom("p", (Y,)), Atom("p", (constant("d"),)), start) is None
        assert start == TermSubstitution({"Y": C})

    def test_extension_respects_existing_bindings(self):
        start = TermSubstitution({"Y": C})
        sigma = unify_terms(Atom("p", (X, Y)), Atom("p", (Y, C)), start)
        assert sigma.apply(X) == C


class TestPrefixUnification:
    """Test cases for σ_J string unification"""

    def test_variable_meets_constant(self):
        """Test a0 z = a0 a is solved by z -> a"""
        a0, z, a = const("r"), var("r.0.0"), const("r.1")
        solutions = list(unify_prefixes([((a0, z), (a0, a))]))
        assert solutions
        assert all(s.apply((z,)) == (a,) for s in solutions)

    def test_constant_clash(self):
        """Test strings starting with different constants never unify"""
        b, c, x = const("r.1"), const("r.0"), var("r.0.0")
        assert list(unify_prefixes([((c, x), (b,))])) == []

    def test_solution_set(self):
        """Test X a = a Y has the empty and the one-character solutions"""
        x, y, a = var("r.0"), var("r.2"), const("r.1")
        solutions = list(unify_prefixes([((x, a), (a, y))]))
        images = {(s.apply((x,)), s.apply((y,))) for s in solutions}
        assert ((), ()) in images
        assert ((a,), (a,)) in images
        assert all(solves(s, [((x, a), (a, y))]) for s in solutions)

    def test_existing_binding_is_honored(self):
        x, a, b = var("r.0"), const("r.1"), const("r.2")
        start = PrefixSubstitution({x: (b,)})
        assert list(unify_prefixes([((x,), (a,))], start)) == []

    @pytest.mark.property
    def test_agrees_with_brute_force(self):
        """Test solvability matches a bounded brute-force search on linear equations"""
        rng = random.Random(3)
        constants = [const("r.1"), const("r.2")]
        strings = [tuple(s) for n in range(3) for s in itertools.product(constants, repeat=n)]
        owners = itertools.count()

        def side():
            return tuple(
                var(f"r.9.{next(owners)}") if rng.random() < 0.5 else rng.choice(constants)
                for _ in range(rng.randint(0, 2))
            )

        def ground(chars, images):
            return tuple(g for c in chars for g in (images[c] if c.variable else (c,)))

        for _ in range(40):
            left, right = side(), side()
            variables = sorted({c for c in left + right if c.variable})
            brute = any(
                ground(left, dict(zip(variables, choice))) == ground(right, dict(zip(variables, choice)))
                for choice in itertools.product(strings, repeat=len(variables))
            )
            solutions = list(unify_prefixes([(left, right)]))
            assert all(solves(s, [(left, right)]) for s in solutions)
            assert bool(solutions) == brute, (left, right)

class TestAdmissibility:
    """Test cases for the combined non-circularity check"""

    def test_p_imp_p_certificate_substitution(self, parse):
        matrix = build_matrix(parse("p => p"), Mode.INTUITIONISTIC)
        sigma_j = PrefixSubstitution({var("r.0.0"): (const("r.1"),)})
        assert check_admissible(TermSubstitution(), sigma_j, matrix)

    def test_empty_substitutions(self, load_problem):
        for name in ("set_union", "quantifier_instantiation"):
            matrix = build_matrix(load_problem(name), Mode.INTUITIONISTIC)
            assert check_admissible(TermSubstitution(), PrefixSubstitution(), matrix)

    def test_term_cycle(self, parse):
        """Test two variables bound through each other's rigid terms"""
        matrix = build_matrix(parse("(![X]: ?[Y]: p(X, Y)) => ?[V]: ![U]: p(U, V)"), Mode.CLASSICAL)
        sigma_q = TermSubstitution({
            "X_0_0": Application("sk_1_0_0", (Variable("X_1_0"),)),
            "X_1_0": Application("sk_0_0_0", (Variable("X_0_0"),)),
        })
        assert not check_admissible(sigma_q, PrefixSubstitution(), matrix)

    def test_reduction_ordering_cycle(self, parse):
        """Test a variable instantiated with a rigid term introduced below it"""
        matrix = build_matrix(parse("(![X]: ?[Y]: p(X, Y)) => ?[V]: ![U]: p(U, V)"), Mode.CLASSICAL)
        sigma_q = TermSubstitution({"X_0_0": Application("sk_0_0_0", (C,))})
        assert not check_admissible(sigma_q, PrefixSubstitution(), matrix)
        assert "reduction ordering is cyclic" in ordering_violations(matrix, sigma_q, PrefixSubstitution())

    def test_prefix_cycle(self, parse):
        matrix = build_matrix(parse("p => p"), Mode.INTUITIONISTIC)
        v1, v2 = var("r.0.0"), var("#0")
        sigma_j = PrefixSubstitution({v1: (v2,), v2: (v1,)}, fresh=1)
        assert not check_admissible(TermSubstitution(), sigma_j, matrix)

    def test_domain_condition(self, parse):
        """Test an eigenvariable term needs a prefix-compatible instantiation"""
        matrix = build_matrix(parse("(![X]: p(X)) => ![Y]: p(Y)"), Mode.INTUITIONISTIC)
        sigma_q = TermSubstitution({"X_0_0": constant("sk_1")})
        assert not check_admissible(sigma_q, PrefixSubstitution(), matrix)
        sigma_j = PrefixSubstitution({var("r.0.0"): (const("r.1"),)})
        assert check_admissible(sigma_q, sigma_j, matrix)

    def test_domain_condition_is_intuitionistic_only(self, parse):
        matrix = build_matrix(parse("(![X]: p(X)) => ![Y]: p(Y)"), Mode.CLASSICAL)
        sigma_q = TermSubstitution({"X_0_0": constant("sk_1")})
        assert check_admissible(sigma_q, PrefixSubstitution(), matrix)
