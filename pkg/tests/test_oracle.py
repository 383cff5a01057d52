import random

import pytest

from oracle import (
    AtomBoundExceeded, FALSUM, classical_valid, evaluate, falsifying_assignment, g4ip_valid,
    kripke_countermodel, propositional_atoms, random_corpus, random_formula, rooted_orders,
)
from syntax import Atom, Neg, formula_size, is_propositional


class TestG4ip:
    """Test cases for the intuitionistic propositional decider"""

    @pytest.mark.parametrize("text", [
        "p => p",
        "~~(p | ~p)",
        "(p => q) => (~q => ~p)",
        "(p & q) <=> (q & p)",
        "((p | q) => r) => ((p => r) & (q => r))",
        "~(p & ~p)",
    ])
    def test_valid(self, parse, text):
        assert g4ip_valid(parse(text))

    @pytest.mark.parametrize("text", [
        "~p | p",
        "((p => q) => p) => p",
        "~~p => p",
        "(~q => ~p) => (p => q)",
        "p => q",
    ])
    def test_invalid(self, parse, text):
        assert not g4ip_valid(parse(text))

    def test_falsum_atom(self):
        """Test the falsum atom proves anything"""
        assert FALSUM == Atom("$false")

    def test_first_order_rejected(self, parse):
        with pytest.raises(ValueError):
            g4ip_valid(parse("![X]: p(X) => p(X)"))


class TestTruthTable:
    """Test cases for the classical propositional decider"""

    def test_classical_tautologies(self, parse):
        assert classical_valid(parse("((p => q) => p) => p"))
        assert classical_valid(parse("~p | p"))
        assert not classical_valid(parse("p | q"))

    def test_falsifying_assignment(self, parse):
        """Test the first falsifying row in enumeration order is reported"""
        assert falsifying_assignment(parse("p | q")) == {"p": False, "q": False}
        assert falsifying_assignment(parse("p => p")) is None

    def test_atoms(self, parse):
        assert propositional_atoms(parse("(q => p) & q")) == ["p", "q"]

    def test_evaluate(self, parse):
        formula = parse("p <=> ~q")
        assert evaluate(formula, {"p": True, "q": False})
        assert not evaluate(formula, {"p": True, "q": True})

    def test_atom_bound(self, parse):
        with pytest.raises(AtomBoundExceeded):
            classical_valid(parse("p | q"), atom_bound=1)


class TestKripke:
    """Test cases for finite countermodel search"""

    def test_excluded_middle_countermodel(self, parse):
        """Test ~p | p fails at the root of a two-world model"""
        formula = parse("~p | p")
        model = kripke_countermodel(formula)
        assert model is not None
        assert model.worlds == 2
        assert not model.forces(0, formula)
        assert model.forces(1, Atom("p"))

    def test_no_countermodel_for_theorems(self, parse):
        assert kripke_countermodel(parse("p => p")) is None
        assert kripke_countermodel(parse("~~(p | ~p)")) is None

    def test_peirce_countermodel(self, parse):
        formula = parse("((p => q) => p) => p")
        model = kripke_countermodel(formula)
        assert model is not None
        assert not model.forces(0, formula)

    def test_monotone_forcing(self, parse):
        """Test forcing persists to every world above"""
        model = kripke_countermodel(parse("~p | p"))
        negation = Neg(Atom("p"))
        for world in range(model.worlds):
            if model.forces(world, negation):
                assert all(model.forces(v, negation) for v in model.above(world))

    def test_rooted_orders(self):
        assert len(list(rooted_orders(1))) == 1
        assert len(list(rooted_orders(2))) == 1
        assert len(list(rooted_orders(3))) == 2
        assert len(list(rooted_orders(4))) == 7


class TestRandomFormulas:
    """Test cases for the random formula generator"""

    def test_connective_count(self):
        rng = random.Random(1)
        for connectives in range(6):
            formula = random_formula(rng, atoms=3, connectives=connectives)
            assert is_propositional(formula)
            assert formula_size(formula) == connectives

    def test_corpus_is_seeded(self):
        assert list(random_corpus(4, 10)) == list(random_corpus(4, 10))


@pytest.mark.property
class TestOracleAgreement:
    """Property checks between the three deciders"""

    def test_intuitionistic_implies_classical(self, random_formulas):
        for formula in random_formulas(seed=1, count=60):
            if g4ip_valid(formula):
                assert classical_valid(formula)

    def test_countermodels_refute(self, random_formulas):
        """Test a countermodel exists only for formulas G4ip does not prove"""
        for formula in random_formulas(seed=2, count=30):
            model = kripke_countermodel(formula, max_worlds=3)
            if model is not None:
                assert not g4ip_valid(formula)
                assert not model.forces(0, formula)

    def test_single_world_is_classical(self, random_formulas):
        """Test one-world countermodels are exactly falsifying assignments"""
        for formula in random_formulas(seed=3, count=60):
            assert (kripke_countermodel(formula, max_worlds=1) is None) == classical_valid(formula)
