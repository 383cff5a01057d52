import threading
from dataclasses import replace

import pytest

from certificate import check_certificate
from matrix import Mode, PrefixChar, PrincipalType, build_matrix
from oracle import classical_valid, g4ip_valid, random_corpus
from search import (
    FRESH, ConnectionSearch, Extension, OutcomeStatus, ProofState, SearchLimits, default_strategies, prove,
    prove_portfolio, used_multiplicity,
)
from syntax import Atom, Variable, print_formula
from unification import PrefixSubstitution, TermSubstitution


class TestSearchLimits:
    """Test cases for search limit validation"""

    def test_defaults(self):
        limits = SearchLimits()
        assert limits.mode == Mode.INTUITIONISTIC
        assert limits.depth_start == 1
        assert limits.copy_cap == 5
        assert limits.timeout == 60.0

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            SearchLimits(copy_cap=0)
        with pytest.raises(ValueError):
            SearchLimits(depth_start=8, max_depth=4)
        with pytest.raises(ValueError):
            SearchLimits(timeout=0)

    def test_from_settings_ignores_missing_overrides(self):
        limits = SearchLimits.from_settings(mode="classical", copy_cap=None, timeout=3.0)
        assert limits.mode == Mode.CLASSICAL
        assert limits.timeout == 3.0
        assert limits.copy_cap >= 1


class TestMicroExamples:
    """Test cases for the two smallest problems"""

    def test_p_imp_p(self, load_problem, intuitionistic_limits):
        """Test one connection whose prefix variable maps to the prefix constant"""
        outcome = prove(load_problem("p_imp_p"), intuitionistic_limits)
        assert outcome.status == OutcomeStatus.PROVED
        certificate = outcome.certificate
        assert certificate.connections == (("r.0.0", "r.1"),)
        variable = PrefixChar(variable=True, owner="r.0.0")
        assert certificate.sigma_j.apply((variable,)) == (PrefixChar(variable=False, owner="r.1"),)
        assert certificate.multiplicity == {"r.0": 1}

    def test_excluded_middle_intuitionistic(self, load_problem, intuitionistic_limits):
        """Test ~p | p is given up at the bounds"""
        outcome = prove(load_problem("excluded_middle"), intuitionistic_limits)
        assert outcome.status == OutcomeStatus.EXHAUSTED_BOUNDS
        assert outcome.certificate is None

    def test_excluded_middle_classical(self, load_problem, classical_limits):
        outcome = prove(load_problem("excluded_middle"), classical_limits)
        assert outcome.proved
        assert len(outcome.certificate.sigma_j) == 0

    def test_deterministic(self, load_problem, intuitionistic_limits):
        """Test two runs produce the same certificate"""
        first = prove(load_problem("contraposition"), intuitionistic_limits)
        second = prove(load_problem("contraposition"), intuitionistic_limits)
        assert first.proved
        assert first.certificate.connections == second.certificate.connections
        assert first.certificate.sigma_j == second.certificate.sigma_j

    def test_bound_variable_not_captured(self, parse):
        """Test a bound X_0 does not capture the matrix variable of the outer ∃"""
        formula = parse("? [Y] : ! [X_0] : (p(X_0) => p(Y))")
        outcome = prove(formula, SearchLimits(timeout=5.0, copy_cap=2, max_depth=4))
        assert not outcome.proved


class TestDynamicMultiplicity:
    """Test cases for copies added during search"""

    def test_two_instances_need_two_copies(self, load_problem):
        formula = load_problem("two_instance")
        proved = prove(formula, SearchLimits(copy_cap=2, timeout=10.0))
        exhausted = prove(formula, SearchLimits(copy_cap=1, timeout=10.0))
        assert proved.status == OutcomeStatus.PROVED
        assert exhausted.status == OutcomeStatus.EXHAUSTED_BOUNDS

    def test_trace_shows_per_position_copies(self, load_problem):
        """Test copies are added below quantifier positions, never for the whole formula"""
        formula = load_problem("two_instance")
        outcome = prove(formula, SearchLimits(copy_cap=2, timeout=10.0, trace=True))
        gamma_ids = {
            p.id for p in build_matrix(formula, Mode.INTUITIONISTIC).multipliers()
            if p.principal_type == PrincipalType.GAMMA
        }
        copies = [event.details["position"] for event in outcome.trace if event.kind == "copy"]
        assert copies
        assert "r" not in copies
        assert gamma_ids & set(copies)

    def test_certificate_multiplicity_covers_connections(self, load_problem):
        outcome = prove(load_problem("two_instance"), SearchLimits(copy_cap=2, timeout=10.0))
        certificate = outcome.certificate
        assert max(certificate.multiplicity.values()) == 2
        assert used_multiplicity(certificate.matrix(), certificate.connections).items() <= \
            certificate.multiplicity.items()


class TestExtensionStep:
    """Test cases for goal-directed extension steps"""

    @pytest.fixture
    def empty_state(self):
        return ProofState(TermSubstitution(), PrefixSubstitution())

    def test_fresh_copy_candidate(self, parse, empty_state):
        """Test an untouched ν copy is offered once, as a fresh copy"""
        search = ConnectionSearch(parse("p => p"), SearchLimits(), depth=2)
        candidates = search.extension_candidates("r.1", (), empty_state)
        assert candidates == [Extension(("r", "0", FRESH), (), "r.0")]

    def test_beta_siblings_become_obligations(self, parse, empty_state):
        """Test the partner's β-sibling is opened and nothing else"""
        search = ConnectionSearch(parse("(p & q) => (p & q)"), SearchLimits(mode=Mode.CLASSICAL), depth=2)
        candidates = search.extension_candidates("r.0.0", (), empty_state)
        assert candidates == [Extension(("r", "1", "0"), (("r", "1", "1"),))]

    def test_beta_separated_partner_excluded(self, parse, empty_state):
        """Test a partner sharing a β-ancestor with the active path is not offered"""
        search = ConnectionSearch(parse("(p & q) | ~p"), SearchLimits(mode=Mode.CLASSICAL), depth=2)
        assert search.extension_candidates("r.1.0", ("r.0.1",), empty_state) == []
        assert search.extension_candidates("r.1.0", (), empty_state) == [
            Extension(("r", "0", "0"), (("r", "0", "1"),)),
        ]

    def test_start_clause_is_conjecture(self, load_problem):
        """Test the first extension starts from an atom of the conjecture"""
        outcome = prove(load_problem("two_instance"), SearchLimits(copy_cap=2, timeout=10.0, trace=True))
        extensions = [event for event in outcome.trace if event.kind == "extension"]
        assert extensions
        assert "r.1.0" in extensions[0].details["connection"]

    def test_materialized_copy_is_entered(self, parse, empty_state):
        search = ConnectionSearch(parse("p => p"), SearchLimits(), depth=2)
        state = next(search.extension_step("r.1", (), empty_state))
        assert state.connections == (("r.0.0", "r.1"),)
        assert "r.0.0" in state.entered


class TestBundledProblems:
    """Test cases for the bundled first-order problems"""

    @pytest.mark.integration
    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["quantifier_instantiation", "set_union"])
    def test_benchmark_formulas(self, load_problem, name):
        """Test both benchmark formulas are proved intuitionistically"""
        formula = load_problem(name)
        outcome = prove(formula, SearchLimits(timeout=10.0))
        assert outcome.status == OutcomeStatus.PROVED
        assert check_certificate(formula, outcome.certificate, Mode.INTUITIONISTIC).accepted

    @pytest.mark.parametrize("name", ["dne_excluded_middle", "contraposition", "quantifier_swap"])
    def test_intuitionistic_theorems(self, load_problem, intuitionistic_limits, name):
        assert prove(load_problem(name), intuitionistic_limits).proved

    @pytest.mark.parametrize("name", ["peirce", "drinker"])
    def test_classical_only(self, load_problem, classical_limits, name):
        formula = load_problem(name)
        assert prove(formula, classical_limits).proved
        assert not prove(formula, SearchLimits(timeout=5.0, copy_cap=3, max_depth=8)).proved


class TestSearchControl:
    """Test cases for timeouts, cancellation and input checks"""

    def test_timeout(self, load_problem):
        outcome = prove(load_problem("set_union"), SearchLimits(timeout=1e-9))
        assert outcome.status == OutcomeStatus.TIMEOUT

    def test_cancellation(self, load_problem):
        cancel = threading.Event()
        cancel.set()
        outcome = prove(load_problem("set_union"), SearchLimits(timeout=10.0), cancel)
        assert outcome.status == OutcomeStatus.TIMEOUT
        assert "cancelled" in outcome.reason

    def test_open_formula_rejected(self):
        with pytest.raises(ValueError):
            prove(Atom("p", (Variable("X"),)))

    def test_statistics_are_reported(self, load_problem, intuitionistic_limits):
        outcome = prove(load_problem("p_imp_p"), intuitionistic_limits)
        stats = outcome.statistics.as_dict()
        assert stats["rounds"] == 1
        assert stats["connection_attempts"] >= 1


class TestPortfolio:
    """Test cases for concurrent strategies"""

    def test_default_strategies(self):
        strategies = default_strategies(SearchLimits())
        assert len(strategies) == 3
        assert strategies[2].mode == Mode.CLASSICAL
        assert len(default_strategies(SearchLimits(mode=Mode.CLASSICAL))) == 2

    def test_portfolio_proves(self, load_problem, intuitionistic_limits):
        outcome = prove_portfolio(load_problem("p_imp_p"), intuitionistic_limits)
        assert outcome.proved
        assert outcome.certificate.mode == Mode.INTUITIONISTIC

    def test_portfolio_gives_up(self, load_problem, intuitionistic_limits):
        outcome = prove_portfolio(load_problem("excluded_middle"), intuitionistic_limits)
        assert outcome.status == OutcomeStatus.EXHAUSTED_BOUNDS


@pytest.mark.property
class TestOracleAgreement:
    """Property checks of proof search against the propositional deciders"""

    def test_soundness_and_monotonicity(self, random_formulas):
        limits = SearchLimits(timeout=2.0, copy_cap=2, max_depth=4)
        for formula in random_formulas(seed=5, count=40):
            intuitionistic = prove(formula, limits)
            classical = prove(formula, replace(limits, mode=Mode.CLASSICAL))
            if intuitionistic.proved:
                assert g4ip_valid(formula)
                assert classical.status != OutcomeStatus.EXHAUSTED_BOUNDS
            if classical.proved:
                assert classical_valid(formula)

    @pytest.mark.slow
    def test_propositional_completeness(self):
        """Test every G4ip-valid formula of the seeded corpus is proved"""
        limits = SearchLimits(timeout=5.0)
        valid = [formula for formula in random_corpus(7, 200) if g4ip_valid(formula)]
        assert valid
        missed = [print_formula(formula) for formula in valid if not prove(formula, limits).proved]
        assert missed == []
