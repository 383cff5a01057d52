import json
import random
from dataclasses import replace

import pytest

from certificate import (
    Accepted, Certificate, CertificateFormatError, Circular, DanglingPosition, Malformed,
    NonComplementary, UncoveredPath, certificate_mutants, check_certificate, deserialize, serialize,
)
from certificate.schema import char_from_name
from matrix import Mode, PrefixChar
from oracle import classical_valid, g4ip_valid
from search import SearchLimits, prove
from syntax import Application, Variable, is_propositional
from unification import PrefixSubstitution, TermSubstitution


def var(owner):
    return PrefixChar(variable=True, owner=owner)


def const(owner):
    return PrefixChar(variable=False, owner=owner)


@pytest.fixture
def p_imp_p(parse):
    formula = parse("p => p")
    return Certificate(
        formula=formula,
        mode=Mode.INTUITIONISTIC,
        multiplicity={"r.0": 1},
        sigma_q=TermSubstitution(),
        sigma_j=PrefixSubstitution({var("r.0.0"): (const("r.1"),)}),
        connections=(("r.0.0", "r.1"),),
    )


@pytest.fixture
def excluded_middle(parse):
    """Classical certificate for ~p | p"""
    return Certificate(
        formula=parse("~p | p"),
        mode=Mode.CLASSICAL,
        multiplicity={},
        sigma_q=TermSubstitution(),
        sigma_j=PrefixSubstitution(),
        connections=(("r.0.0", "r.1"),),
    )


class TestCheckCertificate:
    """Test cases for the independent certificate checker"""

    def test_accepts_p_imp_p(self, p_imp_p):
        verdict = check_certificate(p_imp_p.formula, p_imp_p, Mode.INTUITIONISTIC)
        assert isinstance(verdict, Accepted)
        assert verdict.accepted

    def test_prefixes_must_unify(self, p_imp_p):
        """Test the connection is not complementary without the prefix substitution"""
        stripped = replace(p_imp_p, sigma_j=PrefixSubstitution())
        verdict = check_certificate(stripped.formula, stripped, Mode.INTUITIONISTIC)
        assert isinstance(verdict, NonComplementary)
        assert verdict.pair == ("r.0.0", "r.1")

    def test_excluded_middle_is_not_intuitionistic(self, parse):
        """Test the prefixes of ~p | p clash in their first character"""
        formula = parse("~p | p")
        cert = Certificate(
            formula=formula,
            mode=Mode.INTUITIONISTIC,
            multiplicity={"r.0.0": 1},
            sigma_q=TermSubstitution(),
            sigma_j=PrefixSubstitution(),
            connections=(("r.0.0.0", "r.1"),),
        )
        assert isinstance(check_certificate(formula, cert, Mode.INTUITIONISTIC), NonComplementary)

    def test_accepts_classical_excluded_middle(self, excluded_middle):
        verdict = check_certificate(excluded_middle.formula, excluded_middle, Mode.CLASSICAL)
        assert verdict.accepted
        assert verdict.reason == "accepted"

    def test_uncovered_path(self, excluded_middle):
        """Test a certificate without connections reports an open path"""
        empty = replace(excluded_middle, connections=())
        verdict = check_certificate(empty.formula, empty, Mode.CLASSICAL)
        assert isinstance(verdict, UncoveredPath)
        assert verdict.witness == ("r.0.0", "r.1")

    def test_dangling_position(self, excluded_middle):
        dangling = replace(excluded_middle, connections=(("r.0.0", "r.7"),))
        verdict = check_certificate(dangling.formula, dangling, Mode.CLASSICAL)
        assert isinstance(verdict, DanglingPosition)
        assert verdict.reference == "r.7"

    def test_dangling_multiplicity(self, excluded_middle):
        """Test multiplicity entries must name multiplier positions"""
        dangling = replace(excluded_middle, multiplicity={"r.1": 2})
        assert isinstance(check_certificate(dangling.formula, dangling, Mode.CLASSICAL), DanglingPosition)

    def test_mode_mismatch(self, excluded_middle):
        """Test a classical certificate cannot be checked intuitionistically"""
        verdict = check_certificate(excluded_middle.formula, excluded_middle, Mode.INTUITIONISTIC)
        assert isinstance(verdict, Malformed)

    def test_different_formula(self, excluded_middle, parse):
        verdict = check_certificate(parse("p | ~p"), excluded_middle, Mode.CLASSICAL)
        assert isinstance(verdict, Malformed)

    def test_classical_prefix_substitution(self, excluded_middle):
        """Test classical certificates carry no σ_J"""
        tampered = replace(excluded_middle, sigma_j=PrefixSubstitution({var("r.0.0"): (const("r.1"),)}))
        assert isinstance(check_certificate(tampered.formula, tampered, Mode.CLASSICAL), Malformed)

    def test_cyclic_term_substitution(self, parse):
        """Test variables bound through each other are circular"""
        formula = parse("(![X]: ?[Y]: p(X, Y)) => ?[V]: ![U]: p(U, V)")
        cert = Certificate(
            formula=formula,
            mode=Mode.CLASSICAL,
            multiplicity={},
            sigma_q=TermSubstitution({
                "X_0_0": Application("sk_1_0_0", (Variable("X_1_0"),)),
                "X_1_0": Application("sk_0_0_0", (Variable("X_0_0"),)),
            }),
            sigma_j=PrefixSubstitution(),
            connections=(),
        )
        verdict = check_certificate(formula, cert, Mode.CLASSICAL)
        assert isinstance(verdict, Circular)
        assert not verdict.accepted

    def test_searched_certificates_are_accepted(self, load_problem, intuitionistic_limits):
        for name in ("p_imp_p", "contraposition", "two_instance"):
            formula = load_problem(name)
            outcome = prove(formula, intuitionistic_limits)
            assert check_certificate(formula, outcome.certificate, Mode.INTUITIONISTIC).accepted, name

    def test_tampered_search_certificate_is_rejected(self, load_problem, intuitionistic_limits):
        """Test a searched certificate stripped of its connections or prefix bindings fails"""
        formula = load_problem("contraposition")
        cert = prove(formula, intuitionistic_limits).certificate
        stripped = replace(cert, connections=())
        assert isinstance(check_certificate(formula, stripped, Mode.INTUITIONISTIC), UncoveredPath)
        unbound = replace(cert, sigma_j=PrefixSubstitution())
        assert isinstance(check_certificate(formula, unbound, Mode.INTUITIONISTIC), NonComplementary)


class TestSerialization:
    """Test cases for the certificate JSON document"""

    def test_round_trip(self, p_imp_p):
        """Test a deserialized certificate is accepted again"""
        text = serialize(p_imp_p)
        restored = deserialize(text, p_imp_p.formula)
        assert restored.connections == p_imp_p.connections
        assert restored.sigma_j == p_imp_p.sigma_j
        assert check_certificate(p_imp_p.formula, restored, Mode.INTUITIONISTIC).accepted

    def test_stable_text(self, p_imp_p):
        document = json.loads(serialize(p_imp_p))
        assert document["kind"] == "certificate"
        assert document["version"] == 1
        assert document["mode"] == "intuitionistic"
        assert document["formula"] == "(p => p)"
        assert document["sigma_j"] == {"V_0_0": ["a_1"]}
        assert document["connections"] == [["r.0.0", "r.1"]]

    @pytest.mark.parametrize("key, value", [
        ("version", 2),
        ("kind", "sequent-proof"),
        ("formula_hash", "0" * 64),
        ("mode", "modal"),
    ])
    def test_rejects_bad_documents(self, p_imp_p, key, value):
        document = json.loads(serialize(p_imp_p))
        document[key] = value
        with pytest.raises(CertificateFormatError):
            deserialize(json.dumps(document))

    def test_rejects_other_formula(self, p_imp_p, parse):
        with pytest.raises(CertificateFormatError):
            deserialize(serialize(p_imp_p), parse("q => q"))

    def test_unknown_connection_id_is_dangling(self, p_imp_p):
        """Test an id that is no tree path still loads and is rejected by the checker"""
        document = json.loads(serialize(p_imp_p))
        document["connections"] = [["r.x", "r.1"]]
        restored = deserialize(json.dumps(document))
        assert set(restored.connections[0]) == {"r.x", "r.1"}
        verdict = check_certificate(p_imp_p.formula, restored, Mode.INTUITIONISTIC)
        assert isinstance(verdict, DanglingPosition)
        assert verdict.reference == "r.x"

    def test_rejects_invalid_json(self):
        with pytest.raises(CertificateFormatError):
            deserialize("{not json")

    def test_char_names(self):
        """Test prefix character names map back to their owners"""
        assert char_from_name("V_0_0") == var("r.0.0")
        assert char_from_name("a") == const("r")
        assert char_from_name("V3") == var("#3")
        with pytest.raises(ValueError):
            char_from_name("x_1")


@pytest.mark.property
@pytest.mark.slow
class TestMutationRobustness:
    """Checker verdicts on single-field mutations of searched certificates"""

    BUNDLED = [
        ("p_imp_p", Mode.INTUITIONISTIC), ("contraposition", Mode.INTUITIONISTIC),
        ("dne_excluded_middle", Mode.INTUITIONISTIC), ("two_instance", Mode.INTUITIONISTIC),
        ("quantifier_swap", Mode.INTUITIONISTIC), ("peirce", Mode.CLASSICAL),
        ("drinker", Mode.CLASSICAL), ("excluded_middle", Mode.CLASSICAL),
    ]

    @pytest.fixture
    def certificates(self, load_problem, random_formulas):
        """Certificates for the bundled problems topped up with random theorems, 20 in all"""
        found = []
        for name, mode in self.BUNDLED:
            outcome = prove(load_problem(name), SearchLimits(mode=mode, timeout=10.0))
            assert outcome.proved, name
            found.append(outcome.certificate)
        for formula in random_formulas(seed=31, count=400):
            if len(found) == 20:
                break
            if not classical_valid(formula):
                continue
            mode = Mode.INTUITIONISTIC if g4ip_valid(formula) else Mode.CLASSICAL
            outcome = prove(formula, SearchLimits(mode=mode, timeout=5.0))
            if outcome.proved:
                found.append(outcome.certificate)
        return found

    def test_mutants_are_rejected(self, certificates):
        """Test at least 95% of 200+ mutants fail and the accepted ones are still proofs"""
        rng = random.Random(11)
        mutants = []
        while len(mutants) < 200:
            for cert in certificates:
                mutants.extend((cert, kind, mutant) for kind, mutant in certificate_mutants(cert, rng))

        accepted = [
            (cert, kind, mutant) for cert, kind, mutant in mutants
            if check_certificate(cert.formula, mutant, cert.mode).accepted
        ]
        assert len(accepted) <= 0.05 * len(mutants)
        for cert, kind, mutant in accepted:
            if not is_propositional(cert.formula):
                continue
            oracle = g4ip_valid if cert.mode == Mode.INTUITIONISTIC else classical_valid
            assert oracle(cert.formula), kind

    def test_every_kind_is_produced(self, certificates):
        rng = random.Random(3)
        kinds = {kind for cert in certificates for kind, _ in certificate_mutants(cert, rng)}
        assert {"drop_connection", "swap_atom", "decrement_multiplicity", "rebind_term", "erase_prefix"} <= kinds

    def test_no_mutant_equals_original(self, certificates):
        rng = random.Random(5)
        for cert in certificates:
            for kind, mutant in certificate_mutants(cert, rng):
                assert mutant != cert, kind
