import pytest

from matrix import (
    CopyLimitExceeded, Mode, PathBoundExceeded, PrefixChar, PrincipalType, add_instance, build_matrix,
    count_paths, dump_matrix, enumerate_paths, matrix_with_multiplicity, prefix_of,
)
from syntax import Atom, Forall, Imp, Variable, constant

P_IMP_P_INTUITIONISTIC = """\
# matrix mode=intuitionistic positions=4
r alpha pol=0 prefix=a inst=- :: (p => p)
  r.0 nu pol=1 prefix=a inst=- :: p
    r.0.0 atom pol=1 prefix=a V_0_0 inst=1 :: p
  r.1 atom pol=0 prefix=a a_1 inst=- :: p
"""

P_IMP_P_CLASSICAL = """\
# matrix mode=classical positions=3
r alpha pol=0 prefix=ε inst=- :: (p => p)
  r.0 atom pol=1 prefix=ε inst=- :: p
  r.1 atom pol=0 prefix=ε inst=- :: p
"""


def var(owner):
    return PrefixChar(variable=True, owner=owner)


def const(owner):
    return PrefixChar(variable=False, owner=owner)


class TestMatrixConstruction:
    """Test cases for building position trees"""

    def test_p_imp_p_dump(self, parse):
        """Test the golden dump of p => p in both modes"""
        formula = parse("p => p")
        assert dump_matrix(build_matrix(formula, Mode.INTUITIONISTIC)) == P_IMP_P_INTUITIONISTIC
        assert dump_matrix(build_matrix(formula, Mode.CLASSICAL)) == P_IMP_P_CLASSICAL

    def test_excluded_middle_prefixes(self, parse):
        """Test the two atoms of ~p | p get prefixes with clashing constants"""
        matrix = build_matrix(parse("~p | p"), Mode.INTUITIONISTIC)
        assert matrix["r"].principal_type == PrincipalType.ALPHA
        assert matrix["r.0.0"].principal_type == PrincipalType.NU
        assert matrix["r.0.0.0"].prefix == (const("r.0"), var("r.0.0.0"))
        assert matrix["r.1"].prefix == (const("r.1"),)

    def test_prefix_of_matches_stored_prefix(self, parse):
        """Test prefixes equal the characters emitted along the branch"""
        matrix = build_matrix(parse("(![X]: p(X)) => p(a)"), Mode.INTUITIONISTIC)
        for position in matrix.positions.values():
            if not position.is_multiplier:
                assert prefix_of(matrix, position.id) == position.prefix

    def test_gamma_copy_binds_variable(self, parse):
        """Test a copy of a γ-position binds a fresh quantifier variable"""
        matrix = build_matrix(parse("(![X]: p(X)) => p(a)"), Mode.CLASSICAL)
        assert matrix["r.0"].principal_type == PrincipalType.GAMMA
        assert matrix.variable_positions == {"X_0_0": "r.0.0"}
        assert matrix.multiplicity == {"r.0": 1}

    def test_delta_position_gets_skolem_term(self, parse):
        """Test the δ-position of a positive universal gets a rigid term"""
        matrix = build_matrix(parse("![X]: p(X)"), Mode.CLASSICAL)
        assert matrix["r"].principal_type == PrincipalType.DELTA
        assert matrix["r"].skolem == constant("sk")
        assert matrix.skolem_owner("sk") == "r"

    def test_skolem_prefix_avoids_user_functors(self, parse):
        """Test the rigid term prefix is extended past user functors"""
        matrix = build_matrix(parse("![X]: q(X, sk)"), Mode.CLASSICAL)
        assert matrix.skolem_prefix == "skk"
        assert matrix["r"].skolem == constant("skk")

    def test_variable_names_avoid_bound_names(self, parse):
        """Test instance variables are renamed past bound names of the same shape"""
        matrix = build_matrix(parse("? [Y] : ! [X_0] : (p(X_0) => p(Y))"), Mode.INTUITIONISTIC)
        x0, xx0 = Variable("X_0"), Variable("XX_0")
        assert matrix.variable_prefix == "XX"
        assert matrix.variable_positions == {"XX_0": "r.0"}
        assert matrix["r.0.0"].principal_type == PrincipalType.DELTA
        assert matrix["r.0.0"].label == Forall("X_0", Imp(Atom("p", (x0,)), Atom("p", (xx0,))))

    def test_variable_prefix_survives_add_instance(self, parse):
        matrix = build_matrix(parse("? [Y] : ! [X_0] : (p(X_0) => p(Y))"), Mode.CLASSICAL)
        extended = add_instance(matrix, "r")
        assert extended.variable_positions == {"XX_0": "r.0", "XX_1": "r.1"}

    def test_polarities(self, parse):
        """Test negation and implication antecedents flip polarity"""
        matrix = build_matrix(parse("~p => q"), Mode.CLASSICAL)
        assert matrix["r"].polarity == 0
        assert matrix["r.0"].polarity == 1
        assert matrix["r.0.0"].polarity == 0
        assert matrix["r.1"].polarity == 0

    def test_atom_index(self, parse):
        """Test atoms are indexed by predicate and polarity"""
        matrix = build_matrix(parse("p => p"), Mode.CLASSICAL)
        assert matrix.atom_index[("p", 1)] == ("r.0",)
        assert matrix.atom_index[("p", 0)] == ("r.1",)


class TestMultiplicity:
    """Test cases for adding instances"""

    @pytest.fixture
    def formula(self, parse):
        return parse("(![X]: p(X)) => p(a)")

    def test_add_instance(self, formula):
        """Test a new copy appears below the multiplier and old positions are kept"""
        matrix = build_matrix(formula, Mode.INTUITIONISTIC)
        extended = add_instance(matrix, "r.0")
        assert extended.multiplicity["r.0"] == 2
        assert extended["r.0"].children == ("r.0.0", "r.0.1")
        assert extended.variable_positions["X_0_1"] == "r.0.1"
        assert extended["r.1"] == matrix["r.1"]
        assert extended["r.0.0"] == matrix["r.0.0"]

    def test_add_instance_is_persistent(self, formula):
        """Test the original matrix value is unchanged"""
        matrix = build_matrix(formula, Mode.INTUITIONISTIC)
        add_instance(matrix, "r.0")
        assert matrix.multiplicity["r.0"] == 1
        assert "r.0.1" not in matrix

    def test_copy_has_fresh_prefix_characters(self, formula):
        """Test the copy emits characters distinct from the first copy"""
        extended = add_instance(build_matrix(formula, Mode.INTUITIONISTIC), "r.0")
        assert extended["r.0.0"].char != extended["r.0.1"].char
        assert extended["r.0.1"].char == var("r.0.1")

    def test_rebuild_from_multiplicity(self, formula):
        """Test rebuilding from a multiplicity map gives the same tree"""
        extended = add_instance(build_matrix(formula, Mode.INTUITIONISTIC), "r.0")
        rebuilt = matrix_with_multiplicity(formula, Mode.INTUITIONISTIC, {"r.0": 2})
        assert dump_matrix(rebuilt) == dump_matrix(extended)

    def test_copy_cap(self, formula):
        """Test the copy cap is enforced"""
        matrix = build_matrix(formula, Mode.CLASSICAL, copy_cap=1)
        with pytest.raises(CopyLimitExceeded):
            add_instance(matrix, "r.0")

    def test_non_multiplier(self, formula):
        """Test only multiplier positions can be copied"""
        with pytest.raises(ValueError):
            add_instance(build_matrix(formula, Mode.CLASSICAL), "r.1")


class TestPaths:
    """Test cases for path counting and enumeration"""

    def test_single_path(self, parse):
        """Test ~p | p has one path containing both atoms"""
        matrix = build_matrix(parse("~p | p"), Mode.CLASSICAL)
        assert count_paths(matrix) == 1
        assert list(enumerate_paths(matrix)) == [frozenset({"r.0.0", "r.1"})]

    def test_beta_splits(self, parse):
        """Test two β-positions under an α-position multiply"""
        matrix = build_matrix(parse("(p | q) => (p & q)"), Mode.CLASSICAL)
        paths = list(enumerate_paths(matrix))
        assert count_paths(matrix) == 4
        assert len(set(paths)) == 4
        assert all(len(path) == 2 for path in paths)

    def test_equivalence_splits(self, parse):
        """Test a positive equivalence splits into two implications"""
        matrix = build_matrix(parse("p <=> p"), Mode.CLASSICAL)
        assert matrix["r"].principal_type == PrincipalType.BETA
        assert count_paths(matrix) == 2

    def test_path_bound(self, parse):
        """Test enumeration refuses matrices beyond the bound"""
        matrix = build_matrix(parse("(p | q) => (p & q)"), Mode.CLASSICAL)
        with pytest.raises(PathBoundExceeded):
            enumerate_paths(matrix, bound=3)


def _meet(first, second):
    common = []
    for a, b in zip(first.split("."), second.split(".")):
        if a != b:
            break
        common.append(a)
    return ".".join(common)


def reference_paths(matrix):
    """Paths as maximal sets of atoms whose pairwise meeting points are not β."""
    atoms = [position.id for position in matrix.atoms()]
    related = {
        atom: {other for other in atoms
               if other != atom and matrix[_meet(atom, other)].principal_type != PrincipalType.BETA}
        for atom in atoms
    }
    found = set()

    def extend(path, candidates, excluded):
        if not candidates and not excluded:
            found.add(frozenset(path))
            return
        for atom in sorted(candidates):
            extend(path | {atom}, candidates & related[atom], excluded & related[atom])
            candidates = candidates - {atom}
            excluded = excluded | {atom}

    extend(set(), set(atoms), set())
    return found


@pytest.mark.property
class TestPathProperties:
    """Property checks of path enumeration and prefixes on random formulas"""

    @pytest.mark.parametrize("mode", [Mode.CLASSICAL, Mode.INTUITIONISTIC])
    def test_paths_match_reference(self, random_formulas, mode):
        for formula in random_formulas(seed=21, count=40, atoms=3, connectives=12):
            matrix = build_matrix(formula, mode)
            paths = list(enumerate_paths(matrix))
            assert len(paths) == count_paths(matrix)
            assert set(paths) == reference_paths(matrix)

    def test_prefixes_form_a_tree(self, random_formulas, parse):
        """Test every prefix extends its parent's by at most the position's own character"""
        formulas = random_formulas(seed=22, count=30, atoms=3, connectives=10)
        formulas.append(parse("(![X]: (p(X) => ?[Y]: q(X, Y))) => ~~(?[Z]: p(Z))"))
        for formula in formulas:
            matrix = build_matrix(formula, Mode.INTUITIONISTIC)
            for position in matrix.positions.values():
                if position.parent is None:
                    continue
                parent = matrix[position.parent]
                own = (position.char,) if position.char is not None else ()
                assert position.prefix == parent.prefix + own

    def test_add_instance_keeps_other_paths(self, parse):
        """Test dropping the new copy's atoms from the extended paths gives the old paths back"""
        formula = parse("((![X]: (p(X) | q(X))) & (r | s)) => (p(a) | ~q(b))")
        matrix = build_matrix(formula, Mode.INTUITIONISTIC)
        for multiplier in matrix.multipliers():
            extended = add_instance(matrix, multiplier.id)
            copy = extended[multiplier.id].children[-1]
            new_atoms = {atom.id for atom in extended.atoms() if atom.id.startswith(copy + ".") or atom.id == copy}
            assert {path - new_atoms for path in enumerate_paths(extended)} == set(enumerate_paths(matrix))
