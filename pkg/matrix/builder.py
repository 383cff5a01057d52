"""
Matrix construction by structural recursion on the formula.
Handles polarity, principal types, prefixes and the copies behind multiplicity.
"""

from typing import Dict, List, Mapping, Optional, Tuple

from loguru import logger

from config.settings import get_settings
from matrix.positions import (
    CopyLimitExceeded, Matrix, Mode, Position, Prefix, PrefixChar, PrincipalType,
    position_suffix,
)
from syntax.formulas import (
    And, Application, Atom, Exists, Forall, Formula, Iff, Imp, Neg, Or, Variable,
    free_variables, instantiate, subformulas, symbols,
)


def _is_generative(formula: Formula, polarity: int, mode: Mode) -> Optional[PrincipalType]:
    """Multiplier type of an occurrence, or None when it is used once."""
    if (isinstance(formula, Forall) and polarity == 1) or (isinstance(formula, Exists) and polarity == 0):
        return PrincipalType.GAMMA
    if mode == Mode.INTUITIONISTIC and polarity == 1 and isinstance(formula, (Atom, Neg, Imp)):
        return PrincipalType.NU
    return None


def _is_special(formula: Formula) -> bool:
    return isinstance(formula, (Atom, Neg, Imp, Forall))


def _skolem_prefix(formula: Formula) -> str:
    functors, _ = symbols(formula)
    prefix = "sk"
    while any(name == prefix or name.startswith(prefix + "_") for name in functors):
        prefix = prefix + "k"
    return prefix


def _variable_prefix(formula: Formula) -> str:
    """Stem of instance variable names; no variable name of the formula starts with it and an underscore."""
    names = {sub.var for sub in subformulas(formula) if isinstance(sub, (Forall, Exists))} | free_variables(formula)
    prefix = "X"
    while any(name.startswith(prefix + "_") for name in names):
        prefix = prefix + "X"
    return prefix


class MatrixBuilder:
    """Builds positions into a shared dict; one builder per matrix value."""

    def __init__(self, mode: Mode, multiplicity: Mapping[str, int], skolem_prefix: str,
                 variable_prefix: str = "X"):
        self.mode = mode
        self.requested = multiplicity
        self.positions: Dict[str, Position] = {}
        self.multiplicity: Dict[str, int] = {}
        self.variable_positions: Dict[str, str] = {}
        self.skolem_prefix = skolem_prefix
        self.variable_prefix = variable_prefix

    def build(self, formula: Formula, polarity: int, position_id: str, parent: Optional[str],
              prefix: Prefix, instance: Tuple[int, ...], gamma_vars: Tuple[str, ...]) -> str:
        multiplier = _is_generative(formula, polarity, self.mode)
        if multiplier is None:
            return self.build_occurrence(formula, polarity, position_id, parent, prefix, instance, gamma_vars)

        count = max(1, self.requested.get(position_id, 1))
        children = tuple(
            self.build_occurrence(
                formula, polarity, f"{position_id}.{k}", position_id,
                prefix, instance + (k + 1,), gamma_vars,
            )
            for k in range(count)
        )
        self.multiplicity[position_id] = count
        self.positions[position_id] = Position(
            id=position_id, label=formula, polarity=polarity, principal_type=multiplier,
            prefix=prefix, instance=instance, children=children, parent=parent,
            gamma_vars=gamma_vars,
        )
        return position_id

    def build_occurrence(self, formula: Formula, polarity: int, position_id: str, parent: Optional[str],
                         prefix: Prefix, instance: Tuple[int, ...], gamma_vars: Tuple[str, ...]) -> str:
        char = None
        if self.mode == Mode.INTUITIONISTIC and _is_special(formula):
            char = PrefixChar(variable=polarity == 1, owner=position_id)
            prefix = prefix + (char,)

        variable = None
        skolem = None
        specs: List[Tuple[Formula, int]] = []

        if isinstance(formula, Atom):
            principal = PrincipalType.ATOM
        elif isinstance(formula, Neg):
            principal = PrincipalType.ALPHA
            specs = [(formula.body, 1 - polarity)]
        elif isinstance(formula, And):
            principal = PrincipalType.ALPHA if polarity == 1 else PrincipalType.BETA
            specs = [(formula.left, polarity), (formula.right, polarity)]
        elif isinstance(formula, Or):
            principal = PrincipalType.ALPHA if polarity == 0 else PrincipalType.BETA
            specs = [(formula.left, polarity), (formula.right, polarity)]
        elif isinstance(formula, Imp):
            principal = PrincipalType.ALPHA if polarity == 0 else PrincipalType.BETA
            specs = [(formula.left, 1 - polarity), (formula.right, polarity)]
        elif isinstance(formula, Iff):
            # unfolded as (left => right) & (right => left)
            principal = PrincipalType.ALPHA if polarity == 1 else PrincipalType.BETA
            specs = [
                (Imp(formula.left, formula.right), polarity),
                (Imp(formula.right, formula.left), polarity),
            ]
        elif _is_generative(formula, polarity, Mode.CLASSICAL) == PrincipalType.GAMMA:
            # one copy of a γ-position: binds a fresh quantifier variable
            principal = PrincipalType.ALPHA
            variable = self.variable_prefix + position_suffix(position_id)
            self.variable_positions[variable] = position_id
            specs = [(instantiate(formula, Variable(variable)), polarity)]
            gamma_vars = gamma_vars + (variable,)
        else:
            principal = PrincipalType.DELTA
            skolem = Application(
                self.skolem_prefix + position_suffix(position_id),
                tuple(Variable(v) for v in gamma_vars),
            )
            specs = [(instantiate(formula, skolem), polarity)]

        children = tuple(
            self.build(sub, pol, f"{position_id}.{i}", position_id, prefix, instance, gamma_vars)
            for i, (sub, pol) in enumerate(specs)
        )
        self.positions[position_id] = Position(
            id=position_id, label=formula, polarity=polarity, principal_type=principal,
            prefix=prefix, instance=instance, children=children, parent=parent, char=char,
            variable=variable, skolem=skolem, gamma_vars=gamma_vars,
        )
        return position_id


def _atom_index(positions: Mapping[str, Position]) -> Dict[Tuple[str, int], Tuple[str, ...]]:
    index: Dict[Tuple[str, int], List[str]] = {}
    for position in positions.values():
        if position.is_atom:
            index.setdefault((position.label.predicate, position.polarity), []).append(position.id)
    return {key: tuple(sorted(ids, key=_id_order)) for key, ids in index.items()}


def _id_order(position_id: str) -> Tuple[int, ...]:
    return tuple(int(part) for part in position_id.split(".")[1:])


def matrix_with_multiplicity(formula: Formula, mode: Mode, multiplicity: Mapping[str, int],
                             copy_cap: Optional[int] = None) -> Matrix:
    """Build F^μ for an explicit multiplicity (missing entries mean 1)."""
    mode = Mode(mode)
    cap = get_settings().copy_cap if copy_cap is None else copy_cap
    builder = MatrixBuilder(mode, multiplicity, _skolem_prefix(formula), _variable_prefix(formula))
    root = builder.build(formula, 0, "r", None, (), (), ())
    return Matrix(
        formula=formula, mode=mode, root=root, positions=builder.positions,
        multiplicity=builder.multiplicity, atom_index=_atom_index(builder.positions),
        copy_cap=cap, skolem_prefix=builder.skolem_prefix, variable_prefix=builder.variable_prefix,
        variable_positions=builder.variable_positions,
    )


def build_matrix(formula: Formula, mode: Mode = Mode.INTUITIONISTIC, copy_cap: Optional[int] = None) -> Matrix:
    """Build the position tree of a closed, alpha-normalized formula with μ ≡ 1."""
    matrix = matrix_with_multiplicity(formula, mode, {}, copy_cap)
    logger.debug(f"Built {Mode(mode).value} matrix with {len(matrix.positions)} positions")
    return matrix


def add_instance(matrix: Matrix, position_id: str) -> Matrix:
    """Return a new matrix with one more copy below a multiplier position.

    Existing positions keep their ids, prefixes and polarities; the copy gets
    fresh quantifier variables and fresh prefix characters.
    """
    multiplier = matrix.positions.get(position_id)
    if multiplier is None or not multiplier.is_multiplier:
        raise ValueError(f"{position_id} is not a multiplier position")
    count = matrix.multiplicity[position_id]
    if count >= matrix.copy_cap:
        raise CopyLimitExceeded(f"Copy cap {matrix.copy_cap} reached at {position_id}")

    builder = MatrixBuilder(matrix.mode, {}, matrix.skolem_prefix, matrix.variable_prefix)
    child_id = builder.build_occurrence(
        multiplier.label, multiplier.polarity, f"{position_id}.{count}", position_id,
        multiplier.prefix, multiplier.instance + (count + 1,), multiplier.gamma_vars,
    )

    positions = dict(matrix.positions)
    positions.update(builder.positions)
    positions[position_id] = Position(
        id=multiplier.id, label=multiplier.label, polarity=multiplier.polarity,
        principal_type=multiplier.principal_type, prefix=multiplier.prefix,
        instance=multiplier.instance, children=multiplier.children + (child_id,),
        parent=multiplier.parent, gamma_vars=multiplier.gamma_vars,
    )
    multiplicity = dict(matrix.multiplicity)
    multiplicity.update(builder.multiplicity)
    multiplicity[position_id] = count + 1
    variable_positions = dict(matrix.variable_positions)
    variable_positions.update(builder.variable_positions)

    logger.debug(f"Added instance {count + 1} of {position_id}")
    return Matrix(
        formula=matrix.formula, mode=matrix.mode, root=matrix.root, positions=positions,
        multiplicity=multiplicity, atom_index=_atom_index(positions), copy_cap=matrix.copy_cap,
        skolem_prefix=matrix.skolem_prefix, variable_prefix=matrix.variable_prefix,
        variable_positions=variable_positions,
    )


def prefix_of(matrix: Matrix, position_id: str) -> Prefix:
    """Concatenate the characters emitted on the branch from the root to the position."""
    chain = matrix.ancestors(position_id) + (position_id,)
    return tuple(
        matrix.positions[pid].char for pid in chain if matrix.positions[pid].char is not None
    )
