"""
Certificate data model.
A multiplicity, the pair (σ_Q, σ_J) and the spanning connection set, bound to formula and mode.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Mapping, Tuple, Union

from matrix.builder import matrix_with_multiplicity
from matrix.positions import Matrix, Mode
from syntax.formulas import Formula
from syntax.printer import print_formula
from unification.prefix_unifier import PrefixSubstitution
from unification.term_unifier import TermSubstitution

Connection = Tuple[str, str]


def formula_digest(formula: Formula, mode: Mode) -> str:
    """sha256 over the printed formula and the mode name."""
    payload = f"{Mode(mode).value}|{print_formula(formula)}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def id_order(position_id: str) -> Tuple[Tuple[int, Union[int, str]], ...]:
    """Tree order of position ids; parts that are not numbers sort after numbered siblings."""
    return tuple((0, int(part)) if part.isdigit() else (1, part) for part in position_id.split(".")[1:])


def normalize_connection(first: str, second: str) -> Connection:
    return tuple(sorted((first, second), key=id_order))


@dataclass(frozen=True)
class Certificate:
    formula: Formula
    mode: Mode
    multiplicity: Mapping[str, int]
    sigma_q: TermSubstitution
    sigma_j: PrefixSubstitution
    connections: Tuple[Connection, ...]
    formula_hash: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.formula_hash:
            object.__setattr__(self, "formula_hash", formula_digest(self.formula, self.mode))

    def matrix(self, copy_cap: int = 1 << 16) -> Matrix:
        """Rebuild F^μ for the stated multiplicity."""
        return matrix_with_multiplicity(self.formula, self.mode, self.multiplicity, copy_cap)

    @property
    def binds_formula(self) -> bool:
        return self.formula_hash == formula_digest(self.formula, self.mode)
