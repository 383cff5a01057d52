"""
Position tree types for the non-clausal matrix.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

from syntax.errors import ResourceBoundError
from syntax.formulas import Formula, Term


class Mode(str, Enum):
    """Logic of a run; classical mode drops every prefix."""
    INTUITIONISTIC = "intuitionistic"
    CLASSICAL = "classical"


class PrincipalType(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    DELTA = "delta"
    ATOM = "atom"
    # multiplier of an intuitionistic polarity-1 special position
    NU = "nu"


MULTIPLIERS = (PrincipalType.GAMMA, PrincipalType.NU)


class CopyLimitExceeded(ResourceBoundError):
    """add_instance would exceed the per-position copy cap."""


class PathBoundExceeded(ResourceBoundError):
    """The matrix has more paths than the configured bound."""


@dataclass(frozen=True, order=True)
class PrefixChar:
    """One prefix character, owned by the position that emits it."""
    variable: bool
    owner: str

    @property
    def name(self) -> str:
        return ("V" if self.variable else "a") + position_suffix(self.owner)

    def __str__(self) -> str:
        return self.name


Prefix = Tuple[PrefixChar, ...]


def position_suffix(position_id: str) -> str:
    """Stable name fragment of a tree-path id: ``r.0.2`` -> ``_0_2``."""
    return position_id[1:].replace(".", "_")


def format_prefix(prefix: Prefix) -> str:
    return " ".join(str(c) for c in prefix) if prefix else "ε"


@dataclass(frozen=True)
class Position:
    """One node of the position tree.

    ``label`` is the subformula occurrence with the bound variables of
    dominating quantifier copies already replaced by instance terms.
    """
    id: str
    label: Formula
    polarity: int
    principal_type: PrincipalType
    prefix: Prefix
    instance: Tuple[int, ...]
    children: Tuple[str, ...] = ()
    parent: Optional[str] = None
    char: Optional[PrefixChar] = None
    variable: Optional[str] = None
    skolem: Optional[Term] = None
    gamma_vars: Tuple[str, ...] = ()

    @property
    def is_multiplier(self) -> bool:
        return self.principal_type in MULTIPLIERS

    @property
    def is_atom(self) -> bool:
        return self.principal_type == PrincipalType.ATOM


@dataclass(frozen=True)
class Matrix:
    """Immutable position tree of F^μ.

    ``multiplicity`` maps every multiplier position id to its copy count;
    ``atom_index`` maps (predicate, polarity) to atom position ids.
    """
    formula: Formula
    mode: Mode
    root: str
    positions: Mapping[str, Position]
    multiplicity: Mapping[str, int]
    atom_index: Mapping[Tuple[str, int], Tuple[str, ...]]
    copy_cap: int
    skolem_prefix: str = "sk"
    variable_prefix: str = "X"
    variable_positions: Mapping[str, str] = field(default_factory=dict)

    def __getitem__(self, position_id: str) -> Position:
        return self.positions[position_id]

    def __contains__(self, position_id: str) -> bool:
        return position_id in self.positions

    @property
    def root_position(self) -> Position:
        return self.positions[self.root]

    def atoms(self) -> Tuple[Position, ...]:
        return tuple(p for p in self.positions.values() if p.is_atom)

    def multipliers(self) -> Tuple[Position, ...]:
        return tuple(p for p in self.positions.values() if p.is_multiplier)

    def ancestors(self, position_id: str) -> Tuple[str, ...]:
        """Ids from the root down to, excluding, ``position_id``."""
        chain = []
        current = self.positions[position_id].parent
        while current is not None:
            chain.append(current)
            current = self.positions[current].parent
        return tuple(reversed(chain))

    def skolem_owner(self, functor: str) -> Optional[str]:
        """Position id of the δ-position that introduced a Skolem functor."""
        if not functor.startswith(self.skolem_prefix + "_") and functor != self.skolem_prefix:
            return None
        candidate = "r" + functor[len(self.skolem_prefix):].replace("_", ".")
        position = self.positions.get(candidate)
        if position is not None and position.principal_type == PrincipalType.DELTA:
            return candidate
        return None

    def character_positions(self) -> Dict[PrefixChar, str]:
        return {p.char: p.id for p in self.positions.values() if p.char is not None}
