"""
Versioned JSON document models shared by certificates and sequent proofs.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from matrix.positions import PrefixChar
from syntax.formulas import Application, Term, Variable

SCHEMA_VERSION = 1


class TermModel(BaseModel):
    """A first-order term: exactly one of ``var`` or ``fun`` is set."""
    var: Optional[str] = Field(default=None, description="Variable name")
    fun: Optional[str] = Field(default=None, description="Functor name")
    args: List["TermModel"] = Field(default_factory=list, description="Arguments of an application")


TermModel.model_rebuild()


class CertificateDocument(BaseModel):
    """On-disk form of a matrix certificate."""
    kind: str = Field(default="certificate", description="Document family member")
    version: int = Field(default=SCHEMA_VERSION, description="Schema version")
    mode: str = Field(..., description="intuitionistic or classical")
    formula: str = Field(..., description="The closed formula in TPTP FOF syntax")
    formula_hash: str = Field(..., description="sha256 of mode and printed formula")
    multiplicity: Dict[str, int] = Field(default_factory=dict, description="Copies per multiplier position id")
    sigma_q: Dict[str, TermModel] = Field(default_factory=dict, description="Quantifier variable bindings")
    sigma_j: Dict[str, List[str]] = Field(default_factory=dict, description="Prefix variable bindings")
    connections: List[List[str]] = Field(default_factory=list, description="Pairs of atom position ids")


def term_to_model(term: Term) -> TermModel:
    if isinstance(term, Variable):
        return TermModel(var=term.name)
    return TermModel(fun=term.functor, args=[term_to_model(a) for a in term.args])


def term_from_model(model: TermModel) -> Term:
    if (model.var is None) == (model.fun is None):
        raise ValueError("term must set exactly one of 'var' and 'fun'")
    if model.var is not None:
        if model.args:
            raise ValueError("variables take no arguments")
        return Variable(model.var)
    return Application(model.fun, tuple(term_from_model(a) for a in model.args))


def char_from_name(name: str) -> PrefixChar:
    """Inverse of ``PrefixChar.name``; bare digits after the head denote a fresh variable."""
    if not name or name[0] not in "Va":
        raise ValueError(f"{name!r} is not a prefix character")
    head, rest = name[0], name[1:]
    if rest and rest[0] != "_":
        if head != "V" or not rest.isdigit():
            raise ValueError(f"{name!r} is not a prefix character")
        return PrefixChar(variable=True, owner="#" + rest)
    return PrefixChar(variable=head == "V", owner="r" + rest.replace("_", "."))
