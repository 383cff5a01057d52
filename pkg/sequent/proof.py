"""
Sequents and sequent proof trees.
Multiset sequents, rule names, rendering as an indented tree and the JSON document form.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from certificate.schema import SCHEMA_VERSION, TermModel, term_from_model, term_to_model
from certificate.serialization import CertificateFormatError
from matrix.positions import Mode
from syntax.errors import InputError
from syntax.formulas import Formula, Term
from syntax.printer import print_formula, print_term
from syntax.tptp_parser import parse_statements


class Rule(str, Enum):
    AXIOM = "ax"
    AND_L = "andL"
    AND_R = "andR"
    OR_L = "orL"
    OR_R = "orR"
    IMP_L = "impL"
    IMP_R = "impR"
    NOT_L = "notL"
    NOT_R = "notR"
    FORALL_L = "forallL"
    FORALL_R = "forallR"
    EXISTS_L = "existsL"
    EXISTS_R = "existsR"
    IFF_L = "iffL"
    IFF_R = "iffR"


# single-succedent premise in intuitionistic mode
CRITICAL_RULES = (Rule.IMP_R, Rule.NOT_R, Rule.FORALL_R)


class Sequent:
    """Γ ⊢ Δ with both sides compared as multisets."""

    __slots__ = ("antecedent", "succedent")

    def __init__(self, antecedent: Iterable[Formula] = (), succedent: Iterable[Formula] = ()):
        self.antecedent: Tuple[Formula, ...] = tuple(antecedent)
        self.succedent: Tuple[Formula, ...] = tuple(succedent)

    def _key(self):
        return (frozenset(Counter(self.antecedent).items()), frozenset(Counter(self.succedent).items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Sequent) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Sequent({self})"

    def __str__(self) -> str:
        left = ", ".join(print_formula(f) for f in self.antecedent)
        right = ", ".join(print_formula(f) for f in self.succedent)
        return f"{left} |- {right}".strip()

    def formulas(self) -> Iterator[Formula]:
        yield from self.antecedent
        yield from self.succedent


@dataclass
class SequentNode:
    """One inference: the conclusion, the rule and its parameters, and the premises."""
    sequent: Sequent
    rule: Rule
    principal: Optional[Formula] = None
    term: Optional[Term] = None
    eigen: Optional[str] = None
    premises: List["SequentNode"] = field(default_factory=list)
    connection: Optional[Tuple[str, str]] = None
    id: str = "0"

    def walk(self) -> Iterator["SequentNode"]:
        yield self
        for premise in self.premises:
            yield from premise.walk()


@dataclass
class SequentProof:
    formula: Formula
    mode: Mode
    root: SequentNode

    def __post_init__(self):
        self.mode = Mode(self.mode)

    def nodes(self) -> Iterator[SequentNode]:
        return self.root.walk()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def axiom_connections(self) -> List[Tuple[str, str]]:
        return [n.connection for n in self.nodes() if n.rule == Rule.AXIOM and n.connection is not None]


def number_nodes(node: SequentNode, node_id: str = "0") -> SequentNode:
    """Assign tree-path ids ``0``, ``0.0``, ``0.1`` ... in place."""
    node.id = node_id
    for i, premise in enumerate(node.premises):
        number_nodes(premise, f"{node_id}.{i}")
    return node


def render_proof(proof: SequentProof) -> str:
    """Indented derivation tree, conclusion first, premises indented below."""
    lines = [f"% {proof.mode.value} sequent proof, {proof.size()} nodes"]

    def visit(node: SequentNode, depth: int) -> None:
        annotation = ""
        if node.term is not None:
            annotation = f" [{print_term(node.term)}]"
        elif node.eigen is not None:
            annotation = f" [eigen {node.eigen}]"
        lines.append(f"{'  ' * depth}{node.sequent}   ({node.rule.value}{annotation})")
        for premise in node.premises:
            visit(premise, depth + 1)

    visit(proof.root, 0)
    return "\n".join(lines) + "\n"


class NodeModel(BaseModel):
    """One proof node in the JSON document."""
    id: str = Field(..., description="Tree-path id of the node")
    rule: Rule = Field(..., description="Rule name")
    antecedent: List[str] = Field(default_factory=list, description="Antecedent formulas in TPTP syntax")
    succedent: List[str] = Field(default_factory=list, description="Succedent formulas in TPTP syntax")
    principal: Optional[str] = Field(default=None, description="Principal formula")
    term: Optional[TermModel] = Field(default=None, description="Instance term of forallL/existsR")
    eigen: Optional[str] = Field(default=None, description="Eigenvariable constant of forallR/existsL")
    connection: Optional[List[str]] = Field(default=None, description="Certificate connection closed by an axiom")
    premises: List["NodeModel"] = Field(default_factory=list, description="Premise nodes")


NodeModel.model_rebuild()


class ProofDocument(BaseModel):
    kind: str = Field(default="sequent-proof", description="Document family member")
    version: int = Field(default=SCHEMA_VERSION, description="Schema version")
    mode: str = Field(..., description="intuitionistic or classical")
    formula: str = Field(..., description="End formula in TPTP FOF syntax")
    root: NodeModel


def _node_to_model(node: SequentNode) -> NodeModel:
    return NodeModel(
        id=node.id,
        rule=node.rule,
        antecedent=[print_formula(f) for f in node.sequent.antecedent],
        succedent=[print_formula(f) for f in node.sequent.succedent],
        principal=print_formula(node.principal) if node.principal is not None else None,
        term=term_to_model(node.term) if node.term is not None else None,
        eigen=node.eigen,
        connection=list(node.connection) if node.connection is not None else None,
        premises=[_node_to_model(p) for p in node.premises],
    )


def proof_to_json(proof: SequentProof) -> str:
    document = ProofDocument(mode=proof.mode.value, formula=print_formula(proof.formula),
                             root=_node_to_model(proof.root))
    return document.model_dump_json(indent=2)


def _parse_formula(text: str) -> Formula:
    statements = parse_statements(f"fof(f, axiom, {text}).")
    return statements[0].formula


def _node_from_model(model: NodeModel) -> SequentNode:
    return SequentNode(
        sequent=Sequent([_parse_formula(f) for f in model.antecedent],
                        [_parse_formula(f) for f in model.succedent]),
        rule=model.rule,
        principal=_parse_formula(model.principal) if model.principal is not None else None,
        term=term_from_model(model.term) if model.term is not None else None,
        eigen=model.eigen,
        premises=[_node_from_model(p) for p in model.premises],
        connection=tuple(model.connection) if model.connection is not None else None,
        id=model.id,
    )


def proof_from_json(text: str) -> SequentProof:
    """Parse a proof document; the result still has to pass check_sequent."""
    try:
        document = ProofDocument.model_validate_json(text)
        if document.kind != "sequent-proof":
            raise CertificateFormatError(f"Expected a sequent-proof document, got {document.kind!r}")
        if document.version != SCHEMA_VERSION:
            raise CertificateFormatError(f"Unsupported proof document version {document.version}")
        return SequentProof(_parse_formula(document.formula), Mode(document.mode),
                            _node_from_model(document.root))
    except (ValidationError, ValueError) as e:
        raise CertificateFormatError(f"Malformed proof document: {e}") from e
    except InputError as e:
        if isinstance(e, CertificateFormatError):
            raise
        raise CertificateFormatError(f"Malformed proof document: {e}") from e
