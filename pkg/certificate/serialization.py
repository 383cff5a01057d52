"""
Certificate (de)serialization to the versioned JSON document format.
"""

from typing import Optional

from loguru import logger
from pydantic import ValidationError

from certificate.model import Certificate, formula_digest, normalize_connection
from certificate.schema import (
    SCHEMA_VERSION, CertificateDocument, char_from_name, term_from_model, term_to_model,
)
from matrix.positions import Mode
from syntax.errors import InputError
from syntax.formulas import Formula
from syntax.printer import print_formula
from syntax.tptp_parser import parse_problem
from unification.prefix_unifier import PrefixSubstitution
from unification.term_unifier import TermSubstitution


class CertificateFormatError(InputError):
    """Malformed certificate text, unknown schema version or digest mismatch."""


def to_document(cert: Certificate) -> CertificateDocument:
    sigma_q = cert.sigma_q.normalized()
    sigma_j = cert.sigma_j.normalized()
    return CertificateDocument(
        mode=cert.mode.value,
        formula=print_formula(cert.formula),
        formula_hash=cert.formula_hash,
        multiplicity={k: cert.multiplicity[k] for k in sorted(cert.multiplicity)},
        sigma_q={name: term_to_model(sigma_q.get(name)) for name in sorted(sigma_q)},
        sigma_j={
            var.name: [c.name for c in sigma_j.get(var)]
            for var in sorted(sigma_j, key=lambda v: v.name)
        },
        connections=[list(pair) for pair in cert.connections],
    )


def serialize(cert: Certificate) -> str:
    """Stable JSON text for a certificate."""
    return to_document(cert).model_dump_json(indent=2)


def _parse_formula(text: str) -> Formula:
    return parse_problem(f"fof(goal, conjecture, {text}).")


def from_document(document: CertificateDocument, formula: Optional[Formula] = None) -> Certificate:
    if document.kind != "certificate":
        raise CertificateFormatError(f"Expected a certificate document, got {document.kind!r}")
    if document.version != SCHEMA_VERSION:
        raise CertificateFormatError(
            f"Unsupported certificate version {document.version} (expected {SCHEMA_VERSION})"
        )
    try:
        mode = Mode(document.mode)
        parsed = _parse_formula(document.formula)
        sigma_q = TermSubstitution({k: term_from_model(v) for k, v in document.sigma_q.items()})
        bindings = {}
        fresh = 0
        for name, value in document.sigma_j.items():
            var = char_from_name(name)
            image = tuple(char_from_name(c) for c in value)
            bindings[var] = image
            for char in (var,) + image:
                if char.owner.startswith("#"):
                    fresh = max(fresh, int(char.owner[1:]) + 1)
        connections = []
        for pair in document.connections:
            if len(pair) != 2:
                raise ValueError(f"connection {pair} is not a pair")
            connections.append(normalize_connection(pair[0], pair[1]))
    except (ValueError, InputError) as e:
        raise CertificateFormatError(f"Malformed certificate: {e}") from e

    digest = formula_digest(parsed, mode)
    if digest != document.formula_hash:
        raise CertificateFormatError("Certificate digest does not match its formula and mode")
    if formula is not None and formula_digest(formula, mode) != digest:
        raise CertificateFormatError("Certificate was produced for a different formula")

    return Certificate(
        formula=parsed if formula is None else formula,
        mode=mode,
        multiplicity=dict(document.multiplicity),
        sigma_q=sigma_q,
        sigma_j=PrefixSubstitution(bindings, fresh),
        connections=tuple(connections),
        formula_hash=digest,
    )


def deserialize(text: str, formula: Optional[Formula] = None) -> Certificate:
    """Parse certificate JSON; ``formula``, when given, must match the embedded digest."""
    try:
        document = CertificateDocument.model_validate_json(text)
    except ValidationError as e:
        logger.error(f"Certificate does not match the schema: {e}")
        raise CertificateFormatError(f"Malformed certificate: {e}") from e
    return from_document(document, formula)
