"""
Matrix proof certificates: data model, JSON documents and the independent checker.
"""

from certificate.checker import (
    Accepted, Circular, DanglingPosition, Malformed, NonComplementary, UncoveredPath, CertificateVerdict,
    check_certificate,
)
from certificate.model import Certificate, Connection, formula_digest, normalize_connection
from certificate.mutation import certificate_mutants
from certificate.serialization import CertificateFormatError, deserialize, serialize

__all__ = [
    "Accepted", "Circular", "DanglingPosition", "Malformed", "NonComplementary", "UncoveredPath",
    "CertificateVerdict", "check_certificate", "Certificate", "Connection", "formula_digest",
    "normalize_connection", "certificate_mutants", "CertificateFormatError", "deserialize", "serialize",
]
