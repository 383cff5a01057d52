"""
Independent certificate checker.
Re-establishes complementarity, admissibility and spanning by direct path enumeration.
"""

import time
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from loguru import logger

from certificate.model import Certificate, Connection
from config.settings import get_settings
from matrix.paths import enumerate_paths
from matrix.positions import Matrix, Mode
from syntax.formulas import Formula
from unification.admissibility import ordering_violations
from utils.logger import log_check_result, log_performance_metric


@dataclass(frozen=True)
class Accepted:
    accepted = True

    @property
    def reason(self) -> str:
        return "accepted"


@dataclass(frozen=True)
class NonComplementary:
    pair: Connection
    detail: str
    accepted = False

    @property
    def reason(self) -> str:
        return f"connection {self.pair[0]} ~ {self.pair[1]} is not complementary: {self.detail}"


@dataclass(frozen=True)
class Circular:
    violations: Tuple[str, ...]
    accepted = False

    @property
    def reason(self) -> str:
        return "substitution is not admissible: " + "; ".join(self.violations)


@dataclass(frozen=True)
class UncoveredPath:
    witness: Tuple[str, ...]
    accepted = False

    @property
    def reason(self) -> str:
        return "path {" + ", ".join(self.witness) + "} contains no connection"


@dataclass(frozen=True)
class DanglingPosition:
    reference: str
    detail: str
    accepted = False

    @property
    def reason(self) -> str:
        return f"{self.reference}: {self.detail}"


@dataclass(frozen=True)
class Malformed:
    detail: str
    accepted = False

    @property
    def reason(self) -> str:
        return self.detail


CertificateVerdict = Union[Accepted, NonComplementary, Circular, UncoveredPath, DanglingPosition, Malformed]


def _check_references(cert: Certificate, matrix: Matrix) -> Optional[CertificateVerdict]:
    for position_id, count in cert.multiplicity.items():
        position = matrix.positions.get(position_id)
        if position is None or not position.is_multiplier:
            return DanglingPosition(position_id, "multiplicity entry names no multiplier position")
        if count < 1:
            return DanglingPosition(position_id, f"multiplicity {count} is below 1")
    for pair in cert.connections:
        for atom_id in pair:
            position = matrix.positions.get(atom_id)
            if position is None or not position.is_atom:
                return DanglingPosition(atom_id, "connection names no atom position of F^μ")
    for name in cert.sigma_q:
        if name not in matrix.variable_positions:
            return DanglingPosition(name, "σ_Q binds no quantifier variable of F^μ")
    owners = matrix.character_positions()
    for var in cert.sigma_j:
        if not var.variable:
            return DanglingPosition(var.name, "σ_J binds a prefix constant")
        if var not in owners and not var.owner.startswith("#"):
            return DanglingPosition(var.name, "σ_J binds no prefix variable of F^μ")
    return None


def _check_pair(cert: Certificate, matrix: Matrix, pair: Connection) -> Optional[CertificateVerdict]:
    a, b = matrix[pair[0]], matrix[pair[1]]
    if a.label.predicate != b.label.predicate:
        return NonComplementary(pair, "predicates differ")
    if a.polarity == b.polarity:
        return NonComplementary(pair, "polarities agree")
    if cert.sigma_q.apply_atom(a.label) != cert.sigma_q.apply_atom(b.label):
        return NonComplementary(pair, "terms differ under σ_Q")
    if cert.sigma_j.apply(a.prefix) != cert.sigma_j.apply(b.prefix):
        return NonComplementary(pair, "prefixes differ under σ_J")
    return None


def _check_spanning(cert: Certificate, matrix: Matrix, bound: int) -> Optional[CertificateVerdict]:
    for path in enumerate_paths(matrix, bound):
        if not any(a in path and b in path for a, b in cert.connections):
            witness = tuple(sorted(path, key=lambda pid: tuple(int(p) for p in pid.split(".")[1:])))
            return UncoveredPath(witness)
    return None


def check_certificate(formula: Formula, cert: Certificate, mode: Mode, path_bound: Optional[int] = None) -> CertificateVerdict:
    """Accept iff the certificate is a valid matrix proof of ``formula`` in ``mode``.

    Raises PathBoundExceeded when F^μ has more paths than the bound.
    """
    start = time.time()
    mode = Mode(mode)
    bound = get_settings().path_bound if path_bound is None else path_bound

    verdict: Optional[CertificateVerdict] = None
    if cert.mode != mode or cert.formula != formula or not cert.binds_formula:
        verdict = Malformed("certificate is bound to a different formula or mode")
    elif mode == Mode.CLASSICAL and len(cert.sigma_j):
        verdict = Malformed("classical certificate carries a prefix substitution")

    if verdict is None:
        matrix = cert.matrix()
        verdict = _check_references(cert, matrix)
        if verdict is None:
            violations = ordering_violations(matrix, cert.sigma_q, cert.sigma_j)
            if violations:
                verdict = Circular(tuple(violations))
        if verdict is None:
            for pair in cert.connections:
                verdict = _check_pair(cert, matrix, pair)
                if verdict is not None:
                    break
        if verdict is None:
            verdict = _check_spanning(cert, matrix, bound)

    verdict = verdict or Accepted()
    log_check_result("certificate", verdict.accepted, verdict.reason)
    log_performance_metric("check_certificate", (time.time() - start) * 1000,
                           {"connections": len(cert.connections)})
    if not verdict.accepted:
        logger.info(f"Certificate rejected: {verdict.reason}")
    return verdict
