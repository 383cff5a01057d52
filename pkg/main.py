"""
Main entry point for the matrix prover.
Runs parse, certificate search, certificate check, sequent translation and sequent check, and reports an SZS status.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from loguru import logger

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from certificate import check_certificate, deserialize, serialize
from config.settings import VERSION, get_settings
from matrix import Mode, build_matrix, dump_matrix
from oracle import classical_valid, g4ip_valid
from search import OutcomeStatus, SearchLimits, prove, prove_portfolio
from sequent import OrderingDeadlock, check_sequent, proof_from_json, proof_to_json, render_proof, to_sequent
from syntax import InputError, InternalCheckError, ResourceBoundError, is_propositional, parse_problem
from utils.logger import log_pipeline_status, setup_logging

OUTPUT_CHOICES = ("cert", "sequent", "both", "status")

EXIT_CODES = {"Theorem": 0, "GaveUp": 1, "Timeout": 1}
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ERROR = 3


@dataclass
class RunConfig:
    """One prover invocation; ``None`` limits fall back to the settings."""
    input: Optional[str] = None
    classical: bool = False
    timeout: Optional[float] = None
    depth: Optional[int] = None
    max_depth: Optional[int] = None
    copies: Optional[int] = None
    output: str = "status"
    check: bool = False
    trace: bool = False
    oracle: bool = False
    portfolio: bool = False
    out_dir: Optional[str] = None
    dump_matrix: bool = False

    @property
    def mode(self) -> Mode:
        return Mode.CLASSICAL if self.classical else Mode.INTUITIONISTIC

    def limits(self) -> SearchLimits:
        return SearchLimits.from_settings(
            mode=self.mode,
            timeout=self.timeout,
            depth_start=self.depth,
            max_depth=self.max_depth,
            copy_cap=self.copies,
            trace=self.trace,
        )


@dataclass
class RunReport:
    name: str
    status: str
    exit_code: int
    artifacts: Dict[str, str] = field(default_factory=dict)
    comments: List[str] = field(default_factory=list)


def _problem_name(source: Optional[str]) -> str:
    return "stdin" if source in (None, "-") else Path(source).stem


def _read_input(source: Optional[str]) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def _oracle_contradiction(formula, mode: Mode, proved: bool) -> Optional[str]:
    """Compare a propositional verdict against the decision procedures."""
    if not is_propositional(formula):
        return None
    valid = g4ip_valid(formula) if mode == Mode.INTUITIONISTIC else classical_valid(formula)
    if proved and not valid:
        return f"oracle reports the formula invalid in {mode.value} logic"
    if not proved and valid:
        logger.warning("Oracle reports a valid formula the search did not prove")
    return None


def _pipeline(config: RunConfig, name: str, text: str) -> RunReport:
    formula = parse_problem(text)
    mode = config.mode
    limits = config.limits()
    logger.info(f"Proving {name} in {mode.value} mode")

    report = RunReport(name, "GaveUp", EXIT_CODES["GaveUp"])
    if config.dump_matrix:
        report.artifacts["matrix.txt"] = dump_matrix(build_matrix(formula, mode))

    outcome = prove_portfolio(formula, limits) if config.portfolio else prove(formula, limits)
    if config.trace:
        report.comments.extend(f"% trace {event.kind} {event.details}" for event in outcome.trace)
    report.comments.append(f"% statistics {outcome.statistics.as_dict()}")

    if not outcome.proved:
        if config.oracle:
            _oracle_contradiction(formula, mode, proved=False)
        report.status = "Timeout" if outcome.status == OutcomeStatus.TIMEOUT else "GaveUp"
        report.exit_code = EXIT_CODES[report.status]
        if outcome.reason:
            report.comments.append(f"% reason {outcome.reason}")
        return report

    certificate = outcome.certificate
    cert_text = serialize(certificate)
    if config.check:
        try:
            certificate = deserialize(cert_text, formula)
        except InputError as e:
            raise InternalCheckError(f"serialized certificate does not reload: {e}") from e
    verdict = check_certificate(formula, certificate, mode)
    if not verdict.accepted:
        raise InternalCheckError(f"certificate rejected: {verdict.reason}")

    proof = to_sequent(formula, certificate, mode)
    proof_text = proof_to_json(proof)
    if config.check:
        try:
            proof = proof_from_json(proof_text)
        except InputError as e:
            raise InternalCheckError(f"serialized sequent proof does not reload: {e}") from e
    sequent_verdict = check_sequent(proof, mode)
    if not sequent_verdict.accepted:
        raise InternalCheckError(f"sequent proof rejected at {sequent_verdict.node}: {sequent_verdict.reason}")

    if config.oracle:
        contradiction = _oracle_contradiction(formula, mode, proved=True)
        if contradiction:
            raise InternalCheckError(contradiction)

    if config.output in ("cert", "both"):
        report.artifacts["cert.json"] = cert_text
    if config.output in ("sequent", "both"):
        report.artifacts["proof.json"] = proof_text
        report.artifacts["proof.txt"] = render_proof(proof)

    report.status = "Theorem"
    report.exit_code = EXIT_CODES["Theorem"]
    return report


def _emit(report: RunReport, out_dir: Optional[str]) -> None:
    print(f"% SZS status {report.status} for {report.name}")
    for line in report.comments:
        print(line)
    if out_dir:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for suffix, content in report.artifacts.items():
            target = directory / f"{report.name}.{suffix}"
            target.write_text(content + "\n", encoding="utf-8")
            print(f"% wrote {target}")
    else:
        for suffix, content in report.artifacts.items():
            print(f"% SZS output start {suffix} for {report.name}")
            print(content)
            print(f"% SZS output end {suffix} for {report.name}")


def run(config: RunConfig) -> int:
    """Run one problem end to end; returns the process exit code."""
    name = _problem_name(config.input)
    try:
        text = _read_input(config.input)
        report = _pipeline(config, name, text)
    except (OSError, InputError, ValueError) as e:
        logger.error(f"Input error for {name}: {e}")
        report = RunReport(name, "Error", EXIT_INPUT_ERROR, comments=[f"% error {e}"])
    except (InternalCheckError, OrderingDeadlock) as e:
        logger.error(f"Internal check failure on {name}: {e}")
        report = RunReport(name, "Error", EXIT_INTERNAL_ERROR, comments=[f"% error {e}"])
    except ResourceBoundError as e:
        logger.warning(f"Resource bound hit on {name}: {e}")
        report = RunReport(name, "GaveUp", EXIT_CODES["GaveUp"], comments=[f"% reason {e}"])
    except Exception as e:
        logger.error(f"Unexpected failure on {name}: {e}", exc_info=True)
        report = RunReport(name, "Error", EXIT_INTERNAL_ERROR, comments=[f"% error {e}"])

    log_pipeline_status(name, report.status, {"exit_code": report.exit_code, "mode": config.mode.value})
    _emit(report, config.out_dir)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="matrixprove",
        description="Intuitionistic first-order prover: matrix certificate search and sequent proof reconstruction",
    )
    parser.add_argument("input", nargs="?", default=None, help="TPTP FOF problem file (default: stdin)")
    parser.add_argument("--classical", action="store_true", help="Prove in classical instead of intuitionistic logic")
    parser.add_argument("--timeout", type=float, help=f"Search timeout in seconds (default: {settings.timeout_seconds})")
    parser.add_argument("--depth", type=int, help=f"Initial active-path bound (default: {settings.depth_start})")
    parser.add_argument("--max-depth", type=int, help=f"Maximum active-path bound (default: {settings.depth_max})")
    parser.add_argument("--copies", type=int, help=f"Copy cap per multiplier position (default: {settings.copy_cap})")
    parser.add_argument("--output", choices=OUTPUT_CHOICES, default="status", help="Artifacts to print after the status line")
    parser.add_argument("--check", action="store_true", help="Reload serialized artifacts and re-check them before reporting")
    parser.add_argument("--trace", action="store_true", help="Print the search trace")
    parser.add_argument("--oracle", action="store_true", help="Cross-check propositional results against the decision procedures")
    parser.add_argument("--portfolio", action="store_true", help="Run plain, restricted and classical pruning searches concurrently")
    parser.add_argument("--out-dir", help="Write artifacts to files in this directory instead of stdout")
    parser.add_argument("--dump-matrix", action="store_true", help="Include the matrix debug dump as an artifact")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level")
    parser.add_argument("--json-logs", action="store_true", help="Emit logs as JSON lines on stderr")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level, json_format=True if args.json_logs else None)

    config = RunConfig(
        input=args.input,
        classical=args.classical,
        timeout=args.timeout,
        depth=args.depth,
        max_depth=args.max_depth,
        copies=args.copies,
        output=args.output,
        check=args.check,
        trace=args.trace,
        oracle=args.oracle,
        portfolio=args.portfolio,
        out_dir=args.out_dir,
        dump_matrix=args.dump_matrix,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
