#!/usr/bin/env python3
"""
Benchmark script for the matrix prover.
Runs the random oracle corpus, the certificate mutation campaign and the bundled problem corpus.
"""

import argparse
import json
import random
import sys
import time
from pathlib import Path
from typing import Any, Dict, List

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from certificate import certificate_mutants, check_certificate
from matrix import Mode
from oracle import classical_valid, g4ip_valid, random_corpus
from search import SearchLimits, prove
from sequent import check_sequent, to_sequent
from syntax import ProverError, ResourceBoundError, is_propositional, parse_problem, print_formula
from utils.logger import logger, setup_logging


def _limits(mode: Mode, timeout: float, copies: int) -> SearchLimits:
    return SearchLimits.from_settings(mode=mode, timeout=timeout, copy_cap=copies)


def oracle_campaign(count: int = 500, seed: int = 7, timeout: float = 5.0, copies: int = 5) -> Dict[str, Any]:
    """Cross-check both modes against G4ip and truth tables on random propositional formulas."""
    start_time = time.time()
    results: Dict[str, Any] = {
        "formulas": 0,
        "intuitionistic_unsound": [],
        "classical_unsound": [],
        "monotonicity_violations": [],
        "g4ip_valid": 0,
        "g4ip_valid_proved": 0,
        "timeouts": 0,
        "errors": [],
    }

    for formula in random_corpus(seed, count):
        results["formulas"] += 1
        text = print_formula(formula)
        try:
            intuitionistic = prove(formula, _limits(Mode.INTUITIONISTIC, timeout, copies))
            classical = prove(formula, _limits(Mode.CLASSICAL, timeout, copies))
        except ProverError as e:
            logger.error(f"Prover failed on {text}: {e}", exc_info=True)
            results["errors"].append(text)
            continue

        valid_int = g4ip_valid(formula)
        valid_cls = classical_valid(formula)
        if intuitionistic.proved and not valid_int:
            results["intuitionistic_unsound"].append(text)
        if classical.proved and not valid_cls:
            results["classical_unsound"].append(text)
        if intuitionistic.proved and not classical.proved:
            results["monotonicity_violations"].append(text)
        if valid_int:
            results["g4ip_valid"] += 1
            if intuitionistic.proved:
                results["g4ip_valid_proved"] += 1
            elif intuitionistic.status.value == "timeout":
                results["timeouts"] += 1

    valid = results["g4ip_valid"]
    results["completeness"] = results["g4ip_valid_proved"] / valid if valid else 1.0
    results["processing_time"] = time.time() - start_time
    logger.info(f"Oracle campaign: {results['formulas']} formulas, completeness {results['completeness']:.3f}")
    return results


def mutation_campaign(problems: List[Path], seed: int = 11, rounds: int = 20, timeout: float = 10.0) -> Dict[str, Any]:
    """Mutate certificates of the proved corpus problems; every accepted mutant must be valid."""
    start_time = time.time()
    rng = random.Random(seed)
    results: Dict[str, Any] = {"mutants": 0, "rejected": 0, "accepted": [], "accepted_unverified": [],
                               "unchecked": 0, "by_kind": {}}

    certificates = []
    for path in problems:
        formula = parse_problem(path.read_text(encoding="utf-8"))
        for mode in (Mode.INTUITIONISTIC, Mode.CLASSICAL):
            outcome = prove(formula, _limits(mode, timeout, 5))
            if outcome.proved:
                certificates.append((path.stem, outcome.certificate))

    for _ in range(rounds):
        for name, cert in certificates:
            for kind, mutant in certificate_mutants(cert, rng):
                results["mutants"] += 1
                tally = results["by_kind"].setdefault(kind, {"total": 0, "rejected": 0})
                tally["total"] += 1
                try:
                    verdict = check_certificate(cert.formula, mutant, cert.mode)
                except ResourceBoundError:
                    results["unchecked"] += 1
                    continue
                if not verdict.accepted:
                    results["rejected"] += 1
                    tally["rejected"] += 1
                    continue
                label = f"{name}:{cert.mode.value}:{kind}"
                # Accepted mutants of propositional problems are confirmed by the oracles
                if is_propositional(cert.formula):
                    oracle = g4ip_valid if cert.mode == Mode.INTUITIONISTIC else classical_valid
                    if not oracle(cert.formula):
                        logger.error(f"Checker accepted an invalid mutant {label}")
                    results["accepted"].append(label)
                else:
                    results["accepted_unverified"].append(label)

    checked = results["mutants"] - results["unchecked"]
    results["rejection_rate"] = results["rejected"] / checked if checked else 1.0
    results["processing_time"] = time.time() - start_time
    logger.info(f"Mutation campaign: {results['mutants']} mutants, rejection rate {results['rejection_rate']:.3f}")
    return results


def problem_corpus(problems: List[Path], timeout: float = 60.0, copies: int = 5) -> Dict[str, Any]:
    """Run both modes end to end on every problem file."""
    start_time = time.time()
    rows = []
    for path in problems:
        formula = parse_problem(path.read_text(encoding="utf-8"))
        row: Dict[str, Any] = {"problem": path.stem}
        for mode in (Mode.INTUITIONISTIC, Mode.CLASSICAL):
            began = time.time()
            try:
                outcome = prove(formula, _limits(mode, timeout, copies))
                status = outcome.status.value
                if outcome.proved:
                    proof = to_sequent(formula, outcome.certificate, mode)
                    status = "theorem" if check_sequent(proof, mode).accepted else "sequent_rejected"
            except ProverError as e:
                logger.error(f"{path.stem} failed in {mode.value} mode: {e}", exc_info=True)
                status = "error"
            row[mode.value] = {"status": status, "seconds": round(time.time() - began, 3)}
        rows.append(row)

    monotone = all(r["classical"]["status"] == "theorem" for r in rows if r["intuitionistic"]["status"] == "theorem")
    return {"problems": rows, "monotone": monotone, "processing_time": time.time() - start_time}


def main():
    """Main function for command-line usage."""
    parser = argparse.ArgumentParser(description="Run the prover benchmark campaigns")
    parser.add_argument("--problems", default=str(project_root / "data" / "problems"),
                        help="Directory of TPTP problem files")
    parser.add_argument("--formulas", type=int, default=500, help="Random formulas in the oracle campaign (default: 500)")
    parser.add_argument("--rounds", type=int, default=20, help="Mutation rounds per certificate (default: 20)")
    parser.add_argument("--seed", type=int, default=7, help="Seed for the random campaigns (default: 7)")
    parser.add_argument("--timeout", type=float, default=5.0, help="Per-formula timeout in the oracle campaign")
    parser.add_argument("--skip", nargs="*", default=[], choices=["oracle", "mutation", "corpus"],
                        help="Campaigns to skip")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default="INFO",
                        help="Logging level (default: INFO)")
    args = parser.parse_args()

    setup_logging(level=args.log_level)

    problems = sorted(Path(args.problems).glob("*.p"))
    summary: Dict[str, Any] = {}
    try:
        if "oracle" not in args.skip:
            summary["oracle"] = oracle_campaign(args.formulas, args.seed, args.timeout)
        if "mutation" not in args.skip:
            summary["mutation"] = mutation_campaign(problems, args.seed, args.rounds)
        if "corpus" not in args.skip:
            summary["corpus"] = problem_corpus(problems)
    except Exception as e:
        logger.error(f"Benchmark failed: {str(e)}", exc_info=True)
        print(json.dumps({"status": "failed", "error": str(e), **summary}, indent=2, default=str))
        sys.exit(1)

    print(json.dumps({"status": "completed", **summary}, indent=2, default=str))


if __name__ == "__main__":
    main()
