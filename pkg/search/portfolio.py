"""
Strategy portfolio: independent searches on worker threads under one cancellation token.
"""

import threading
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import replace
from typing import List, Optional, Sequence

from loguru import logger

from matrix.positions import Mode
from search.limits import OutcomeStatus, SearchLimits, SearchOutcome
from search.prover import prove
from syntax.formulas import Formula


def default_strategies(limits: SearchLimits) -> List[SearchLimits]:
    """Plain search, restricted backtracking and, for intuitionistic runs, a classical pruner."""
    strategies = [limits, replace(limits, restricted_backtracking=not limits.restricted_backtracking)]
    if limits.mode == Mode.INTUITIONISTIC:
        strategies.append(replace(limits, mode=Mode.CLASSICAL, restricted_backtracking=False))
    return strategies


def prove_portfolio(formula: Formula, limits: Optional[SearchLimits] = None,
                    strategies: Optional[Sequence[SearchLimits]] = None) -> SearchOutcome:
    """Run the strategies concurrently; the first Proved outcome in the target mode wins.

    A classical strategy that exhausts its bounds refutes the target mode as
    well, since an intuitionistic proof is also a classical one under the
    same limits. Losing searches are cancelled at their next backtrack point.
    """
    limits = limits or SearchLimits.from_settings()
    strategies = list(strategies) if strategies is not None else default_strategies(limits)
    cancel = threading.Event()
    outcomes: List[Optional[SearchOutcome]] = [None] * len(strategies)
    decided: Optional[SearchOutcome] = None

    with ThreadPoolExecutor(max_workers=len(strategies), thread_name_prefix="portfolio") as pool:
        futures = {pool.submit(prove, formula, s, cancel): i for i, s in enumerate(strategies)}
        remaining = set(futures)
        while remaining and decided is None:
            done, remaining = wait(remaining, return_when=FIRST_COMPLETED)
            for future in sorted(done, key=futures.get):
                index = futures[future]
                strategy = strategies[index]
                try:
                    outcome = future.result()
                except Exception as e:
                    logger.error(f"Portfolio strategy {index} failed: {e}", exc_info=True)
                    cancel.set()
                    raise
                outcomes[index] = outcome
                if strategy.mode == limits.mode and outcome.proved:
                    decided = outcome
                elif (strategy.mode == Mode.CLASSICAL and limits.mode == Mode.INTUITIONISTIC
                      and outcome.status == OutcomeStatus.EXHAUSTED_BOUNDS
                      and not strategy.restricted_backtracking):
                    decided = SearchOutcome(
                        OutcomeStatus.EXHAUSTED_BOUNDS, statistics=outcome.statistics,
                        reason="no classical proof within the same bounds",
                    )
                if decided is not None:
                    logger.info(f"Portfolio decided by strategy {index}: {decided.status.value}")
                    break
        cancel.set()

    if decided is not None:
        return decided
    for strategy, outcome in zip(strategies, outcomes):
        if strategy == limits and outcome is not None:
            return outcome
    same_mode = [o for s, o in zip(strategies, outcomes) if o is not None and s.mode == limits.mode]
    return (same_mode or [o for o in outcomes if o is not None])[0]
