"""
Logging utilities for the matrix prover.
Provides structured logging with different output formats and levels.
"""

import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from loguru import logger
from config.settings import get_settings, is_test


def _json_sink_format(record: Dict[str, Any]) -> str:
    payload = {
        "timestamp": record["time"].isoformat(),
        "level": record["level"].name,
        "message": record["message"],
        "module": record["module"],
        "function": record["function"],
        "line": record["line"],
        "extra": record["extra"],
    }
    # loguru formats the returned string again, so braces must be escaped
    return json.dumps(payload, default=str).replace("{", "{{").replace("}", "}}") + "\n"


def setup_logging(level: Optional[str] = None, json_format: Optional[bool] = None) -> None:
    """Setup logging configuration for the prover.

    Logs go to stderr so that stdout stays reserved for the SZS status line
    and the requested artifacts.
    """
    settings = get_settings()
    level = (level or settings.log_level).upper()
    if json_format is None:
        json_format = settings.log_format == "json"

    # Remove default handler
    logger.remove()

    if json_format:
        logger.add(sys.stderr, format=_json_sink_format, level=level, colorize=False)
    else:
        logger.add(
            sys.stderr,
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
                   "<level>{level: <8}</level> | "
                   "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
                   "<level>{message}</level>",
            level=level,
            colorize=True,
        )

    # no log files while the test suite runs
    if settings.log_dir and not is_test():
        log_dir = Path(settings.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_dir / "prover.log",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} | {message}",
            level="DEBUG",
            rotation="50 MB",
            retention="7 days",
            compression="zip",
        )

        # Search traces are large; keep them apart
        logger.add(
            log_dir / "trace.log",
            format="{time:YYYY-MM-DD HH:mm:ss} | {message}",
            level="DEBUG",
            filter=lambda record: "trace" in record["extra"],
            rotation="100 MB",
            retention="1 day",
        )


def log_performance_metric(operation: str, duration_ms: float, metadata: Dict[str, Any] = None) -> None:
    """Log performance metrics for a pipeline phase."""
    log_data = {
        "operation": operation,
        "duration_ms": duration_ms,
        "timestamp": datetime.now().isoformat(),
    }

    if metadata:
        log_data.update(metadata)

    logger.bind(metrics=True, data=log_data).info(f"Performance: {operation} took {duration_ms:.2f}ms")


def log_search_event(kind: str, details: Dict[str, Any] = None) -> None:
    """Log one search trace event (extension, reduction, copy, ...)."""
    log_data = {"event": kind}
    if details:
        log_data.update(details)

    logger.bind(trace=True, data=log_data).debug(f"Search: {kind} {details or ''}")


def log_check_result(checker: str, accepted: bool, reason: Optional[str] = None) -> None:
    """Log the verdict of one of the trusted checkers."""
    if accepted:
        logger.bind(check=True).debug(f"Check: {checker} accepted")
    else:
        logger.bind(check=True, reason=reason).warning(f"Check: {checker} rejected - {reason}")


def log_pipeline_status(problem: str, status: str, details: Dict[str, Any] = None) -> None:
    """Log the final SZS status of one pipeline run."""
    log_data = {
        "problem": problem,
        "status": status,
        "timestamp": datetime.now().isoformat(),
    }

    if details:
        log_data.update(details)

    logger.bind(pipeline=True, data=log_data).info(f"Pipeline: {problem} - {status}")


# Export logger instance for use in other modules
__all__ = ["logger", "setup_logging", "log_performance_metric", "log_search_event",
           "log_check_result", "log_pipeline_status"]
