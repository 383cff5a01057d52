"""
Search limits, statistics and outcomes.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from certificate.model import Certificate
from config.settings import get_settings
from matrix.positions import Mode


@dataclass(frozen=True)
class SearchLimits:
    """Bounds for one prove() call. ``timeout`` of None means unlimited.

    ``depth_start`` and ``max_depth`` bound the length of the active path.
    """
    mode: Mode = Mode.INTUITIONISTIC
    depth_start: int = 1
    max_depth: int = 32
    copy_cap: int = 5
    prefix_alternative_cap: int = 16
    timeout: Optional[float] = 60.0
    restricted_backtracking: bool = False
    trace: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        for name in ("depth_start", "max_depth", "copy_cap", "prefix_alternative_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.depth_start > self.max_depth:
            raise ValueError("depth_start must not exceed max_depth")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")

    @classmethod
    def from_settings(cls, **overrides: Any) -> "SearchLimits":
        settings = get_settings()
        values = dict(
            mode=Mode(settings.mode),
            depth_start=settings.depth_start,
            max_depth=settings.depth_max,
            copy_cap=settings.copy_cap,
            prefix_alternative_cap=settings.prefix_alternative_cap,
            timeout=settings.timeout_seconds,
            restricted_backtracking=settings.restricted_backtracking,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class OutcomeStatus(str, Enum):
    PROVED = "proved"
    EXHAUSTED_BOUNDS = "exhausted_bounds"
    TIMEOUT = "timeout"


@dataclass
class SearchStatistics:
    rounds: int = 0
    final_depth: int = 0
    branches: int = 0
    connection_attempts: int = 0
    prefix_alternatives: int = 0
    copies_added: int = 0
    backtracks: int = 0
    elapsed_ms: float = 0.0

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    details: Dict[str, Any]


@dataclass
class SearchOutcome:
    status: OutcomeStatus
    certificate: Optional[Certificate] = None
    statistics: SearchStatistics = field(default_factory=SearchStatistics)
    trace: List[TraceEvent] = field(default_factory=list)
    reason: str = ""

    @property
    def proved(self) -> bool:
        return self.status == OutcomeStatus.PROVED
