"""
Shared fixtures for the prover test suite.
"""

import os
import random
from pathlib import Path

os.environ.setdefault("MATRIXPROVE_ENVIRONMENT", "test")
os.environ.setdefault("MATRIXPROVE_LOG_LEVEL", "ERROR")

import pytest

from matrix import Mode
from oracle import random_formula
from search import SearchLimits
from syntax import parse_problem

PROBLEMS_DIR = Path(__file__).parent.parent / "data" / "problems"


@pytest.fixture
def problems_dir():
    """Directory of the bundled TPTP problems"""
    return PROBLEMS_DIR


@pytest.fixture
def load_problem():
    """Parse a bundled problem by file stem"""
    def load(name: str):
        return parse_problem((PROBLEMS_DIR / f"{name}.p").read_text(encoding="utf-8"))
    return load


@pytest.fixture
def parse():
    """Parse a single conjecture given as FOF formula text"""
    def parse_formula(text: str):
        return parse_problem(f"fof(goal, conjecture, {text}).")
    return parse_formula


@pytest.fixture
def intuitionistic_limits():
    return SearchLimits(mode=Mode.INTUITIONISTIC, timeout=10.0)


@pytest.fixture
def classical_limits():
    return SearchLimits(mode=Mode.CLASSICAL, timeout=10.0)


@pytest.fixture
def random_formulas():
    """Deterministic stream of small random propositional formulas"""
    def generate(seed: int, count: int, atoms: int = 3, connectives: int = 6):
        rng = random.Random(seed)
        return [random_formula(rng, rng.randint(1, atoms), rng.randint(1, connectives)) for _ in range(count)]
    return generate
