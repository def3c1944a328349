"""
Shared test fixtures for the interval calculus suite.
"""

import pytest
from pathlib import Path
from dataclasses import dataclass

from calculus.quotients import SamplingPlan
from corpus.corpus import get_spec
from functions.ivf import IvfSpec
from functions.parser import parse

# Test directories
TESTS_DIR = Path(__file__).parent
FIXTURES_DIR = TESTS_DIR / "fixtures"

# Endpoint comparisons against published values
TOL = 2e-4


# ===== Fixture file helpers =====

def load_fixture(name: str) -> str:
    """Load a fixture file by relative name."""
    path = FIXTURES_DIR / name
    if not path.exists():
        raise FileNotFoundError(f"Fixture not found: {path}")
    return path.read_text(encoding='utf-8')


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / name


# ===== Plans and specs =====

@pytest.fixture
def plan():
    """The default sampling plan (t0=1e-2, ratio=0.5, count=32)."""
    return SamplingPlan(t0=1e-2, ratio=0.5, count=32, limit_tol=1e-5, cluster_tol=1e-4)


@pytest.fixture
def corpus_spec():
    """Look up a bundled corpus spec by name."""
    def _get(name: str) -> IvfSpec:
        return get_spec(name)
    return _get


@pytest.fixture
def abs_kink() -> IvfSpec:
    return get_spec("abs_kink")


@pytest.fixture
def complementary_left() -> IvfSpec:
    return get_spec("complementary_left")


@pytest.fixture
def parabola() -> IvfSpec:
    """[x1^2, x1^2 + 1] on R^2."""
    return parse("n=2; L: x1^2; U: x1^2 + 1")


# ===== CLI runner =====

@dataclass
class CliResult:
    exit_code: int
    stdout: str
    stderr: str


@pytest.fixture
def run_cli(capsys):
    """Run main() with an argv list and capture its output."""
    from main import main

    def _run(*argv: str) -> CliResult:
        exit_code = main(list(argv))
        captured = capsys.readouterr()
        return CliResult(exit_code, captured.out, captured.err)
    return _run
