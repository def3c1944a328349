"""
Command handlers behind main.py.

Each handler takes already-parsed arguments and returns a CommandResult;
main.py renders it and maps exceptions to exit codes.
"""

from typing import Optional, Sequence

from calculus.derivative import INCONCLUSIVE, gh_difference_quotient, gh_gradient, gh_partial, gradient_exists
from cli.rendering import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    CommandResult,
    gradient_text,
    interval_text,
    report_text,
)
from config.logging_config import setup_logger
from config.run_config import RunConfig
from functions.parser import parse
from intervals.core import Interval, IntervalVector, gh_diff, h_diff
from intervals.product import RealVector, ghosh_dot, gh_product

logger = setup_logger(__name__)


def _list(value: Optional[Interval]):
    return value.to_list() if value is not None else None


def cmd_ghdiff(a: Sequence[float], b: Sequence[float]) -> CommandResult:
    """a ⊖_gH b, noting whether the Hukuhara difference exists too."""
    first, second = Interval(*a), Interval(*b)
    result = gh_diff(first, second)
    hukuhara = h_diff(first, second)
    note = "H-difference defined" if hukuhara is not None else "H-difference undefined"
    return CommandResult(
        text=f"{result} ({note})",
        data={"gh_diff": result.to_list(), "h_diff": _list(hukuhara)},
    )


def cmd_hdiff(a: Sequence[float], b: Sequence[float]) -> CommandResult:
    result = h_diff(Interval(*a), Interval(*b))
    return CommandResult(text=interval_text(result), data={"h_diff": _list(result)})


def cmd_ghproduct(v: Sequence[float], flat_intervals: Sequence[float], compare: bool = False) -> CommandResult:
    vector = RealVector(tuple(v))
    intervals = IntervalVector.from_flat(flat_intervals)
    result = gh_product(vector, intervals)
    if not compare:
        return CommandResult(text=str(result), data={"gh_product": result.to_list()})
    ghosh = ghosh_dot(vector, intervals)
    return CommandResult(
        text=f"gH: {result}\nGhosh: {ghosh}",
        data={"gh_product": result.to_list(), "ghosh": ghosh.to_list()},
    )


def cmd_partial(config: RunConfig, point: Sequence[float], i: int) -> CommandResult:
    spec = parse(config.spec_source())
    report = gh_partial(spec, point, i, config.plan())
    logger.info("partial along x%d: %s", i, report.status)
    exit_code = EXIT_INCONCLUSIVE if report.status == INCONCLUSIVE else EXIT_OK
    return CommandResult(text=report_text(report), data=report.to_dict(full=True), exit_code=exit_code)


def cmd_gradient(config: RunConfig, point: Sequence[float]) -> CommandResult:
    spec = parse(config.spec_source())
    reports = gh_gradient(spec, point, config.plan())
    inconclusive = any(r.status == INCONCLUSIVE for r in reports)
    logger.info("gradient at %s: %s", tuple(point), [r.status for r in reports])
    return CommandResult(
        text=gradient_text(reports),
        data={
            "exists": gradient_exists(reports),
            "components": [r.to_dict(full=False) for r in reports],
        },
        exit_code=EXIT_INCONCLUSIVE if inconclusive else EXIT_OK,
    )


def cmd_quotient(
    config: RunConfig,
    point: Sequence[float],
    i: int,
    t: float,
    lower_branch: Optional[str] = None,
    upper_branch: Optional[str] = None,
) -> CommandResult:
    spec = parse(config.spec_source())
    result = gh_difference_quotient(spec, point, i, t, lower_branch, upper_branch)
    return CommandResult(
        text=str(result),
        data={
            "quotient": result.to_list(),
            "coordinate": i,
            "point": [float(x) for x in point],
            "t": t,
            "lower_branch": lower_branch,
            "upper_branch": upper_branch,
        },
    )
