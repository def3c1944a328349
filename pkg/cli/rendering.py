"""Text and JSON rendering of command results."""

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from calculus.derivative import EXISTS, DerivativeReport
from calculus.quotients import QuotientProfile
from functions.ivf import LOWER, UPPER
from intervals.core import Interval, format_number

EXIT_OK = 0
EXIT_REPLAY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_EVALUATION = 3
EXIT_INCONCLUSIVE = 4


@dataclass
class CommandResult:
    """What a command produced: a text rendering, a JSON payload and an exit code."""
    text: str
    data: Dict[str, Any]
    exit_code: int = EXIT_OK


def to_json(data: Any) -> str:
    """Canonical JSON; loading and dumping it again gives the same bytes."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)


def render(result: CommandResult, output_format: str) -> str:
    if output_format == "json":
        return to_json(result.data)
    return result.text


def interval_text(value: Optional[Interval]) -> str:
    return "undefined" if value is None else str(value)


def _number(value: Optional[float]) -> str:
    return "none" if value is None else format_number(round(value, 6))


def profile_lines(profile: QuotientProfile) -> List[str]:
    limits = ", ".join(f"{s.label}={_number(s.limit)}" for s in profile.series) or "no branches"
    clusters = ", ".join(_number(v) for v in profile.cluster_set)
    line = f"  {profile.which:<5} {profile.side:<5} one-sided={_number(profile.one_sided())}  limits: {limits}  clusters: {{{clusters}}}"
    lines = [line]
    if profile.note:
        lines.append(f"    note: {profile.note}")
    return lines


def report_text(report: DerivativeReport) -> str:
    lines = [report.headline()]
    for which in (LOWER, UPPER):
        for profile in report.diagnostics.get(which, {}).values():
            lines.extend(profile_lines(profile))
    for side, extrema in report.pairing.items():
        lines.append(
            f"  paired {side:<5} ({extrema.convention}) min->{_number(extrema.min_limit)} "
            f"max->{_number(extrema.max_limit)}"
        )
    return "\n".join(lines)


def rounded_interval(value: Interval) -> str:
    return f"[{_number(value.lo)}, {_number(value.hi)}]"


def gradient_text(reports: Sequence[DerivativeReport]) -> str:
    components = [rounded_interval(r.value) if r.status == EXISTS else r.status for r in reports]
    lines = [f"({', '.join(components)})"]
    for report in reports:
        lines.append(f"x{report.coordinate}: {report.headline()}")
    return "\n".join(lines)
