"""
Regression replay over the worked-example corpus.

Products and differences of integer or dyadic data must match exactly;
derivative values are compared within the comparison tolerance.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from calculus.derivative import DerivativeReport, gh_gradient, gh_partial
from calculus.quotients import SamplingPlan
from cli.rendering import EXIT_OK, EXIT_REPLAY_FAILED, CommandResult
from config import COMPARISON_TOL
from config.logging_config import setup_logger
from config.paths import PATHS
from corpus.corpus import get_spec, load_cases
from intervals.core import Interval, IntervalVector, gh_diff, h_diff, is_close
from intervals.product import RealVector, ghosh_dot, gh_product, is_gh_orthogonal, linearity_holds

logger = setup_logger(__name__)

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class CaseResult:
    name: str
    kind: str
    expected: Any
    got: Any
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "expected": self.expected,
            "got": self.got,
            "passed": self.passed,
            "detail": self.detail,
        }


def _interval(pair) -> Interval:
    return Interval(*pair)


def _as_list(value: Optional[Interval]):
    return value.to_list() if value is not None else None


def _exact(expected, got: Optional[Interval]) -> bool:
    if expected is None or got is None:
        return expected is None and got is None
    return _interval(expected) == got


def _close_pair(expected, got, tol: float) -> bool:
    if expected is None or got is None:
        return expected is None and got is None
    if len(expected) != len(got):
        return False
    return all(abs(e - g) <= tol for e, g in zip(expected, got))


def _report_matches(expected: Dict, report: DerivativeReport, tol: float) -> List[str]:
    """Mismatches between an expected report excerpt and the computed report."""
    problems = []
    if expected.get("status") != report.status:
        problems.append(f"status {report.status} (expected {expected.get('status')})")
    if "value" in expected:
        want = expected["value"]
        if report.value is None or want is None:
            if (report.value is None) != (want is None):
                problems.append(f"value {report.value} (expected {want})")
        elif not is_close(_interval(want), report.value, tol):
            problems.append(f"value {report.value} (expected {_interval(want)})")
    if "case" in expected and expected["case"] != report.case_tag:
        problems.append(f"case {report.case_tag} (expected {expected['case']})")
    for key in ("right_pair", "left_pair"):
        if key in expected and not _close_pair(expected[key], getattr(report, key), tol):
            problems.append(f"{key} {getattr(report, key)} (expected {expected[key]})")
    return problems


def _report_summary(report: DerivativeReport) -> Dict:
    return {
        "status": report.status,
        "value": _as_list(report.value),
        "case": report.case_tag,
        "right_pair": list(report.right_pair) if report.right_pair else None,
        "left_pair": list(report.left_pair) if report.left_pair else None,
    }


def run_case(case: Dict, plan: SamplingPlan, specs_dir: Optional[Path] = None, tol: float = COMPARISON_TOL) -> CaseResult:
    name, kind, expected = case["name"], case["kind"], case["expected"]

    def result(got, passed: bool, detail: str = "") -> CaseResult:
        return CaseResult(name, kind, expected, got, passed, detail)

    if kind in ("ghdiff", "hdiff"):
        operation = gh_diff if kind == "ghdiff" else h_diff
        got = operation(_interval(case["a"]), _interval(case["b"]))
        return result(_as_list(got), _exact(expected, got))

    if kind in ("ghproduct", "ghosh"):
        operation = gh_product if kind == "ghproduct" else ghosh_dot
        got = operation(RealVector(tuple(case["v"])), IntervalVector.from_pairs(case["K"]))
        return result(got.to_list(), _exact(expected, got))

    if kind == "orthogonal":
        got = is_gh_orthogonal(RealVector(tuple(case["v"])), IntervalVector.from_pairs(case["K"]))
        return result(got, got == expected)

    if kind == "linearity":
        v, w = RealVector(tuple(case["v"])), RealVector(tuple(case["w"]))
        K = IntervalVector.from_pairs(case["K"])
        combined = gh_product(v + w, K)
        summed = gh_product(v, K) + gh_product(w, K)
        got = {"holds": linearity_holds(v, w, K), "combined": combined.to_list(), "summed": summed.to_list()}
        passed = (
            got["holds"] == expected["holds"]
            and _exact(expected["combined"], combined)
            and _exact(expected["summed"], summed)
        )
        return result(got, passed)

    if kind == "partial":
        report = gh_partial(get_spec(case["spec"], specs_dir), case["point"], case["i"], plan)
        problems = _report_matches(expected, report, tol)
        return result(_report_summary(report), not problems, "; ".join(problems) or report.reason)

    if kind == "gradient":
        reports = gh_gradient(get_spec(case["spec"], specs_dir), case["point"], plan)
        problems = []
        if len(reports) != len(expected):
            problems.append(f"{len(reports)} components (expected {len(expected)})")
        for report, want in zip(reports, expected):
            problems.extend(f"x{report.coordinate} {p}" for p in _report_matches(want, report, tol))
        return result([_report_summary(r) for r in reports], not problems, "; ".join(problems))

    return result(None, False, f"unknown case kind '{kind}'")


def _specs_dir_for(corpus_path: Optional[Path]) -> Optional[Path]:
    # A corpus shipped with its own specs/ directory uses it; otherwise the bundled specs
    if corpus_path is not None:
        local = Path(corpus_path).parent / "specs"
        if local.is_dir():
            return local
    return PATHS.specs


def replay(corpus_path: Optional[Path] = None, plan: Optional[SamplingPlan] = None) -> List[CaseResult]:
    plan = plan or SamplingPlan()
    cases = load_cases(corpus_path)
    specs_dir = _specs_dir_for(corpus_path)
    results = []
    for case in cases:
        try:
            outcome = run_case(case, plan, specs_dir)
        except Exception as e:
            logger.error(f"Case {case['name']} raised: {e}")
            outcome = CaseResult(case["name"], case["kind"], case["expected"], None, False, f"{type(e).__name__}: {e}")
        logger.info(f"{PASS if outcome.passed else FAIL} {outcome.name}")
        results.append(outcome)
    return results


def replay_table(results: List[CaseResult]) -> str:
    width = max((len(r.name) for r in results), default=4)
    lines = []
    for r in results:
        status = PASS if r.passed else FAIL
        line = f"{status}  {r.name:<{width}}  expected={r.expected}  got={r.got}"
        if not r.passed and r.detail:
            line += f"  ({r.detail})"
        lines.append(line)
    if not results:
        lines.append("no cases to replay")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines)


def cmd_replay_paper(corpus_path: Optional[Path] = None, plan: Optional[SamplingPlan] = None) -> CommandResult:
    results = replay(corpus_path, plan)
    # An empty corpus replays nothing and does not count as a pass
    all_passed = bool(results) and all(r.passed for r in results)
    return CommandResult(
        text=replay_table(results),
        data={"passed": all_passed, "results": [r.to_dict() for r in results]},
        exit_code=EXIT_OK if all_passed else EXIT_REPLAY_FAILED,
    )
