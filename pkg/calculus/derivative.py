"""
gH-partial derivatives and the gH-gradient of interval-valued functions.

The partial derivative along x_i exists iff one of four cases holds for the
one-sided endpoint derivatives and quotient cluster sets:

    (i)   all four one-sided endpoint derivatives exist and the right pair
          spans the same interval as the left pair;
    (ii)  the right pair exists and the left quotients are complementary
          with {kL, kU} equal to the right pair;
    (iii) the mirror of (ii);
    (iv)  both sides are complementary with the same {kL, kU}.

Sampling never fabricates an answer: a profile without limits makes the
report inconclusive.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import GRADIENT_WORKERS
from config.logging_config import setup_logger
from calculus.quotients import (
    LEFT,
    RIGHT,
    SIDES,
    QuotientProfile,
    SamplingPlan,
    SamplingPlanError,
    estimate_limit,
    quotient_profile,
)
from functions.expression import EvaluationError, evaluate
from functions.ivf import LOWER, UPPER, IvfSpec, ModelError, active_branches, base_value
from intervals.core import Interval, format_number, gh_diff, is_close, scalar_mul

logger = setup_logger(__name__)

EXISTS = "exists"
NOT_EXISTS = "not_exists"
INCONCLUSIVE = "inconclusive"

LABEL_MATCHED = "label-matched"
CROSS_PRODUCT = "cross-product"

# Relative slack when checking lower <= upper on samples
ORDER_TOL = 1e-12
REPORT_DIGITS = 6


class GradientError(Exception):
    """Raised when one or more gradient components could not be evaluated."""

    def __init__(self, failures: Dict[int, Exception]):
        self.failures = failures
        details = "; ".join(f"x{i}: {e}" for i, e in sorted(failures.items()))
        super().__init__(f"Gradient evaluation failed for {len(failures)} coordinate(s): {details}")


def _show(value: float) -> str:
    return format_number(round(value, REPORT_DIGITS))


def _show_interval(lo: float, hi: float) -> str:
    return f"[{_show(lo)}, {_show(hi)}]"


def _span(pair: Tuple[float, float]) -> Interval:
    return Interval(min(pair), max(pair))


@dataclass(frozen=True)
class PairedExtrema:
    """Limits of min/max of the lower and upper quotients taken at matched steps."""
    convention: str
    pairs: Tuple[Tuple[str, str], ...]
    min_limits: Tuple[Optional[float], ...]
    max_limits: Tuple[Optional[float], ...]
    min_limit: Optional[float]
    max_limit: Optional[float]

    def to_dict(self) -> Dict:
        return {
            "convention": self.convention,
            "pairs": [list(p) for p in self.pairs],
            "min_limits": list(self.min_limits),
            "max_limits": list(self.max_limits),
            "min_limit": self.min_limit,
            "max_limit": self.max_limit,
        }


def branch_pairs(profile_lower: QuotientProfile, profile_upper: QuotientProfile) -> Tuple[str, List[Tuple[str, str]]]:
    """Same-label pairs when both endpoints expose the same channels, else every combination."""
    lower_labels, upper_labels = profile_lower.labels, profile_upper.labels
    if sorted(lower_labels) == sorted(upper_labels):
        return LABEL_MATCHED, [(label, label) for label in lower_labels]
    return CROSS_PRODUCT, [(a, b) for a in lower_labels for b in upper_labels]


def _aligned(profile_lower: QuotientProfile, profile_upper: QuotientProfile, pair: Tuple[str, str]):
    # Both profiles walk the same step sequence; guard settling may trim the front differently
    lower_series, upper_series = profile_lower.series_for(pair[0]), profile_upper.series_for(pair[1])
    lower, upper = np.asarray(lower_series.quotients), np.asarray(upper_series.quotients)
    n = min(lower.size, upper.size)
    noise = np.maximum(np.asarray(lower_series.noise)[lower.size - n:], np.asarray(upper_series.noise)[upper.size - n:])
    return lower[lower.size - n:], upper[upper.size - n:], noise


def _common_limit(limits: Sequence[Optional[float]], tol: float) -> Optional[float]:
    if not limits or any(v is None for v in limits):
        return None
    if max(limits) - min(limits) > tol:
        return None
    return math.fsum(limits) / len(limits)


def paired_extrema(profile_lower: QuotientProfile, profile_upper: QuotientProfile) -> PairedExtrema:
    """
    lim min{g_L(t), g_U(t)} and lim max{g_L(t), g_U(t)} over channel pairs.

    Each pair contributes one subsequence; the limit exists only when every
    subsequence converges to the same value, so a min that alternates between
    channel values has no limit.
    """
    plan = profile_lower.plan
    convention, pairs = branch_pairs(profile_lower, profile_upper)
    min_limits, max_limits = [], []
    for pair in pairs:
        lower, upper, noise = _aligned(profile_lower, profile_upper, pair)
        min_limits.append(estimate_limit(np.minimum(lower, upper), plan.ratio, plan.limit_tol, noise))
        max_limits.append(estimate_limit(np.maximum(lower, upper), plan.ratio, plan.limit_tol, noise))
    return PairedExtrema(
        convention=convention,
        pairs=tuple(pairs),
        min_limits=tuple(min_limits),
        max_limits=tuple(max_limits),
        min_limit=_common_limit(min_limits, plan.cluster_tol),
        max_limit=_common_limit(max_limits, plan.cluster_tol),
    )


def _same_points(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def complementary(profile_lower: QuotientProfile, profile_upper: QuotientProfile) -> Optional[Tuple[float, float]]:
    """
    (kL, kU) when the lower and upper quotients are complementary on their side:
    both cluster sets equal {kL, kU} with kL < kU, the paired min tends to kL
    and the paired max to kU. None otherwise.
    """
    if profile_lower.side != profile_upper.side:
        raise ValueError("Complementarity compares profiles taken on the same side")
    tol = profile_lower.plan.cluster_tol
    if profile_lower.inconclusive or profile_upper.inconclusive:
        return None
    clusters = profile_lower.cluster_set
    if len(clusters) != 2 or not _same_points(clusters, profile_upper.cluster_set, tol):
        return None
    k_lower, k_upper = clusters
    extrema = paired_extrema(profile_lower, profile_upper)
    if extrema.min_limit is None or extrema.max_limit is None:
        return None
    if abs(extrema.min_limit - k_lower) > tol or abs(extrema.max_limit - k_upper) > tol:
        return None
    return k_lower, k_upper


def _explain_not_complementary(profile_lower: QuotientProfile, profile_upper: QuotientProfile) -> str:
    side = profile_lower.side
    tol = profile_lower.plan.cluster_tol
    clusters_l = [_show(v) for v in profile_lower.cluster_set]
    clusters_u = [_show(v) for v in profile_upper.cluster_set]
    if len(profile_lower.cluster_set) != 2 or not _same_points(
            profile_lower.cluster_set, profile_upper.cluster_set, tol):
        return (f"{side} quotients are not {side} complementary: cluster sets "
                f"{{{', '.join(clusters_l)}}} and {{{', '.join(clusters_u)}}} are not one common pair")
    extrema = paired_extrema(profile_lower, profile_upper)
    if extrema.min_limit is None:
        return f"{side} quotients are not {side} complementary: min of the quotients has no limit"
    if extrema.max_limit is None:
        return f"{side} quotients are not {side} complementary: max of the quotients has no limit"
    return (f"{side} quotients are not {side} complementary: min/max tend to "
            f"{_show(extrema.min_limit)}/{_show(extrema.max_limit)}")


def check_ordering(profile_lower: QuotientProfile, profile_upper: QuotientProfile) -> None:
    """Raise ModelError when a lower sample exceeds its paired upper sample."""
    _, pairs = branch_pairs(profile_lower, profile_upper)
    for a, b in pairs:
        lower, upper = profile_lower.series_for(a), profile_upper.series_for(b)
        n = min(len(lower.values), len(upper.values))
        candidates = [(lower.base, upper.base)]
        if n:
            candidates += list(zip(lower.values[-n:], upper.values[-n:]))
        for lo, hi in candidates:
            if lo > hi + ORDER_TOL * max(1.0, abs(hi)):
                raise ModelError(
                    f"Lower endpoint exceeds upper endpoint ({lo} > {hi}) for branches "
                    f"{a}/{b} on the {profile_lower.side} of x{profile_lower.coordinate} at {profile_lower.point}"
                )


@dataclass(frozen=True)
class DerivativeReport:
    status: str
    coordinate: int
    point: Tuple[float, ...]
    reason: str
    value: Optional[Interval] = None
    case_tag: Optional[str] = None
    right_pair: Optional[Tuple[float, float]] = None
    left_pair: Optional[Tuple[float, float]] = None
    diagnostics: Dict[str, Dict[str, QuotientProfile]] = field(default_factory=dict, compare=False)
    pairing: Dict[str, PairedExtrema] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status == EXISTS and (self.value is None or self.case_tag is None):
            raise ValueError("An existing derivative needs a value and a case tag")

    @property
    def exists(self) -> bool:
        return self.status == EXISTS

    @property
    def right_interval(self) -> Optional[Interval]:
        """Right gH-partial derivative, spanned by the right endpoint pair."""
        return _span(self.right_pair) if self.right_pair else None

    @property
    def left_interval(self) -> Optional[Interval]:
        return _span(self.left_pair) if self.left_pair else None

    def headline(self) -> str:
        if self.status == EXISTS:
            return f"exists {_show_interval(self.value.lo, self.value.hi)} (case {self.case_tag})"
        return f"{self.status}: {self.reason}"

    def to_dict(self, full: bool = False) -> Dict:
        data = {
            "status": self.status,
            "coordinate": self.coordinate,
            "point": list(self.point),
            "value": self.value.to_list() if self.value is not None else None,
            "case": self.case_tag,
            "reason": self.reason,
            "right_pair": list(self.right_pair) if self.right_pair else None,
            "left_pair": list(self.left_pair) if self.left_pair else None,
        }
        render = (lambda p: p.to_dict()) if full else (lambda p: p.summary())
        data["profiles"] = {
            which: {side: render(p) for side, p in sides.items()}
            for which, sides in self.diagnostics.items()
        }
        data["pairing"] = {side: extrema.to_dict() for side, extrema in self.pairing.items()}
        return data


def _pair(profiles: Dict[str, Dict[str, QuotientProfile]], side: str) -> Optional[Tuple[float, float]]:
    d_lower = profiles[LOWER][side].one_sided()
    d_upper = profiles[UPPER][side].one_sided()
    if d_lower is None or d_upper is None:
        return None
    return d_lower, d_upper


def gh_partial(
    spec: IvfSpec,
    point: Sequence[float],
    i: int,
    plan: Optional[SamplingPlan] = None,
    enforce_order: bool = True,
) -> DerivativeReport:
    """Decide whether the gH-partial derivative along x_i exists at the point."""
    plan = plan or SamplingPlan()
    point = spec.check_point(point)
    profiles = {
        which: {side: quotient_profile(spec, which, point, i, side, plan) for side in SIDES}
        for which in (LOWER, UPPER)
    }
    if enforce_order:
        for side in SIDES:
            if profiles[LOWER][side].series and profiles[UPPER][side].series:
                check_ordering(profiles[LOWER][side], profiles[UPPER][side])

    right_pair = _pair(profiles, RIGHT)
    left_pair = _pair(profiles, LEFT)
    pairing = {
        side: paired_extrema(profiles[LOWER][side], profiles[UPPER][side])
        for side in SIDES
        if not (profiles[LOWER][side].inconclusive or profiles[UPPER][side].inconclusive)
    }

    def report(status: str, reason: str, value: Optional[Interval] = None, case: Optional[str] = None):
        result = DerivativeReport(status, i, point, reason, value, case, right_pair, left_pair, profiles, pairing)
        logger.debug("gH-partial along x%d at %s: %s", i, point, result.headline())
        return result

    unresolved = [
        f"{which} {side}: {p.note}"
        for which, sides in profiles.items() for side, p in sides.items() if p.inconclusive
    ]
    if unresolved:
        return report(INCONCLUSIVE, "; ".join(unresolved))

    tol = plan.cluster_tol
    right_comp = complementary(profiles[LOWER][RIGHT], profiles[UPPER][RIGHT])
    left_comp = complementary(profiles[LOWER][LEFT], profiles[UPPER][LEFT])

    if right_pair and left_pair:
        right, left = _span(right_pair), _span(left_pair)
        if is_close(right, left, tol):
            return report(EXISTS, "one-sided endpoint derivatives span the same interval on both sides", right, "i")
        return report(NOT_EXISTS, f"right {_show_interval(*right)} ≠ left {_show_interval(*left)}")

    if right_pair or left_pair:
        existing_side, other_side = (RIGHT, LEFT) if right_pair else (LEFT, RIGHT)
        existing = _span(right_pair or left_pair)
        comp = left_comp if right_pair else right_comp
        case = "ii" if right_pair else "iii"
        if comp is None:
            return report(NOT_EXISTS, _explain_not_complementary(profiles[LOWER][other_side], profiles[UPPER][other_side]))
        if not is_close(Interval(*comp), existing, tol):
            return report(
                NOT_EXISTS,
                f"{other_side} complementary pair {_show_interval(*comp)} differs from "
                f"{existing_side} {_show_interval(*existing)}",
            )
        return report(EXISTS, f"{existing_side} pair exists and {other_side} quotients are complementary",
                      Interval(*comp), case)

    if right_comp is None:
        return report(NOT_EXISTS, _explain_not_complementary(profiles[LOWER][RIGHT], profiles[UPPER][RIGHT]))
    if left_comp is None:
        return report(NOT_EXISTS, _explain_not_complementary(profiles[LOWER][LEFT], profiles[UPPER][LEFT]))
    if not is_close(Interval(*right_comp), Interval(*left_comp), tol):
        return report(
            NOT_EXISTS,
            f"right complementary pair {_show_interval(*right_comp)} ≠ left {_show_interval(*left_comp)}",
        )
    return report(EXISTS, "quotients are complementary on both sides", Interval(*right_comp), "iv")


def endpoint_partials(
    spec: IvfSpec,
    point: Sequence[float],
    i: int,
    plan: Optional[SamplingPlan] = None,
) -> Optional[Interval]:
    """
    The gH-partial derivative built from two-sided endpoint partials,
    [min(dL, dU), max(dL, dU)]; None unless both endpoints are differentiable.
    """
    plan = plan or SamplingPlan()
    point = spec.check_point(point)
    partials = []
    for which in (LOWER, UPPER):
        right = quotient_profile(spec, which, point, i, RIGHT, plan).one_sided()
        left = quotient_profile(spec, which, point, i, LEFT, plan).one_sided()
        if right is None or left is None or abs(right - left) > plan.cluster_tol:
            return None
        partials.append((right + left) / 2.0)
    return _span(tuple(partials))


def _branch_at(spec: IvfSpec, which: str, sample: Tuple[float, ...], label: Optional[str]):
    endpoint = spec.endpoint(which)
    if label is not None:
        return endpoint.branch(label)
    candidates = active_branches(endpoint, sample)
    if len(candidates) != 1:
        names = ", ".join(b.label for b in candidates) or "none"
        raise ModelError(f"Choose a {which} branch at {sample}: active branches are {names}")
    return candidates[0]


def gh_difference_quotient(
    spec: IvfSpec,
    point: Sequence[float],
    i: int,
    t: float,
    lower_branch: Optional[str] = None,
    upper_branch: Optional[str] = None,
) -> Interval:
    """(1/t) * (h(x + t e_i) ⊖_gH h(x)) for one lower/upper channel pair."""
    point = spec.check_point(point)
    if t == 0 or not math.isfinite(t):
        raise ValueError(f"Step must be finite and nonzero, got {t}")
    if not 1 <= i <= spec.arity:
        raise ModelError(f"Coordinate x{i} outside x1..x{spec.arity}")
    sample = list(point)
    sample[i - 1] += t
    sample = tuple(sample)
    lower = _branch_at(spec, LOWER, sample, lower_branch)
    upper = _branch_at(spec, UPPER, sample, upper_branch)
    try:
        moved = Interval(evaluate(lower.expr, sample), evaluate(upper.expr, sample))
        base = Interval(base_value(spec.lower, point, lower.label), base_value(spec.upper, point, upper.label))
    except ValueError as e:
        if isinstance(e, ModelError):
            raise
        raise ModelError(f"Endpoints out of order near {point}: {e}") from e
    return scalar_mul(1.0 / t, gh_diff(moved, base))


def gh_gradient(
    spec: IvfSpec,
    point: Sequence[float],
    plan: Optional[SamplingPlan] = None,
    max_workers: Optional[int] = None,
) -> List[DerivativeReport]:
    """One report per coordinate, in coordinate order; failures are collected."""
    plan = plan or SamplingPlan()
    point = spec.check_point(point)
    workers = max_workers if max_workers is not None else GRADIENT_WORKERS

    def component(i: int):
        try:
            return gh_partial(spec, point, i, plan)
        except SamplingPlanError:
            raise
        except (EvaluationError, ModelError, ValueError) as e:
            return e

    coordinates = range(1, spec.arity + 1)
    if workers <= 1 or spec.arity == 1:
        results = [component(i) for i in coordinates]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(component, coordinates))

    failures = {i: r for i, r in zip(coordinates, results) if isinstance(r, Exception)}
    if failures:
        raise GradientError(failures)
    return results


def gradient_exists(reports: Sequence[DerivativeReport]) -> bool:
    return bool(reports) and all(r.exists for r in reports)
