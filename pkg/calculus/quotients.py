"""
One-sided difference quotients of endpoint functions.

For an endpoint f, a point x and a coordinate i the sampler evaluates
gamma(t) = (f(x + t e_i) - f(x)) / t on the geometric steps t_k = ±t0 * ratio^k,
separately for every branch channel active on that side, and estimates
the limit of each sequence as t -> 0.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_COUNT,
    DEFAULT_LIMIT_TOL,
    DEFAULT_RATIO,
    DEFAULT_T0,
)
from config.logging_config import setup_logger
from functions.expression import evaluate
from functions.ivf import IvfSpec, ModelError, active_branches, base_value

logger = setup_logger(__name__)

RIGHT = "right"
LEFT = "left"
SIDES = (RIGHT, LEFT)

# Steps below CANCELLATION_FACTOR * eps * scale lose every significant digit
CANCELLATION_FACTOR = 1e3
MACHINE_EPSILON = float(np.finfo(float).eps)
MIN_SAMPLES = 4
MIN_WINDOW = 3
# Quotients whose rounding bound exceeds NOISE_SHARE * limit_tol are not used
ROUNDING_FACTOR = 64.0
NOISE_SHARE = 1e-2


class SamplingPlanError(ValueError):
    """Raised when a sampling plan cannot resolve quotients at a point."""


def cancellation_floor(scale: float) -> float:
    return CANCELLATION_FACTOR * MACHINE_EPSILON * max(1.0, abs(scale))


class SamplingPlan(BaseModel):
    """Discretisation of t -> 0: steps t0 * ratio^k for k = 0..count-1."""
    model_config = ConfigDict(frozen=True)

    t0: float = Field(default=DEFAULT_T0, gt=0, allow_inf_nan=False)
    ratio: float = Field(default=DEFAULT_RATIO, gt=0, lt=1)
    count: int = Field(default=DEFAULT_COUNT, ge=1)
    limit_tol: float = Field(default=DEFAULT_LIMIT_TOL, gt=0, allow_inf_nan=False)
    cluster_tol: float = Field(default=DEFAULT_CLUSTER_TOL, gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _first_step_resolvable(self) -> "SamplingPlan":
        if self.t0 < cancellation_floor(1.0):
            raise ValueError(f"t0={self.t0} is below the cancellation floor {cancellation_floor(1.0):.3g}")
        return self

    def steps(self, side: str, scale: float = 1.0) -> np.ndarray:
        """Signed steps for one side, dropping those under the cancellation floor."""
        if side not in SIDES:
            raise ValueError(f"Side must be '{RIGHT}' or '{LEFT}', got '{side}'")
        floor = cancellation_floor(scale)
        if self.t0 < floor:
            raise SamplingPlanError(
                f"t0={self.t0} cannot resolve quotients at coordinate scale {scale} (floor {floor:.3g})"
            )
        magnitudes = self.t0 * self.ratio ** np.arange(self.count, dtype=float)
        magnitudes = magnitudes[magnitudes >= floor]
        return magnitudes if side == RIGHT else -magnitudes


def rounding_noise(values: np.ndarray, base: float, steps: np.ndarray) -> np.ndarray:
    """
    Bound on the rounding error of each quotient, in ulps of |f(x + t)| + |f(x)|
    (at least 1) divided by |t|. The factor covers intermediate terms
    larger than the value itself.
    """
    magnitude = np.maximum(np.abs(values) + abs(base), 1.0)
    return ROUNDING_FACTOR * MACHINE_EPSILON * magnitude / np.abs(steps)


def estimate_limit(
    quotients: Sequence[float],
    ratio: float,
    limit_tol: float,
    noise: Optional[Sequence[float]] = None,
) -> Optional[float]:
    """
    Limit of a quotient sequence sampled at geometric steps, or None.

    Samples run from the largest step to the smallest. When a rounding bound
    is given, the sequence stops at the first sample whose bound exceeds
    NOISE_SHARE * limit_tol. The first-order term is removed by Richardson
    extrapolation, R_k = (g_k - ratio * g_{k-1}) / (1 - ratio), and a limit
    is declared only when the final third of R has spread under limit_tol
    and a second extrapolation of the last terms moves R by less than
    limit_tol. A sequence that is flat early and drifts at small steps has
    no limit.
    """
    q = np.asarray(quotients, dtype=float)
    if noise is not None:
        resolved = np.asarray(noise, dtype=float) <= NOISE_SHARE * limit_tol
        q = q[:resolved.size if resolved.all() else int(np.argmin(resolved))]
    if q.size < MIN_SAMPLES or not np.all(np.isfinite(q)):
        return None
    accelerated = (q[1:] - ratio * q[:-1]) / (1.0 - ratio)
    width = max(MIN_WINDOW, math.ceil(accelerated.size / 3))
    if np.ptp(accelerated[-width:]) >= limit_tol:
        return None
    second = (accelerated[-1] - ratio ** 2 * accelerated[-2]) / (1.0 - ratio ** 2)
    if abs(second - accelerated[-1]) >= limit_tol:
        return None
    return float(accelerated[-1])


def merge_clusters(values: Sequence[float], tol: float) -> Tuple[float, ...]:
    """Single-linkage merge of sorted values; each cluster is represented by its mean."""
    ordered = sorted(values)
    if not ordered:
        return ()
    clusters: List[List[float]] = [[ordered[0]]]
    for value in ordered[1:]:
        if value - clusters[-1][-1] <= tol:
            clusters[-1].append(value)
        else:
            clusters.append([value])
    return tuple(math.fsum(c) / len(c) for c in clusters)


@dataclass(frozen=True)
class BranchSeries:
    """Samples of one branch channel: f(x + t e_i), the base value f(x) and the quotients."""
    label: str
    base: float
    values: Tuple[float, ...]
    quotients: Tuple[float, ...]
    limit: Optional[float]
    noise: Tuple[float, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "base": self.base,
            "values": list(self.values),
            "quotients": list(self.quotients),
            "limit": self.limit,
        }


@dataclass(frozen=True)
class QuotientProfile:
    which: str
    side: str
    coordinate: int
    point: Tuple[float, ...]
    steps: Tuple[float, ...]
    series: Tuple[BranchSeries, ...]
    cluster_set: Tuple[float, ...]
    min_limit: Optional[float]
    max_limit: Optional[float]
    plan: SamplingPlan = field(compare=False)
    inconclusive: bool = False
    note: str = ""

    @property
    def labels(self) -> List[str]:
        return [s.label for s in self.series]

    def series_for(self, label: str) -> BranchSeries:
        for s in self.series:
            if s.label == label:
                return s
        raise KeyError(label)

    def one_sided(self) -> Optional[float]:
        """The one-sided endpoint derivative: every branch limit agrees within cluster_tol."""
        if self.inconclusive or not self.series:
            return None
        limits = [s.limit for s in self.series]
        if max(limits) - min(limits) > self.plan.cluster_tol:
            return None
        return math.fsum(limits) / len(limits)

    def summary(self) -> Dict:
        return {
            "which": self.which,
            "side": self.side,
            "branches": {s.label: s.limit for s in self.series},
            "cluster_set": list(self.cluster_set),
            "min_limit": self.min_limit,
            "max_limit": self.max_limit,
            "one_sided": self.one_sided(),
            "inconclusive": self.inconclusive,
            "note": self.note,
        }

    def to_dict(self) -> Dict:
        data = self.summary()
        data["steps"] = list(self.steps)
        data["series"] = [s.to_dict() for s in self.series]
        return data


def _shifted(point: Tuple[float, ...], coordinate: int, t: float) -> Tuple[float, ...]:
    shifted = list(point)
    shifted[coordinate - 1] += t
    return tuple(shifted)


def quotient_profile(
    spec: IvfSpec,
    which: str,
    point: Sequence[float],
    i: int,
    side: str,
    plan: Optional[SamplingPlan] = None,
) -> QuotientProfile:
    """Sample gamma(t) for every branch active on one side of x along x_i."""
    plan = plan or SamplingPlan()
    point = spec.check_point(point)
    if not 1 <= i <= spec.arity:
        raise ModelError(f"Coordinate x{i} outside x1..x{spec.arity}")
    endpoint = spec.endpoint(which)
    steps = plan.steps(side, scale=point[i - 1])

    def empty(note: str) -> QuotientProfile:
        return QuotientProfile(which, side, i, point, (), (), (), None, None, plan, True, note)

    if steps.size == 0:
        return empty("no step lies above the cancellation floor")

    # The active set at the smallest step decides the channels; larger steps
    # that cross a guard boundary are dropped
    active_sets = [tuple(b.label for b in active_branches(endpoint, _shifted(point, i, t))) for t in steps]
    settled = active_sets[-1]
    if not settled:
        raise ModelError(f"No branch of the {which} endpoint is defined on the {side} of x{i} at {point}")
    start = len(active_sets)
    while start > 0 and active_sets[start - 1] == settled:
        start -= 1
    steps = steps[start:]

    series = []
    for label in settled:
        branch = endpoint.branch(label)
        base = base_value(endpoint, point, label)
        values = np.array([evaluate(branch.expr, _shifted(point, i, t)) for t in steps])
        quotients = (values - base) / steps
        noise = rounding_noise(values, base, steps)
        limit = estimate_limit(quotients, plan.ratio, plan.limit_tol, noise)
        series.append(BranchSeries(
            label, base, tuple(values.tolist()), tuple(quotients.tolist()), limit, tuple(noise.tolist())
        ))

    limits = [s.limit for s in series if s.limit is not None]
    stacked = np.vstack([s.quotients for s in series])
    noise = np.vstack([s.noise for s in series]).max(axis=0)
    min_limit = estimate_limit(stacked.min(axis=0), plan.ratio, plan.limit_tol, noise)
    max_limit = estimate_limit(stacked.max(axis=0), plan.ratio, plan.limit_tol, noise)
    unresolved = [s.label for s in series if s.limit is None]
    note = f"no limit for branch(es): {', '.join(unresolved)}" if unresolved else ""

    profile = QuotientProfile(
        which=which,
        side=side,
        coordinate=i,
        point=point,
        steps=tuple(steps.tolist()),
        series=tuple(series),
        cluster_set=merge_clusters(limits, plan.cluster_tol),
        min_limit=min_limit,
        max_limit=max_limit,
        plan=plan,
        inconclusive=bool(unresolved),
        note=note,
    )
    logger.debug("%s %s profile along x%d at %s: limits=%s clusters=%s",
                 which, side, i, point, {s.label: s.limit for s in series}, profile.cluster_set)
    return profile


def endpoint_one_sided(
    spec: IvfSpec,
    which: str,
    point: Sequence[float],
    i: int,
    side: str,
    plan: Optional[SamplingPlan] = None,
) -> Optional[float]:
    """One-sided partial derivative of one endpoint function, or None."""
    return quotient_profile(spec, which, point, i, side, plan).one_sided()
