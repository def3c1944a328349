"""
Interval-valued functions given by their endpoint functions.

Each endpoint is a list of branches. A branch has a label, an optional
sign guard on one coordinate, and an expression. Branches sharing a guard
act as channels standing in for predicates a float cannot decide (x in Q
versus x in Q^c): every channel is sampled, and the calculus aggregates
across them.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from functions.expression import Expr, evaluate, max_variable, to_text

DEFAULT_LABEL = "main"
LOWER = "lower"
UPPER = "upper"
ENDPOINTS = (LOWER, UPPER)
RELATIONS = ("<", ">", "=")


class ModelError(ValueError):
    """Raised when a function specification is inconsistent at a point."""


class UnknownBranchError(KeyError):
    """Raised when a branch label does not exist on an endpoint."""


@dataclass(frozen=True)
class Guard:
    """Sign condition x_index < 0, x_index > 0 or x_index = 0."""
    index: int
    relation: str

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"Unsupported guard relation: {self.relation}")

    def holds(self, point: Sequence[float]) -> bool:
        x = point[self.index - 1]
        if self.relation == "<":
            return x < 0
        if self.relation == ">":
            return x > 0
        return x == 0

    def __str__(self) -> str:
        return f"[x{self.index}{self.relation}0]"


@dataclass(frozen=True)
class Branch:
    label: str
    expr: Expr
    guard: Optional[Guard] = None

    def applies(self, point: Sequence[float]) -> bool:
        return self.guard is None or self.guard.holds(point)

    def max_variable(self) -> int:
        guard_index = self.guard.index if self.guard else 0
        return max(max_variable(self.expr), guard_index)


@dataclass(frozen=True)
class BranchedEndpoint:
    branches: Tuple[Branch, ...]

    def __post_init__(self):
        branches = tuple(self.branches)
        if not branches:
            raise ModelError("An endpoint needs at least one branch")
        labels = [b.label for b in branches]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ModelError(f"Duplicate branch labels: {', '.join(duplicates)}")
        object.__setattr__(self, "branches", branches)

    @classmethod
    def single(cls, expr: Expr) -> "BranchedEndpoint":
        return cls((Branch(DEFAULT_LABEL, expr),))

    @property
    def labels(self) -> List[str]:
        return [b.label for b in self.branches]

    def branch(self, label: str) -> Branch:
        for b in self.branches:
            if b.label == label:
                return b
        raise UnknownBranchError(f"No branch labelled '{label}' (have: {', '.join(self.labels)})")

    def is_plain(self) -> bool:
        """A lone unguarded default branch, printed as a bare expression."""
        return (
            len(self.branches) == 1
            and self.branches[0].label == DEFAULT_LABEL
            and self.branches[0].guard is None
        )


def active_branches(endpoint: BranchedEndpoint, point: Sequence[float]) -> List[Branch]:
    """Branches whose guard holds at the point, in declaration order."""
    return [b for b in endpoint.branches if b.applies(point)]


def base_value(endpoint: BranchedEndpoint, point: Sequence[float], label: str) -> float:
    """
    f(x) at the base point of a difference quotient.

    Taken from the branch valid at the point. When several channels hold
    there with different values, the channel with the sampled label wins;
    with no such channel the value is ambiguous.
    """
    at_point = active_branches(endpoint, point)
    if not at_point:
        raise ModelError(f"No branch is defined at {tuple(point)}")
    values = {b.label: evaluate(b.expr, point) for b in at_point}
    distinct = set(values.values())
    if len(distinct) == 1:
        return distinct.pop()
    if label in values:
        return values[label]
    raise ModelError(
        f"Ambiguous value at {tuple(point)}: branches {', '.join(values)} disagree "
        f"and none is labelled '{label}'"
    )


@dataclass(frozen=True)
class IvfSpec:
    """h(x) = [h^L(x), h^U(x)] on R^arity."""
    arity: int
    lower: BranchedEndpoint
    upper: BranchedEndpoint
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.arity < 1:
            raise ModelError(f"Arity must be positive, got {self.arity}")
        for which in ENDPOINTS:
            for b in self.endpoint(which).branches:
                if b.max_variable() > self.arity:
                    raise ModelError(
                        f"Branch '{b.label}' of the {which} endpoint uses x{b.max_variable()} "
                        f"but the function has arity {self.arity}"
                    )

    def endpoint(self, which: str) -> BranchedEndpoint:
        if which == LOWER:
            return self.lower
        if which == UPPER:
            return self.upper
        raise ValueError(f"Endpoint must be '{LOWER}' or '{UPPER}', got '{which}'")

    def check_point(self, point: Sequence[float]) -> Tuple[float, ...]:
        point = tuple(float(x) for x in point)
        if len(point) != self.arity:
            raise ModelError(f"Point {point} has {len(point)} coordinates, expected {self.arity}")
        return point


def eval_endpoint(spec: IvfSpec, which: str, branch: str, point: Sequence[float]) -> float:
    """Value of one branch expression; guards are not consulted."""
    point = spec.check_point(point)
    return evaluate(spec.endpoint(which).branch(branch).expr, point)


def _endpoint_text(endpoint: BranchedEndpoint) -> str:
    if endpoint.is_plain():
        return to_text(endpoint.branches[0].expr)
    parts = []
    for b in endpoint.branches:
        guard = f" {b.guard}" if b.guard else ""
        parts.append(f"branch {b.label}{guard}: {to_text(b.expr)}")
    return " | ".join(parts)


def pretty_print(spec: IvfSpec) -> str:
    """Canonical source text; parsing it rebuilds an equal spec."""
    return f"n={spec.arity}; L: {_endpoint_text(spec.lower)}; U: {_endpoint_text(spec.upper)}"
