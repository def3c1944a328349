"""
Closed bounded real intervals and the three subtraction notions on them.

Minkowski difference, Hukuhara (H-) difference and generalized Hukuhara
(gH-) difference, plus the Hausdorff metric. Endpoints are doubles rounded
to nearest; validated outward rounding is not attempted.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple


class IntervalError(ValueError):
    """Raised when endpoints do not describe a valid interval."""


class ArithmeticOverflowError(ArithmeticError):
    """Raised when an operation leaves the finite doubles."""


@dataclass(frozen=True)
class Interval:
    """The closed interval [lo, hi] with finite lo <= hi."""
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise IntervalError(f"Interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if lo > hi:
            raise IntervalError(f"Lower endpoint exceeds upper endpoint: [{self.lo}, {self.hi}]")
        # -0.0 would leak into rendering
        object.__setattr__(self, "lo", lo + 0.0)
        object.__setattr__(self, "hi", hi + 0.0)

    @classmethod
    def degenerate(cls, x: float) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return self.lo + (self.hi - self.lo) / 2.0

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __iter__(self) -> Iterator[float]:
        return iter((self.lo, self.hi))

    def __add__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return add(self, other)

    def __neg__(self) -> "Interval":
        return neg(self)

    def __sub__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return minkowski_sub(self, other)

    def __rmul__(self, p: float) -> "Interval":
        if isinstance(p, Interval):
            return NotImplemented
        return scalar_mul(p, self)

    def to_list(self) -> list:
        return [self.lo, self.hi]

    def __str__(self) -> str:
        return f"[{format_number(self.lo)}, {format_number(self.hi)}]"


ZERO = Interval(0.0, 0.0)


def format_number(x: float) -> str:
    """Integers print without a fractional part, everything else as the shortest repr."""
    if x == 0:
        return "0"
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _checked(lo: float, hi: float, operation: str) -> Interval:
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ArithmeticOverflowError(f"{operation} overflowed to [{lo}, {hi}]")
    return Interval(lo, hi)


def add(a: Interval, b: Interval) -> Interval:
    return _checked(a.lo + b.lo, a.hi + b.hi, "add")


def neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def minkowski_sub(a: Interval, b: Interval) -> Interval:
    """Set difference {x - y}; nondegenerate a - a is never [0, 0]."""
    return _checked(a.lo - b.hi, a.hi - b.lo, "minkowski_sub")


def scalar_mul(p: float, a: Interval) -> Interval:
    if not math.isfinite(p):
        raise IntervalError(f"Scalar must be finite, got {p}")
    if p >= 0:
        return _checked(p * a.lo, p * a.hi, "scalar_mul")
    return _checked(p * a.hi, p * a.lo, "scalar_mul")


def hausdorff(a: Interval, b: Interval) -> float:
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def is_close(a: Interval, b: Interval, tol: float) -> bool:
    return hausdorff(a, b) <= tol


def h_diff(a: Interval, b: Interval) -> Optional[Interval]:
    """
    Hukuhara difference a ⊖ b, the interval c with b + c = a.

    Returns None when the endpoint differences do not form an interval,
    which callers use to check existence.
    """
    lo, hi = a.lo - b.lo, a.hi - b.hi
    if lo > hi:
        return None
    return _checked(lo, hi, "h_diff")


def gh_diff(a: Interval, b: Interval) -> Interval:
    """Generalized Hukuhara difference; total, and equal to h_diff whenever that exists."""
    lo, hi = a.lo - b.lo, a.hi - b.hi
    return _checked(min(lo, hi), max(lo, hi), "gh_diff")


@dataclass(frozen=True)
class IntervalVector:
    """An ordered n-tuple of intervals, n >= 1."""
    items: Tuple[Interval, ...]

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise IntervalError("IntervalVector needs at least one interval")
        for item in items:
            if not isinstance(item, Interval):
                raise IntervalError(f"IntervalVector items must be Interval, got {type(item).__name__}")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "IntervalVector":
        return cls(tuple(Interval(lo, hi) for lo, hi in pairs))

    @classmethod
    def from_flat(cls, values: Sequence[float]) -> "IntervalVector":
        """Build from lo hi lo hi ... as typed on the command line."""
        if len(values) % 2:
            raise IntervalError(f"Expected an even number of endpoints, got {len(values)}")
        return cls.from_pairs(zip(values[0::2], values[1::2]))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.items)

    def __getitem__(self, index: int) -> Interval:
        return self.items[index]

    @property
    def lower(self) -> Tuple[float, ...]:
        """The endpoint vector k^L."""
        return tuple(item.lo for item in self.items)

    @property
    def upper(self) -> Tuple[float, ...]:
        """The endpoint vector k^U."""
        return tuple(item.hi for item in self.items)

    def to_list(self) -> list:
        return [item.to_list() for item in self.items]
