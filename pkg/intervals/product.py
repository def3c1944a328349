"""
gH-product of a real vector with an n-tuple of intervals.

The coefficients split into j+ = {i : v_i >= 0} and j- = {i : v_i < 0}; the
product is the gH-difference of the two Minkowski partial sums. Ghosh's
Minkowski dot product is kept alongside for comparison.
"""

import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from config import ORTHOGONALITY_TOL
from config.logging_config import setup_logger
from intervals.core import ArithmeticOverflowError, Interval, IntervalVector, _checked, gh_diff, scalar_mul

logger = setup_logger(__name__)


class DimensionError(ValueError):
    """Raised when a vector and an interval tuple differ in length."""


class ZeroVectorError(ValueError):
    """Raised when an operation needs a nonzero coefficient vector."""


@dataclass(frozen=True)
class RealVector:
    """Finite real coefficients v = (v_1, ..., v_n), n >= 1."""
    items: Tuple[float, ...]

    def __post_init__(self):
        items = tuple(float(x) for x in self.items)
        if not items:
            raise DimensionError("RealVector needs at least one coefficient")
        for x in items:
            if not math.isfinite(x):
                raise ValueError(f"RealVector coefficients must be finite, got {x}")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, *values: float) -> "RealVector":
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[float]:
        return iter(self.items)

    def __add__(self, other: "RealVector") -> "RealVector":
        _require_same_length(self, other)
        return RealVector(tuple(a + b for a, b in zip(self.items, other.items)))

    def __neg__(self) -> "RealVector":
        return RealVector(tuple(-a for a in self.items))

    def scaled(self, factor: float) -> "RealVector":
        return RealVector(tuple(factor * a for a in self.items))

    def magnitudes(self) -> "RealVector":
        return RealVector(tuple(abs(a) for a in self.items))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.items)

    def positive_indices(self) -> List[int]:
        """j+; zero coefficients belong here."""
        return [i for i, a in enumerate(self.items) if a >= 0]

    def negative_indices(self) -> List[int]:
        return [i for i, a in enumerate(self.items) if a < 0]

    def dot(self, values: Sequence[float]) -> float:
        if len(values) != len(self.items):
            raise DimensionError(f"Cannot take dot product of lengths {len(self.items)} and {len(values)}")
        return math.fsum(a * b for a, b in zip(self.items, values))


def _require_same_length(v, K) -> None:
    if len(v) != len(K):
        raise DimensionError(f"Length mismatch: vector has {len(v)} entries, tuple has {len(K)}")


def ghosh_dot(v: RealVector, K: IntervalVector) -> Interval:
    """Minkowski sum of v_i * K_i."""
    _require_same_length(v, K)
    terms = [scalar_mul(a, k) for a, k in zip(v, K)]
    lo = _fsum((t.lo for t in terms), "Ghosh product")
    hi = _fsum((t.hi for t in terms), "Ghosh product")
    return _checked(lo, hi, "Ghosh product")


def _fsum(terms, operation: str) -> float:
    try:
        return math.fsum(terms)
    except (OverflowError, ValueError) as e:
        # fsum raises on intermediate overflow and on inf - inf
        raise ArithmeticOverflowError(f"{operation} overflowed: {e}") from e


def _endpoint_sums(v: RealVector, K: IntervalVector) -> Tuple[float, float]:
    """
    p = sum_{j+} v_i k_i^L - sum_{j-} |v_k| k_k^L
    q = sum_{j+} v_i k_i^U - sum_{j-} |v_k| k_k^U
    """
    p_terms, q_terms = [], []
    for a, k in zip(v, K):
        # a >= 0 adds a*k; a < 0 subtracts |a|*k, which is the same product
        p_terms.append(a * k.lo)
        q_terms.append(a * k.hi)
    return _fsum(p_terms, "gH-product"), _fsum(q_terms, "gH-product")


def gh_product(v: RealVector, K: IntervalVector) -> Interval:
    """<v, K>_gH = [min(p, q), max(p, q)]."""
    _require_same_length(v, K)
    p, q = _endpoint_sums(v, K)
    return _checked(min(p, q), max(p, q), "gH-product")


def gh_product_by_parts(v: RealVector, K: IntervalVector) -> Interval:
    """
    The same product computed as gH-difference of the two partial sums,
    sum_{j+} v_i K_i ⊖_gH sum_{j-} |v_k| K_k.
    """
    _require_same_length(v, K)
    positive = v.positive_indices()
    negative = v.negative_indices()
    plus = _checked(
        _fsum((v.items[i] * K[i].lo for i in positive), "gH-product"),
        _fsum((v.items[i] * K[i].hi for i in positive), "gH-product"),
        "gH-product",
    )
    minus = _checked(
        _fsum((abs(v.items[k]) * K[k].lo for k in negative), "gH-product"),
        _fsum((abs(v.items[k]) * K[k].hi for k in negative), "gH-product"),
        "gH-product",
    )
    return gh_diff(plus, minus)


def scale_product(scale: float, v: RealVector, K: IntervalVector) -> Interval:
    """<scale * v, K>_gH, which equals scale * <v, K>_gH."""
    return gh_product(v.scaled(scale), K)


def is_gh_orthogonal(v: RealVector, K: IntervalVector, tol: float = ORTHOGONALITY_TOL) -> bool:
    """<v, K>_gH = 0 iff v is orthogonal to both endpoint vectors k^L and k^U."""
    _require_same_length(v, K)
    if v.is_zero:
        raise ZeroVectorError("Orthogonality is only characterised for nonzero vectors")
    return abs(v.dot(K.lower)) <= tol and abs(v.dot(K.upper)) <= tol


def linearity_holds(v: RealVector, w: RealVector, K: IntervalVector) -> bool:
    """
    Whether <v + w, K>_gH = <v, K>_gH + <w, K>_gH is guaranteed: both vectors
    must order the endpoint dot products the same way.
    """
    _require_same_length(v, K)
    _require_same_length(w, K)
    v_lo, v_hi = v.dot(K.lower), v.dot(K.upper)
    w_lo, w_hi = w.dot(K.lower), w.dot(K.upper)
    holds = (v_lo <= v_hi and w_lo <= w_hi) or (v_lo >= v_hi and w_lo >= w_hi)
    logger.debug("linearity check: v=(%s, %s) w=(%s, %s) -> %s", v_lo, v_hi, w_lo, w_hi, holds)
    return holds
