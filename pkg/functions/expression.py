"""
Scalar expression trees for endpoint functions.

Nodes are frozen dataclasses so parsed trees compare structurally; the
printer emits the minimal parentheses the parser needs to rebuild the
same tree.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Union


class EvaluationError(ArithmeticError):
    """Raised when an expression leaves its domain at a concrete point."""

    def __init__(self, message: str, subexpression: str = "", point: Sequence[float] = ()):
        self.subexpression = subexpression
        self.point = tuple(point)
        detail = f" in '{subexpression}'" if subexpression else ""
        where = f" at {self.point}" if self.point else ""
        super().__init__(f"{message}{detail}{where}")


FUNCTIONS = ("abs", "sin", "cos", "exp", "sqrt")
CONSTANTS = {"pi": math.pi, "e": math.e}
BINARY_OPERATORS = ("+", "-", "*", "/", "^")

# Binding strength, loosest first
PREC_ADD = 1
PREC_MUL = 2
PREC_UNARY = 3
PREC_POW = 4
PREC_ATOM = 5


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    """The variable x_index, 1-based."""
    index: int


@dataclass(frozen=True)
class Unary:
    """Negation ("neg") or one of FUNCTIONS applied to an operand."""
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, Unary, Binary]


def max_variable(expr: Expr) -> int:
    """Largest variable index used, 0 for constant expressions."""
    if isinstance(expr, Var):
        return expr.index
    if isinstance(expr, Unary):
        return max_variable(expr.operand)
    if isinstance(expr, Binary):
        return max(max_variable(expr.left), max_variable(expr.right))
    return 0


def _sqrt(x: float) -> float:
    if x < 0:
        raise ValueError("square root of a negative number")
    return math.sqrt(x)


_UNARY_IMPL: Dict[str, Callable[[float], float]] = {
    "neg": lambda x: -x,
    "abs": abs,
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "sqrt": _sqrt,
}


def _divide(a: float, b: float) -> float:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return a / b


def _power(a: float, b: float) -> float:
    if a == 0 and b < 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return math.pow(a, b)


_BINARY_IMPL: Dict[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _divide,
    "^": _power,
}


def evaluate(expr: Expr, point: Sequence[float]) -> float:
    """Evaluate at a point (x1, ..., xn); pure, so equal inputs give identical bits."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        return point[expr.index - 1]
    if isinstance(expr, Unary):
        arg = evaluate(expr.operand, point)
        return _apply(expr, _UNARY_IMPL[expr.op], (arg,), point)
    left = evaluate(expr.left, point)
    right = evaluate(expr.right, point)
    return _apply(expr, _BINARY_IMPL[expr.op], (left, right), point)


def _apply(expr: Expr, impl: Callable[..., float], args: tuple, point: Sequence[float]) -> float:
    try:
        result = impl(*args)
    except (ValueError, ZeroDivisionError, OverflowError) as e:
        raise EvaluationError(str(e), to_text(expr), point) from e
    if not math.isfinite(result):
        raise EvaluationError("non-finite result", to_text(expr), point)
    return result


def _precedence(expr: Expr) -> int:
    if isinstance(expr, Const):
        return PREC_ATOM if expr.value >= 0 else PREC_UNARY
    if isinstance(expr, Var):
        return PREC_ATOM
    if isinstance(expr, Unary):
        return PREC_UNARY if expr.op == "neg" else PREC_ATOM
    if expr.op in ("+", "-"):
        return PREC_ADD
    if expr.op in ("*", "/"):
        return PREC_MUL
    return PREC_POW


def format_constant(value: float) -> str:
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _wrap(text: str, needs_parens: bool) -> str:
    return f"({text})" if needs_parens else text


def to_text(expr: Expr) -> str:
    """Canonical text with spaces around + - * / and minimal parentheses."""
    if isinstance(expr, Const):
        return format_constant(expr.value)
    if isinstance(expr, Var):
        return f"x{expr.index}"
    if isinstance(expr, Unary):
        if expr.op != "neg":
            return f"{expr.op}({to_text(expr.operand)})"
        operand = expr.operand
        nested_sign = isinstance(operand, Unary) and operand.op == "neg"
        nested_sign = nested_sign or (isinstance(operand, Const) and operand.value < 0)
        return "-" + _wrap(to_text(operand), nested_sign or _precedence(operand) < PREC_UNARY)

    prec = _precedence(expr)
    left, right = expr.left, expr.right
    if expr.op == "^":
        # Right associative; the exponent is parsed at unary level
        left_text = _wrap(to_text(left), _precedence(left) <= PREC_POW)
        right_text = _wrap(to_text(right), _precedence(right) < PREC_UNARY)
        return f"{left_text}^{right_text}"
    left_text = _wrap(to_text(left), _precedence(left) < prec)
    right_prec = _precedence(right)
    right_text = _wrap(to_text(right), right_prec <= prec or right_prec == PREC_UNARY)
    return f"{left_text} {expr.op} {right_text}"
