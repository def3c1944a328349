"""
Parser for interval-valued function specifications.

    spec     := "n=" INT ";" "L:" endpoint ";" "U:" endpoint [";"]
    endpoint := expr | branch ("|" branch)*
    branch   := "branch" LABEL [guard] ":" expr
    guard    := "[" "x" INT ("<" | ">" | "=") "0" "]"
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ["^" unary]
    atom     := NUMBER | x<INT> | pi | e | FUNC "(" expr ")" | "(" expr ")"

Whitespace is insignificant and "#" starts a comment running to the end of
the line. Errors carry the 1-based line and column of the offending token.
"""

import math
import re
from dataclasses import dataclass
from typing import List, Optional

from config.logging_config import setup_logger
from functions.expression import CONSTANTS, FUNCTIONS, Binary, Const, Expr, Unary, Var
from functions.ivf import Branch, BranchedEndpoint, Guard, IvfSpec, ModelError

logger = setup_logger(__name__)


class ParseError(ValueError):
    """Syntax error, unknown identifier or arity violation in a spec."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


TOKEN_PATTERN = re.compile(r"""
    (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r\f\v]+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[=;:|\[\]()+\-*/^<>])
""", re.VERBOSE)

VARIABLE_PATTERN = re.compile(r"x(\d+)")
END = "end"


def tokenize(source: str) -> List[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = TOKEN_PATTERN.match(source, pos)
        column = pos - line_start + 1
        if match is None:
            raise ParseError(f"Unexpected character {source[pos]!r}", line, column)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind in ("number", "ident", "punct"):
            tokens.append(Token(kind, match.group(), line, column))
        pos = match.end()
    tokens.append(Token(END, "", line, pos - line_start + 1))
    return tokens


class Parser:
    """Recursive descent over the token list; one instance per source text."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        self.arity: Optional[int] = None

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def _advance(self) -> Token:
        token = self.current
        if token.kind != END:
            self.pos += 1
        return token

    def _at(self, text: str) -> bool:
        return self.current.kind != END and self.current.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            found = self.current.text or "end of input"
            raise self._error(f"Expected '{text}', found '{found}'")
        return self._advance()

    def _expect_kind(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise self._error(f"Expected {what}, found '{found}'")
        return self._advance()

    def parse_spec(self) -> IvfSpec:
        self._expect("n")
        self._expect("=")
        arity_token = self._expect_kind("number", "an integer arity")
        if not arity_token.text.isdigit() or int(arity_token.text) < 1:
            raise self._error("Arity must be a positive integer", arity_token)
        self.arity = int(arity_token.text)
        self._expect(";")
        self._expect("L")
        self._expect(":")
        lower = self.parse_endpoint()
        self._expect(";")
        self._expect("U")
        self._expect(":")
        upper = self.parse_endpoint()
        if self._at(";"):
            self._advance()
        if self.current.kind != END:
            raise self._error(f"Unexpected '{self.current.text}' after the upper endpoint")
        try:
            return IvfSpec(self.arity, lower, upper, source=self.source)
        except ModelError as e:
            raise ParseError(str(e), arity_token.line, arity_token.column) from e

    def parse_endpoint(self) -> BranchedEndpoint:
        if not self._at("branch"):
            return BranchedEndpoint.single(self.parse_expr())
        branches = [self.parse_branch()]
        while self._at("|"):
            self._advance()
            branches.append(self.parse_branch())
        labels = [b.label for b in branches]
        for i, label in enumerate(labels):
            if label in labels[:i]:
                raise self._error(f"Duplicate branch label '{label}'")
        return BranchedEndpoint(tuple(branches))

    def parse_branch(self) -> Branch:
        self._expect("branch")
        label = self._expect_kind("ident", "a branch label").text
        guard = self.parse_guard() if self._at("[") else None
        self._expect(":")
        return Branch(label, self.parse_expr(), guard)

    def parse_guard(self) -> Guard:
        self._expect("[")
        variable = self._expect_kind("ident", "a coordinate such as x1")
        index = self._variable_index(variable)
        if not (self._at("<") or self._at(">") or self._at("=")):
            raise self._error("Guards support only <, > or = comparisons")
        relation = self._advance().text
        bound = self._expect_kind("number", "0")
        if float(bound.text) != 0.0:
            raise self._error("Guards compare a coordinate with 0 only", bound)
        if not self._at("]"):
            raise self._error("Guards hold a single sign condition; expected ']'")
        self._advance()
        return Guard(index, relation)

    def _variable_index(self, token: Token) -> int:
        match = VARIABLE_PATTERN.fullmatch(token.text)
        if match is None:
            raise self._error(f"Unknown identifier '{token.text}'", token)
        index = int(match.group(1))
        if index < 1 or index > self.arity:
            raise self._error(f"Variable {token.text} outside x1..x{self.arity}", token)
        return index

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self._at("+") or self._at("-"):
            op = self._advance().text
            node = Binary(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_unary()
        while self._at("*") or self._at("/"):
            op = self._advance().text
            node = Binary(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> Expr:
        if self._at("-"):
            self._advance()
            return Unary("neg", self.parse_unary())
        if self._at("+"):
            self._advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self._at("^"):
            self._advance()
            return Binary("^", base, self.parse_unary())
        return base

    def parse_atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self._advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise self._error(f"Constant {token.text} is not finite", token)
            return Const(value)
        if token.kind == "ident":
            self._advance()
            if token.text in FUNCTIONS:
                self._expect("(")
                operand = self.parse_expr()
                self._expect(")")
                return Unary(token.text, operand)
            if token.text in CONSTANTS:
                return Const(CONSTANTS[token.text])
            return Var(self._variable_index(token))
        if self._at("("):
            self._advance()
            node = self.parse_expr()
            self._expect(")")
            return node
        found = token.text or "end of input"
        raise self._error(f"Expected an expression, found '{found}'")


def parse(source: str) -> IvfSpec:
    """Parse spec text into an IvfSpec, raising ParseError with a position."""
    spec = Parser(source).parse_spec()
    logger.debug("Parsed spec of arity %d: %d lower / %d upper branches",
                 spec.arity, len(spec.lower.branches), len(spec.upper.branches))
    return spec
