"""Side conditions over tableau rows.

Operands are either a named row of an existing tableau (P, A, B) or an
integer constant of explicit width.  Comparators expand to formulas over
the row's digit variables, most significant bit first, short shorter
operand zero-extended.  Conditions written in the small text DSL
("A >= 4 & A <= 6 | B >= 4 & B <= 6") compile against a tableau.
"""

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal, Union

from .formula import FALSE, TRUE, Formula, Var, conj, disj, iff, neg

if TYPE_CHECKING:
    from .tableau import Tableau


class ConditionError(ValueError):
    pass


class UnresolvableOperandError(ConditionError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(
            f"operand {name!r} does not name a tableau row (expected P, A or B)"
        )


class WidthMismatchError(ConditionError):
    pass


class EmptyRangeError(ConditionError):
    def __init__(self, lower: int, upper: int, mode: str) -> None:
        self.lower = lower
        self.upper = upper
        self.mode = mode
        super().__init__(
            f"{mode} interval ({lower}, {upper}) contains no integers"
        )


class ConditionParseError(ConditionError):
    pass


@dataclass(frozen=True)
class RowRef:
    name: str


@dataclass(frozen=True)
class Constant:
    value: int
    width: int


Operand = Union[RowRef, Constant]

RangeMode = Literal["closed", "open"]


def constant_of(value: int) -> Constant:
    if value < 0:
        raise WidthMismatchError(f"constants must be nonnegative, got {value}")
    return Constant(value, max(value.bit_length(), 1))


def operand_bits(operand: Operand, tableau: "Tableau") -> list[Formula]:
    """Resolve an operand to bit formulas, most significant first."""
    if isinstance(operand, RowRef):
        rows = {
            "P": tableau.product,
            "A": tableau.multiplicand,
            "B": tableau.multiplier,
        }
        row = rows.get(operand.name)
        if row is None:
            raise UnresolvableOperandError(operand.name)
        return [Var(v) for v in row]
    if isinstance(operand, Constant):
        if operand.width < 1:
            raise WidthMismatchError(
                f"constant width must be positive, got {operand.width}"
            )
        if operand.value < 0 or operand.value.bit_length() > operand.width:
            raise WidthMismatchError(
                f"value {operand.value} does not fit in {operand.width} bits"
            )
        return [
            TRUE if (operand.value >> (operand.width - 1 - i)) & 1 else FALSE
            for i in range(operand.width)
        ]
    raise UnresolvableOperandError(repr(operand))


def _aligned(xs: list[Formula], ys: list[Formula]) -> tuple[list[Formula], list[Formula]]:
    width = max(len(xs), len(ys))
    pad_x = [FALSE] * (width - len(xs))
    pad_y = [FALSE] * (width - len(ys))
    return pad_x + xs, pad_y + ys


def _gt_bits(xs: list[Formula], ys: list[Formula], i: int) -> Formula:
    # x > y over equal-width MSB-first bits: strictly greater at this bit,
    # or not strictly smaller here and greater somewhere below.
    if i == len(xs):
        return FALSE
    x, y = xs[i], ys[i]
    here = conj(x, neg(y))
    not_smaller = neg(conj(y, neg(x)))
    return disj(here, conj(not_smaller, _gt_bits(xs, ys, i + 1)))


def encode_gt(left: Operand, right: Operand, tableau: "Tableau") -> Formula:
    xs, ys = _aligned(operand_bits(left, tableau), operand_bits(right, tableau))
    return _gt_bits(xs, ys, 0)


def encode_lt(left: Operand, right: Operand, tableau: "Tableau") -> Formula:
    return encode_gt(right, left, tableau)


def encode_ge(left: Operand, right: Operand, tableau: "Tableau") -> Formula:
    return neg(encode_gt(right, left, tableau))


def encode_le(left: Operand, right: Operand, tableau: "Tableau") -> Formula:
    return neg(encode_gt(left, right, tableau))


def encode_eq(left: Operand, right: Operand, tableau: "Tableau") -> Formula:
    xs, ys = _aligned(operand_bits(left, tableau), operand_bits(right, tableau))
    return conj(*(iff(x, y) for x, y in zip(xs, ys)))


def encode_range(
    operand: Operand,
    lower: Union[int, Constant],
    upper: Union[int, Constant],
    mode: RangeMode,
    tableau: "Tableau",
) -> Formula:
    """Interval membership: closed keeps the endpoints, open drops them."""
    lo = constant_of(lower) if isinstance(lower, int) else lower
    hi = constant_of(upper) if isinstance(upper, int) else upper
    if mode == "closed":
        if hi.value < lo.value:
            raise EmptyRangeError(lo.value, hi.value, mode)
        return conj(
            encode_ge(operand, lo, tableau), encode_le(operand, hi, tableau)
        )
    if mode == "open":
        if hi.value <= lo.value + 1:
            raise EmptyRangeError(lo.value, hi.value, mode)
        return conj(
            encode_gt(operand, lo, tableau), encode_lt(operand, hi, tableau)
        )
    raise ConditionError(f"unknown range mode {mode!r}")


def encode_nontrivial(operand: Operand, tableau: "Tableau") -> Formula:
    """The row's value is at least 2: some bit above the units bit is set."""
    bits = operand_bits(operand, tableau)
    return disj(*bits[:-1])


@dataclass(frozen=True)
class Compare:
    op: str  # one of > >= < <= ==
    left: Operand
    right: Operand


@dataclass(frozen=True)
class FixedDigit:
    row: str
    index: int  # 1-based, most significant digit first
    value: bool


@dataclass(frozen=True)
class DigitEq:
    row_left: str
    index_left: int
    row_right: str
    index_right: int


@dataclass(frozen=True)
class CondNot:
    item: "ConditionExpr"


@dataclass(frozen=True)
class CondAnd:
    items: tuple["ConditionExpr", ...]


@dataclass(frozen=True)
class CondOr:
    items: tuple["ConditionExpr", ...]


ConditionExpr = Union[Compare, FixedDigit, DigitEq, CondNot, CondAnd, CondOr]

_COMPARE_ENCODERS = {
    ">": encode_gt,
    ">=": encode_ge,
    "<": encode_lt,
    "<=": encode_le,
    "==": encode_eq,
}


def _digit_bit(row: str, index: int, tableau: "Tableau") -> Formula:
    bits = operand_bits(RowRef(row), tableau)
    if not 1 <= index <= len(bits):
        raise WidthMismatchError(
            f"digit index {index} out of range for row {row} "
            f"of width {len(bits)}"
        )
    return bits[index - 1]


def compile_condition(expr: ConditionExpr, tableau: "Tableau") -> Formula:
    """Lower a condition expression to a formula over tableau variables."""
    if isinstance(expr, Compare):
        encoder = _COMPARE_ENCODERS.get(expr.op)
        if encoder is None:
            raise ConditionError(f"unknown comparison operator {expr.op!r}")
        return encoder(expr.left, expr.right, tableau)
    if isinstance(expr, FixedDigit):
        bit = _digit_bit(expr.row, expr.index, tableau)
        return bit if expr.value else neg(bit)
    if isinstance(expr, DigitEq):
        return iff(
            _digit_bit(expr.row_left, expr.index_left, tableau),
            _digit_bit(expr.row_right, expr.index_right, tableau),
        )
    if isinstance(expr, CondNot):
        return neg(compile_condition(expr.item, tableau))
    if isinstance(expr, CondAnd):
        return conj(*(compile_condition(i, tableau) for i in expr.items))
    if isinstance(expr, CondOr):
        return disj(*(compile_condition(i, tableau) for i in expr.items))
    raise ConditionError(f"not a condition expression: {expr!r}")


_TOKEN_RE = re.compile(r"\s*(>=|<=|==|[><=!&|()]|\d+|[A-Za-z]+)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].strip()
            raise ConditionParseError(f"unexpected character {rest[0]!r} in condition")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over: or > and > not > atom; atoms are comparisons."""

    def __init__(self, tokens: list[str]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise ConditionParseError("condition ends unexpectedly")
        self.pos += 1
        return token

    def expect(self, token: str) -> None:
        got = self.take()
        if got != token:
            raise ConditionParseError(f"expected {token!r}, got {got!r}")

    def parse(self) -> ConditionExpr:
        expr = self.or_expr()
        if self.peek() is not None:
            raise ConditionParseError(f"trailing token {self.peek()!r}")
        return expr

    def or_expr(self) -> ConditionExpr:
        items = [self.and_expr()]
        while self.peek() == "|":
            self.take()
            items.append(self.and_expr())
        return items[0] if len(items) == 1 else CondOr(tuple(items))

    def and_expr(self) -> ConditionExpr:
        items = [self.not_expr()]
        while self.peek() == "&":
            self.take()
            items.append(self.not_expr())
        return items[0] if len(items) == 1 else CondAnd(tuple(items))

    def not_expr(self) -> ConditionExpr:
        if self.peek() == "!":
            self.take()
            return CondNot(self.not_expr())
        return self.atom()

    def atom(self) -> ConditionExpr:
        if self.peek() == "(":
            self.take()
            expr = self.or_expr()
            self.expect(")")
            return expr
        return self.comparison()

    def comparison(self) -> ConditionExpr:
        left = self.operand()
        op = self.take()
        if op == "=":
            op = "=="
        if op not in _COMPARE_ENCODERS:
            raise ConditionParseError(f"expected a comparison operator, got {op!r}")
        right = self.operand()
        return Compare(op, left, right)

    def operand(self) -> Operand:
        token = self.take()
        if token.isdigit():
            return constant_of(int(token))
        if token.isalpha():
            return RowRef(token)
        raise ConditionParseError(f"expected a row name or integer, got {token!r}")


def parse_condition(text: str) -> ConditionExpr:
    """Parse the condition DSL.

    Grammar: or-terms separated by '|', and-terms by '&', negation '!',
    parentheses, comparisons  <row|int> (> >= < <= == =) <row|int>.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ConditionParseError("empty condition")
    return _Parser(tokens).parse()
