"""Multiplication tableau over digit variables.

An n-digit product pattern gets a schoolbook multiplication layout:
one prodline row per multiplier digit (the multiplicand AND-ed with that
digit, shifted left), then a chain of ripple-carry additions folding the
prodlines into the product row.  Every cell is a CNF variable; rows are
stored most significant bit first.

Factor widths: an n-digit composite always has a nontrivial split with
the multiplicand in n-1 digits and the multiplier in ceil(n/2) digits,
so those widths are complete.  Prodline rows are truncated to the
product's n columns; the bit products that would land beyond the top
column are banned outright (group (c)), which is sound because any such
bit forces the true product to need more than n digits.
"""

from dataclasses import dataclass
from typing import Iterable

from .conditions import RowRef, encode_nontrivial
from .formula import (
    FALSE,
    Cnf,
    Formula,
    Var,
    conj,
    disj,
    iff,
    neg,
    token_count,
    tseitin,
)
from .pattern import BitPattern, Digit


class WidthTooSmallError(ValueError):
    def __init__(self, n: int) -> None:
        self.n = n
        super().__init__(
            f"need a pattern of at least 2 digits to factor, got {n}"
        )


@dataclass(frozen=True)
class FactorWidths:
    multiplicand_bits: int
    multiplier_bits: int


def factor_widths(n: int) -> FactorWidths:
    """Factor row widths sufficient for every nontrivial split of n digits."""
    if n < 2:
        raise WidthTooSmallError(n)
    return FactorWidths(n - 1, (n + 1) // 2)


def sum_parity(x: Formula, y: Formula, c: Formula) -> Formula:
    """Sum bit of a full adder: true on an odd number of true inputs.

    Disjunction over the odd-cardinality subsets, each written as the
    subset's conjunction with no remaining input true.
    """
    return disj(
        conj(x, y, c),
        conj(x, neg(disj(y, c))),
        conj(y, neg(disj(x, c))),
        conj(c, neg(disj(x, y))),
    )


def carry_majority(x: Formula, y: Formula, c: Formula) -> Formula:
    """Carry bit of a full adder: true when at least two inputs are true."""
    return disj(conj(x, y), conj(x, c), conj(y, c))


@dataclass
class Tableau:
    """Variable layout for one pattern.  Rows are MSB first."""

    pattern: BitPattern
    n: int
    widths: FactorWidths
    product: tuple[int, ...]
    multiplicand: tuple[int, ...]
    multiplier: tuple[int, ...]
    prodlines: tuple[tuple[int, ...], ...]
    carries: tuple[tuple[int, ...], ...]
    sumlines: tuple[tuple[int, ...], ...]
    roles: dict[int, str]
    var_count: int

    def prodline_shift(self, j: int) -> int:
        """Column offset of prodline j (1-based): shifted left j-1 places."""
        return j - 1

    def multiplicand_var(self, i: int) -> int:
        """Multiplicand variable holding bit 2**i."""
        return self.multiplicand[len(self.multiplicand) - 1 - i]

    def multiplier_var(self, i: int) -> int:
        return self.multiplier[len(self.multiplier) - 1 - i]

    def product_var(self, i: int) -> int:
        return self.product[len(self.product) - 1 - i]


def build_tableau(pattern: BitPattern) -> Tableau:
    n = len(pattern)
    widths = factor_widths(n)
    m_a, m_b = widths.multiplicand_bits, widths.multiplier_bits

    roles: dict[int, str] = {}
    counter = 0

    def row(width: int, role: str) -> tuple[int, ...]:
        nonlocal counter
        ids = tuple(range(counter + 1, counter + 1 + width))
        counter += width
        for display_index, var_id in enumerate(ids, start=1):
            roles[var_id] = f"{role}{display_index}"
        return ids

    product = row(n, "P")
    multiplicand = row(m_a, "A")
    multiplier = row(m_b, "B")

    def prodline_width(j: int) -> int:
        return min(m_a, n - (j - 1))

    prodlines: list[tuple[int, ...]] = []
    carries: list[tuple[int, ...]] = []
    sumlines: list[tuple[int, ...]] = []
    if m_b == 1:
        prodlines.append(row(prodline_width(1), "PL1."))
    else:
        for step in range(1, m_b):
            if step == 1:
                prodlines.append(row(prodline_width(1), "PL1."))
            prodlines.append(row(prodline_width(step + 1), f"PL{step + 1}."))
            carries.append(row(n - 1, f"R{step}."))
            if step < m_b - 1:
                sumlines.append(row(n, f"S{step}."))

    return Tableau(
        pattern=pattern,
        n=n,
        widths=widths,
        product=product,
        multiplicand=multiplicand,
        multiplier=multiplier,
        prodlines=tuple(prodlines),
        carries=tuple(carries),
        sumlines=tuple(sumlines),
        roles=roles,
        var_count=counter,
    )


def digit_var_count(tableau: Tableau) -> int:
    """Variables carrying number digits: product, factors, prodline cells.

    Carry and sumline rows are adder scratch space, not digits of any of
    the numbers involved, so they are not counted.
    """
    return (
        tableau.n
        + tableau.widths.multiplicand_bits
        + tableau.widths.multiplier_bits
        + sum(len(line) for line in tableau.prodlines)
    )


def _row_bit(row: tuple[int, ...], shift: int, col: int) -> Formula:
    """Bit formula of a shifted row at an absolute column (0 = units)."""
    width = len(row)
    if shift <= col < shift + width:
        return Var(row[shift + width - 1 - col])
    return FALSE


def _schema_formulas(tableau: Tableau) -> list[Formula]:
    """Multiplication constraints: prodlines, additions, overflow bans."""
    t = tableau
    n = t.n
    m_a, m_b = t.widths.multiplicand_bits, t.widths.multiplier_bits
    fs: list[Formula] = []

    # (a) prodline j holds (multiplicand AND multiplier bit j), shifted
    for j, line in enumerate(t.prodlines, start=1):
        shift = j - 1
        b = Var(t.multiplier_var(j - 1))
        for k, cell in enumerate(line):
            a = Var(t.multiplicand_var(len(line) - 1 - k))
            fs.append(iff(Var(cell), conj(a, b)))

    if m_b == 1:
        # Single prodline: the product is the prodline, zero-extended.
        for col in range(n):
            fs.append(iff(Var(t.product_var(col)), _row_bit(t.prodlines[0], 0, col)))
        return fs

    def addend_rows(step: int) -> tuple[tuple[tuple[int, ...], int], tuple[tuple[int, ...], int]]:
        x = (t.prodlines[0], 0) if step == 1 else (t.sumlines[step - 2], 0)
        y = (t.prodlines[step], step)
        return x, y

    # (b) ripple-carry additions, columns low to high, sum before carry
    for step in range(1, m_b):
        (x_row, x_shift), (y_row, y_shift) = addend_rows(step)
        result = t.product if step == m_b - 1 else t.sumlines[step - 1]
        carry = t.carries[step - 1]
        for col in range(n):
            x = _row_bit(x_row, x_shift, col)
            y = _row_bit(y_row, y_shift, col)
            c_in = FALSE if col == 0 else Var(carry[n - 1 - col])
            fs.append(iff(Var(result[n - 1 - col]), sum_parity(x, y, c_in)))
            if col < n - 1:
                fs.append(iff(Var(carry[n - 2 - col]), carry_majority(x, y, c_in)))

    # (c) overflow bans: no carry may leave the top column, and no bit
    # product may land beyond it (truncated prodline cells)
    for step in range(1, m_b):
        (x_row, x_shift), (y_row, y_shift) = addend_rows(step)
        carry = t.carries[step - 1]
        fs.append(
            neg(
                carry_majority(
                    _row_bit(x_row, x_shift, n - 1),
                    _row_bit(y_row, y_shift, n - 1),
                    Var(carry[0]),
                )
            )
        )
    for j in range(2, m_b + 1):
        b = Var(t.multiplier_var(j - 1))
        for i in range(m_a - 1, len(t.prodlines[j - 1]) - 1, -1):
            fs.append(neg(conj(Var(t.multiplicand_var(i)), b)))

    return fs


def _unit_formulas(tableau: Tableau, pattern: BitPattern) -> list[Formula]:
    """Fixed product digits, most significant first."""
    fs: list[Formula] = []
    for var_id, digit in zip(tableau.product, pattern.digits):
        if digit is Digit.ONE:
            fs.append(Var(var_id))
        elif digit is Digit.ZERO:
            fs.append(neg(Var(var_id)))
    return fs


def multiplication_constraints(tableau: Tableau, pattern: BitPattern) -> list[Formula]:
    """All tableau constraints plus the pattern's fixed-digit units."""
    return _schema_formulas(tableau) + _unit_formulas(tableau, pattern)


@dataclass
class Encoding:
    """A compiled instance: tableau, source formulas, CNF, variable roles."""

    tableau: Tableau
    schema_formulas: list[Formula]
    unit_formulas: list[Formula]
    condition_formulas: list[Formula]
    cnf: Cnf
    aux_map: dict[Formula, int]
    roles: dict[int, str]

    @property
    def formulas(self) -> list[Formula]:
        return self.schema_formulas + self.unit_formulas + self.condition_formulas

    @property
    def token_count(self) -> int:
        return sum(token_count(f) for f in self.formulas)

    @property
    def max_schema_tokens(self) -> int:
        """Largest single multiplication constraint, in tokens.

        Templates have bounded arity, so this does not grow with width.
        """
        return max(token_count(f) for f in self.schema_formulas)


def encode_composite(
    pattern: BitPattern, extra_conditions: Iterable[Formula] = ()
) -> Encoding:
    """Compile "some completion of the pattern is composite" to CNF.

    Satisfying assignments are exactly the factorizations P = A * B with
    A, B >= 2 and P matching the pattern.  Extra condition formulas over
    the tableau's variables are conjoined when given.
    """
    tableau = build_tableau(pattern)
    schema = _schema_formulas(tableau)
    units = _unit_formulas(tableau, pattern)
    conditions = [
        encode_nontrivial(RowRef("A"), tableau),
        encode_nontrivial(RowRef("B"), tableau),
    ]
    conditions.extend(extra_conditions)
    cnf, aux_map = tseitin(schema + units + conditions, tableau.var_count)
    roles = dict(tableau.roles)
    for ordinal, var_id in enumerate(
        range(tableau.var_count + 1, cnf.variable_count + 1), start=1
    ):
        roles[var_id] = f"AUX{ordinal}"
    return Encoding(
        tableau=tableau,
        schema_formulas=schema,
        unit_formulas=units,
        condition_formulas=conditions,
        cnf=cnf,
        aux_map=aux_map,
        roles=roles,
    )
