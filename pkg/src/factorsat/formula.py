"""Propositional formulas and CNF lowering.

Formula nodes are immutable and compared structurally.  The smart
constructors (neg, conj, disj, iff, implies) fold constants on the way
in, so templates instantiated with fixed bits degenerate to smaller
formulas instead of carrying dead branches.

tseitin() lowers a list of asserted formulas to CNF with one auxiliary
variable per distinct internal connective node (plain bidirectional
encoding; no polarity specialization of subformulas).
"""

from dataclasses import dataclass, field
from typing import Iterable, Mapping


class FormulaError(ValueError):
    pass


class UnassignedVariableError(FormulaError):
    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(f"variable x{index} has no assigned value")


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Var(Formula):
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise FormulaError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    children: tuple[Formula, ...]


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)

Assignment = dict[int, bool]


def var(index: int) -> Var:
    return Var(index)


def neg(f: Formula) -> Formula:
    if type(f) is Const:
        return FALSE if f.value else TRUE
    if type(f) is Not:
        return f.child
    return Not(f)


def conj(*formulas: Formula) -> Formula:
    """And of the arguments; constants fold, 0/1 children collapse."""
    kept = []
    for f in formulas:
        if type(f) is Const:
            if not f.value:
                return FALSE
        else:
            kept.append(f)
    if not kept:
        return TRUE
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept))


def disj(*formulas: Formula) -> Formula:
    """Or of the arguments; constants fold, 0/1 children collapse."""
    kept = []
    for f in formulas:
        if type(f) is Const:
            if f.value:
                return TRUE
        else:
            kept.append(f)
    if not kept:
        return FALSE
    if len(kept) == 1:
        return kept[0]
    return Or(tuple(kept))


def iff(left: Formula, right: Formula) -> Formula:
    if type(left) is Const:
        return right if left.value else neg(right)
    if type(right) is Const:
        return left if right.value else neg(left)
    return Iff(left, right)


def implies(left: Formula, right: Formula) -> Formula:
    if type(left) is Const:
        return right if left.value else TRUE
    if type(right) is Const:
        return TRUE if right.value else neg(left)
    return Implies(left, right)


def evaluate(f: Formula, assignment: Mapping[int, bool]) -> bool:
    """Truth value of f under a (total enough) assignment."""
    t = type(f)
    if t is Const:
        return f.value
    if t is Var:
        try:
            return assignment[f.index]
        except KeyError:
            raise UnassignedVariableError(f.index) from None
    if t is Not:
        return not evaluate(f.child, assignment)
    if t is And:
        return all(evaluate(c, assignment) for c in f.children)
    if t is Or:
        return any(evaluate(c, assignment) for c in f.children)
    if t is Iff:
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    if t is Implies:
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    raise FormulaError(f"not a formula node: {f!r}")


def variables(f: Formula) -> set[int]:
    """All variable indices occurring in f."""
    out: set[int] = set()
    _collect_vars(f, out)
    return out


def _collect_vars(f: Formula, out: set[int]) -> None:
    t = type(f)
    if t is Var:
        out.add(f.index)
    elif t is Not:
        _collect_vars(f.child, out)
    elif t is And or t is Or:
        for c in f.children:
            _collect_vars(c, out)
    elif t is Iff or t is Implies:
        _collect_vars(f.left, out)
        _collect_vars(f.right, out)


def token_count(f: Formula) -> int:
    """Length of the fully parenthesized rendering of f.

    Each variable, constant, connective and bracket counts as one token.
    """
    t = type(f)
    if t is Const or t is Var:
        return 1
    if t is Not:
        return 1 + token_count(f.child)
    if t is And or t is Or:
        return 2 + (len(f.children) - 1) + sum(token_count(c) for c in f.children)
    if t is Iff or t is Implies:
        return 3 + token_count(f.left) + token_count(f.right)
    raise FormulaError(f"not a formula node: {f!r}")


def render(f: Formula, names: Mapping[int, str] | None = None) -> str:
    """Fully parenthesized text form, one symbol per token."""
    t = type(f)
    if t is Const:
        return "⊤" if f.value else "⊥"
    if t is Var:
        return names[f.index] if names is not None else f"x{f.index}"
    if t is Not:
        return "¬" + render(f.child, names)
    if t is And:
        return "(" + "∧".join(render(c, names) for c in f.children) + ")"
    if t is Or:
        return "(" + "∨".join(render(c, names) for c in f.children) + ")"
    if t is Iff:
        return "(" + render(f.left, names) + "⟺" + render(f.right, names) + ")"
    if t is Implies:
        return "(" + render(f.left, names) + "⟹" + render(f.right, names) + ")"
    raise FormulaError(f"not a formula node: {f!r}")


@dataclass
class Cnf:
    """Clause list in DIMACS convention: nonzero ints, sign is polarity."""

    variable_count: int
    clauses: list[list[int]] = field(default_factory=list)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def _max_var(f: Formula) -> int:
    t = type(f)
    if t is Var:
        return f.index
    if t is Not:
        return _max_var(f.child)
    if t is And or t is Or:
        return max(_max_var(c) for c in f.children)
    if t is Iff or t is Implies:
        return max(_max_var(f.left), _max_var(f.right))
    return 0


def tseitin(
    formulas: Iterable[Formula], variable_count: int | None = None
) -> tuple[Cnf, dict[Formula, int]]:
    """Lower asserted formulas to an equisatisfiable CNF.

    Every model of the result, restricted to the input variables, satisfies
    all the formulas, and every satisfying assignment of the formulas
    extends to exactly one model.  Auxiliary variables are numbered above
    variable_count (or above the largest variable seen, whichever is
    larger), one per distinct internal node, in first-encounter order.
    """
    fs = list(formulas)
    base = variable_count or 0
    for f in fs:
        m = _max_var(f)
        if m > base:
            base = m

    clauses: list[list[int]] = []
    aux_map: dict[Formula, int] = {}
    next_var = base
    true_lit = 0

    def fresh() -> int:
        nonlocal next_var
        next_var += 1
        return next_var

    def true_var() -> int:
        # One pinned-true variable stands in for constants that survive
        # folding (only possible when a whole asserted formula is constant).
        nonlocal true_lit
        if not true_lit:
            true_lit = fresh()
            clauses.append([true_lit])
        return true_lit

    def encode(f: Formula) -> int:
        t = type(f)
        if t is Var:
            return f.index
        if t is Not:
            return -encode(f.child)
        if t is Const:
            return true_var() if f.value else -true_var()
        v = aux_map.get(f)
        if v is not None:
            return v
        if t is And:
            lits = [encode(c) for c in f.children]
            v = fresh()
            aux_map[f] = v
            for lit in lits:
                clauses.append([-v, lit])
            clauses.append([v] + [-lit for lit in lits])
            return v
        if t is Or:
            lits = [encode(c) for c in f.children]
            v = fresh()
            aux_map[f] = v
            for lit in lits:
                clauses.append([v, -lit])
            clauses.append([-v] + lits)
            return v
        if t is Iff:
            a = encode(f.left)
            b = encode(f.right)
            v = fresh()
            aux_map[f] = v
            clauses.append([-v, -a, b])
            clauses.append([-v, a, -b])
            clauses.append([v, a, b])
            clauses.append([v, -a, -b])
            return v
        if t is Implies:
            a = encode(f.left)
            b = encode(f.right)
            v = fresh()
            aux_map[f] = v
            clauses.append([-v, -a, b])
            clauses.append([v, a])
            clauses.append([v, -b])
            return v
        raise FormulaError(f"not a formula node: {f!r}")

    def assert_top(f: Formula) -> None:
        # Top-level assertions need no root auxiliary: conjunctions split,
        # disjunctions/literals/biconditionals become direct clauses.
        t = type(f)
        if t is Const:
            if not f.value:
                v = true_var()
                clauses.append([-v])
            return
        if t is And:
            for c in f.children:
                assert_top(c)
            return
        if t is Var:
            clauses.append([f.index])
            return
        if t is Not:
            clauses.append([-encode(f.child)])
            return
        if t is Or:
            clauses.append([encode(c) for c in f.children])
            return
        if t is Iff:
            a = encode(f.left)
            b = encode(f.right)
            clauses.append([-a, b])
            clauses.append([a, -b])
            return
        if t is Implies:
            clauses.append([-encode(f.left), encode(f.right)])
            return
        raise FormulaError(f"not a formula node: {f!r}")

    for f in fs:
        assert_top(f)

    return Cnf(next_var, clauses), aux_map
