"""Complete SAT search and factor witness decoding.

The solver is a plain DPLL: unit propagation over two watched literals
per clause, chronological backtracking, decisions on the lowest-numbered
unassigned variable trying true first.  No learning, no restarts, no
preprocessing.  Identical input always yields the identical verdict and
(when satisfiable) the identical total assignment.

The optional budget caps branch assignments: every decision and every
flip to the second polarity counts as one.
"""

from dataclasses import dataclass

from .dimacs import parse_dimacs
from .formula import Assignment, Cnf
from .pattern import matches, render_pattern
from .tableau import Tableau


class BudgetExceededError(Exception):
    def __init__(self, decisions: int) -> None:
        self.decisions = decisions
        super().__init__(f"gave up after {decisions} decisions")


class InvalidModelError(Exception):
    pass


@dataclass
class Verdict:
    satisfiable: bool
    assignment: Assignment | None = None


def solve(cnf: Cnf, budget: int | None = None) -> Verdict:
    """Decide cnf; on SAT the assignment is total over all its variables."""
    nv = cnf.variable_count
    if not cnf.clauses:
        return Verdict(True, {v: False for v in range(1, nv + 1)})

    # Literals are encoded as 2*var (positive) / 2*var+1 (negative), so
    # negation is ^1.  val[v] is 1 (true), 0 (false) or -1 (unassigned);
    # encoded literal lit is true iff val[lit >> 1] == (lit & 1) ^ 1.
    val = [-1] * (nv + 1)
    watches: list[list[int]] = [[] for _ in range(2 * nv + 2)]
    clauses: list[list[int]] = []
    root_units: list[int] = []
    for cl in cnf.clauses:
        if not cl:
            return Verdict(False)
        ecl = [(l << 1) if l > 0 else ((-l << 1) | 1) for l in cl]
        if len(ecl) == 1:
            root_units.append(ecl[0])
        else:
            ci = len(clauses)
            clauses.append(ecl)
            watches[ecl[0]].append(ci)
            watches[ecl[1]].append(ci)

    trail: list[int] = []
    qhead = 0

    def propagate() -> bool:
        """Run unit propagation to fixpoint; False on conflict."""
        nonlocal qhead
        while qhead < len(trail):
            flit = trail[qhead] ^ 1
            qhead += 1
            wl = watches[flit]
            i = 0
            while i < len(wl):
                ci = wl[i]
                cl = clauses[ci]
                if cl[0] == flit:
                    cl[0] = cl[1]
                    cl[1] = flit
                first = cl[0]
                fv = val[first >> 1]
                if fv == (first & 1) ^ 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(cl)):
                    lk = cl[k]
                    if val[lk >> 1] != (lk & 1):
                        cl[1] = lk
                        cl[k] = flit
                        watches[lk].append(ci)
                        moved = True
                        break
                if moved:
                    last = wl.pop()
                    if i < len(wl):
                        wl[i] = last
                    continue
                if fv == (first & 1):
                    return False
                val[first >> 1] = (first & 1) ^ 1
                trail.append(first)
                i += 1
        return True

    for unit in root_units:
        v, want = unit >> 1, (unit & 1) ^ 1
        if val[v] == -1:
            val[v] = want
            trail.append(unit)
        elif val[v] != want:
            return Verdict(False)
    if not propagate():
        return Verdict(False)

    stack: list[tuple[int, int, bool]] = []  # (trail length, var, flipped)
    head = 1
    decisions = 0

    while True:
        h = head
        while h <= nv and val[h] >= 0:
            h += 1
        if h > nv:
            assignment = {v: val[v] == 1 for v in range(1, nv + 1)}
            _assert_model(cnf, assignment)
            return Verdict(True, assignment)
        if budget is not None and decisions >= budget:
            raise BudgetExceededError(decisions)
        decisions += 1
        stack.append((len(trail), h, False))
        head = h
        val[h] = 1
        trail.append(h << 1)
        while not propagate():
            while True:
                if not stack:
                    return Verdict(False)
                tlen, dvar, flipped = stack.pop()
                for elit in trail[tlen:]:
                    val[elit >> 1] = -1
                del trail[tlen:]
                qhead = tlen
                if not flipped:
                    break
            if budget is not None and decisions >= budget:
                raise BudgetExceededError(decisions)
            decisions += 1
            stack.append((tlen, dvar, True))
            head = dvar
            val[dvar] = 0
            trail.append((dvar << 1) | 1)


def _assert_model(cnf: Cnf, assignment: Assignment) -> None:
    for cl in cnf.clauses:
        if not any(assignment[l] if l > 0 else not assignment[-l] for l in cl):
            raise AssertionError(f"model violates clause {cl}")


def solve_dimacs(text: str, budget: int | None = None) -> Verdict:
    cnf, _ = parse_dimacs(text)
    return solve(cnf, budget)


@dataclass(frozen=True)
class FactorWitness:
    multiplicand_value: int
    multiplier_value: int
    product_value: int


def _row_value(row: tuple[int, ...], assignment: Assignment, what: str) -> int:
    value = 0
    for var_id in row:
        bit = assignment.get(var_id)
        if bit is None:
            raise InvalidModelError(f"{what} variable {var_id} missing from model")
        value = (value << 1) | bit
    return value


def decode_witness(assignment: Assignment, tableau: Tableau) -> FactorWitness:
    """Read the factorization out of a model and check it is genuine."""
    a = _row_value(tableau.multiplicand, assignment, "multiplicand")
    b = _row_value(tableau.multiplier, assignment, "multiplier")
    p = _row_value(tableau.product, assignment, "product")
    if a * b != p:
        raise InvalidModelError(f"model decodes to {a} * {b} = {a * b}, not {p}")
    if a < 2 or b < 2:
        raise InvalidModelError(f"model decodes to trivial split {a} * {b}")
    if not matches(tableau.pattern, p):
        raise InvalidModelError(
            f"product {p} does not match pattern {render_pattern(tableau.pattern)}"
        )
    return FactorWitness(a, b, p)
