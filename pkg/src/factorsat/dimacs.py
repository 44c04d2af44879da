"""DIMACS CNF text, with variable roles carried in comments.

Emitted files start with one "c var <index> <role>" comment per mapped
variable, then the "p cnf" header, then one clause per line.  parse and
emit round-trip byte for byte on files this module produced.
"""

from typing import Mapping

from .formula import Cnf


class DimacsError(ValueError):
    pass


def emit_dimacs(cnf: Cnf, roles: Mapping[int, str] | None = None) -> str:
    lines = []
    if roles:
        for index in sorted(roles):
            lines.append(f"c var {index} {roles[index]}")
    lines.append(f"p cnf {cnf.variable_count} {len(cnf.clauses)}")
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> tuple[Cnf, dict[int, str]]:
    """Parse DIMACS CNF text, returning the formula and any role comments."""
    roles: dict[int, str] = {}
    header: tuple[int, int] | None = None
    pending: list[int] = []
    clauses: list[list[int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 4 and parts[1] == "var" and parts[2].isdigit():
                roles[int(parts[2])] = parts[3]
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsError(f"line {line_no}: malformed problem line {raw!r}")
            if header is not None:
                raise DimacsError(f"line {line_no}: second problem line")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(
                    f"line {line_no}: malformed problem line {raw!r}"
                ) from None
            continue
        if header is None:
            raise DimacsError(f"line {line_no}: clause before problem line")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(
                    f"line {line_no}: bad literal token {token!r}"
                ) from None
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                if abs(lit) > header[0]:
                    raise DimacsError(
                        f"line {line_no}: literal {lit} exceeds declared "
                        f"variable count {header[0]}"
                    )
                pending.append(lit)
    if header is None:
        raise DimacsError("no problem line found")
    if pending:
        raise DimacsError("final clause is not zero-terminated")
    if len(clauses) != header[1]:
        raise DimacsError(
            f"declared {header[1]} clauses but found {len(clauses)}"
        )
    return Cnf(header[0], clauses), roles


def emit_model(assignment: Mapping[int, bool]) -> str:
    """Render an assignment as a solver model line ("v ... 0")."""
    lits = [index if assignment[index] else -index for index in sorted(assignment)]
    return "v " + " ".join(str(lit) for lit in lits) + " 0\n"


def parse_model(text: str) -> dict[int, bool]:
    """Read an assignment from solver output containing "v ... 0" lines."""
    assignment: dict[int, bool] = {}
    saw_model_line = False
    done = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line.startswith("v"):
            continue
        saw_model_line = True
        for token in line.split()[1:]:
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"bad literal token {token!r} in model line") from None
            if lit == 0:
                done = True
                break
            assignment[abs(lit)] = lit > 0
        if done:
            break
    if not saw_model_line:
        raise DimacsError("no model lines (\"v ...\") found")
    if not done:
        raise DimacsError("model lines are not zero-terminated")
    return assignment
