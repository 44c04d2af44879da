"""Command line interface.

Subcommands: encode (write DIMACS + JSON sidecar), solve (verdict and
factor witness), verify (oracle cross-check), bench (size measurements).

Exit codes: 0 success/SAT, 1 UNSAT, 2 bad input, 3 decision budget
exceeded, 4 invalid model, 5 verification disagreement.
"""

import argparse
import csv
import json
import os
import sys
from typing import Sequence

from . import harness
from .conditions import ConditionError, compile_condition, parse_condition
from .dimacs import DimacsError, emit_dimacs, parse_model
from .formula import FormulaError
from .pattern import BitPattern, PatternError, parse_pattern, pattern_from_vector, render_pattern
from .solver import BudgetExceededError, InvalidModelError, decode_witness, solve
from .tableau import Encoding, WidthTooSmallError, build_tableau, digit_var_count, encode_composite

EXIT_SAT = 0
EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INVALID_MODEL = 4
EXIT_DISAGREEMENT = 5

CONDITION_GRAMMAR = """\
condition DSL:
  or-expr   := and-expr ('|' and-expr)*
  and-expr  := not-expr ('&' not-expr)*
  not-expr  := '!' not-expr | atom
  atom      := '(' or-expr ')' | operand op operand
  operand   := 'P' | 'A' | 'B' | decimal integer
  op        := '>' | '>=' | '<' | '<=' | '==' | '='
example: "A >= 4 & A <= 6 | B >= 4 & B <= 6"
"""


class InputError(Exception):
    """Bad flag combination or value; maps to exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorsat",
        description="Factorization problems over bit patterns, via SAT.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pattern_flags(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--pattern", help="digits over 0/1/- (MSB first)")
        group.add_argument(
            "--pattern-vector",
            help="same digits as a comma-separated vector, e.g. 1,0,1,-",
        )
        p.add_argument(
            "--problem",
            choices=["composite", "factoring"],
            default="composite",
            help="composite: some completion factors nontrivially; "
            "factoring: additionally a divisor lies in [--lower, --upper]",
        )
        p.add_argument("--lower", type=int, help="divisor interval lower bound")
        p.add_argument("--upper", type=int, help="divisor interval upper bound")
        p.add_argument(
            "--mode",
            choices=["closed", "open"],
            default="closed",
            help="interval mode: closed keeps endpoints, open drops them",
        )
        p.add_argument(
            "--cond",
            help="extra side condition in the DSL (see --help-cond)",
        )

    p_encode = sub.add_parser("encode", help="write DIMACS CNF plus JSON sidecar")
    add_pattern_flags(p_encode)
    p_encode.add_argument("-o", "--output", required=True, help="DIMACS output path")
    p_encode.set_defaults(func=_run_encode)

    p_solve = sub.add_parser("solve", help="decide an instance and print a witness")
    add_pattern_flags(p_solve)
    p_solve.add_argument("--budget", type=int, help="decision budget for the search")
    p_solve.add_argument(
        "--solver",
        choices=["internal", "external-dimacs"],
        default="internal",
        help="internal DPLL, or decode a model produced by an external solver",
    )
    p_solve.add_argument("--model", help="model file ('v ... 0' lines) for external-dimacs")
    p_solve.set_defaults(func=_run_solve)

    p_verify = sub.add_parser("verify", help="cross-check encode+solve against the oracle")
    p_verify.add_argument(
        "--problem",
        choices=["composite", "factoring"],
        default="composite",
    )
    p_verify.add_argument(
        "--exhaustive",
        action="store_true",
        help="composite only: every pattern up to --max-bits",
    )
    p_verify.add_argument("--max-bits", type=int, default=6, help="pattern length cap (composite)")
    p_verify.add_argument("--max-n", type=int, default=14, help="N <= 2**max_n (factoring)")
    p_verify.add_argument("--samples", type=int, default=500, help="sample count")
    p_verify.add_argument("--seed", type=int, help="RNG seed (default: $FACTORSAT_SEED or 0)")
    p_verify.add_argument("--budget", type=int, help="decision budget per instance")
    p_verify.add_argument("--csv", help="write disagreement rows here instead of stdout")
    p_verify.set_defaults(func=_run_verify)

    p_bench = sub.add_parser("bench", help="encoding size by width, CSV output")
    p_bench.add_argument("--min-bits", type=int, default=2)
    p_bench.add_argument("--max-bits", type=int, default=64)
    p_bench.add_argument("-o", "--output", help="CSV output path (default stdout)")
    p_bench.set_defaults(func=_run_bench)

    p_cond = sub.add_parser("help-cond", help="print the condition DSL grammar")
    p_cond.set_defaults(func=lambda args: print(CONDITION_GRAMMAR) or EXIT_OK)

    return parser


def _resolve_pattern(args: argparse.Namespace) -> BitPattern:
    if args.pattern_vector is not None:
        return pattern_from_vector(args.pattern_vector.split(","))
    return parse_pattern(args.pattern)


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FACTORSAT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"FACTORSAT_SEED must be an integer, got {env!r}") from None
    return 0


def _build_encoding(args: argparse.Namespace) -> Encoding:
    pattern = _resolve_pattern(args)
    tableau = build_tableau(pattern)  # same variable ids as encode_composite's
    extras = []
    if args.problem == "factoring":
        if args.lower is None or args.upper is None:
            raise InputError("--problem factoring requires --lower and --upper")
        extras.append(
            harness.factoring_condition(tableau, args.lower, args.upper, args.mode)
        )
    elif args.lower is not None or args.upper is not None:
        raise InputError("--lower/--upper only apply to --problem factoring")
    if args.cond is not None:
        extras.append(compile_condition(parse_condition(args.cond), tableau))
    return encode_composite(pattern, extras)


def _run_encode(args: argparse.Namespace) -> int:
    encoding = _build_encoding(args)
    tableau = encoding.tableau
    with open(args.output, "w") as handle:
        handle.write(emit_dimacs(encoding.cnf, encoding.roles))
    sidecar = {
        "pattern": render_pattern(tableau.pattern),
        "n": tableau.n,
        "widths": [
            tableau.widths.multiplicand_bits,
            tableau.widths.multiplier_bits,
        ],
        "digit_var_count": digit_var_count(tableau),
        "total_vars": encoding.cnf.variable_count,
        "clause_count": len(encoding.cnf.clauses),
        "token_count": encoding.token_count,
        "varmap": {str(i): encoding.roles[i] for i in sorted(encoding.roles)},
    }
    sidecar_path = args.output + ".json"
    with open(sidecar_path, "w") as handle:
        json.dump(sidecar, handle, indent=2)
        handle.write("\n")
    print(
        f"wrote {args.output} ({encoding.cnf.variable_count} vars, "
        f"{len(encoding.cnf.clauses)} clauses) and {sidecar_path}"
    )
    return EXIT_OK


def _run_solve(args: argparse.Namespace) -> int:
    encoding = _build_encoding(args)
    if args.solver == "external-dimacs":
        if args.model is None:
            raise InputError("--solver external-dimacs requires --model FILE")
        with open(args.model) as handle:
            assignment = parse_model(handle.read())
    else:
        verdict = solve(encoding.cnf, args.budget)
        if not verdict.satisfiable:
            print("UNSAT")
            return EXIT_UNSAT
        assignment = verdict.assignment
    witness = decode_witness(assignment, encoding.tableau)
    print("SAT")
    print(
        json.dumps(
            {
                "product": witness.product_value,
                "multiplicand": witness.multiplicand_value,
                "multiplier": witness.multiplier_value,
            }
        )
    )
    return EXIT_SAT


def _write_disagreements(report: harness.VerifyReport, path: str | None) -> None:
    handle = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.DictWriter(handle, fieldnames=["instance", "expected", "got"])
        writer.writeheader()
        for row in report.disagreements:
            writer.writerow(row)
    finally:
        if path:
            handle.close()


def _run_verify(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    if args.problem == "factoring":
        if args.exhaustive:
            raise InputError("--exhaustive applies only to --problem composite")
        report = harness.verify_factoring(args.samples, args.max_n, seed, args.budget)
    elif args.exhaustive:
        if args.max_bits > harness.EXHAUSTIVE_MAX_BITS:
            raise InputError(
                f"--exhaustive is limited to --max-bits <= "
                f"{harness.EXHAUSTIVE_MAX_BITS} (got {args.max_bits})"
            )
        report = harness.verify_composite_exhaustive(args.max_bits, args.budget)
    else:
        report = harness.verify_composite_sampled(
            args.samples, args.max_bits, seed, args.budget
        )
    _write_disagreements(report, args.csv)
    print(report.summary())
    if not report.ok:
        first = report.disagreements[0]
        print(f"counterexample: {first['instance']}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _run_bench(args: argparse.Namespace) -> int:
    rows = harness.bench(args.min_bits, args.max_bits)
    # Template constancy holds from n=3 up; n=2 has a single prodline and
    # no ripple additions, so its largest constraint is smaller.
    baseline = rows[-1]["max_clause_tokens"]
    for row in rows:
        n = row["n"]
        if row["digit_vars"] >= n * n + 3 * n:
            print(f"error: digit variable bound violated at n={n}", file=sys.stderr)
            return EXIT_UNSAT
        if n >= 3 and row["max_clause_tokens"] != baseline:
            print(f"error: template size varies at n={n}", file=sys.stderr)
            return EXIT_UNSAT
    fieldnames = [
        "n",
        "digit_vars",
        "total_vars",
        "clauses",
        "tokens",
        "max_clause_tokens",
        "encode_time",
    ]
    handle = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            out = dict(row)
            out["encode_time"] = f"{row['encode_time']:.6f}"
            writer.writerow(out)
    finally:
        if args.output:
            handle.close()
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except (
        PatternError,
        ConditionError,
        FormulaError,
        DimacsError,
        WidthTooSmallError,
        ValueError,
    ) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidModelError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INVALID_MODEL


if __name__ == "__main__":
    sys.exit(main())
