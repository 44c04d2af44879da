"""Verification and measurement drivers shared by the CLI and the tests.

verify_* functions compare the encode+solve pipeline against the
brute-force oracles instance by instance and collect any disagreement
rows; bench measures encoding size across widths.
"""

import itertools
import random
import time
from dataclasses import dataclass, field

from .conditions import RowRef, encode_range
from .formula import Formula, disj
from .oracle import oracle_expcomposite, oracle_factoring
from .pattern import BitPattern, parse_pattern, pattern_of_int, render_pattern
from .solver import FactorWitness, InvalidModelError, decode_witness, solve
from .tableau import Encoding, Tableau, build_tableau, digit_var_count, encode_composite

EXHAUSTIVE_MAX_BITS = 12
BENCH_MIN_BITS = 2
BENCH_MAX_BITS = 256


@dataclass
class VerifyReport:
    total: int = 0
    agreements: int = 0
    disagreements: list[dict[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def record(self, instance: str, expected: str, got: str) -> None:
        self.total += 1
        if expected == got:
            self.agreements += 1
        else:
            self.disagreements.append(
                {"instance": instance, "expected": expected, "got": got}
            )

    def summary(self) -> str:
        return (
            f"{self.total} instances: {self.agreements} agree, "
            f"{len(self.disagreements)} disagree"
        )


def composite_verdict(
    pattern: BitPattern, budget: int | None = None
) -> tuple[bool, FactorWitness | None]:
    """Encode+solve verdict for one pattern, with decoded witness on SAT.

    Single-digit patterns are UNSAT by convention: no 1-digit number is
    composite, and the tableau needs at least 2 digits.
    """
    if len(pattern) == 1:
        return False, None
    encoding = encode_composite(pattern)
    verdict = solve(encoding.cnf, budget)
    if not verdict.satisfiable:
        return False, None
    return True, decode_witness(verdict.assignment, encoding.tableau)


def _check_pattern(report: VerifyReport, pattern: BitPattern, budget: int | None) -> None:
    text = render_pattern(pattern)
    expected = oracle_expcomposite(pattern).answer
    try:
        got, _witness = composite_verdict(pattern, budget)
    except InvalidModelError as error:
        report.record(text, str(expected), f"invalid witness: {error}")
        return
    report.record(text, str(expected), str(got))


def verify_composite_exhaustive(
    max_bits: int, budget: int | None = None
) -> VerifyReport:
    """Compare against the oracle on every pattern of length <= max_bits."""
    if not 1 <= max_bits <= EXHAUSTIVE_MAX_BITS:
        raise ValueError(
            f"exhaustive verification is limited to max_bits in "
            f"[1, {EXHAUSTIVE_MAX_BITS}], got {max_bits}"
        )
    report = VerifyReport()
    for n in range(1, max_bits + 1):
        for chars in itertools.product("01-", repeat=n):
            _check_pattern(report, parse_pattern("".join(chars)), budget)
    return report


def verify_composite_sampled(
    samples: int, max_bits: int, seed: int, budget: int | None = None
) -> VerifyReport:
    """Compare against the oracle on seeded random patterns."""
    if max_bits < 1:
        raise ValueError(f"max_bits must be at least 1, got {max_bits}")
    rng = random.Random(seed)
    report = VerifyReport()
    for _ in range(samples):
        n = rng.randint(1, max_bits)
        pattern = parse_pattern("".join(rng.choice("01-") for _ in range(n)))
        _check_pattern(report, pattern, budget)
    return report


def factoring_condition(
    tableau: Tableau, lower: int, upper: int, mode: str
) -> Formula:
    """Divisor-in-interval condition: the interval holds A or holds B."""
    return disj(
        encode_range(RowRef("A"), lower, upper, mode, tableau),
        encode_range(RowRef("B"), lower, upper, mode, tableau),
    )


def encode_factoring(value: int, lower: int, upper: int, mode: str = "closed") -> Encoding:
    """Encoding of: value has a nontrivial divisor inside the interval."""
    pattern = pattern_of_int(value)
    tableau = build_tableau(pattern)
    return encode_composite(pattern, [factoring_condition(tableau, lower, upper, mode)])


def _in_interval(value: int, lower: int, upper: int, mode: str) -> bool:
    if mode == "closed":
        return lower <= value <= upper
    return lower < value < upper


def sample_factoring_instance(
    rng: random.Random, max_n: int, mode: str
) -> tuple[int, int, int]:
    """Draw (value, lower, upper) with 4 <= value <= 2**max_n and lower < upper.

    Open-mode intervals are kept wide enough to contain an integer.
    """
    value = rng.randrange(4, (1 << max_n) + 1)
    if mode == "closed":
        lower = rng.randrange(2, value)
        upper = rng.randrange(lower + 1, value + 1)
    else:
        lower = rng.randrange(1, value - 1)
        upper = rng.randrange(lower + 2, value + 2)
    return value, lower, upper


def verify_factoring(
    samples: int, max_n: int, seed: int, budget: int | None = None
) -> VerifyReport:
    """Compare encode+solve against oracle_factoring on seeded instances.

    Interval modes alternate deterministically so both get equal coverage.
    """
    if not 2 <= max_n:
        raise ValueError(f"max_n must be at least 2, got {max_n}")
    rng = random.Random(seed)
    report = VerifyReport()
    for index in range(samples):
        mode = "closed" if index % 2 == 0 else "open"
        value, lower, upper = sample_factoring_instance(rng, max_n, mode)
        instance = f"N={value} L={lower} U={upper} {mode}"
        expected = oracle_factoring(value, lower, upper, mode).answer
        encoding = encode_factoring(value, lower, upper, mode)
        verdict = solve(encoding.cnf, budget)
        if not verdict.satisfiable:
            report.record(instance, str(expected), "False")
            continue
        try:
            witness = decode_witness(verdict.assignment, encoding.tableau)
        except InvalidModelError as error:
            report.record(instance, str(expected), f"invalid witness: {error}")
            continue
        in_range = _in_interval(
            witness.multiplicand_value, lower, upper, mode
        ) or _in_interval(witness.multiplier_value, lower, upper, mode)
        got = "True" if in_range else "True, witness outside interval"
        report.record(instance, str(expected), got)
    return report


def bench(min_bits: int, max_bits: int) -> list[dict[str, object]]:
    """Measure encoding size on the all-free pattern of each width."""
    if not BENCH_MIN_BITS <= min_bits <= max_bits <= BENCH_MAX_BITS:
        raise ValueError(
            f"bench width range must satisfy {BENCH_MIN_BITS} <= min <= max "
            f"<= {BENCH_MAX_BITS}, got [{min_bits}, {max_bits}]"
        )
    rows: list[dict[str, object]] = []
    for n in range(min_bits, max_bits + 1):
        started = time.perf_counter()
        encoding = encode_composite(parse_pattern("-" * n))
        elapsed = time.perf_counter() - started
        rows.append(
            {
                "n": n,
                "digit_vars": digit_var_count(encoding.tableau),
                "total_vars": encoding.cnf.variable_count,
                "clauses": len(encoding.cnf.clauses),
                "tokens": encoding.token_count,
                "max_clause_tokens": encoding.max_schema_tokens,
                "encode_time": elapsed,
            }
        )
    return rows
