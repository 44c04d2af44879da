"""Brute-force ground truth for small instances.

These answer the same questions as the SAT pipeline by direct
enumeration, for cross-checking.  Completion counts are capped by the
pattern module, so calls stay small by construction.
"""

from dataclasses import dataclass
from math import isqrt

from .pattern import BitPattern, completions


@dataclass(frozen=True)
class OracleVerdict:
    answer: bool
    witness: tuple[int, ...] = ()


def smallest_factor(value: int) -> int | None:
    """Smallest divisor of value in [2, sqrt(value)], or None."""
    if value < 4:
        return None
    if value % 2 == 0:
        return 2
    for d in range(3, isqrt(value) + 1, 2):
        if value % d == 0:
            return d
    return None


def is_composite(value: int) -> bool:
    return smallest_factor(value) is not None


def is_prime(value: int) -> bool:
    return value >= 2 and smallest_factor(value) is None


def oracle_expcomposite(pattern: BitPattern) -> OracleVerdict:
    """Does some completion factor nontrivially?  Witness: (value, a, b)."""
    for value in completions(pattern):
        d = smallest_factor(value)
        if d is not None:
            return OracleVerdict(True, (value, d, value // d))
    return OracleVerdict(False)


def oracle_exprime(pattern: BitPattern) -> OracleVerdict:
    """Is some completion prime?  Witness: (value,)."""
    for value in completions(pattern):
        if is_prime(value):
            return OracleVerdict(True, (value,))
    return OracleVerdict(False)


def nontrivial_divisors(value: int) -> list[int]:
    """All d with 1 < d < value and d | value, ascending."""
    if value < 4:
        return []
    small = [d for d in range(2, isqrt(value) + 1) if value % d == 0]
    large = [value // d for d in reversed(small) if value // d != d]
    return small + large


def oracle_factoring(
    n: int, lower: int, upper: int, mode: str = "closed"
) -> OracleVerdict:
    """Does n have a nontrivial divisor inside the interval?

    mode "closed" keeps the endpoints, "open" drops them.  Witness: the
    smallest such divisor.
    """
    for d in nontrivial_divisors(n):
        if mode == "closed":
            if lower <= d <= upper:
                return OracleVerdict(True, (d,))
        elif mode == "open":
            if lower < d < upper:
                return OracleVerdict(True, (d,))
        else:
            raise ValueError(f"unknown interval mode {mode!r}")
    return OracleVerdict(False)
