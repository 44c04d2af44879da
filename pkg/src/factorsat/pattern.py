"""Partially-specified binary numbers.

A bit pattern is a string of digits over {0, 1, -} read most significant
digit first.  A dash leaves the digit free, so a pattern with k free
digits denotes 2**k concrete numbers (its completions).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

MAX_FREE_DIGITS = 20


class Digit(Enum):
    ZERO = "0"
    ONE = "1"
    FREE = "-"


class PatternError(ValueError):
    """Malformed pattern text or a pattern outside supported limits."""


class EmptyPatternError(PatternError):
    def __init__(self) -> None:
        super().__init__("pattern must contain at least one digit")


class InvalidCharacterError(PatternError):
    def __init__(self, char: str, position: int) -> None:
        self.char = char
        self.position = position
        super().__init__(
            f"invalid pattern character {char!r} at position {position} "
            "(expected '0', '1' or '-')"
        )


class TooManyFreeDigitsError(PatternError):
    def __init__(self, count: int) -> None:
        self.count = count
        super().__init__(
            f"pattern has {count} free digits; completion enumeration is "
            f"capped at {MAX_FREE_DIGITS}"
        )


@dataclass(frozen=True)
class BitPattern:
    """Digit sequence, most significant first."""

    digits: tuple[Digit, ...]

    def __post_init__(self) -> None:
        if not self.digits:
            raise EmptyPatternError()

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return render_pattern(self)

    @property
    def free_count(self) -> int:
        return sum(1 for d in self.digits if d is Digit.FREE)

    def free_positions(self) -> tuple[int, ...]:
        """1-based positions of the free digits, most significant first."""
        return tuple(
            i for i, d in enumerate(self.digits, start=1) if d is Digit.FREE
        )


def parse_pattern(text: str) -> BitPattern:
    """Parse pattern text such as "101-1-00-1" into a BitPattern."""
    if not text:
        raise EmptyPatternError()
    digits = []
    for position, char in enumerate(text, start=1):
        if char == "0":
            digits.append(Digit.ZERO)
        elif char == "1":
            digits.append(Digit.ONE)
        elif char == "-":
            digits.append(Digit.FREE)
        else:
            raise InvalidCharacterError(char, position)
    return BitPattern(tuple(digits))


def pattern_from_vector(bits: list[str] | tuple[str, ...]) -> BitPattern:
    """Build a pattern from per-digit strings, most significant first."""
    return parse_pattern("".join(bits))


def pattern_of_int(value: int) -> BitPattern:
    """Fully fixed pattern for a positive integer (no leading zeros)."""
    if value < 1:
        raise PatternError(f"need a positive integer, got {value}")
    return parse_pattern(format(value, "b"))


def render_pattern(pattern: BitPattern) -> str:
    return "".join(d.value for d in pattern.digits)


def matches(pattern: BitPattern, value: int) -> bool:
    """True when value, written in exactly len(pattern) bits, fits the pattern.

    Values needing more bits than the pattern has never match; free digits
    match either bit.
    """
    n = len(pattern.digits)
    if value < 0 or value >= (1 << n):
        return False
    for i, digit in enumerate(pattern.digits):
        if digit is Digit.FREE:
            continue
        bit = (value >> (n - 1 - i)) & 1
        if bit != (1 if digit is Digit.ONE else 0):
            return False
    return True


def completions(pattern: BitPattern) -> Iterator[int]:
    """Yield every concrete value matching the pattern, in increasing order."""
    free = pattern.free_count
    if free > MAX_FREE_DIGITS:
        raise TooManyFreeDigitsError(free)
    n = len(pattern.digits)
    base = 0
    free_weights = []
    for i, digit in enumerate(pattern.digits):
        weight = 1 << (n - 1 - i)
        if digit is Digit.ONE:
            base += weight
        elif digit is Digit.FREE:
            free_weights.append(weight)
    # Counting in binary over the free positions, most significant free
    # digit first, enumerates completions in increasing numeric order.
    for counter in range(1 << free):
        value = base
        for j, weight in enumerate(free_weights):
            if (counter >> (free - 1 - j)) & 1:
                value += weight
        yield value
