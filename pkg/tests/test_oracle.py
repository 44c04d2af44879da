from hypothesis import given, settings
from hypothesis import strategies as st

from factorsat.oracle import (
    is_composite,
    is_prime,
    nontrivial_divisors,
    oracle_expcomposite,
    oracle_exprime,
    oracle_factoring,
    smallest_factor,
)
from factorsat.pattern import parse_pattern


def test_smallest_factor():
    assert smallest_factor(4) == 2
    assert smallest_factor(91) == 7
    assert smallest_factor(97) is None
    assert smallest_factor(1) is None
    assert smallest_factor(0) is None
    assert smallest_factor(2) is None


def test_primality_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for v in range(32):
        assert is_prime(v) == (v in primes)
        assert is_composite(v) == (v >= 2 and v not in primes)


def test_nontrivial_divisors():
    assert nontrivial_divisors(12) == [2, 3, 4, 6]
    assert nontrivial_divisors(16) == [2, 4, 8]
    assert nontrivial_divisors(9) == [3]
    assert nontrivial_divisors(7) == []
    assert nontrivial_divisors(1) == []


@given(st.integers(min_value=2, max_value=10**6))
@settings(max_examples=200)
def test_divisors_multiply_back(v):
    for d in nontrivial_divisors(v):
        assert v % d == 0
        assert 2 <= d <= v // 2


def test_oracle_expcomposite():
    verdict = oracle_expcomposite(parse_pattern("1-0"))
    assert verdict.answer
    value, d, q = verdict.witness
    assert d * q == value
    assert value in (4, 6)
    assert not oracle_expcomposite(parse_pattern("1-1")).answer  # {5, 7} both prime
    assert not oracle_expcomposite(parse_pattern("1")).answer
    assert oracle_expcomposite(parse_pattern("100")).witness == (4, 2, 2)


def test_oracle_exprime():
    assert oracle_exprime(parse_pattern("1-1")).answer
    assert oracle_exprime(parse_pattern("10-")).answer  # 5 is prime
    assert not oracle_exprime(parse_pattern("1000")).answer  # only 8
    assert oracle_exprime(parse_pattern("--")).witness == (2,)


def test_exprime_and_expcomposite_disagree_on_mixed_patterns():
    # Both can hold at once; on a fully fixed pattern they are exclusive
    # for values >= 2.
    assert oracle_exprime(parse_pattern("1--")).answer
    assert oracle_expcomposite(parse_pattern("1--")).answer
    for text in ("10", "11", "100", "101"):
        p = parse_pattern(text)
        assert oracle_exprime(p).answer != oracle_expcomposite(p).answer


def test_oracle_factoring():
    assert oracle_factoring(35, 4, 6, "closed").witness == (5,)
    assert not oracle_factoring(35, 6, 6, "closed").answer
    assert oracle_factoring(35, 4, 6, "open").answer  # 4 < 5 < 6
    assert not oracle_factoring(35, 5, 7, "open").answer  # open drops 5 and 7, leaving 6
    assert oracle_factoring(12, 2, 2, "closed").witness == (2,)
    assert not oracle_factoring(7, 2, 6, "closed").answer  # prime
    assert oracle_factoring(49, 6, 8, "closed").witness == (7,)


def test_oracle_factoring_trivial_divisors_excluded():
    # 1 and N never count even when the interval contains them.
    assert not oracle_factoring(13, 1, 13, "closed").answer
    assert oracle_factoring(9, 1, 9, "closed").witness == (3,)
