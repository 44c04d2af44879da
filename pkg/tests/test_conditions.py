import itertools

import pytest

from factorsat.conditions import (
    Compare,
    CondAnd,
    CondNot,
    CondOr,
    ConditionParseError,
    Constant,
    DigitEq,
    EmptyRangeError,
    FixedDigit,
    RowRef,
    WidthMismatchError,
    compile_condition,
    constant_of,
    encode_eq,
    encode_ge,
    encode_gt,
    encode_le,
    encode_lt,
    encode_nontrivial,
    encode_range,
    parse_condition,
)
from factorsat.formula import FALSE, TRUE, Var, evaluate, token_count
from factorsat.pattern import parse_pattern, pattern_of_int
from factorsat.solver import decode_witness, solve
from factorsat.tableau import build_tableau, encode_composite
from factorsat.oracle import oracle_factoring

OPS = {
    encode_gt: lambda a, b: a > b,
    encode_ge: lambda a, b: a >= b,
    encode_lt: lambda a, b: a < b,
    encode_le: lambda a, b: a <= b,
    encode_eq: lambda a, b: a == b,
}


def row_env(tableau, a=None, b=None):
    env = {}
    if a is not None:
        for i in range(tableau.widths.multiplicand_bits):
            env[tableau.multiplicand_var(i)] = bool((a >> i) & 1)
    if b is not None:
        for i in range(tableau.widths.multiplier_bits):
            env[tableau.multiplier_var(i)] = bool((b >> i) & 1)
    return env


def test_comparators_row_vs_constant_exhaustive():
    t = build_tableau(parse_pattern("-" * 5))  # multiplicand is 4 wide
    for encoder, ref in OPS.items():
        for k in range(16):
            f = encoder(RowRef("A"), Constant(k, 4), t)
            for a in range(16):
                assert evaluate(f, row_env(t, a=a)) == ref(a, k), (encoder, a, k)


def test_comparators_row_vs_row_mixed_widths():
    # A is 4 wide, B is 3 wide: the narrow side is zero-extended.
    t = build_tableau(parse_pattern("-" * 5))
    for encoder, ref in OPS.items():
        f = encoder(RowRef("A"), RowRef("B"), t)
        for a in range(16):
            for b in range(8):
                env = row_env(t, a=a, b=b)
                assert evaluate(f, env) == ref(a, b), (encoder, a, b)


def test_comparators_fold_constant_operands():
    t = build_tableau(parse_pattern("---"))
    assert encode_gt(Constant(5, 3), Constant(3, 3), t) == TRUE
    assert encode_gt(Constant(3, 3), Constant(5, 3), t) == FALSE
    assert encode_le(Constant(2, 2), Constant(2, 4), t) == TRUE
    assert encode_eq(Constant(6, 3), Constant(6, 4), t) == TRUE
    assert encode_eq(Constant(6, 3), Constant(7, 3), t) == FALSE


def test_full_range_folds_to_true():
    t = build_tableau(parse_pattern("-" * 5))
    f = encode_range(RowRef("A"), 0, 15, "closed", t)
    assert f == TRUE


def test_point_range():
    t = build_tableau(parse_pattern("-" * 5))
    f = encode_range(RowRef("A"), 5, 5, "closed", t)
    for a in range(16):
        assert evaluate(f, row_env(t, a=a)) == (a == 5)


def test_open_range_drops_endpoints():
    t = build_tableau(parse_pattern("-" * 5))
    f = encode_range(RowRef("A"), 4, 8, "open", t)
    for a in range(16):
        assert evaluate(f, row_env(t, a=a)) == (4 < a < 8)


def test_empty_ranges_raise():
    t = build_tableau(parse_pattern("-" * 5))
    with pytest.raises(EmptyRangeError):
        encode_range(RowRef("A"), 5, 6, "open", t)
    with pytest.raises(EmptyRangeError):
        encode_range(RowRef("A"), 5, 5, "open", t)
    with pytest.raises(EmptyRangeError):
        encode_range(RowRef("A"), 7, 3, "closed", t)
    # the smallest nonempty open interval
    f = encode_range(RowRef("A"), 4, 6, "open", t)
    for a in range(16):
        assert evaluate(f, row_env(t, a=a)) == (a == 5)


def test_constant_of():
    assert constant_of(0) == Constant(0, 1)
    assert constant_of(1) == Constant(1, 1)
    assert constant_of(6) == Constant(6, 3)
    with pytest.raises(WidthMismatchError):
        constant_of(-2)


def test_nontrivial():
    t = build_tableau(parse_pattern("-" * 5))
    f = encode_nontrivial(RowRef("A"), t)
    for a in range(16):
        assert evaluate(f, row_env(t, a=a)) == (a >= 2)
    # a 1-bit row can never reach 2
    t2 = build_tableau(parse_pattern("--"))
    assert encode_nontrivial(RowRef("A"), t2) == FALSE


def test_gt_formula_growth_is_linear():
    # Comparator size grows linearly in width: doubling the width less
    # than 2.2x the tokens.
    sizes = {}
    for n, w in [(5, 4), (9, 8), (17, 16)]:
        t = build_tableau(parse_pattern("-" * n))
        assert t.widths.multiplicand_bits == n - 1
        f = encode_gt(RowRef("A"), RowRef("P"), t)
        sizes[w] = token_count(f)
    assert sizes[8] / sizes[4] <= 2.2
    assert sizes[16] / sizes[8] <= 2.2


def test_compile_fixed_digit():
    t = build_tableau(parse_pattern("-" * 4))
    f = compile_condition(FixedDigit("A", 1, True), t)
    assert f == Var(t.multiplicand[0])
    g = compile_condition(FixedDigit("A", 3, False), t)
    for a in range(8):
        env = row_env(t, a=a)
        assert evaluate(g, env) == (not bool((a >> 0) & 1))


def test_compile_digit_index_out_of_range():
    t = build_tableau(parse_pattern("-" * 4))
    with pytest.raises(WidthMismatchError):
        compile_condition(FixedDigit("A", 4, True), t)
    with pytest.raises(WidthMismatchError):
        compile_condition(FixedDigit("A", 0, True), t)


def test_compile_combinators():
    t = build_tableau(parse_pattern("-" * 5))
    expr = CondAnd(
        (
            Compare(">", RowRef("A"), constant_of(3)),
            CondNot(Compare("==", RowRef("A"), constant_of(9))),
        )
    )
    f = compile_condition(expr, t)
    for a in range(16):
        assert evaluate(f, row_env(t, a=a)) == (a > 3 and a != 9)
    expr2 = CondOr(
        (
            Compare("<", RowRef("A"), constant_of(2)),
            Compare(">=", RowRef("A"), constant_of(14)),
        )
    )
    g = compile_condition(expr2, t)
    for a in range(16):
        assert evaluate(g, row_env(t, a=a)) == (a < 2 or a >= 14)


def test_trailing_digits_equal_condition():
    # "the last 3 digits of A equal the last 3 digits of P": check the
    # compiled condition against brute force over all completions.
    n = 6
    t = build_tableau(parse_pattern("-" * n))
    expr = CondAnd(
        tuple(
            DigitEq("A", t.widths.multiplicand_bits - k, "P", n - k)
            for k in range(3)
        )
    )
    f = compile_condition(expr, t)
    for a in range(1 << t.widths.multiplicand_bits):
        for p in range(1 << n):
            env = row_env(t, a=a)
            for i in range(n):
                env[t.product_var(i)] = bool((p >> i) & 1)
            assert evaluate(f, env) == ((a & 7) == (p & 7)), (a, p)


def test_digit_constrained_instance():
    # composite completions of ----1 whose smaller factor ends in 1:
    # e.g. 9 = 3 * 3 works; the condition forces the multiplier's last digit.
    pattern = parse_pattern("----1")
    t = build_tableau(pattern)
    cond = compile_condition(FixedDigit("B", t.widths.multiplier_bits, True), t)
    enc = encode_composite(pattern, [cond])
    verdict = solve(enc.cnf)
    assert verdict.satisfiable
    w = decode_witness(verdict.assignment, enc.tableau)
    assert w.multiplier_value % 2 == 1
    assert w.product_value % 2 == 1


def test_parse_condition_grammar():
    expr = parse_condition("A > 3 & !(B == 2) | A <= 1")
    assert expr == CondOr(
        (
            CondAnd(
                (
                    Compare(">", RowRef("A"), Constant(3, 2)),
                    CondNot(Compare("==", RowRef("B"), Constant(2, 2))),
                )
            ),
            Compare("<=", RowRef("A"), Constant(1, 1)),
        )
    )


def test_parse_condition_single_equals():
    assert parse_condition("A = 5") == Compare("==", RowRef("A"), Constant(5, 3))


def test_parse_condition_errors():
    for text in ["", "A >", "A ? 3", "(A > 1", "A > 1)", "A > 1 B", "# > 1"]:
        with pytest.raises(ConditionParseError):
            parse_condition(text)


def test_parse_condition_unknown_row_fails_at_compile():
    t = build_tableau(parse_pattern("---"))
    expr = parse_condition("Q > 1")
    with pytest.raises(Exception):
        compile_condition(expr, t)


def test_factoring_reduction_random():
    # Divisor-in-interval queries agree with the oracle.
    import random

    from factorsat.harness import encode_factoring

    rng = random.Random(7)
    for _ in range(60):
        value = rng.randrange(4, 1 << 10)
        mode = rng.choice(["closed", "open"])
        if mode == "closed":
            lower = rng.randrange(2, value)
            upper = rng.randrange(lower, value + 1)
        else:
            lower = rng.randrange(1, value - 1)
            upper = rng.randrange(lower + 2, value + 2)
        expected = oracle_factoring(value, lower, upper, mode).answer
        enc = encode_factoring(value, lower, upper, mode)
        verdict = solve(enc.cnf)
        assert verdict.satisfiable == expected, (value, lower, upper, mode)
        if verdict.satisfiable:
            w = decode_witness(verdict.assignment, enc.tableau)
            assert w.product_value == value
            divisors = (w.multiplicand_value, w.multiplier_value)
            if mode == "closed":
                assert any(lower <= d <= upper for d in divisors)
            else:
                assert any(lower < d < upper for d in divisors)


def test_factoring_witness_example():
    from factorsat.harness import encode_factoring

    enc = encode_factoring(35, 4, 6, "closed")
    verdict = solve(enc.cnf)
    assert verdict.satisfiable
    w = decode_witness(verdict.assignment, enc.tableau)
    assert 5 in (w.multiplicand_value, w.multiplier_value)
    assert not solve(encode_factoring(35, 6, 6, "closed").cnf).satisfiable
