"""Factorization problems over partially-specified binary numbers, via SAT."""

from .conditions import (
    Compare,
    CondAnd,
    CondNot,
    CondOr,
    ConditionError,
    ConditionParseError,
    Constant,
    DigitEq,
    EmptyRangeError,
    FixedDigit,
    RowRef,
    UnresolvableOperandError,
    WidthMismatchError,
    compile_condition,
    encode_eq,
    encode_ge,
    encode_gt,
    encode_le,
    encode_lt,
    encode_nontrivial,
    encode_range,
    parse_condition,
)
from .dimacs import DimacsError, emit_dimacs, emit_model, parse_dimacs, parse_model
from .formula import (
    And,
    Assignment,
    Cnf,
    Const,
    FALSE,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    TRUE,
    UnassignedVariableError,
    Var,
    conj,
    disj,
    evaluate,
    iff,
    implies,
    neg,
    render,
    token_count,
    tseitin,
    var,
)
from .oracle import (
    OracleVerdict,
    is_composite,
    is_prime,
    nontrivial_divisors,
    oracle_expcomposite,
    oracle_exprime,
    oracle_factoring,
    smallest_factor,
)
from .pattern import (
    BitPattern,
    Digit,
    EmptyPatternError,
    InvalidCharacterError,
    MAX_FREE_DIGITS,
    PatternError,
    TooManyFreeDigitsError,
    completions,
    matches,
    parse_pattern,
    pattern_from_vector,
    pattern_of_int,
    render_pattern,
)
from .solver import (
    BudgetExceededError,
    FactorWitness,
    InvalidModelError,
    Verdict,
    decode_witness,
    solve,
    solve_dimacs,
)
from .tableau import (
    Encoding,
    FactorWidths,
    Tableau,
    WidthTooSmallError,
    build_tableau,
    carry_majority,
    digit_var_count,
    encode_composite,
    factor_widths,
    multiplication_constraints,
    sum_parity,
)

__version__ = "0.1.0"
