"""Explicit primitive-divisor thresholds for Fibonacci numbers.

For n past an explicit threshold, F_n has a primitive divisor of size at
least (kappa+1)n - 1; this package computes those thresholds n0(kappa)
with certified directed rounding (n >= exp(n0) suffices), alongside exact
desk-scale oracles for the arithmetic the bounds rest on: Z[eta]
arithmetic in Q(sqrt 5), split-prime tables, Fibonacci valuations and
ranks of apparition, cyclotomic values Phi_n(gamma), and the numeric
inequality batteries behind the linear-forms-in-logarithms constants.
"""

from .bounds import (
    BigKappaChain,
    BoundParams,
    BoundResult,
    ChainLink,
    ScanEntry,
    Validity,
    YuCheckReport,
    YuRow,
    bigkappa_bound,
    c_constant,
    lambda_bound,
    lna_bound,
    n0_optimize,
    p_floor_exact,
    prop_order_bound,
    theta_cap,
    yu_constants_check,
)
from .cyclotomic import (
    CyclotomicValue,
    EsumCheck,
    SchinzelCheck,
    SchinzelRow,
    SchwarzReport,
    esum_identity_check,
    phi_eval_exact,
    schinzel_check,
    schwarz_bound_check,
)
from .errors import (
    HypothesisViolation,
    IncompleteFactorization,
    InsufficientPrimes,
    InternalInconsistency,
    NotPrime,
    NotSplit,
    RamifiedPrime,
    StewartBoundsError,
    ZeroElement,
)
from .fiboracle import (
    ApparitionRecord,
    EliouCheck,
    PrimitiveDivisorSet,
    eliou_check,
    fib_pair,
    nu_p_fib,
    primitive_divisors,
    rank_of_apparition,
)
from .quadfield import (
    ETA,
    GAMMA,
    ONE,
    SQRT5,
    Height,
    QuadInt,
    QuadUnitFraction,
    height,
    prime_above,
    split_type,
    theta_generator,
)
from .rounding import DEFAULT_BITS, Verdict, certify_le
from .splitprimes import (
    QkVerification,
    SplitPrimeTable,
    enumerate_split_primes,
    verify_qk_bound,
)

__version__ = "1.0.0"

__all__ = [
    "ApparitionRecord", "BigKappaChain", "BoundParams", "BoundResult",
    "ChainLink", "CyclotomicValue", "DEFAULT_BITS", "ETA", "EliouCheck",
    "EsumCheck", "GAMMA", "Height", "HypothesisViolation",
    "IncompleteFactorization", "InsufficientPrimes", "InternalInconsistency",
    "NotPrime", "NotSplit", "ONE", "PrimitiveDivisorSet", "QkVerification",
    "QuadInt", "QuadUnitFraction", "RamifiedPrime", "SQRT5", "ScanEntry",
    "SchinzelCheck", "SchinzelRow", "SchwarzReport", "SplitPrimeTable",
    "StewartBoundsError", "Validity", "Verdict", "YuCheckReport", "YuRow",
    "ZeroElement", "bigkappa_bound", "c_constant", "certify_le",
    "eliou_check", "enumerate_split_primes", "esum_identity_check",
    "fib_pair", "height", "lambda_bound", "lna_bound", "n0_optimize",
    "nu_p_fib", "p_floor_exact", "phi_eval_exact", "prime_above",
    "primitive_divisors", "prop_order_bound", "rank_of_apparition",
    "schinzel_check", "schwarz_bound_check", "split_type", "theta_cap",
    "theta_generator", "verify_qk_bound", "yu_constants_check",
]
