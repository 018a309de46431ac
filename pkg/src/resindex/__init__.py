"""Residual indices of a rational base modulo primes.

Exact counts of the primes p <= x whose residual index
r_g(p) = [(Z/pZ)* : <g mod p>] equals (or is divisible by) t, the
quadratic heuristic weights that predict those counts, Kummer-degree
densities, and exhaustive finite-group oracles for every identity in
between.
"""

from .arith import (
    Factorization,
    PrimeTable,
    build_prime_table,
    euler_phi,
    factor_int,
    factorize,
    kronecker_symbol,
    log_integral,
    moebius,
    multiplicative_order,
    ramanujan_sum,
)
from .decompose import (
    GDecomposition,
    HeuristicParams,
    Rational,
    decompose_g,
    derive_params,
    parse_g,
    quadratic_discriminant,
)
from .density import DegreeResult, artin_constant, artin_density_A, kummer_degree, wagstaff_sum_S
from .empirical import (
    CountReport,
    ResidualIndexOutcome,
    char_sums_LQ,
    count_divisible_index,
    count_exact_index,
    count_progression,
    count_split_quadratic,
    residual_index,
    sweep,
    verify_split_criterion,
)
from .heuristic import (
    WeightContext,
    closed_form_M,
    moebius_m_sum,
    sum_divisible_H,
    sum_naive,
    sum_quadratic,
    weight_context,
    weight_r,
    weight_w,
)

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "DegreeResult",
    "Factorization",
    "GDecomposition",
    "HeuristicParams",
    "PrimeTable",
    "Rational",
    "ResidualIndexOutcome",
    "WeightContext",
    "artin_constant",
    "artin_density_A",
    "build_prime_table",
    "char_sums_LQ",
    "closed_form_M",
    "count_divisible_index",
    "count_exact_index",
    "count_progression",
    "count_split_quadratic",
    "decompose_g",
    "derive_params",
    "euler_phi",
    "factor_int",
    "factorize",
    "kronecker_symbol",
    "kummer_degree",
    "log_integral",
    "moebius",
    "moebius_m_sum",
    "multiplicative_order",
    "parse_g",
    "quadratic_discriminant",
    "ramanujan_sum",
    "residual_index",
    "sum_divisible_H",
    "sum_naive",
    "sum_quadratic",
    "sweep",
    "verify_split_criterion",
    "wagstaff_sum_S",
    "weight_context",
    "weight_r",
    "weight_w",
]
