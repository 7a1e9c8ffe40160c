"""Exact solvers, entropy bounds, and constructions for unit-fraction
decompositions: which reciprocal sums hit a rational target, how fast the
solution count grows, and how to build bounded-denominator expansions.
"""

from .core import (
    CapacityError,
    MultiplicativeProfile,
    PrimePowerSet,
    UnitSet,
    ValidationError,
    factorize,
    format_rational,
    is_smooth,
    lcm_of,
    multiplicative_profile,
    parse_rational,
    parse_unit_set,
    prime_power_support,
    reciprocal_sum,
)
from .egyptian import (
    Expansion,
    ObstructionCertificate,
    bench_csv,
    budget_benchmark,
    expansion_from,
    greedy_expand,
    obstruction_certificate,
    smooth_expand,
)
from .entropy import (
    EntropyConstants,
    GrowthRow,
    clamp_violations,
    defining_integral,
    finite_upper_bound,
    gamma_star_integral,
    growth_csv,
    growth_table,
    sampling_plan,
    solve_lambda_star,
)
from .fourier import (
    AzumaReport,
    ResidueProfile,
    SamplingPlan,
    TaylorSweepReport,
    azuma_bound_check,
    brute_force_integrality,
    exact_integrality_probability,
    h_zero_term,
    integrality_report,
    major_arc_partial_sum,
    monte_carlo_integrality,
    plan_modulus,
    residue_profile,
    taylor_fact_sweep,
)
from .sieve import (
    FUNDAMENTAL_LEMMA_MATRIX,
    SieveReport,
    fundamental_lemma_reports,
    large_prime_power_count,
    mertens_residual,
    mertens_sum,
    omega_tail_count,
    omega_values,
    primes_up_to,
    primorial,
    prime_power_product,
    sieve_survivors,
)
from .solver import (
    ExtremalResult,
    blocked_start_trace,
    count_subsets,
    count_subsets_at_most,
    dense_window,
    enumerate_subsets,
    find_subset,
    largest_avoiding_set,
    least_blocked_start,
    max_avoiding_sum,
    one_sum_witnesses,
    prune_small_fibers,
    subset_exists,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ValidationError",
    "UnitSet",
    "MultiplicativeProfile",
    "PrimePowerSet",
    "factorize",
    "lcm_of",
    "reciprocal_sum",
    "multiplicative_profile",
    "is_smooth",
    "prime_power_support",
    "format_rational",
    "parse_rational",
    "parse_unit_set",
    "subset_exists",
    "count_subsets",
    "count_subsets_at_most",
    "find_subset",
    "enumerate_subsets",
    "one_sum_witnesses",
    "ExtremalResult",
    "max_avoiding_sum",
    "largest_avoiding_set",
    "least_blocked_start",
    "blocked_start_trace",
    "prune_small_fibers",
    "dense_window",
    "EntropyConstants",
    "GrowthRow",
    "defining_integral",
    "gamma_star_integral",
    "solve_lambda_star",
    "finite_upper_bound",
    "growth_table",
    "growth_csv",
    "sampling_plan",
    "clamp_violations",
    "SamplingPlan",
    "ResidueProfile",
    "TaylorSweepReport",
    "AzumaReport",
    "plan_modulus",
    "exact_integrality_probability",
    "integrality_report",
    "brute_force_integrality",
    "major_arc_partial_sum",
    "h_zero_term",
    "residue_profile",
    "taylor_fact_sweep",
    "azuma_bound_check",
    "monte_carlo_integrality",
    "primes_up_to",
    "mertens_sum",
    "mertens_residual",
    "omega_values",
    "omega_tail_count",
    "large_prime_power_count",
    "SieveReport",
    "sieve_survivors",
    "primorial",
    "prime_power_product",
    "FUNDAMENTAL_LEMMA_MATRIX",
    "fundamental_lemma_reports",
    "Expansion",
    "ObstructionCertificate",
    "greedy_expand",
    "smooth_expand",
    "expansion_from",
    "obstruction_certificate",
    "budget_benchmark",
    "bench_csv",
    "__version__",
]
