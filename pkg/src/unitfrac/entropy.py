"""Entropy constants for the growth rate of exact reciprocal-sum counts.

The number of subsets of [1,N] with reciprocal sum exactly 1 grows like
e^(c N + o(N)) where c is an entropy constant: among product measures on
subsets of [1,N] conditioned on mean reciprocal sum 1, the maximizing
inclusion probabilities are p_i = e^(-lambda N/i) / (1 + e^(-lambda N/i))
with lambda tuned so that sum p_i / i = 1. In the N -> infinity limit that
tuning condition becomes

    integral_0^1  e^(-lambda/x) / ((1 + e^(-lambda/x)) x)  dx = 1,

whose unique positive root we call lambda_star, and the growth constant is
gamma_star = lambda_star + integral_0^1 log(1 + e^(-lambda_star/x)) dx.

At finite N the bound is unconditional: for every lambda > 0,

    #{S subset of [1,N] : R(S) <= 1} <= exp(lambda N + sum_i log(1 + e^(-lambda N / i)))

by Chernoff tilting, with no o(N) fudge. growth_table pairs exact counts
from the subset solver with this bound; sampling_plan materializes the
finite-N maximum entropy probabilities for the Fourier experiments.

Both integrals are computed after the substitution u = 1/x, which turns the
essential-singularity shape at x = 0 into plain exponential decay on
[1, infinity).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from scipy.integrate import quad

from .core import CapacityError, UnitSet, ValidationError, is_smooth, multiplicative_profile
from .fourier import SamplingPlan, plan_modulus

__all__ = [
    "EntropyConstants",
    "GrowthRow",
    "GROWTH_CAP",
    "defining_integral",
    "solve_lambda_star",
    "gamma_star_integral",
    "finite_upper_bound",
    "growth_table",
    "growth_csv",
    "sampling_plan",
    "clamp_violations",
]

GROWTH_CAP = 44  # 2^22 half-enumeration states per side at the cap

_QUAD_KW = dict(epsabs=1e-13, epsrel=1e-12, limit=200)


@dataclass(frozen=True)
class EntropyConstants:
    """Solved constants with the residual of the defining equation at the
    root and the worst quadrature error estimate encountered."""

    lambda_star: float
    gamma_star: float
    residual: float
    quadrature_error_estimate: float

    def to_dict(self) -> dict:
        return {
            "lambda_star": self.lambda_star,
            "gamma_star": self.gamma_star,
            "exp_gamma_star": math.exp(self.gamma_star),
            "residual": self.residual,
            "quadrature_error_estimate": self.quadrature_error_estimate,
        }


@dataclass(frozen=True)
class GrowthRow:
    """One growth-table row: exact count of subsets of [1,N] with
    reciprocal sum 1, log count / N, and the entropy bound / N."""

    N: int
    count: int
    log_count_over_N: float
    upper_bound_log_over_N: float


def _defining_integral(lam: float) -> tuple[float, float]:
    # u = 1/x sends the integral to int_1^inf e^(-lam u)/((1+e^(-lam u)) u) du
    def integrand(u: float) -> float:
        t = math.exp(-lam * u)
        return t / ((1.0 + t) * u)

    val, err = quad(integrand, 1.0, math.inf, **_QUAD_KW)
    return val, err


def defining_integral(lam: float) -> float:
    """integral_0^1 e^(-lam/x) / ((1+e^(-lam/x)) x) dx, strictly decreasing
    in lam; equals 1 exactly at lambda_star."""
    if lam <= 0:
        raise ValidationError(f"defining_integral expects lambda > 0, got {lam}")
    return _defining_integral(lam)[0]


def gamma_star_integral(lam: float) -> float:
    """integral_0^1 log(1 + e^(-lam/x)) dx via the same u = 1/x substitution."""
    if lam <= 0:
        raise ValidationError(f"gamma_star_integral expects lambda > 0, got {lam}")

    def integrand(u: float) -> float:
        return math.log1p(math.exp(-lam * u)) / (u * u)

    return quad(integrand, 1.0, math.inf, **_QUAD_KW)[0]


def solve_lambda_star(tol: float = 1e-8) -> EntropyConstants:
    """Root of defining_integral(lam) = 1 by bisection on [1e-3, 10] with a
    guarded secant polish, then gamma_star from its integral."""
    if not 0 < tol <= 1e-4:
        raise ValidationError(f"solve_lambda_star expects tol in (0, 1e-4], got {tol}")
    lo, hi = 1e-3, 10.0
    f_lo, err_lo = _defining_integral(lo)
    f_hi, err_hi = _defining_integral(hi)
    worst_err = max(err_lo, err_hi)
    if (f_lo - 1.0) * (f_hi - 1.0) >= 0:
        raise ValidationError("defining integral does not bracket 1 on [1e-3, 10]")
    while hi - lo > tol / 4:
        mid = 0.5 * (lo + hi)
        f_mid, err = _defining_integral(mid)
        worst_err = max(worst_err, err)
        if f_mid > 1.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    root = 0.5 * (lo + hi)
    # one secant step sharpens the bisection estimate when the slope is sane
    if f_lo != f_hi:
        secant = lo + (1.0 - f_lo) * (hi - lo) / (f_hi - f_lo)
        if lo <= secant <= hi:
            root = secant
    residual = _defining_integral(root)[0] - 1.0
    gamma = root + gamma_star_integral(root)
    return EntropyConstants(
        lambda_star=root,
        gamma_star=gamma,
        residual=residual,
        quadrature_error_estimate=worst_err,
    )


@functools.lru_cache(maxsize=1)
def _constants_cached() -> EntropyConstants:
    return solve_lambda_star(1e-9)


def finite_upper_bound(N: int, lam: float) -> float:
    """log of the Chernoff bound on #{S subset of [1,N] : R(S) <= 1}:
    lam*N + sum_{i<=N} log(1 + e^(-lam N / i)). Valid for every lam > 0 at
    every finite N."""
    if N < 1:
        raise ValidationError(f"finite_upper_bound expects N >= 1, got {N}")
    if lam <= 0:
        raise ValidationError(f"finite_upper_bound expects lambda > 0, got {lam}")
    terms = [math.log1p(math.exp(-lam * N / i)) for i in range(1, N + 1)]
    return lam * N + math.fsum(terms)


def growth_table(N_max: int, allow_large: bool = False) -> list[GrowthRow]:
    """Exact subset counts against the entropy bound for N = 1..N_max.

    The count column is the number of subsets of [1,N] with reciprocal sum
    exactly 1; the bound column also dominates the weaker at-most-1 count,
    so every row satisfies log(count)/N <= bound/N. N_max above 44 leaves
    the int64 meet-in-the-middle regime and is refused without allow_large.
    """
    from .solver import count_subsets

    if N_max < 1:
        raise ValidationError(f"growth_table expects N_max >= 1, got {N_max}")
    if N_max > GROWTH_CAP and not allow_large:
        raise CapacityError(f"growth_table cap is {GROWTH_CAP}; pass allow_large to override")
    lam = _constants_cached().lambda_star
    rows = []
    for N in range(1, N_max + 1):
        count = count_subsets(UnitSet.interval(1, N), 1, cap=max(64, N))
        bound = finite_upper_bound(N, lam)
        rows.append(
            GrowthRow(
                N=N,
                count=count,
                log_count_over_N=math.log(count) / N,
                upper_bound_log_over_N=bound / N,
            )
        )
    return rows


def growth_csv(rows: list[GrowthRow]) -> str:
    lines = ["N,count,log_count_over_N,upper_bound_log_over_N"]
    for row in rows:
        lines.append(
            f"{row.N},{row.count},{row.log_count_over_N:.12g},{row.upper_bound_log_over_N:.12g}"
        )
    return "\n".join(lines) + "\n"


def sampling_plan(N: int, S: int) -> SamplingPlan:
    """Finite-N maximum entropy sampling plan on the smooth window.

    Support: n in [M, N] that are S-smooth with max prime-power exponent
    at most 5 log log N and Omega(n) at most 10 log log N, where
    M = N (log log log N)^(-1/2) when that triple log exceeds 1 (meaningful
    only past N ~ e^(e^e) ~ 3.8e6) and M = 1 otherwise. Probabilities are
    p_i = e^(-lambda* N/i)/(1+e^(-lambda* N/i)) rescaled by one uniform
    factor so that sum p_i / i = 1 to within 1e-12; elements whose raw
    probability underflows to zero are dropped since they are never drawn.

    The asymptotic regime also promises p_i within
    [(log log N)^(-1), 1/2]; at desk scale that window is usually empty, so
    it is a reported diagnostic (see clamp_violations) rather than a
    constraint imposed on the plan.
    """
    if N < 16:
        raise ValidationError(f"sampling_plan expects N >= 16, got {N}")
    if S < 1:
        raise ValidationError(f"sampling_plan expects S >= 1, got {S}")
    loglog = math.log(math.log(N))
    triple = math.log(loglog) if loglog > 1 else 0.0
    M = max(1, math.floor(N / math.sqrt(triple))) if triple > 1 else 1
    max_exp_cap = 5 * loglog
    omega_cap = 10 * loglog
    lam = _constants_cached().lambda_star
    support = []
    raw = []
    for n in range(M, N + 1):
        if not is_smooth(n, S):
            continue
        profile = multiplicative_profile(n)
        if profile.max_exponent > max_exp_cap or profile.big_omega > omega_cap:
            continue
        t = math.exp(-lam * N / n)
        p = t / (1.0 + t)
        if p == 0.0:
            continue
        support.append(n)
        raw.append(p)
    if not support:
        raise ValidationError(f"sampling_plan: empty support for N={N}, S={S}")
    mass = math.fsum(p / n for p, n in zip(raw, support))
    scale = 1.0 / mass
    probs = [p * scale for p in raw]
    if any(p >= 1.0 for p in probs):
        raise ValidationError(
            f"sampling_plan: rescale by {scale:.6g} pushes a probability to 1; "
            "support too thin at this N"
        )
    ground = UnitSet(tuple(support))
    Q = plan_modulus(ground)
    return SamplingPlan(
        support=ground,
        probabilities=dict(zip(support, probs)),
        target_x=Q,
        modulus_Q=Q,
    )


def clamp_violations(plan: SamplingPlan, N: int) -> dict:
    """How far the plan sits from the asymptotic clamp
    [(log log N)^(-1), 1/2]; diagnostic only."""
    lower = 1.0 / math.log(math.log(N))
    ps = list(plan.probabilities.values())
    return {
        "clamp_lower": lower,
        "clamp_upper": 0.5,
        "below_lower": sum(1 for p in ps if p < lower),
        "above_upper": sum(1 for p in ps if p > 0.5),
        "support_size": len(ps),
    }
