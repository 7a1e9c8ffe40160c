import math

import pytest

from unitfrac import (
    CapacityError,
    ValidationError,
    clamp_violations,
    count_subsets,
    defining_integral,
    finite_upper_bound,
    gamma_star_integral,
    growth_csv,
    growth_table,
    is_smooth,
    sampling_plan,
    solve_lambda_star,
)

LAMBDA_STAR = 0.12719091512470704
GAMMA_STAR = 0.6315725524915321


def test_constants_values():
    constants = solve_lambda_star(1e-9)
    assert constants.lambda_star == pytest.approx(LAMBDA_STAR, abs=1e-8)
    assert constants.gamma_star == pytest.approx(GAMMA_STAR, abs=1e-8)
    assert math.exp(constants.gamma_star) == pytest.approx(1.8805655, abs=1e-6)
    assert abs(constants.residual) < 1e-10
    assert constants.quadrature_error_estimate < 1e-9


def test_defining_integral_crosses_one():
    assert defining_integral(LAMBDA_STAR) == pytest.approx(1.0, abs=1e-10)
    assert defining_integral(0.05) > 1.0
    assert defining_integral(0.5) < 1.0


def test_gamma_star_consistency():
    # gamma* = lambda* + the companion integral
    assert LAMBDA_STAR + gamma_star_integral(LAMBDA_STAR) == pytest.approx(
        GAMMA_STAR, abs=1e-10
    )


def test_solve_tolerance_validation():
    with pytest.raises(ValidationError):
        solve_lambda_star(0.0)
    with pytest.raises(ValidationError):
        solve_lambda_star(1e-3)
    rough = solve_lambda_star(1e-5)
    assert rough.lambda_star == pytest.approx(LAMBDA_STAR, abs=1e-5)


def test_constants_serialization():
    d = solve_lambda_star(1e-8).to_dict()
    assert set(d) >= {"lambda_star", "gamma_star", "exp_gamma_star", "residual"}
    assert d["exp_gamma_star"] == pytest.approx(1.880566, abs=1e-5)


def test_finite_upper_bound_dominates_log_counts():
    for N in (1, 5, 10, 16, 20):
        count = count_subsets(range(1, N + 1), 1)
        assert math.log(count) <= finite_upper_bound(N, LAMBDA_STAR) + 1e-12, N


def test_growth_table_rows():
    rows = growth_table(12)
    assert [r.N for r in rows] == list(range(1, 13))
    assert rows[5].count == 2  # N = 6
    for r in rows:
        assert r.log_count_over_N <= r.upper_bound_log_over_N + 1e-12
        assert r.log_count_over_N == pytest.approx(math.log(r.count) / r.N)


def test_growth_table_cap():
    with pytest.raises(CapacityError):
        growth_table(45)
    with pytest.raises(ValidationError):
        growth_table(0)


def test_growth_csv_header_pinned():
    text = growth_csv(growth_table(6))
    lines = text.strip().split("\n")
    assert lines[0] == "N,count,log_count_over_N,upper_bound_log_over_N"
    assert len(lines) == 7
    assert lines[6].startswith("6,2,")


def test_sampling_plan_invariants():
    N, S = 60, 11
    plan = sampling_plan(N, S)
    # expected reciprocal sum of the sampled set is exactly 1 (to fp accuracy)
    assert math.fsum(p / n for n, p in plan.probabilities.items()) == pytest.approx(
        1.0, abs=1e-12
    )
    assert all(0.0 < p < 1.0 for p in plan.probabilities.values())
    for n in plan.support:
        assert n <= N and is_smooth(n, S)
    assert plan.modulus_Q >= 1
    assert plan.target_x == plan.modulus_Q  # encodes target sum 1


def test_sampling_plan_validation():
    with pytest.raises(ValidationError):
        sampling_plan(0, 5)
    with pytest.raises(ValidationError):
        sampling_plan(100, 1)
    # a support too thin for the rescale is refused, not silently clamped
    with pytest.raises(ValidationError):
        sampling_plan(200, 13)


def test_clamp_violations_reports():
    plan = sampling_plan(200, 31)
    report = clamp_violations(plan, 200)
    assert set(report) >= {"below_lower", "above_upper", "support_size"}
    assert report["support_size"] == len(plan.support)
