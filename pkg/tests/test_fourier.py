import math

import pytest

import oracles
from unitfrac import (
    CapacityError,
    UnitSet,
    ValidationError,
    azuma_bound_check,
    brute_force_integrality,
    exact_integrality_probability,
    h_zero_term,
    integrality_report,
    major_arc_partial_sum,
    monte_carlo_integrality,
    plan_modulus,
    residue_profile,
    sampling_plan,
    taylor_fact_sweep,
)
from unitfrac.fourier import SamplingPlan


def make_plan(support, p, x=None):
    support = UnitSet.coerce(support)
    Q = plan_modulus(support)
    probs = {n: p for n in support} if isinstance(p, float) else dict(p)
    return SamplingPlan(
        support=support,
        probabilities=probs,
        target_x=Q if x is None else x,
        modulus_Q=Q,
    )


def test_plan_modulus():
    assert plan_modulus(UnitSet.coerce([3, 4, 5, 6])) == 60
    assert plan_modulus(UnitSet.coerce([2, 4, 8])) == 8
    assert plan_modulus(UnitSet.coerce([1])) == 1


def test_plan_validation():
    with pytest.raises(ValidationError):
        make_plan([3, 4], 1.0)  # p must be strictly inside (0,1)
    with pytest.raises(ValidationError):
        SamplingPlan(
            support=UnitSet.coerce([3, 4]),
            probabilities={3: 0.5, 4: 0.5},
            target_x=0,
            modulus_Q=13,  # wrong lcm
        )
    with pytest.raises(ValidationError):
        make_plan([3, 4], 0.5, x=999)  # x outside [0, Q]
    with pytest.raises(ValidationError):
        SamplingPlan(
            support=UnitSet.coerce([3, 4]),
            probabilities={3: 0.5, 5: 0.5},  # keys do not match support
            target_x=0,
            modulus_Q=12,
        )


def test_toy_probability_matches_brute_force():
    plan = make_plan([3, 4, 5, 6], 0.5, x=57)
    exact = exact_integrality_probability(plan)
    brute = brute_force_integrality(plan)
    assert exact == pytest.approx(brute, abs=1e-12)
    assert exact == pytest.approx(0.0625, abs=1e-12)


def test_probability_matches_fraction_oracle():
    plan = make_plan([2, 3, 4, 6], {2: 0.3, 3: 0.7, 4: 0.25, 6: 0.5}, x=6)
    exact = exact_integrality_probability(plan)
    oracle = oracles.fraction_probability(
        plan.support.elements, plan.probabilities, plan.target_x, plan.modulus_Q
    )
    assert exact == pytest.approx(oracle, abs=1e-12)
    assert brute_force_integrality(plan) == pytest.approx(oracle, abs=1e-12)


def test_integrality_report_fields():
    plan = make_plan([3, 4, 5, 6], 0.5, x=57)
    report = integrality_report(plan)
    assert report["Q"] == 60
    assert report["probability"] == pytest.approx(0.0625, abs=1e-12)
    assert report["imag_residual"] < 1e-12
    assert report["h0_term"] == pytest.approx(1 / 60)


def test_h_zero_term_is_inverse_modulus():
    plan = make_plan([3, 4, 5], 0.4)
    assert h_zero_term(plan) == pytest.approx(1 / plan.modulus_Q)


def test_major_arc_partial_sum():
    plan = make_plan([3, 4, 5, 6], 0.5, x=57)
    # M = 1 keeps only h = 0
    assert major_arc_partial_sum(plan, 1) == pytest.approx(1 / 60)
    wider = major_arc_partial_sum(plan, 3)
    assert wider != pytest.approx(1 / 60)  # h = +-1 contribute
    with pytest.raises(ValidationError):
        major_arc_partial_sum(plan, 0)
    # the window must stay below the smallest denominator
    with pytest.raises(ValidationError):
        major_arc_partial_sum(plan, plan.modulus_Q)


def test_capacity_refusals():
    big = UnitSet.coerce(list(range(2, 40)))
    with pytest.raises(CapacityError):
        exact_integrality_probability(
            make_plan(big, 0.5)
        )
    small_support_huge_Q = make_plan([31, 37, 41, 43, 47, 53, 59, 61], 0.5)
    assert small_support_huge_Q.modulus_Q > 10**9
    with pytest.raises(CapacityError):
        exact_integrality_probability(small_support_huge_Q)


def test_residue_profile_centered():
    profile = residue_profile(UnitSet.interval(3, 8), h=5, K=4, t=2)
    assert profile.residues == {3: -1, 4: 1, 5: 0, 6: -1, 7: -2, 8: -3}
    assert profile.window == (3.0, 7.0)
    # centered representative lies in (-n/2, n/2]
    for n, r in profile.residues.items():
        assert -n / 2 < r <= n / 2
        assert (5 - r) % n == 0


def test_taylor_sweep_no_violations():
    report = taylor_fact_sweep(10**4)
    assert report.violations == 0
    assert report.min_margin >= 0.0
    assert 0.0 < report.cubic_ratio_max < 4 * math.pi**2
    d = report.to_dict()
    assert d["grid_points"] == 10**4
    with pytest.raises(ValidationError):
        taylor_fact_sweep(10)


def test_azuma_bound_holds():
    report = azuma_bound_check([1.0, 2.0, 1.0, 3.0], 2.5, 20000, seed=1)
    assert 0.0 <= report.empirical <= 1.0
    assert report.empirical <= report.bound + report.margin
    d = report.to_dict()
    assert set(d) >= {"bound", "empirical", "margin", "trials"}
    with pytest.raises(ValidationError):
        azuma_bound_check([1.0], 1.0, 100)  # too few trials


def test_azuma_seed_determinism():
    a = azuma_bound_check([1.0, 1.0, 1.0], 1.5, 10**4, seed=5)
    b = azuma_bound_check([1.0, 1.0, 1.0], 1.5, 10**4, seed=5)
    assert a.empirical == b.empirical


def test_monte_carlo_matches_exact_on_tiny_plan():
    plan = sampling_plan(16, 9)
    exact = exact_integrality_probability(plan)
    summary = monte_carlo_integrality(plan, 200_000, seed=2)
    spread = 4 * math.sqrt(max(exact, 1e-9) / 200_000) + 1e-3
    assert summary["empirical"] == pytest.approx(exact, abs=spread)
    assert summary["trials"] == 200_000
    assert summary["lower_bound"] == pytest.approx(0.25 / plan.modulus_Q)
