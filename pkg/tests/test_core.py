import pytest
from fractions import Fraction

import oracles
from unitfrac import (
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


def test_factorize_matches_naive():
    for n in list(range(1, 200)) + [2 * 3 * 5 * 7 * 11, 2**10, 97 * 101]:
        assert factorize(n) == oracles.naive_factorize(n), n


def test_factorize_rejects_nonpositive():
    for bad in (0, -1):
        with pytest.raises(ValidationError):
            factorize(bad)


def test_lcm_of():
    assert lcm_of([1, 2, 3, 4, 5, 6]) == 60
    assert lcm_of([7]) == 7
    assert lcm_of(range(1, 11)) == 2520


def test_reciprocal_sum_exact():
    assert reciprocal_sum([2, 3, 6]) == 1
    assert reciprocal_sum([2, 3, 4, 5]) == Fraction(77, 60)
    assert reciprocal_sum([]) == 0


def test_unit_set_basics():
    s = UnitSet.coerce([6, 2, 4])
    assert s.elements == (2, 4, 6)
    assert str(s) == "2,4,6"
    assert len(s) == 3
    assert 4 in s and 5 not in s


def test_unit_set_rejects_duplicates_and_nonpositive():
    with pytest.raises(ValidationError):
        UnitSet.coerce([2, 2, 3])
    with pytest.raises(ValidationError):
        UnitSet.coerce([0, 1])
    with pytest.raises(ValidationError):
        UnitSet.coerce([-3])


def test_unit_set_interval():
    assert UnitSet.interval(1, 6).elements == (1, 2, 3, 4, 5, 6)
    assert UnitSet.interval(5, 4).elements == ()


def test_unit_set_operations():
    s = UnitSet.interval(1, 12)
    assert s.multiples_of(4).elements == (4, 8, 12)
    assert s.restrict(3, 7).elements == (3, 4, 5, 6, 7)
    assert s.without([1, 2, 3]).elements == tuple(range(4, 13))


def test_parse_unit_set_syntax():
    assert parse_unit_set("1..6").elements == (1, 2, 3, 4, 5, 6)
    assert parse_unit_set("2,3,7..9").elements == (2, 3, 7, 8, 9)
    assert parse_unit_set("5").elements == (5,)
    assert parse_unit_set("").elements == ()
    with pytest.raises(ValidationError):
        parse_unit_set("3,3")
    with pytest.raises(ValidationError):
        parse_unit_set("a..b")
    with pytest.raises(ValidationError):
        parse_unit_set("1..")


def test_rational_round_trip():
    assert parse_rational("5/6") == Fraction(5, 6)
    assert parse_rational("1") == 1
    assert format_rational(Fraction(5, 6)) == "5/6"
    assert format_rational(Fraction(2)) == "2/1"
    assert parse_rational(format_rational(Fraction(-3, 7))) == Fraction(-3, 7)
    with pytest.raises(ValidationError):
        parse_rational("1/0")
    with pytest.raises(ValidationError):
        parse_rational("x")


def test_is_smooth_prime_power_convention():
    # smoothness counts prime powers, not just primes: 12 = 4 * 3 is
    # 4-smooth, but 8 = 2^3 is not
    assert is_smooth(12, 4)
    assert not is_smooth(8, 4)
    assert is_smooth(8, 8)
    assert not is_smooth(18, 8)  # 18 = 2 * 9, and 9 > 8
    assert is_smooth(1, 2)


def test_multiplicative_profile():
    assert multiplicative_profile(360) == (3, 6, 3)
    assert multiplicative_profile(1) == (0, 0, 0)
    assert multiplicative_profile(97) == (1, 1, 1)


def test_prime_power_support_lcm():
    support = prime_power_support([2, 3, 4, 5, 6])
    assert set(support.members) == {4, 3, 5}
    assert support.lcm == 60
    assert prime_power_support([1]).lcm == 1
    # a smoothness cap drops members above it
    assert prime_power_support([2, 3, 4, 5, 6], S=4).members == (3, 4)
