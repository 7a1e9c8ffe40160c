"""Exact arithmetic over sets of unit fractions.

Everything downstream works with reciprocal sums R(A) = sum(1/n for n in A)
held as exact rationals, so this module fixes the ground types: validated
integer sets, multiplicative profiles from factorization, prime power
smoothness, and the prime power support whose lcm Q makes every reciprocal
sum over A an integer multiple of 1/Q.

Rationals are stdlib Fraction values (always lowest terms, positive
denominator). Serialized form is "num/den", sets are comma separated sorted
integers, and "a..b" denotes an inclusive integer range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, NamedTuple

__all__ = [
    "CapacityError",
    "ValidationError",
    "UnitSet",
    "MultiplicativeProfile",
    "PrimePowerSet",
    "reciprocal_sum",
    "factorize",
    "multiplicative_profile",
    "is_smooth",
    "prime_power_support",
    "lcm_of",
    "format_rational",
    "parse_rational",
    "parse_unit_set",
]


class CapacityError(RuntimeError):
    """Raised when an input exceeds a documented capacity cap."""


class ValidationError(ValueError):
    """Raised when an input violates an operation's precondition."""


# ---------------------------------------------------------------------------
# prime table for trial division, grown lazily

_PRIME_LIMIT_DEFAULT = 10**6
_prime_list: list[int] = []
_prime_limit = 0


def _ensure_primes(limit: int) -> list[int]:
    global _prime_list, _prime_limit
    if limit <= _prime_limit:
        return _prime_list
    limit = max(limit, _PRIME_LIMIT_DEFAULT)
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    _prime_list = [i for i in range(2, limit + 1) if sieve[i]]
    _prime_limit = limit
    return _prime_list


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division.

    Complete for n up to the square of the prime table limit (10^12 with the
    default table). Larger n raise CapacityError; this is a desk tool, not a
    general purpose factoring engine.
    """
    if n < 1:
        raise ValidationError(f"factorize expects n >= 1, got {n}")
    if n == 1:
        return {}
    out: dict[int, int] = {}
    m = n
    for p in _ensure_primes(min(isqrt(n) + 1, _PRIME_LIMIT_DEFAULT)):
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    if m > 1:
        if m > _PRIME_LIMIT_DEFAULT**2:
            raise CapacityError(f"factorize: residue {m} exceeds trial division range")
        out[m] = out.get(m, 0) + 1
    return out


def lcm_of(values: Iterable[int]) -> int:
    """lcm of an iterable of positive integers (1 for the empty iterable)."""
    l = 1
    for v in values:
        l = l * v // gcd(l, v)
    return l


# ---------------------------------------------------------------------------
# ground types


@dataclass(frozen=True)
class UnitSet:
    """A finite set of distinct positive integers, kept sorted.

    The elements are the denominators of the unit fractions under study.
    """

    elements: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        raw = [int(e) for e in self.elements]
        elems = tuple(sorted(set(raw)))
        if elems and elems[0] < 1:
            raise ValidationError(f"UnitSet elements must be >= 1, got {elems[0]}")
        if len(elems) != len(raw):
            raise ValidationError("UnitSet elements must be distinct")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def coerce(cls, value: "UnitSet | Iterable[int]") -> "UnitSet":
        if isinstance(value, UnitSet):
            return value
        return cls(tuple(value))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "UnitSet":
        return cls(tuple(range(lo, hi + 1)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, n: int) -> bool:
        return n in self.elements

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.elements)

    def restrict(self, lo: int, hi: int) -> "UnitSet":
        """Elements in [lo, hi]."""
        return UnitSet(tuple(e for e in self.elements if lo <= e <= hi))

    def multiples_of(self, q: int) -> "UnitSet":
        return UnitSet(tuple(e for e in self.elements if e % q == 0))

    def without(self, other: "UnitSet | Iterable[int]") -> "UnitSet":
        drop = set(UnitSet.coerce(other).elements)
        return UnitSet(tuple(e for e in self.elements if e not in drop))


class MultiplicativeProfile(NamedTuple):
    """(omega, big_omega, max_exponent) of an integer.

    omega counts distinct primes, big_omega counts primes with multiplicity,
    max_exponent is the largest exponent in the factorization. n = 1 maps to
    (0, 0, 0).
    """

    omega: int
    big_omega: int
    max_exponent: int


@dataclass(frozen=True)
class PrimePowerSet:
    """The prime powers supporting a UnitSet, and their lcm Q.

    members holds, for each prime p dividing some element, the maximal power
    p^v_p(n) attained by an element n (optionally filtered by a smoothness
    cap). Every reciprocal sum over the set is an integer multiple of 1/lcm.
    """

    members: tuple[int, ...]
    lcm: int


def reciprocal_sum(A: UnitSet | Iterable[int]) -> Fraction:
    """R(A) = sum of 1/n over the set, exact. Empty set gives 0/1."""
    total = Fraction(0)
    for n in UnitSet.coerce(A):
        total += Fraction(1, n)
    return total


def multiplicative_profile(n: int) -> MultiplicativeProfile:
    """omega, big omega, and the maximal exponent of n's factorization."""
    f = factorize(n)
    if not f:
        return MultiplicativeProfile(0, 0, 0)
    return MultiplicativeProfile(len(f), sum(f.values()), max(f.values()))


def is_smooth(n: int, S: int) -> bool:
    """True when every prime power dividing n is at most S.

    Equivalently p^v_p(n) <= S for each prime p | n; this is the prime power
    notion of smoothness, so 12 = 2^2*3 is 4-smooth but 8 = 2^3 is not.
    """
    if n < 1:
        raise ValidationError(f"is_smooth expects n >= 1, got {n}")
    if S < 1:
        raise ValidationError(f"is_smooth expects S >= 1, got {S}")
    for p, e in factorize(n).items():
        if p**e > S:
            return False
    return True


def prime_power_support(A: UnitSet | Iterable[int], S: int | None = None) -> PrimePowerSet:
    """Maximal prime powers dividing elements of A, optionally capped at S.

    For each prime p dividing some element, the member is max over elements
    of p^v_p(n); members exceeding S are dropped when S is given. lcm is the
    product of the surviving members, one per prime.
    """
    best: dict[int, int] = {}
    for n in UnitSet.coerce(A):
        for p, e in factorize(n).items():
            if e > best.get(p, 0):
                best[p] = e
    members = []
    for p, e in best.items():
        q = p**e
        if S is None or q <= S:
            members.append(q)
    members.sort()
    l = 1
    for q in members:
        l *= q
    return PrimePowerSet(members=tuple(members), lcm=l)


# ---------------------------------------------------------------------------
# serialization

def format_rational(x: Fraction) -> str:
    """Canonical "num/den" form, lowest terms, explicit denominator."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or a bare integer/decimal literal as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"cannot parse rational {text!r}: {e}") from None


def parse_unit_set(text: str) -> UnitSet:
    """Parse comma separated integers and inclusive "a..b" ranges."""
    elems: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            lo_s, _, hi_s = token.partition("..")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise ValidationError(f"bad range token {token!r}") from None
            if lo > hi:
                raise ValidationError(f"empty range {token!r}")
            elems.extend(range(lo, hi + 1))
        else:
            try:
                elems.append(int(token))
            except ValueError:
                raise ValidationError(f"bad integer token {token!r}") from None
    return UnitSet(tuple(elems))
