"""Egyptian fraction engines: greedy baseline, the smooth-modulus
construction, interval expansions of 1, and the prime obstruction
certificate.

The smooth construction writes a/b as two disjoint blocks. Pick a modulus
Q = lcm of all prime powers <= S with Q > 10b, and an integer x with
Q/3 <= aQ - xb <= 2Q/3; then

    a/b = (aQ - xb)/(bQ) + x/Q.

Both parts become subset problems over one small window of S-smooth
integers: a set A in the window with R(A) = (aQ - xb)/Q scaled by b covers
the first block, and a set B with R(B) = xy/Q scaled by a multiplier
y in [ceil(Q/(3x)), floor(Q/x)] covers the second. Here the exact subset
solver replaces the probabilistic existence argument that powers the
asymptotic version, and disjointness of the two scaled blocks is enforced
directly: candidate y values (primes not dividing b first) constrain the
second solve to window elements whose scaled copies avoid the first block,
so any returned solution is disjoint by construction. The large-a case is
disjoint automatically since y <= b/a pushes the second block below the
first.

The obstruction certificate is the modular impossibility for prime starts:
in any expansion 1 = 1/t + ..., the multiples of t present, say D scaled
down by t, must satisfy 1 + sum_{m in D} 1/m = 0 mod t, and D cannot be
empty (otherwise the denominator t survives on one side). If every
nonempty D from {2..floor(N/t)} gives a reduced a/b with a + b < t, no
expansion within [t, N] exists.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    CapacityError,
    UnitSet,
    ValidationError,
    factorize,
    is_smooth,
    reciprocal_sum,
)
from .solver import BLOCKED_START_CAP, find_subset

__all__ = [
    "Expansion",
    "ObstructionCertificate",
    "SMOOTH_WINDOW_TOP",
    "OBSTRUCTION_ENUM_CAP",
    "BENCH_B_CAP",
    "greedy_expand",
    "smooth_expand",
    "expansion_from",
    "obstruction_certificate",
    "budget_benchmark",
    "bench_csv",
]

SMOOTH_WINDOW_TOP = 64           # solver window [TOP/16, TOP]
_SMOOTH_LADDER = (13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61)
OBSTRUCTION_ENUM_CAP = 24        # 2^(m_max-1) subsets enumerated exactly
BENCH_B_CAP = 10**5


@dataclass(frozen=True)
class Expansion:
    """A verified unit fraction expansion: sum of 1/n over denominators
    equals numerator/denominator exactly; denominators strictly increase."""

    numerator: int
    denominator: int
    denominators: tuple[int, ...]
    strategy: str

    def __post_init__(self) -> None:
        if not self.denominators:
            raise ValidationError("an expansion needs at least one denominator")
        if any(n < 1 for n in self.denominators):
            raise ValidationError("denominators must be >= 1")
        if any(b >= c for b, c in zip(self.denominators, self.denominators[1:])):
            raise ValidationError("denominators must be strictly increasing")
        total = sum(Fraction(1, n) for n in self.denominators)
        if total != Fraction(self.numerator, self.denominator):
            raise ValidationError(
                f"expansion sums to {total}, expected {self.numerator}/{self.denominator}"
            )

    @property
    def max_denominator(self) -> int:
        return self.denominators[-1]

    def to_dict(self) -> dict:
        return {
            "a": self.numerator,
            "b": self.denominator,
            "denominators": list(self.denominators),
            "max_denominator": self.max_denominator,
            "strategy": self.strategy,
            "valid": True,
        }


@dataclass(frozen=True)
class ObstructionCertificate:
    """conclusion True certifies that no expansion of 1 starts at the prime
    t with all denominators in [t, N]."""

    t: int
    N: int
    multiples_bound: int
    lcm_bound: int
    conclusion: bool

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "N": self.N,
            "multiples_bound": self.multiples_bound,
            "lcm_bound": self.lcm_bound,
            "conclusion": self.conclusion,
        }


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return len(f) == 1 and next(iter(f.values())) == 1


def greedy_expand(a: int, b: int, cap: int | None = None) -> Expansion:
    """Fibonacci-Sylvester greedy: repeatedly take the largest unit
    fraction not exceeding the remainder. The numerator strictly decreases
    each step, so at most a steps run; denominators may still be enormous.
    """
    if not 1 <= a <= b:
        raise ValidationError(f"greedy_expand expects 1 <= a <= b, got {a}/{b}")
    rem = Fraction(a, b)
    denominators: list[int] = []
    while rem > 0:
        n = -(-rem.denominator // rem.numerator)  # ceil(1/rem)
        if cap is not None and n > cap:
            raise CapacityError(f"greedy denominator {n} exceeds cap {cap}")
        new = rem - Fraction(1, n)
        assert new.numerator < rem.numerator, "greedy numerator failed to decrease"
        denominators.append(n)
        rem = new
    return Expansion(a, b, tuple(denominators), "greedy")


def _ladder_modulus(S: int) -> int:
    """lcm of all prime powers <= S."""
    Q = 1
    p = 2
    while p <= S:
        if _is_prime(p):
            power = p
            while power * p <= S:
                power *= p
            Q = Q * power
        p += 1
    return Q


def _smooth_window(S: int) -> UnitSet:
    lo = SMOOTH_WINDOW_TOP // 16
    return UnitSet(tuple(
        n for n in range(lo, SMOOTH_WINDOW_TOP + 1) if is_smooth(n, S)
    ))


def _y_candidates(y_lo: int, y_hi: int, b: int, limit: int = 48) -> list[int]:
    """Multiplier order: primes not dividing b from the top of the range,
    then everything else descending; larger y pushes the second block away
    from the first."""
    preferred: list[int] = []
    rest: list[int] = []
    for y in range(y_hi, y_lo - 1, -1):
        if len(preferred) >= limit:
            break
        if _is_prime(y) and b % y != 0:
            preferred.append(y)
        elif len(rest) < limit:
            rest.append(y)
    return (preferred + rest)[:limit]


def smooth_expand(a: int, b: int, S: int | None = None) -> Expansion:
    """Two-block smooth construction for a/b with 1 <= a < b.

    S defaults to the smallest ladder value whose modulus Q exceeds 10b;
    explicit S must satisfy 4 <= S <= 61 (so the solver window [4, 64]
    contains every maximal prime power <= S, making the window lcm exactly
    Q) and Q > 10b. Falls back to the greedy expansion, tagged
    greedy-fallback, if no (x, y) pair admits exact disjoint solutions.
    """
    if not 1 <= a < b:
        raise ValidationError(f"smooth_expand expects 1 <= a < b, got {a}/{b}")
    if math.gcd(a, b) != 1:
        raise ValidationError(f"smooth_expand expects a reduced fraction, got {a}/{b}")
    if S is None:
        ladder = [s for s in _SMOOTH_LADDER if _ladder_modulus(s) > 10 * b]
        if not ladder:
            raise CapacityError(f"no ladder modulus exceeds 10*b for b = {b}")
        ladder = ladder[:3]
    else:
        if not 4 <= S <= 61:
            raise ValidationError(f"smooth_expand expects 4 <= S <= 61, got S = {S}")
        if _ladder_modulus(S) <= 10 * b:
            raise ValidationError(
                f"modulus {_ladder_modulus(S)} for S = {S} is not above 10*b = {10 * b}"
            )
        ladder = [S]
    for s_val in ladder:
        result = _smooth_attempt(a, b, s_val)
        if result is not None:
            return result
    fallback = greedy_expand(a, b)
    return Expansion(a, b, fallback.denominators, "greedy-fallback")


def _smooth_attempt(a: int, b: int, S: int) -> Expansion | None:
    Q = _ladder_modulus(S)
    window = _smooth_window(S)
    if reciprocal_sum(window) < 1:
        return None
    # x with Q/3 <= aQ - xb <= 2Q/3, i.e. x in [(aQ - 2Q/3)/b, (aQ - Q/3)/b]
    x_lo = -((-(3 * a * Q - 2 * Q)) // (3 * b))  # ceil
    x_hi = (3 * a * Q - Q) // (3 * b)            # floor
    for x in range(x_hi, max(x_lo, x_hi - 23) - 1, -1):
        if x < 1:
            break
        s = a * Q - x * b
        if not (3 * s >= Q and 3 * s <= 2 * Q):
            continue
        first = find_subset(window, Fraction(s, Q))
        if first is None:
            continue
        scaled_first = {b * n for n in first}
        y_lo = -((-Q) // (3 * x))
        y_hi = Q // x
        if y_lo < 1:
            y_lo = 1
        for y in _y_candidates(y_lo, y_hi, b):
            allowed = tuple(n for n in window if y * n not in scaled_first)
            if not allowed:
                continue
            second = find_subset(UnitSet(allowed), Fraction(x * y, Q))
            if second is None:
                continue
            scaled_second = {y * n for n in second}
            assert not (scaled_first & scaled_second), "scaled blocks must be disjoint"
            denominators = tuple(sorted(scaled_first | scaled_second))
            return Expansion(a, b, denominators, "smooth")
    return None


def expansion_from(t: int, N: int, allow_heuristic: bool = False) -> Expansion | None:
    """Expansion of 1 with least denominator exactly t and all denominators
    in [t, N]; None means none exists (certified for N <= 48).

    t = 1 returns the one-term expansion [1]. Beyond N = 48 the complete
    search is refused unless allow_heuristic is set, in which case only the
    64 smallest candidates above t are searched and None is inconclusive.
    """
    if not 1 <= t <= N:
        raise ValidationError(f"expansion_from expects 1 <= t <= N, got t={t}, N={N}")
    if t == 1:
        return Expansion(1, 1, (1,), "interval")
    if N > BLOCKED_START_CAP and not allow_heuristic:
        raise CapacityError(
            f"complete interval search capped at N = {BLOCKED_START_CAP}; "
            "pass allow_heuristic for a partial search"
        )
    candidates = UnitSet.interval(t + 1, N)
    strategy = "interval"
    if len(candidates) > 64:
        candidates = UnitSet(candidates.elements[:64])
        strategy = "interval-heuristic"
    tail = find_subset(candidates, Fraction(1) - Fraction(1, t))
    if tail is None:
        return None
    return Expansion(1, 1, (t,) + tail.elements, strategy)


def obstruction_certificate(t: int, N: int) -> ObstructionCertificate:
    """Modular nonexistence certificate for expansions of 1 starting at a
    prime t within [t, N].

    Enumerates every nonempty D within {2..floor(N/t)} exactly when that
    set has at most 23 members (lcm-scaled integer subset sums, vectorized
    gcd reduction); all reduced sums a/b with a + b < t certify. Larger
    ranges use the coarse exact bound a + b <= lcm * H(m_max) instead of
    enumerating.
    """
    if not _is_prime(t):
        raise ValidationError(f"obstruction_certificate expects prime t, got {t}")
    if t > N:
        raise ValidationError(f"obstruction_certificate expects t <= N, got t={t}, N={N}")
    m_max = N // t
    L = math.lcm(*range(1, m_max + 1)) if m_max >= 1 else 1
    if m_max <= 1:
        # no multiples of t in (t, N], and D empty is impossible: certified
        return ObstructionCertificate(t, N, m_max, L, True)
    if m_max <= OBSTRUCTION_ENUM_CAP:
        weights = [L // m for m in range(2, m_max + 1)]
        sums = np.zeros(1, dtype=np.int64)
        for w in weights:
            sums = np.concatenate([sums, sums + np.int64(w)])
        sums = sums[1:]  # drop the empty D
        g = np.gcd(sums, np.int64(L))
        reduced_total = (sums + L) // g  # a + b for the reduced a/b
        conclusion = bool(np.all(reduced_total < t))
        return ObstructionCertificate(t, N, m_max, L, conclusion)
    harmonic = sum(Fraction(1, m) for m in range(1, m_max + 1))
    conclusion = L * harmonic < t
    return ObstructionCertificate(t, N, m_max, L, conclusion)


def budget_benchmark(
    b_max: int,
    samples: int,
    strategies: Sequence[str] = ("greedy", "smooth"),
    seed: int = 0,
) -> list[dict]:
    """Random reduced fractions a/b with b <= b_max run through each
    strategy; rows sorted by (b, a, strategy) and reproducible from the
    seed. Ratio columns go infinite when greedy denominators overflow a
    float; that is the point of the comparison."""
    if b_max > BENCH_B_CAP:
        raise CapacityError(f"budget_benchmark cap is b_max <= {BENCH_B_CAP}")
    if b_max < 2 or samples < 1:
        raise ValidationError("budget_benchmark expects b_max >= 2 and samples >= 1")
    known = {"greedy", "smooth"}
    if not strategies or any(s not in known for s in strategies):
        raise ValidationError(f"strategies must be a nonempty subset of {sorted(known)}")
    rng = random.Random(seed)
    pairs: set[tuple[int, int]] = set()
    attempts = 0
    while len(pairs) < samples:
        attempts += 1
        if attempts > 200 * samples:
            raise ValidationError(
                f"could not draw {samples} distinct reduced fractions with b <= {b_max}"
            )
        b = rng.randrange(2, b_max + 1)
        a = rng.randrange(1, b)
        if math.gcd(a, b) == 1:
            pairs.add((a, b))
    rows = []
    for a, b in sorted(pairs, key=lambda ab: (ab[1], ab[0])):
        for strategy in strategies:
            if strategy == "greedy":
                exp = greedy_expand(a, b)
            else:
                exp = smooth_expand(a, b)
            try:
                ratio_b = exp.max_denominator / b
            except OverflowError:
                ratio_b = math.inf
            try:
                ratio_blogb = exp.max_denominator / (b * math.log(b))
            except OverflowError:
                ratio_blogb = math.inf
            rows.append(
                {
                    "a": a,
                    "b": b,
                    "strategy": strategy,
                    "terms": len(exp.denominators),
                    "max_denominator": exp.max_denominator,
                    "ratio_b": ratio_b,
                    "ratio_blogb": ratio_blogb,
                    "fallback": exp.strategy == "greedy-fallback",
                    "valid": True,
                }
            )
    return rows


def bench_csv(rows: list[dict]) -> str:
    header = "a,b,strategy,terms,max_denominator,ratio_b,ratio_blogb,fallback,valid"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r['a']},{r['b']},{r['strategy']},{r['terms']},{r['max_denominator']},"
            f"{r['ratio_b']:.6g},{r['ratio_blogb']:.6g},{r['fallback']},{r['valid']}"
        )
    return "\n".join(lines) + "\n"
