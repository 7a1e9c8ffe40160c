"""Exact subset sum solvers over unit fractions, and the extremal quantities
built on them.

Every reciprocal sum over a ground set A is an integer multiple of 1/L with
L = lcm(A), so subset queries reduce to integer subset sums of the scaled
weights L/n. The engines are meet in the middle: enumerate all sums of each
half, sort one side, and join. 2^n work becomes ~2^(n/2). Sums fit int64 for
ground sets up to lcm * (1 + R(A)) < 2^62 (all of [1,40] qualifies), with a
big integer fallback above that.

The deciding, counting, and at-most counting joins are numpy vectorized.
Witness extraction returns the lexicographically smallest solution under the
sorted element encoding, obtained by scanning elements in increasing order
and keeping any element whose inclusion still leaves a feasible completion;
the feasibility oracle is itself a MITM decision on the remaining suffix, so
the whole scan costs about two plain decisions.

Extremal quantities: the largest reciprocal sum (and the largest size) of a
subset of [1,N] containing no subset with reciprocal sum exactly 1. Both are
solved by enumerating the one sum witnesses of [1,N] and running an exact
branch and bound over the hitting sets of that family: removing a minimum
weight hitting set from [1,N] leaves an optimal avoiding set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import CapacityError, UnitSet, ValidationError, lcm_of, reciprocal_sum

__all__ = [
    "FIND_CAP",
    "ENUMERATE_CAP",
    "EXTREMAL_CAP",
    "BLOCKED_START_CAP",
    "ExtremalResult",
    "subset_exists",
    "find_subset",
    "count_subsets",
    "count_subsets_at_most",
    "enumerate_subsets",
    "one_sum_witnesses",
    "max_avoiding_sum",
    "largest_avoiding_set",
    "least_blocked_start",
    "blocked_start_trace",
    "prune_small_fibers",
    "dense_window",
]

FIND_CAP = 64          # find/count/decide ground set cap (2^32 half states)
ENUMERATE_CAP = 32     # full witness listing cap
EXTREMAL_CAP = 28      # avoiding set quantities cap
BLOCKED_START_CAP = 48 # least blocked start cap

_INT64_SAFE = 1 << 62


# ---------------------------------------------------------------------------
# scaled integer machinery


def _scaled(elems: Sequence[int], target: Fraction) -> tuple[int, list[int], int | None, int]:
    """(L, weights, scaled target or None if unreachable, total)."""
    L = lcm_of(elems)
    w = [L // n for n in elems]
    total = sum(w)
    t = target * L
    t_int: int | None = int(t) if t.denominator == 1 else None
    return L, w, t_int, total


def _half_sums_np(weights: Sequence[int]) -> np.ndarray:
    """All 2^k subset sums as int64; index bit i set means weights[i] taken."""
    sums = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate([sums, sums + np.int64(w)])
    return sums

def _half_sums_py(weights: Sequence[int]) -> list[int]:
    sums = [0]
    for w in weights:
        sums += [s + w for s in sums]
    return sums


def _use_numpy(total: int, t: int) -> bool:
    return max(total, abs(t)) < _INT64_SAFE


def _decide_scaled(weights: Sequence[int], t: int, total: int, stats: dict | None) -> bool:
    """Does some subset of weights sum to exactly t."""
    if t == 0:
        return True
    if t < 0 or t > total:
        return False
    k = len(weights) // 2
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + (1 << k) + (1 << (len(weights) - k))
    if _use_numpy(total, t):
        left = _half_sums_np(weights[:k])
        right = np.sort(_half_sums_np(weights[k:]))
        need = t - left
        idx = np.searchsorted(right, need, side="left")
        idx = np.minimum(idx, len(right) - 1)
        return bool(np.any(right[idx] == need))
    left_py = _half_sums_py(weights[:k])
    right_set = set(_half_sums_py(weights[k:]))
    return any(t - s in right_set for s in left_py)


def _count_scaled(weights: Sequence[int], t: int, total: int, stats: dict | None) -> int:
    if t < 0 or t > total:
        return 0
    k = len(weights) // 2
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + (1 << k) + (1 << (len(weights) - k))
    if _use_numpy(total, t):
        left = _half_sums_np(weights[:k])
        right = np.sort(_half_sums_np(weights[k:]))
        need = t - left
        lo = np.searchsorted(right, need, side="left")
        hi = np.searchsorted(right, need, side="right")
        return int(np.sum(hi - lo, dtype=np.int64))
    from collections import Counter

    right_counts = Counter(_half_sums_py(weights[k:]))
    return sum(right_counts.get(t - s, 0) for s in _half_sums_py(weights[:k]))


def _count_at_most_scaled(weights: Sequence[int], t: int, total: int, stats: dict | None) -> int:
    if t < 0:
        return 0
    if t >= total:
        return 1 << len(weights)
    k = len(weights) // 2
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + (1 << k) + (1 << (len(weights) - k))
    if _use_numpy(total, t):
        left = _half_sums_np(weights[:k])
        right = np.sort(_half_sums_np(weights[k:]))
        counts = np.searchsorted(right, t - left, side="right")
        return int(np.sum(counts, dtype=np.int64))
    import bisect

    right_sorted = sorted(_half_sums_py(weights[k:]))
    return sum(bisect.bisect_right(right_sorted, t - s) for s in _half_sums_py(weights[:k]))


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapacityError(f"{what}: ground set has {n} elements, cap is {cap}")


# ---------------------------------------------------------------------------
# public subset sum interface


def subset_exists(A: UnitSet | Iterable[int], r: Fraction | int | str,
                  cap: int = FIND_CAP, stats: dict | None = None) -> bool:
    """Is there a subset B of A with R(B) = r exactly."""
    ground = UnitSet.coerce(A)
    target = Fraction(r)
    _check_cap(len(ground), cap, "subset_exists")
    if target == 0:
        return True
    if target < 0 or not ground:
        return False
    L, w, t, total = _scaled(ground.elements, target)
    if t is None:
        return False  # denominator of r does not divide lcm(A)
    return _decide_scaled(w, t, total, stats)


def count_subsets(A: UnitSet | Iterable[int], r: Fraction | int | str,
                  cap: int = FIND_CAP, stats: dict | None = None) -> int:
    """Number of subsets B of A with R(B) = r exactly (the empty set counts
    for r = 0)."""
    ground = UnitSet.coerce(A)
    target = Fraction(r)
    _check_cap(len(ground), cap, "count_subsets")
    if target < 0:
        return 0
    if not ground:
        return 1 if target == 0 else 0
    L, w, t, total = _scaled(ground.elements, target)
    if t is None:
        return 0
    return _count_scaled(w, t, total, stats)


def count_subsets_at_most(A: UnitSet | Iterable[int], r: Fraction | int | str,
                          cap: int = FIND_CAP, stats: dict | None = None) -> int:
    """Number of subsets B of A with R(B) <= r (the empty set counts for
    r >= 0)."""
    ground = UnitSet.coerce(A)
    target = Fraction(r)
    _check_cap(len(ground), cap, "count_subsets_at_most")
    if target < 0:
        return 0
    if not ground:
        return 1
    L, w, _, total = _scaled(ground.elements, Fraction(0))
    t_floor = (target.numerator * L) // target.denominator  # floor(target * L)
    return _count_at_most_scaled(w, t_floor, total, stats)


def find_subset(A: UnitSet | Iterable[int], r: Fraction | int | str,
                cap: int = FIND_CAP, stats: dict | None = None) -> UnitSet | None:
    """Lexicographically smallest subset B of A with R(B) = r, or None.

    Smallest under the sorted element encoding: scan elements in increasing
    order, keep an element iff some completion from the remaining suffix
    still reaches the target, stop once the target hits zero.
    """
    ground = UnitSet.coerce(A)
    target = Fraction(r)
    _check_cap(len(ground), cap, "find_subset")
    if target == 0:
        return UnitSet()
    if target < 0 or not ground:
        return None
    elems = ground.elements
    L, w, t, total = _scaled(elems, target)
    if t is None or not _decide_scaled(w, t, total, stats):
        return None
    chosen: list[int] = []
    remaining = t
    suffix_totals = [0] * (len(elems) + 1)
    for i in range(len(elems) - 1, -1, -1):
        suffix_totals[i] = suffix_totals[i + 1] + w[i]
    for i, n in enumerate(elems):
        if remaining == 0:
            break
        after = remaining - w[i]
        if after >= 0 and _decide_scaled(w[i + 1 :], after, suffix_totals[i + 1], stats):
            chosen.append(n)
            remaining = after
    assert remaining == 0, "greedy witness scan lost feasibility"
    return UnitSet(tuple(chosen))


def enumerate_subsets(A: UnitSet | Iterable[int], r: Fraction | int | str,
                      cap: int = ENUMERATE_CAP, max_results: int = 10**6,
                      stats: dict | None = None) -> list[UnitSet]:
    """All subsets B of A with R(B) = r, sorted lexicographically."""
    ground = UnitSet.coerce(A)
    target = Fraction(r)
    _check_cap(len(ground), cap, "enumerate_subsets")
    if target < 0:
        return []
    if target == 0:
        return [UnitSet()]
    elems = ground.elements
    if not elems:
        return []
    L, w, t, total = _scaled(elems, target)
    if t is None or t > total:
        return []
    k = len(elems) // 2
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + (1 << k) + (1 << (len(elems) - k))
    left_by_sum: dict[int, list[int]] = {}
    for mask, s in enumerate(_half_sums_py(w[:k])):
        left_by_sum.setdefault(s, []).append(mask)
    out: list[tuple[int, ...]] = []
    for mask, s in enumerate(_half_sums_py(w[k:])):
        for lmask in left_by_sum.get(t - s, ()):
            full = lmask | (mask << k)
            subset = tuple(elems[i] for i in range(len(elems)) if (full >> i) & 1)
            out.append(subset)
            if len(out) > max_results:
                raise CapacityError(f"enumerate_subsets: more than {max_results} results")
    out.sort()
    return [UnitSet(s) for s in out]


# ---------------------------------------------------------------------------
# extremal quantities over [1, N]


@dataclass(frozen=True)
class ExtremalResult:
    """An extremal value over [1,N] with its witness set.

    certified is True when the search provably explored every alternative
    (complete branch and bound), never for heuristic answers.
    """

    N: int
    value: Fraction | int
    witness: UnitSet
    certified: bool

    def to_dict(self) -> dict:
        value = self.value
        if isinstance(value, Fraction):
            value = f"{value.numerator}/{value.denominator}"
        return {
            "N": self.N,
            "value": value,
            "witness": str(self.witness),
            "certified": self.certified,
        }


def one_sum_witnesses(N: int, cap: int = ENUMERATE_CAP) -> list[UnitSet]:
    """All subsets of [1,N] with reciprocal sum exactly 1.

    No two such sets nest (adding an element strictly increases the sum), so
    the family is already an antichain: each member is a minimal obstruction
    for avoiding sets.
    """
    if N < 1:
        raise ValidationError(f"one_sum_witnesses expects N >= 1, got {N}")
    return enumerate_subsets(UnitSet.interval(1, N), Fraction(1), cap=cap)


def _min_hitting_set(witness_sets: list[tuple[int, ...]], costs: dict[int, Fraction],
                     universe: tuple[int, ...]) -> tuple[Fraction, tuple[int, ...]]:
    """Exact minimum cost hitting set by branch and bound.

    Returns (cost, dropped elements) where the complement of dropped within
    universe is tie broken to the lexicographically smallest avoiding set.
    Branches on an unhit witness of minimal size; the lower bound adds the
    cheapest element cost of pairwise disjoint unhit witnesses. Ties on cost
    keep exploring so the lexicographic tie break sees every optimum.
    """
    if not witness_sets:
        return Fraction(0), ()

    # greedy incumbent: repeatedly drop the element maximizing hits per cost
    alive = list(witness_sets)
    greedy_dropped: list[int] = []
    while alive:
        score: dict[int, int] = {}
        for wset in alive:
            for e in wset:
                score[e] = score.get(e, 0) + 1
        e_best = max(score, key=lambda e: (Fraction(score[e]) / costs[e], e))
        greedy_dropped.append(e_best)
        alive = [wi for wi in alive if e_best not in wi]
    best_cost = sum((costs[e] for e in greedy_dropped), Fraction(0))
    best_witness = tuple(e for e in universe if e not in set(greedy_dropped))

    order = sorted(witness_sets, key=len)

    def lower_bound(dropped: frozenset[int]) -> Fraction:
        lb = Fraction(0)
        used: set[int] = set()
        for wset in order:
            if dropped.isdisjoint(wset) and used.isdisjoint(wset):
                lb += min(costs[e] for e in wset)
                used.update(wset)
        return lb

    def rec(dropped: frozenset[int], cost: Fraction) -> None:
        nonlocal best_cost, best_witness
        target = None
        for wset in order:
            if dropped.isdisjoint(wset):
                target = wset
                break
        if target is None:
            avoiding = tuple(e for e in universe if e not in dropped)
            if cost < best_cost or (cost == best_cost and avoiding < best_witness):
                best_cost, best_witness = cost, avoiding
            return
        if cost + lower_bound(dropped) > best_cost:
            return
        for e in sorted(target, key=lambda e: (costs[e], e)):
            rec(dropped | {e}, cost + costs[e])

    rec(frozenset(), Fraction(0))
    return best_cost, best_witness


def _avoiding_optimum(N: int, costs: dict[int, Fraction], cap: int) -> tuple[Fraction, UnitSet]:
    if N < 1:
        raise ValidationError(f"expected N >= 1, got {N}")
    _check_cap(N, cap, "avoiding set search")
    universe = tuple(range(1, N + 1))
    witness_sets = [tuple(wit.elements) for wit in one_sum_witnesses(N, cap=max(cap, N))]
    drop_cost, avoiding = _min_hitting_set(witness_sets, costs, universe)
    total = sum((costs[e] for e in universe), Fraction(0))
    return total - drop_cost, UnitSet(avoiding)


def max_avoiding_sum(N: int, cap: int = EXTREMAL_CAP) -> ExtremalResult:
    """Largest R(A) over A in [1,N] containing no subset of reciprocal sum 1.

    Exact: the optimal A is [1,N] minus a minimum weight (weight 1/n) hitting
    set of the one sum witnesses.
    """
    costs = {n: Fraction(1, n) for n in range(1, N + 1)}
    value, witness = _avoiding_optimum(N, costs, cap)
    return ExtremalResult(N=N, value=value, witness=witness, certified=True)


def largest_avoiding_set(N: int, cap: int = EXTREMAL_CAP) -> ExtremalResult:
    """Largest size of a subset of [1,N] containing no subset of reciprocal
    sum 1, with the lexicographically smallest maximum witness."""
    costs = {n: Fraction(1) for n in range(1, N + 1)}
    value, witness = _avoiding_optimum(N, costs, cap)
    return ExtremalResult(N=N, value=int(value), witness=witness, certified=True)


# ---------------------------------------------------------------------------
# least blocked starting denominator


def least_blocked_start(N: int, cap: int = BLOCKED_START_CAP) -> int:
    """Least t such that 1 = 1/t + sum of distinct 1/n with t < n <= N has no
    solution.

    t = 1 is never blocked ({1} itself works, the one term expansion), so the
    scan starts at t = 2; any t > N is vacuously blocked.
    """
    t, _ = blocked_start_trace(N, cap=cap)
    return t


def blocked_start_trace(N: int, cap: int = BLOCKED_START_CAP) -> tuple[int, dict[int, UnitSet]]:
    """(least blocked t, witness expansions for every smaller t).

    Witness values are complete denominator sets including t itself.
    """
    if N < 1:
        raise ValidationError(f"least_blocked_start expects N >= 1, got {N}")
    _check_cap(N, cap, "least_blocked_start")
    witnesses: dict[int, UnitSet] = {1: UnitSet((1,))}
    t = 2
    while t <= N:
        tail = find_subset(UnitSet.interval(t + 1, N), Fraction(1) - Fraction(1, t))
        if tail is None:
            return t, witnesses
        witnesses[t] = UnitSet((t,) + tail.elements)
        t += 1
    return t, witnesses


# ---------------------------------------------------------------------------
# structural cleanup passes used by the dense constructions


def prune_small_fibers(A: UnitSet | Iterable[int], threshold: Fraction,
                       trace: list | None = None) -> UnitSet:
    """Repeatedly delete all multiples of any prime power q whose fiber is
    light: q * R(multiples of q in A) < threshold. Runs to a fixed point.

    Each deletion of q removes reciprocal mass R(A_q) < threshold / q, so the
    total loss is below sum(threshold / q) over the deleted q. Appends
    (q, R(A_q)) per deletion to trace when given.
    """
    from .core import prime_power_support

    if threshold <= 0:
        raise ValidationError("prune_small_fibers expects threshold > 0")
    current = UnitSet.coerce(A)
    while True:
        support = prime_power_support(current)
        removed = False
        for q in support.members:
            fiber = current.multiples_of(q)
            if not fiber.elements:
                continue
            mass = reciprocal_sum(fiber)
            if q * mass < threshold:
                if trace is not None:
                    trace.append((q, mass))
                current = current.without(fiber)
                removed = True
                break
        if not removed:
            return current


def dense_window(A: UnitSet | Iterable[int], alpha: float) -> tuple[int, int, UnitSet]:
    """Pick the densest window of a shrinking log scale ladder.

    Ladder: N_1 = max(A), then log N_{i+1} = log N_i - (log N_i)^(1-alpha)
    until the next step would fall below log = 1; the final window is padded
    down to 1 so the integer windows [ceil(N_{i+1}), floor(N_i)] cover all of
    [1, max(A)]. Returns (lo, hi, A restricted) for the window maximizing the
    restricted reciprocal sum; by pigeonhole that sum is at least
    R(A) / (number of windows). Ties keep the topmost window.
    """
    ground = UnitSet.coerce(A)
    if not ground.elements:
        raise ValidationError("dense_window expects a nonempty set")
    if not 0 < alpha < 1:
        raise ValidationError(f"dense_window expects 0 < alpha < 1, got {alpha}")
    top = ground.elements[-1]
    bounds = [float(top)]
    while True:
        logn = math.log(bounds[-1])
        nxt = logn - logn ** (1.0 - alpha)
        if logn <= 1.0 or nxt <= 1.0:
            bounds.append(1.0)
            break
        bounds.append(math.exp(nxt))
    best: tuple[int, int, UnitSet] | None = None
    best_mass = Fraction(-1)
    for i in range(len(bounds) - 1):
        hi = math.floor(bounds[i])
        lo = max(1, math.ceil(bounds[i + 1]))
        window = ground.restrict(lo, hi)
        mass = reciprocal_sum(window)
        if mass > best_mass:
            best_mass = mass
            best = (lo, hi, window)
    assert best is not None
    return best
