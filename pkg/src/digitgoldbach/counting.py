"""
Carry-state dynamic programming over base-g digits.

Representations x_1 + … + x_m = T with every x_i in 𝒮_b (optionally with
zero, optionally coprime to g) are counted exactly by scanning digit
positions from least to most significant while tracking the carry
c ∈ [0, m − 1] and, per summand, a small automaton state:

* status ``clean``: every digit so far may belong to the expansion;
* status ``pending``: a zero that would be forbidden inside the expansion
  has been read, so every later digit must be zero (leading-zero padding);
* a ``nonzero`` flag, tracked only when positivity is not implied.

The forward tables are kept so that uniform representations can be drawn
by backward sampling with exact big-integer weights.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections import defaultdict
from collections.abc import Mapping, Sequence
from functools import lru_cache
from typing import TypeVar

import numpy as np
import numpy.typing as npt

from digitgoldbach.errors import (
    DigitGoldbachArgumentError,
    DigitGoldbachEmptySupportError,
    DigitGoldbachRangeError,
)
from digitgoldbach.models import (
    Block,
    CarryDecomposition,
    CarryDecompositionEntry,
    DigitSystem,
    DominationResult,
    LowerBoundCheck,
    ProductMeasure,
    RepCountQuery,
    SensitivityReport,
)
from digitgoldbach.utils import parallel_map


logger = logging.getLogger("digitgoldbach")

_PENDING = 1
_NONZERO = 2

SAMPLE_CHUNK = 512

# (next joint state, {digit sum: tuple count}, per-summand digit lists)
_Transition = tuple[tuple[int, ...], dict[int, int], tuple[tuple[int, ...], ...]]
_Item = TypeVar("_Item")


def digit_tuple_counts(m: int, allowed: Sequence[int], g: int) -> list[int]:
    """
    Return n_m(s) = #{(d_1..d_m) ∈ D^m : Σ d_i = s} for s ∈ [0, m(g − 1)].

    Args:
        m: Number of digits (1, 2 or 3).
        allowed: The digit set D ⊆ [0, g − 1].
        g: Base.

    Returns:
        The table n_m as a list indexed by s.

    Example:
        >>> digit_tuple_counts(2, [0, 1], 10)[:3]
        [1, 2, 1]
    """
    if m not in (1, 2, 3):
        raise DigitGoldbachArgumentError("m must be 1, 2 or 3", field="m", value=m)
    digits = sorted(set(allowed))
    if not digits or digits[0] < 0 or digits[-1] > g - 1:
        raise DigitGoldbachArgumentError(
            f"allowed digits must be a nonempty subset of [0, {g - 1}]",
            field="allowed",
            value=allowed,
        )
    indicator = np.zeros(g, dtype=np.int64)
    indicator[digits] = 1
    table = indicator
    for _ in range(m - 1):
        table = np.convolve(table, indicator)
    return [int(v) for v in table]


# -----------------------------------------------------------------------------
# Automaton
# -----------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _summand_options(
    state: int, g: int, forbidden: frozenset[int], coprime_here: bool
) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Group the digits readable from one summand state by the next state."""
    grouped: dict[int, list[int]] = defaultdict(list)
    for d in range(g):
        if coprime_here and math.gcd(d, g) != 1:
            continue
        if d == 0:
            if state & _PENDING or 0 not in forbidden:
                grouped[state].append(d)
            else:
                grouped[state | _PENDING].append(d)
        elif not state & _PENDING and d not in forbidden:
            grouped[state | _NONZERO].append(d)
    return tuple((nxt, tuple(ds)) for nxt, ds in sorted(grouped.items()))


@lru_cache(maxsize=4096)
def _joint_transitions(
    states: tuple[int, ...], g: int, forbidden: frozenset[int], coprime_here: bool
) -> tuple[_Transition, ...]:
    """All joint successor states with their digit-sum distributions."""
    per_summand = [_summand_options(s, g, forbidden, coprime_here) for s in states]
    transitions: list[_Transition] = []
    for combo in itertools.product(*per_summand):
        nxt = tuple(option[0] for option in combo)
        lists = tuple(option[1] for option in combo)
        sums: dict[int, int] = defaultdict(int)
        for digits in itertools.product(*lists):
            sums[sum(digits)] += 1
        transitions.append((nxt, dict(sums), lists))
    return tuple(transitions)


class RepresentationSampler:
    """
    Exact counter and uniform sampler for one representation query.

    The forward DP tables are built once at construction and never
    modified, so a sampler may be shared by threads that each use their
    own random generator.

    Attributes:
        query: The representation query.
        count: Exact number of representations.

    Example:
        >>> sys = DigitSystem(g=10, b=7, k=1)
        >>> RepresentationSampler(RepCountQuery(T=3, m=3, sys=sys)).count
        1
    """

    def __init__(self, query: RepCountQuery) -> None:
        """
        Build the forward tables.

        Args:
            query: The representation query.
        """
        self.query = query
        sys = query.sys
        self._g = sys.g
        self._k = sys.k
        self._track_nonzero = not query.include_zero and not query.coprime_to_g
        initial = 0 if self._track_nonzero else _NONZERO
        self._initial = tuple([initial] * query.m)
        self._target_digits = [(query.T // sys.g**j) % sys.g for j in range(sys.k)]
        self._top = query.T // sys.M
        self._signatures = [
            (query.forbidden_at(j), query.coprime_to_g and j == 0) for j in range(sys.k)
        ]
        self._layers = self._forward()
        self._finals = {
            key: weight
            for key, weight in self._layers[-1].items()
            if key[1] == self._top and all(s & _NONZERO for s in key[0])
        }
        self.count = sum(self._finals.values())
        logger.debug(
            "Counted T=%d m=%d g=%d b=%d: %d representations",
            query.T,
            query.m,
            sys.g,
            sys.b,
            self.count,
        )

    def _transitions(self, j: int, states: tuple[int, ...]) -> tuple[_Transition, ...]:
        forbidden, coprime_here = self._signatures[j]
        return _joint_transitions(states, self._g, forbidden, coprime_here)

    def _forward(self) -> list[dict[tuple[tuple[int, ...], int], int]]:
        layers: list[dict[tuple[tuple[int, ...], int], int]] = [{(self._initial, 0): 1}]
        for j in range(self._k):
            target = self._target_digits[j]
            layer: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
            for (states, carry), weight in layers[-1].items():
                for nxt, sums, _ in self._transitions(j, states):
                    for s, n in sums.items():
                        total = carry + s
                        if total % self._g == target:
                            layer[(nxt, total // self._g)] += weight * n
            layers.append(dict(layer))
        return layers

    def sample(self, rng: random.Random) -> tuple[int, ...]:
        """
        Draw one representation uniformly at random.

        Args:
            rng: Random generator (consumed deterministically).

        Returns:
            The tuple (x_1, …, x_m).

        Raises:
            DigitGoldbachEmptySupportError: If there are no representations.
        """
        if self.count == 0:
            raise DigitGoldbachEmptySupportError(
                f"no representations of {self.query.T} to sample from"
            )
        current = _weighted_choice(rng, list(self._finals.items()))
        digits: list[list[int]] = [[0] * self._k for _ in range(self.query.m)]
        for j in range(self._k - 1, -1, -1):
            target_states, target_carry = current
            needed = target_carry * self._g + self._target_digits[j]
            candidates = []
            for (states, carry), weight in self._layers[j].items():
                for nxt, sums, lists in self._transitions(j, states):
                    n = sums.get(needed - carry, 0) if nxt == target_states else 0
                    if n:
                        candidates.append(
                            ((states, carry, lists, needed - carry), weight * n)
                        )
            states, carry, lists, s = _weighted_choice(rng, candidates)
            options = [
                head + (s - sum(head),)
                for head in itertools.product(*lists[:-1])
                if s - sum(head) in lists[-1]
            ]
            chosen = options[rng.randrange(len(options))]
            for i, d in enumerate(chosen):
                digits[i][j] = d
            current = (states, carry)
        return tuple(
            sum(d * self._g**j for j, d in enumerate(row)) for row in digits
        )


def _weighted_choice(rng: random.Random, weighted: list[tuple[_Item, int]]) -> _Item:
    """Pick an item with probability proportional to its integer weight."""
    total = sum(weight for _, weight in weighted)
    pick = rng.randrange(total)
    for item, weight in weighted:
        if pick < weight:
            return item
        pick -= weight
    raise AssertionError("weights exhausted")


def count_representations(q: RepCountQuery) -> int:
    """
    Return the exact number of representations described by a query.

    Example:
        >>> sys = DigitSystem(g=10, b=7, k=1)
        >>> count_representations(RepCountQuery(T=6, m=3, sys=sys))
        10
    """
    return RepresentationSampler(q).count


def sample_representation(q: RepCountQuery, seed: int) -> tuple[int, ...]:
    """Draw one uniform representation, deterministically given seed."""
    return RepresentationSampler(q).sample(random.Random(seed))


def _system_for(T: int, sys: DigitSystem) -> DigitSystem:
    """Widen a digit system so that T itself has room."""
    return sys if T < sys.M else DigitSystem.for_target(T, sys.g, sys.b)


def sensitivity_ratio(T: int, sys: DigitSystem) -> SensitivityReport:
    """
    Return max over j1, j2 ∈ [0, 3] of count(T − j1)/count(T − j2), m = 3.

    A vanishing count is reported as an infinite ratio with the offending
    shift j as witness.

    Args:
        T: Target, at least g².
        sys: Digit system.

    Returns:
        SensitivityReport.
    """
    if T < sys.g**2:
        raise DigitGoldbachArgumentError("T must be at least g^2", field="T", value=T)
    wide = _system_for(T, sys)
    counts = tuple(
        count_representations(RepCountQuery(T=T - j, m=3, sys=wide)) for j in range(4)
    )
    if min(counts) == 0:
        witness = counts.index(0)
        logger.warning("count(T-%d) vanishes for T=%d", witness, T)
        return SensitivityReport(T=T, counts=counts, ratio=math.inf, witness=witness)
    return SensitivityReport(T=T, counts=counts, ratio=max(counts) / min(counts))


def solution_lower_bound(T: int, g: int) -> int:
    """Return (g² − 3g)^{⌊log_g T⌋ − 3}, taken as 1 below g³."""
    exponent = 0
    while T >= g:
        T //= g
        exponent += 1
    return (g * g - 3 * g) ** max(exponent - 3, 0)


def check_lower_bound(T: int, sys: DigitSystem) -> LowerBoundCheck:
    """Compare count(T), m = 3, with the recursion-derived lower bound."""
    count = count_representations(RepCountQuery(T=T, m=3, sys=_system_for(T, sys)))
    bound = solution_lower_bound(T, sys.g)
    return LowerBoundCheck(T=T, count=count, bound=bound, satisfied=count >= bound)


# -----------------------------------------------------------------------------
# Carry decomposition
# -----------------------------------------------------------------------------


def _digit_allowed(kind: str, d: int, g: int, b: int) -> bool:
    if not 0 <= d <= g - 1:
        return False
    if kind == "zero":
        return d == 0
    if kind == "top":
        return d != 0 and d != b
    return d != b


def _kind(j: int, length: int | None) -> str:
    if length is None:
        return "inner"
    if j >= length:
        return "zero"
    return "top" if j == length - 1 else "inner"


def _pair_block(
    s: int, j: int, lengths: tuple[int, int] | None, g: int, b: int
) -> Block | None:
    """The digits of x_1 at position j given x_{1,j} + x_{2,j} = s."""
    if not 0 <= s <= 2 * g - 2:
        return None
    kind1 = _kind(j, lengths[0] if lengths else None)
    kind2 = _kind(j, lengths[1] if lengths else None)
    if "zero" in (kind1, kind2):
        d = 0 if kind1 == "zero" else s
        if _digit_allowed(kind1, d, g, b) and _digit_allowed(kind2, s - d, g, b):
            return Block.singleton(d)
        return None
    lo = max(0, s - (g - 1), 1 if kind1 == "top" else 0)
    hi = min(g - 1, s - (1 if kind2 == "top" else 0))
    if lo > hi:
        return None
    excluded = tuple(sorted({e for e in (b, s - b) if lo <= e <= hi}))
    if hi - lo + 1 == len(excluded):
        return None
    return Block(lo=lo, hi=hi, excluded=excluded)


def _reveal(blocks: list[Block], reveal_above: int | None) -> list[list[Block]]:
    """Split blocks at positions ≥ reveal_above into singleton choices."""
    options = [
        [Block.singleton(z) for z in block.digits()]
        if reveal_above is not None and j >= reveal_above
        else [block]
        for j, block in enumerate(blocks)
    ]
    return [list(choice) for choice in itertools.product(*options)]


def decompose_conditional(
    T: int,
    sys: DigitSystem,
    include_zero: bool = False,
    reveal_above: int | None = None,
) -> CarryDecomposition:
    """
    Decompose the representations x_1 + x_2 = T into product measures.

    Each entry fixes the carry out of every position (and, when zero digits
    can be padding or summands must be positive, the digit lengths of both
    summands). Under that conditioning, x_1's digits range independently
    over blocks of the form [lo, hi] minus {b, s_j − b}, where
    s_j = T_j + g·i_j − i_{j−1}.

    Args:
        T: Target below 2·g^k.
        sys: Digit system.
        include_zero: Allow x_i = 0.
        reveal_above: Positions j ≥ reveal_above are revealed as singletons.

    Returns:
        CarryDecomposition whose total mass is the representation count.

    Raises:
        DigitGoldbachRangeError: If T is outside [0, 2·g^k).
    """
    if not 0 <= T < 2 * sys.M:
        raise DigitGoldbachRangeError(
            f"T must lie in [0, 2·{sys.g}^{sys.k})", field="T", value=T
        )
    g, k, b = sys.g, sys.k, sys.b
    target_digits = [(T // g**j) % g for j in range(k)]
    top = T // sys.M
    lengths_needed = b == 0 or not include_zero
    shortest = 0 if include_zero else 1
    length_pairs: list[tuple[int, int] | None] = (
        [(a, c) for a in range(shortest, k + 1) for c in range(shortest, k + 1)]
        if lengths_needed
        else [None]
    )

    entries: list[CarryDecompositionEntry] = []
    for lengths in length_pairs:
        stack: list[tuple[int, int, tuple[int, ...], list[Block]]] = [(0, 0, (), [])]
        while stack:
            j, carry_in, carries, blocks = stack.pop()
            if j == k:
                if carry_in == top:
                    for revealed in _reveal(blocks, reveal_above):
                        entries.append(
                            CarryDecompositionEntry(
                                carries=carries,
                                lengths=lengths,
                                measure=ProductMeasure(g=g, blocks=tuple(revealed)),
                            )
                        )
                continue
            for carry in (1, 0):
                block = _pair_block(
                    target_digits[j] + g * carry - carry_in, j, lengths, g, b
                )
                if block is not None:
                    stack.append((j + 1, carry, carries + (carry,), blocks + [block]))

    entries.sort(key=lambda e: (e.lengths or (0, 0), e.carries))
    return CarryDecomposition(
        target=T,
        sys=sys,
        include_zero=include_zero,
        reveal_above=reveal_above,
        entries=tuple(entries),
    )


def sample_decomposition_entry(
    T: int,
    sys: DigitSystem,
    rng: random.Random,
    include_zero: bool = False,
    reveal_above: int | None = None,
) -> CarryDecompositionEntry:
    """
    Return the decomposition entry containing a uniform representation.

    Entries are therefore drawn with probability proportional to their
    mass, without enumerating the 2^k carry sequences.
    """
    sampler = RepresentationSampler(
        RepCountQuery(T=T, m=2, sys=sys, include_zero=include_zero)
    )
    x1, x2 = sampler.sample(rng)
    g, b = sys.g, sys.b
    lengths = (
        (len(_digits_of(x1, g)), len(_digits_of(x2, g)))
        if b == 0 or not include_zero
        else None
    )
    carries: list[int] = []
    blocks: list[Block] = []
    carry = 0
    for j in range(sys.k):
        d1, d2 = (x1 // g**j) % g, (x2 // g**j) % g
        s = d1 + d2
        out = (carry + s) // g
        block = _pair_block(s, j, lengths, g, b)
        if block is None:
            raise AssertionError("sampled representation left its own decomposition")
        if reveal_above is not None and j >= reveal_above:
            block = Block.singleton(d1)
        carries.append(out)
        blocks.append(block)
        carry = out
    return CarryDecompositionEntry(
        carries=tuple(carries),
        lengths=lengths,
        measure=ProductMeasure(g=g, blocks=tuple(blocks)),
    )


def _digits_of(n: int, g: int) -> list[int]:
    digits = []
    while n > 0:
        n, d = divmod(n, g)
        digits.append(d)
    return digits


# -----------------------------------------------------------------------------
# Tails and domination
# -----------------------------------------------------------------------------


def chernoff_bound(n: int, p: float, p_prime: float) -> float:
    """
    Return exp(−n·(p′ ln(p′/p) + (1 − p′) ln((1 − p′)/(1 − p)))).

    Bounds P[Bin(n, p) ≥ p′n] for p ≤ p′ ≤ 1. At p′ = 1 the second term
    vanishes and the bound is p^n.

    Raises:
        DigitGoldbachArgumentError: Unless 0 < p ≤ p′ ≤ 1.

    Example:
        >>> chernoff_bound(10, 0.5, 1.0) == 2.0**-10
        True
    """
    if not 0 < p <= p_prime <= 1:
        raise DigitGoldbachArgumentError(
            "require 0 < p <= p' <= 1", field="p_prime", value=(p, p_prime)
        )
    if p_prime == 1:
        return math.exp(-n * math.log(1 / p))
    exponent = p_prime * math.log(p_prime / p) + (1 - p_prime) * math.log(
        (1 - p_prime) / (1 - p)
    )
    return math.exp(-n * exponent)


def binomial_tail(probabilities: Sequence[float]) -> npt.NDArray[np.float64]:
    """Return P[Σ Ber(p_j) ≥ t] for t = 0..len(probabilities)."""
    pmf = np.ones(1)
    for p in probabilities:
        pmf = np.convolve(pmf, np.array([1.0 - p, p]))
    return np.cumsum(pmf[::-1])[::-1]


def _y_histogram(
    sampler: RepresentationSampler,
    positions: list[int],
    sets: Mapping[int, frozenset],
    marginal: bool,
    seed: int,
    chunk: int,
    size: int,
) -> list[int]:
    rng = random.Random(seed * 1_000_003 + chunk)
    g = sampler.query.sys.g
    hist = [0] * (len(positions) + 1)
    for _ in range(size):
        x1, x2, _x3 = sampler.sample(rng)
        y = 0
        for j in positions:
            d1, d2 = (x1 // g**j) % g, (x2 // g**j) % g
            y += (d1 in sets[j]) if marginal else ((d1, d2) in sets[j])
        hist[y] += 1
    return hist


def domination_experiment(
    T: int,
    sys: DigitSystem,
    S: Mapping[int, Sequence],
    trials: int,
    seed: int,
    marginal: bool = False,
    threads: int = 1,
) -> DominationResult:
    """
    Fit the binomial domination constant for Σ_j Y_j.

    Under uniform representations x_1 + x_2 + x_3 = T, Y_j is 1 when
    (x_{1,j}, x_{2,j}) ∈ S_j (or x_{1,j} ∈ S_j when marginal). The fitted C
    is the smallest value ≥ 1 for which the tail of Σ Ber(min(C|S_j|/g², 1))
    (denominator g when marginal) dominates the empirical tail at every t,
    up to a three-sigma Monte-Carlo band.

    Args:
        T: Target, at least g².
        sys: Digit system.
        S: Mapping position → digit pairs (or digits when marginal).
        trials: Number of samples.
        seed: Seed; results do not depend on threads.
        marginal: Use the single-digit variant.
        threads: Worker threads.

    Returns:
        DominationResult.
    """
    if T < sys.g**2:
        raise DigitGoldbachArgumentError("T must be at least g^2", field="T", value=T)
    wide = _system_for(T, sys)
    sampler = RepresentationSampler(RepCountQuery(T=T, m=3, sys=wide))
    if sampler.count == 0:
        raise DigitGoldbachEmptySupportError(f"no representations of {T}")
    positions = sorted(S)
    sets = {
        j: frozenset(tuple(x) if not marginal else x for x in S[j]) for j in positions
    }

    chunks = [
        (i, min(SAMPLE_CHUNK, trials - start))
        for i, start in enumerate(range(0, trials, SAMPLE_CHUNK))
    ]
    parts = parallel_map(
        lambda c: _y_histogram(sampler, positions, sets, marginal, seed, c[0], c[1]),
        chunks,
        threads,
    )
    hist = (
        np.sum(np.array(parts, dtype=np.int64), axis=0)
        if parts
        else np.zeros(len(positions) + 1)
    )
    empirical = np.cumsum(hist[::-1])[::-1] / max(trials, 1)
    n = max(trials, 1)
    band = 3.0 * np.sqrt(empirical * (1.0 - empirical) / n) + 1.0 / n

    denominator = sys.g if marginal else sys.g**2
    sizes = [len(sets[j]) for j in positions]

    def tail(C: float) -> npt.NDArray[np.float64]:
        return binomial_tail([min(C * s / denominator, 1.0) for s in sizes])

    def dominates(C: float) -> bool:
        return bool(np.all(tail(C) >= empirical - band - 1e-12))

    nonzero = [s for s in sizes if s]
    high = denominator / min(nonzero) if nonzero else 1.0
    low = 1.0
    if not dominates(low):
        for _ in range(60):
            mid = (low + high) / 2
            if dominates(mid):
                high = mid
            else:
                low = mid
        low = high
    return DominationResult(
        T=T,
        trials=trials,
        positions=tuple(positions),
        empirical_tail=tuple(float(v) for v in empirical),
        bound_tail=tuple(float(v) for v in tail(low)),
        fitted_C=float(low),
        marginal=marginal,
    )
