"""
Product measures over digit positions and their Fourier evaluators.

A ProductMeasure puts unit mass on every integer Σ z_j g^j with z_j ∈ B_j.
Its Fourier transform (convention f̂(θ) = Σ f(x) e(−xθ)) factors over the
blocks, so every evaluator here works block by block and never enumerates
the support.

Frequencies are carried as an exact rational a/q plus a real offset β; the
rational phase of z·g^j·a/q is reduced modulo q in integer arithmetic.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Collection, Sequence

import numpy as np
import numpy.typing as npt

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import DigitGoldbachArgumentError
from digitgoldbach.models import (
    ConditionFailure,
    Frequency,
    L1Estimate,
    LargeSieveResult,
    LinfBound,
    ProductMeasure,
    WellConditionedReport,
)


logger = logging.getLogger("digitgoldbach")

TWO_PI = 2.0 * math.pi


def _e(x: float) -> complex:
    return cmath.exp(1j * TWO_PI * x)


def fourier_transform(mu: ProductMeasure, theta: Frequency) -> complex:
    """
    Return μ̂(θ) = Π_j Σ_{z ∈ B_j} e(−z g^j θ).

    Args:
        mu: The product measure.
        theta: θ = a/q + β.

    Returns:
        The complex value μ̂(θ).

    Example:
        >>> from digitgoldbach.models import Block
        >>> mu = ProductMeasure(g=10, blocks=(Block(lo=0, hi=1),))
        >>> abs(fourier_transform(mu, Frequency(a=1, q=2))) < 1e-12
        True
    """
    value = 1 + 0j
    for j, block in enumerate(mu.blocks):
        step = (pow(mu.g, j, theta.q) * theta.a) % theta.q
        offset = math.fmod(mu.g**j * theta.beta, 1.0) if theta.beta else 0.0
        total = 0j
        for z in block.digits():
            total += _e(
                -(((z * step) % theta.q) / theta.q + math.fmod(z * offset, 1.0))
            )
        value *= total
    return value


def _block_sums_on_grid(
    lo: int, hi: int, excluded: Sequence[int], r: npt.NDArray[np.int64], L: int
) -> npt.NDArray[np.complex128]:
    """Σ_{z ∈ B} e(−z r/L) for an integer array r, via the geometric series."""
    x = r.astype(np.float64) / L
    n = hi - lo + 1
    zero = r == 0
    denominator = 1.0 - np.exp(-1j * TWO_PI * x)
    safe = np.where(zero, 1.0, denominator)
    sums = np.exp(-1j * TWO_PI * lo * x) * (1.0 - np.exp(-1j * TWO_PI * n * x)) / safe
    sums = np.where(zero, complex(n), sums)
    for e in excluded:
        sums = sums - np.exp(-1j * TWO_PI * ((e * r) % L) / L)
    return sums


def fourier_on_grid(mu: ProductMeasure, L: int) -> npt.NDArray[np.complex128]:
    """Return μ̂(i/L) for every i ∈ [0, L)."""
    i = np.arange(L, dtype=np.int64)
    values = np.ones(L, dtype=np.complex128)
    for j, block in enumerate(mu.blocks):
        r = (i * pow(mu.g, j, L)) % L
        values *= _block_sums_on_grid(block.lo, block.hi, block.excluded, r, L)
    return values


def l1_norm(
    mu: ProductMeasure, oversampling: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> L1Estimate:
    """
    Estimate ∫_0^1 |μ̂(θ)| dθ by a Riemann sum on oversampling·g^k points.

    The refinement delta compares with the estimate at half the
    resolution. The fitted constant C solves estimate = (C ln g)^k.

    Args:
        mu: The product measure.
        oversampling: Grid points per unit of g^k (≥ 2).
        config: Supplies the max_grid_points cap.

    Returns:
        L1Estimate.
    """
    if oversampling < 2:
        raise DigitGoldbachArgumentError(
            "oversampling must be at least 2", field="oversampling", value=oversampling
        )
    L = oversampling * mu.g**mu.k
    config.require("max_grid_points", L, "quadrature grid")
    estimate = float(np.mean(np.abs(fourier_on_grid(mu, L))))
    coarse = float(np.mean(np.abs(fourier_on_grid(mu, L // 2))))
    fitted = estimate ** (1.0 / mu.k) / math.log(mu.g)
    logger.debug(
        "L1 estimate %.6g on %d points (delta %.3g)",
        estimate,
        L,
        abs(estimate - coarse),
    )
    return L1Estimate(
        estimate=estimate,
        refinement_delta=abs(estimate - coarse),
        points=L,
        fitted_constant=fitted,
    )


# -----------------------------------------------------------------------------
# Large sieve
# -----------------------------------------------------------------------------


def _abs_transform_at_fractions(
    mu: ProductMeasure, a: npt.NDArray[np.int64], b: int, beta: float
) -> npt.NDArray[np.float64]:
    values = np.ones(a.shape, dtype=np.complex128)
    for j, block in enumerate(mu.blocks):
        step = (a * pow(mu.g, j, b)) % b
        offset = math.fmod(mu.g**j * beta, 1.0) if beta else 0.0
        total = np.zeros(a.shape, dtype=np.complex128)
        for z in block.digits():
            total += np.exp(
                -1j * TWO_PI * (((z * step) % b) / b + math.fmod(z * offset, 1.0))
            )
        values *= total
    return np.abs(values)


def large_sieve_rhs(mu: ProductMeasure, Q: int, d: int, C: float) -> float:
    """
    Return min_{0 ≤ t < k} Π_{j≥t}|B_j| · (Q²/d·(C ln g)^t + (C g ln g)^t).

    The t = 0 term, mass·(Q²/d + 1), does not depend on C and caps the
    right-hand side for every C.
    """
    log_g = math.log(mu.g)
    sizes = [block.size for block in mu.blocks]
    best = math.inf
    for t in range(mu.k):
        tail = math.prod(sizes[t:])
        best = min(
            best, tail * (Q * Q / d * (C * log_g) ** t + (C * mu.g * log_g) ** t)
        )
    return best


def large_sieve_sum(
    mu: ProductMeasure,
    Q: int,
    d: int,
    beta: float = 0.0,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> LargeSieveResult:
    """
    Return Σ_{b ∈ [Q, 2Q), d | b} Σ_{0 < a < b, (a, b) = 1} |μ̂(a/b + β)|.

    The fitted constant is the smallest C ≥ 0 for which the sum is at most
    large_sieve_rhs(mu, Q, d, C). The sum never exceeds the C-free t = 0
    term, so the search always ends.

    Raises:
        DigitGoldbachArgumentError: Unless Q ≥ d ≥ 1.
        DigitGoldbachResourceError: If Q² exceeds max_sieve_q_squared.
    """
    if not Q >= d >= 1:
        raise DigitGoldbachArgumentError("require Q >= d >= 1", field="Q", value=(Q, d))
    config.require("max_sieve_q_squared", Q * Q, "large sieve Q^2")
    parts: list[float] = []
    fractions = 0
    for b in range(Q, 2 * Q):
        if b % d:
            continue
        a = np.array([x for x in range(1, b) if math.gcd(x, b) == 1], dtype=np.int64)
        if a.size == 0:
            continue
        fractions += int(a.size)
        parts.append(float(np.sum(_abs_transform_at_fractions(mu, a, b, beta))))
    value = math.fsum(parts)

    low, high = 0.0, 1.0
    while large_sieve_rhs(mu, Q, d, high) < value and high < 1e12:
        high *= 2.0
    if large_sieve_rhs(mu, Q, d, low) >= value:
        high = low
    else:
        for _ in range(80):
            mid = (low + high) / 2
            if large_sieve_rhs(mu, Q, d, mid) >= value:
                high = mid
            else:
                low = mid
    return LargeSieveResult(value=value, fractions=fractions, fitted_constant=high)


# -----------------------------------------------------------------------------
# Well-conditioned block vectors
# -----------------------------------------------------------------------------


def _as_digit_sets(
    blocks: ProductMeasure | Sequence[Collection[int]]
) -> list[set[int]]:
    if isinstance(blocks, ProductMeasure):
        return [set(block.digits()) for block in blocks.blocks]
    return [set(block) for block in blocks]


def check_well_conditioned(
    blocks: ProductMeasure | Sequence[Collection[int]],
    C: float,
    N: int,
    g: int | None = None,
    b_max: int | None = None,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> WellConditionedReport:
    """
    Test the three well-conditioning conditions on a block vector.

    1. Every window of ⌈C·lnln N/ln g⌉ consecutive positions inside [k/4]
       has at least 99% of its blocks of size ≥ g^{0.99}.
    2. Every block is an interval minus at most two points.
    3. For 1 ≤ a < b ≤ min(exp((lnln N)^5), b_max) with (b, g) = 1, at
       least k/(40 ln b) positions j ∈ [k/8, k/4] with |B_j| ≥ 4 have
       ‖a g^j/b‖ ≥ 1/g².

    Args:
        blocks: A ProductMeasure or raw digit sets (little-endian).
        C: The constant of condition 1.
        N: Scale parameter, at least g².
        g: Base (taken from the measure when omitted).
        b_max: Cap on b in condition 3 (config default when omitted).
        config: Supplies the default cap.

    Returns:
        WellConditionedReport with the first witness of each failed condition.
    """
    if isinstance(blocks, ProductMeasure):
        g = blocks.g
    if g is None:
        raise DigitGoldbachArgumentError(
            "base g is required for raw digit sets", field="g"
        )
    if N < g * g:
        raise DigitGoldbachArgumentError("N must be at least g^2", field="N", value=N)
    sets = _as_digit_sets(blocks)
    k = len(sets)
    loglog = math.log(math.log(N))
    failures: list[ConditionFailure] = []

    window = max(1, math.ceil(C * loglog / math.log(g)))
    quarter = k // 4
    big = g**0.99
    vacuous = window > quarter
    if vacuous:
        logger.warning(
            "Condition 1 is vacuous: window %d exceeds [k/4] = %d", window, quarter
        )
    for start in range(0, quarter - window + 1):
        good = sum(1 for i in range(start, start + window) if len(sets[i]) >= big)
        if good < 0.99 * window:
            failures.append(
                ConditionFailure(condition=1, witness=f"[{start}, {start + window})")
            )
            break

    for j, digits in enumerate(sets):
        if not digits or max(digits) - min(digits) + 1 - len(digits) > 2:
            failures.append(ConditionFailure(condition=2, witness=f"block {j}"))
            break

    exponent = loglog**5
    b_cap = b_max if b_max is not None else config.well_conditioned_b_max
    if exponent < 700:
        b_cap = min(b_cap, math.floor(math.exp(exponent)))
    positions = [
        j for j in range(math.ceil(k / 8), k // 4 + 1) if j < k and len(sets[j]) >= 4
    ]
    found = False
    for b in range(2, b_cap + 1):
        if found:
            break
        if math.gcd(b, g) != 1:
            continue
        need = k / (40.0 * math.log(b))
        a = np.arange(1, b, dtype=np.int64)
        hits = np.zeros(a.shape, dtype=np.int64)
        for j in positions:
            r = (a * pow(g, j, b)) % b
            hits += (g * g * np.minimum(r, b - r) >= b).astype(np.int64)
        bad = np.nonzero(hits < need)[0]
        if bad.size:
            failures.append(
                ConditionFailure(condition=3, witness=f"{int(a[bad[0]])}/{b}")
            )
            found = True

    return WellConditionedReport(
        C=C,
        passed=not failures,
        failures=tuple(failures),
        interval_length=window,
        vacuous_condition_1=vacuous,
        b_cap=b_cap,
    )


def linf_bound(mu: ProductMeasure, a: int, b: int) -> LinfBound:
    """
    Compare |μ̂(a/b)|/mass with the product of per-block bounds.

    A block holding two consecutive digits z, z + 1 satisfies
    |Σ_{B_j} e(x g^j a/b)| ≤ |B_j| − 2 + |1 + e(a g^j/b)|.

    Args:
        mu: The product measure.
        a: Numerator.
        b: Denominator (≥ 1).

    Returns:
        LinfBound.
    """
    ratio = abs(fourier_transform(mu, Frequency(a=a, q=b))) / mu.mass
    bound = 1.0
    used = 0
    for j, block in enumerate(mu.blocks):
        digits = set(block.digits())
        if not any(z + 1 in digits for z in digits):
            continue
        size = block.size
        pair = abs(1 + _e(((pow(mu.g, j, b) * a) % b) / b))
        bound *= (size - 2 + pair) / size
        used += 1
    return LinfBound(
        ratio=ratio, bound=bound, blocks_used=used, satisfied=ratio <= bound + 1e-12
    )
