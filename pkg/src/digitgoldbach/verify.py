"""
End-to-end verification of the ternary restricted-digit prime count.

For a target N with g^{k−1} ≤ N < g^k the left side is
Σ_{x1+x2+x3=N, x_i ∈ 𝒮_b} Λ(x1)Λ(x2)Λ(x3); the main term is the truncated
singular series times Π_{p|g}(p/(p−1))³ times the number of restricted
representations with every x_i coprime to g. This module also hosts the
statistical experiments that sample or enumerate representations.
"""

from __future__ import annotations

import logging
import math
import random
import statistics
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy import fft as sp_fft
from sympy import primefactors, primerange

from digitgoldbach.approximant import F_chi_Q_values
from digitgoldbach.characters import DirichletCharacter
from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.counting import RepresentationSampler, count_representations
from digitgoldbach.digits import restricted_mask
from digitgoldbach.errors import (
    DigitGoldbachArgumentError,
    DigitGoldbachEmptySupportError,
    DigitGoldbachError,
)
from digitgoldbach.models import (
    CorrectionTermResult,
    DigitSystem,
    DivisibilityRow,
    DivisorMomentRow,
    RepCountQuery,
    VerificationReport,
    VerificationSummary,
)
from digitgoldbach.numtheory import build_tables, factorize
from digitgoldbach.utils import chunk_list, parallel_map


logger = logging.getLogger("digitgoldbach")

PRECISION_RATIO = 1e-3
SAMPLE_CHUNK = 512

LhsMode = Literal["fft", "direct"]


# -----------------------------------------------------------------------------
# Singular series
# -----------------------------------------------------------------------------


def _check_p_max(P_max: int) -> None:
    if P_max < 3:
        raise DigitGoldbachArgumentError(
            "P_max must be at least 3", field="P_max", value=P_max
        )


def singular_series(N: int, g: int, P_max: int) -> tuple[float, float]:
    """
    Return the truncated singular series and a bound on the truncation error.

    The value is Π_{p ≤ P_max, p ∤ g} (1 − (p·1[p|N] − 1)/(p − 1)³). The
    tail bound is value·expm1(ε), where ε bounds the log of the omitted
    factors: P_max^{−3} + P_max^{−2}/2 for primes not dividing N, plus
    2/(p − 1)² for every prime factor p > P_max of N.

    Args:
        N: Target.
        g: Base.
        P_max: Largest prime in the product (≥ 3).

    Returns:
        (value, tail_bound).

    Example:
        >>> singular_series(6, 3, 100)[0]
        0.0
    """
    _check_p_max(P_max)
    value = 1.0
    for p in primerange(2, P_max + 1):
        if g % p == 0:
            continue
        value *= 1.0 - ((p if N % p == 0 else 0) - 1) / (p - 1) ** 3
    epsilon = P_max**-3 + P_max**-2 / 2
    if N > 0:
        epsilon += sum(
            2.0 / (p - 1) ** 2 for p in primefactors(N) if p > P_max and g % p
        )
    return value, abs(value) * math.expm1(epsilon)


def singular_series_factors(N: int, g: int, P_max: int) -> tuple[float, float]:
    """
    Return the split form of the truncated series.

    The first factor is Π_{p∤g, p|N} (1 − 1/(p − 1)²), the second
    Π_{p∤g, p∤N} (1 + 1/(p − 1)³); their product is singular_series(...)[0].
    """
    _check_p_max(P_max)
    dividing, coprime = 1.0, 1.0
    for p in primerange(2, P_max + 1):
        if g % p == 0:
            continue
        if N % p == 0:
            dividing *= 1.0 - 1.0 / (p - 1) ** 2
        else:
            coprime *= 1.0 + 1.0 / (p - 1) ** 3
    return dividing, coprime


# -----------------------------------------------------------------------------
# Left side
# -----------------------------------------------------------------------------


class TernaryConvolution:
    """
    The self-convolution of f = Λ·1_𝒮 on [0, M), computed once per system.

    Every target N < M in a batch reads its left side from the shared
    arrays. A second convolution restricts f to arguments coprime to g.

    Attributes:
        sys: The digit system.
        f: Λ(n)·1[n ∈ 𝒮_b] for n ∈ [0, M).
        f_coprime: f·1[gcd(n, g) = 1].
        error_scale: Absolute FFT error bound for any left side.
    """

    def __init__(
        self, sys: DigitSystem, config: ToolkitConfig = DEFAULT_CONFIG
    ) -> None:
        config.require("max_scan_length", sys.M, "convolution length g^k")
        started = time.perf_counter()
        self.sys = sys
        M = sys.M
        tables = build_tables(max(M, 2), config)
        n = np.arange(M, dtype=np.int64)
        self.f = tables.von_mangoldt[:M] * restricted_mask(M, sys)
        self.f_coprime = np.where(np.gcd(n, sys.g) == 1, self.f, 0.0)
        size = sp_fft.next_fast_len(2 * M, real=True)
        self._h = self._square(self.f, size)
        self._h_coprime = self._square(self.f_coprime, size)
        eps = float(np.finfo(np.float64).eps)
        self.error_scale = (
            eps * math.log2(size) * float(np.sum(self.f**2)) * float(np.sum(self.f))
        )
        self.f.flags.writeable = False
        logger.debug(
            "Built ternary convolution for g=%d b=%d M=%d in %.3fs",
            sys.g,
            sys.b,
            M,
            time.perf_counter() - started,
        )

    @staticmethod
    def _square(f: npt.NDArray[np.float64], size: int) -> npt.NDArray[np.float64]:
        spectrum = sp_fft.rfft(f, size)
        return sp_fft.irfft(spectrum * spectrum, size)

    def lhs(self, N: int, coprime: bool = False) -> float:
        """Return Σ_{x3} f(x3)·(f∗f)(N − x3)."""
        if not 0 <= N < self.sys.M:
            raise DigitGoldbachArgumentError(
                f"N must lie in [0, {self.sys.M})", field="N", value=N
            )
        if N < 3:
            return 0.0
        f = self.f_coprime if coprime else self.f
        h = self._h_coprime if coprime else self._h
        return float(np.dot(f[1:N], h[N - 1 : 0 : -1]))


def _lhs_direct(
    N: int, sys: DigitSystem, coprime: bool, config: ToolkitConfig
) -> float:
    config.require("max_direct_target", N, "direct enumeration target")
    tables = build_tables(max(N, 2), config)
    mask = restricted_mask(N + 1, sys)
    weight = tables.von_mangoldt[: N + 1] * mask
    if coprime:
        weight = np.where(np.gcd(np.arange(N + 1), sys.g) == 1, weight, 0.0)
    support = np.nonzero(weight)[0].tolist()
    terms = []
    for x1 in support:
        for x2 in support:
            x3 = N - x1 - x2
            if x3 < 1:
                break
            if weight[x3]:
                terms.append(weight[x1] * weight[x2] * weight[x3])
    return math.fsum(terms)


def lhs_ternary(
    N: int,
    sys: DigitSystem,
    mode: LhsMode = "fft",
    config: ToolkitConfig = DEFAULT_CONFIG,
    convolution: TernaryConvolution | None = None,
) -> tuple[float, float]:
    """
    Return Σ_{x1+x2+x3=N, x_i ∈ 𝒮_b} Λ(x1)Λ(x2)Λ(x3) and its error estimate.

    Args:
        N: Target, below g^k.
        sys: Digit system.
        mode: "fft" (shared convolution) or "direct" (enumeration oracle).
        config: Supplies the scan and direct-target caps.
        convolution: A prebuilt convolution for sys.

    Returns:
        (value, error estimate); the direct mode is exact up to rounding.

    Example:
        >>> value, _ = lhs_ternary(6, DigitSystem(g=10, b=7, k=1), mode="direct")
        >>> round(value, 4)
        0.333
    """
    if not 0 <= N < sys.M:
        raise DigitGoldbachArgumentError(
            f"N must lie in [0, {sys.M})", field="N", value=N
        )
    if mode == "direct":
        return _lhs_direct(N, sys, False, config), 0.0
    conv = convolution or TernaryConvolution(sys, config)
    return conv.lhs(N), conv.error_scale


# -----------------------------------------------------------------------------
# Main term and reports
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class MainTerm:
    """The right side of the ternary count for one target."""

    singular_series: float
    tail_bound: float
    g_factor: float
    coprime_count: int
    restricted_count: int

    @property
    def value(self) -> float:
        """Return series·g_factor·coprime_count."""
        return self.singular_series * self.g_factor * self.coprime_count


def g_factor(g: int) -> Fraction:
    """
    Return Π_{p|g} (p/(p − 1))³ exactly.

    Example:
        >>> float(g_factor(10))
        15.625
    """
    result = Fraction(1)
    for p, _ in factorize(g):
        result *= Fraction(p, p - 1) ** 3
    return result


def main_term(N: int, sys: DigitSystem, P_max: int) -> MainTerm:
    """
    Assemble the main term for N.

    Coprimality with g only constrains the least digit, so the coprime
    count comes from the same digit automaton as the plain count.
    """
    series, tail = singular_series(N, sys.g, P_max)
    coprime = count_representations(RepCountQuery(T=N, m=3, sys=sys, coprime_to_g=True))
    restricted = count_representations(RepCountQuery(T=N, m=3, sys=sys))
    return MainTerm(
        singular_series=series,
        tail_bound=tail,
        g_factor=float(g_factor(sys.g)),
        coprime_count=coprime,
        restricted_count=restricted,
    )


def verify_target(
    N: int,
    g: int,
    b: int,
    P_max: int,
    mode: LhsMode = "fft",
    convolution: TernaryConvolution | None = None,
    timings: bool = False,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """
    Build the VerificationReport for one target.

    Args:
        N: Target; k is chosen with g^{k−1} ≤ N < g^k.
        g: Base.
        b: Forbidden digit.
        P_max: Singular-series truncation.
        mode: Left-side evaluation mode.
        convolution: Shared convolution for the system of N.
        timings: Record the wall-clock runtime.
        config: Toolkit configuration.

    Returns:
        VerificationReport.
    """
    started = time.perf_counter()
    sys = DigitSystem.for_target(N, g, b)
    if mode == "direct":
        lhs, error = _lhs_direct(N, sys, False, config), 0.0
        lhs_coprime = _lhs_direct(N, sys, True, config)
    else:
        conv = convolution or TernaryConvolution(sys, config)
        lhs, error = conv.lhs(N), conv.error_scale
        lhs_coprime = conv.lhs(N, coprime=True)
    warning = error > PRECISION_RATIO * abs(lhs)
    if warning:
        logger.warning(
            "FFT error estimate %.3g is large against lhs %.6g for N=%d", error, lhs, N
        )
    term = main_term(N, sys, P_max)
    main = term.value
    return VerificationReport(
        N=N,
        g=g,
        b=b,
        k=sys.k,
        M=sys.M,
        lhs_weighted=lhs,
        lhs_coprime_weighted=lhs_coprime,
        lhs_mode=mode,
        fft_error_estimate=error,
        precision_warning=warning,
        singular_series_truncated=term.singular_series,
        tail_bound=term.tail_bound,
        g_factor=term.g_factor,
        coprime_count=term.coprime_count,
        restricted_count=term.restricted_count,
        main_term=main,
        ratio=lhs / main if main > 0 else None,
        P_max=P_max,
        runtime=time.perf_counter() - started if timings else None,
    )


def summarize(
    reports: Sequence[VerificationReport], errors: Sequence[str] = ()
) -> VerificationSummary:
    """Collect reports with ratio statistics over odd N with a positive main term."""
    ratios = [
        r.ratio
        for r in reports
        if r.N % 2 == 1 and r.main_term > 0 and r.ratio is not None
    ]
    return VerificationSummary(
        reports=tuple(reports),
        errors=tuple(errors),
        ratio_min=min(ratios) if ratios else None,
        ratio_median=statistics.median(ratios) if ratios else None,
        ratio_max=max(ratios) if ratios else None,
    )


def verify_range(
    targets: Iterable[int],
    g: int,
    b: int,
    P_max: int,
    mode: LhsMode = "fft",
    threads: int = 1,
    timings: bool = False,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> VerificationSummary:
    """
    Verify a batch of targets, sharing one convolution per digit length.

    Per-target failures are recorded on the summary instead of aborting
    the batch. Output order follows the input order.
    """
    Ns = list(targets)
    convolutions: dict[int, TernaryConvolution] = {}
    if mode == "fft":
        for N in Ns:
            if N < 1:
                continue
            sys = DigitSystem.for_target(N, g, b)
            if sys.k not in convolutions:
                try:
                    convolutions[sys.k] = TernaryConvolution(sys, config)
                except DigitGoldbachError as e:
                    logger.warning("Cannot build convolution for k=%d: %s", sys.k, e)

    def run(N: int) -> VerificationReport | str:
        try:
            if N < 1:
                raise DigitGoldbachArgumentError(
                    "targets must be positive", field="N", value=N
                )
            k = DigitSystem.for_target(N, g, b).k
            if mode == "fft" and k not in convolutions:
                raise DigitGoldbachArgumentError(
                    "no convolution for this digit length", field="N", value=N
                )
            return verify_target(
                N, g, b, P_max, mode, convolutions.get(k), timings, config
            )
        except DigitGoldbachError as e:
            return f"N={N}: {e}"

    logger.info("Verifying %d targets (g=%d, b=%d, mode=%s)", len(Ns), g, b, mode)
    outcomes = parallel_map(run, Ns, threads)
    reports = [o for o in outcomes if isinstance(o, VerificationReport)]
    errors = [o for o in outcomes if isinstance(o, str)]
    return summarize(reports, errors)


# -----------------------------------------------------------------------------
# Experiments on representations
# -----------------------------------------------------------------------------


def _pair_counts(mask: npt.NDArray[np.bool_]) -> npt.NDArray[np.int64]:
    """Return r2[s] = #{(x1, x2) ∈ 𝒮² : x1 + x2 = s}, exact after rounding."""
    indicator = mask.astype(np.float64)
    size = sp_fft.next_fast_len(2 * indicator.size, real=True)
    spectrum = sp_fft.rfft(indicator, size)
    return np.rint(sp_fft.irfft(spectrum * spectrum, size)[: indicator.size]).astype(
        np.int64
    )


def divisor_moment_experiment(
    sys: DigitSystem,
    A: int,
    targets: Sequence[int],
    target: Literal["x1", "pair"] = "x1",
    trials: int | None = None,
    seed: int = 0,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> list[DivisorMomentRow]:
    """
    Average τ(x1)^A (or τ(x1 + x2)^A) over the representations of each T.

    Exact averages come from the pair-count convolution; with trials set
    the average is taken over uniform samples instead.

    Args:
        sys: Digit system (only g and b are used).
        A: Moment, 0 ≤ A ≤ 4.
        targets: Targets T ≤ 10⁶.
        target: "x1" or "pair".
        trials: Sample size for the sampled method.
        seed: Sampling seed.
        config: Supplies the table cap.

    Returns:
        One row per target.
    """
    if not 0 <= A <= 4:
        raise DigitGoldbachArgumentError("A must lie in [0, 4]", field="A", value=A)
    rows = []
    for T in targets:
        if not 3 <= T <= 10**6:
            raise DigitGoldbachArgumentError(
                "T must lie in [3, 10^6]", field="T", value=T
            )
        wide = DigitSystem.for_target(T, sys.g, sys.b)
        divisor_count = build_tables(max(T, 2), config).divisor_count[: T + 1]
        tau = divisor_count.astype(np.float64) ** A
        if trials:
            sampler = RepresentationSampler(RepCountQuery(T=T, m=3, sys=wide))
            rng = random.Random(seed * 1_000_003 + T)
            values = []
            for _ in range(trials):
                x1, x2, _x3 = sampler.sample(rng)
                values.append(tau[x1 + x2] if target == "pair" else tau[x1])
            ratio, method = math.fsum(values) / trials, "sampled"
        else:
            mask = restricted_mask(T + 1, wide)
            r2 = _pair_counts(mask)
            x = np.arange(1, T, dtype=np.int64)
            inside = mask[1:T]
            weights = (r2[T - x] * inside).astype(np.float64)
            count = int(np.sum(r2[T - x] * inside))
            if count == 0:
                raise DigitGoldbachEmptySupportError(f"no representations of {T}")
            moments = tau[T - x] if target == "pair" else tau[x]
            ratio, method = float(np.sum(moments * weights)) / count, "exact"
        exponent = (
            math.log(ratio) / math.log(math.log(T)) if T >= 16 and ratio > 0 else None
        )
        rows.append(
            DivisorMomentRow(T=T, A=A, ratio=ratio, exponent=exponent, method=method)
        )
    return rows


def _pair_sums(
    sampler: RepresentationSampler, seed: int, chunk: int, size: int
) -> list[int]:
    rng = random.Random(seed * 1_000_003 + chunk)
    return [x1 + x2 for x1, x2, _x3 in (sampler.sample(rng) for _ in range(size))]


def divisibility_experiment(
    sys: DigitSystem,
    N: int,
    ds: Sequence[int],
    trials: int,
    seed: int,
    threads: int = 1,
) -> list[DivisibilityRow]:
    """
    Estimate P[d | x1 + x2] under uniform representations x1 + x2 + x3 = N.

    The refined event is d/(x1 + x2, d) ≤ √d. The exponent is the C with
    P̂ = d^{−1/C}; it is None when P̂ is 0 or 1.

    Raises:
        DigitGoldbachArgumentError: If trials < 1000.
    """
    if trials < 1000:
        raise DigitGoldbachArgumentError(
            "need at least 1000 trials", field="trials", value=trials
        )
    wide = DigitSystem.for_target(N, sys.g, sys.b)
    sampler = RepresentationSampler(RepCountQuery(T=N, m=3, sys=wide))
    if sampler.count == 0:
        raise DigitGoldbachEmptySupportError(f"no representations of {N}")
    sizes = [len(c) for c in chunk_list(range(trials), SAMPLE_CHUNK)]
    parts = parallel_map(
        lambda c: _pair_sums(sampler, seed, c[0], c[1]), list(enumerate(sizes)), threads
    )
    sums = np.array([s for part in parts for s in part], dtype=np.int64)
    rows = []
    for d in ds:
        if d < 1:
            raise DigitGoldbachArgumentError("d must be positive", field="d", value=d)
        probability = float(np.mean(sums % d == 0))
        refined = float(np.mean(d // np.gcd(sums, d) <= math.isqrt(d)))
        exponent = None
        if d > 1 and 0 < probability < 1:
            exponent = -math.log(d) / math.log(probability)
        rows.append(
            DivisibilityRow(
                d=d,
                probability=probability,
                refined_probability=refined,
                exponent=exponent,
            )
        )
    return rows


def correction_term_experiment(
    N: int,
    sys: DigitSystem,
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    rho1: complex,
    rho2: complex,
    Q: float,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> CorrectionTermResult:
    """
    Evaluate Σ_{x3 ∈ 𝒮} τ(x3)·|Σ_{x1+x2=N−x3} Π_j x_j^{ρ_j−1} F_{χ_j,Q}(x_j)|.

    The inner sums over x1 + x2 come from one complex convolution. The
    baseline is the number of representations of N. The sum is symmetric in
    the pairs (χ1, ρ1) and (χ2, ρ2), so a single trivial character goes
    first.

    Raises:
        DigitGoldbachArgumentError: If χ2 is principal.
        DigitGoldbachResourceError: If N exceeds max_direct_target.
    """
    if chi2.is_principal:
        raise DigitGoldbachArgumentError(
            "chi2 must be nontrivial; pass a trivial character as chi1",
            field="chi2",
            value=(chi2.modulus, chi2.index),
        )
    config.require("max_direct_target", N, "correction-term target")
    wide = DigitSystem.for_target(N, sys.g, sys.b)
    mask = restricted_mask(N + 1, wide)
    x = np.arange(N + 1, dtype=np.int64)
    log_x = np.log(np.maximum(x, 1).astype(np.float64))

    def weight(chi: DirichletCharacter, rho: complex) -> npt.NDArray[np.complex128]:
        u = np.exp((rho - 1) * log_x) * F_chi_Q_values(x, chi, Q, config) * mask
        u[0] = 0.0
        return u

    u1, u2 = weight(chi1, rho1), weight(chi2, rho2)
    size = sp_fft.next_fast_len(2 * (N + 1))
    inner = sp_fft.ifft(sp_fft.fft(u1, size) * sp_fft.fft(u2, size))[: N + 1]
    tau = build_tables(max(N, 2), config).divisor_count

    terms = []
    for x3 in np.nonzero(mask[1 : N - 1])[0] + 1:
        x3 = int(x3)
        terms.append((x3, int(tau[x3]), float(abs(inner[N - x3]))))
    lhs = math.fsum(t * value for _, t, value in terms)
    baseline = count_representations(RepCountQuery(T=N, m=3, sys=wide))
    return CorrectionTermResult(
        N=N,
        lhs_sum=lhs,
        baseline=baseline,
        ratio=lhs / baseline if baseline else None,
        terms=tuple(terms),
    )

