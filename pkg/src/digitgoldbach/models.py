"""
Digit-Goldbach Data Models.

This module defines the pydantic models exchanged between the toolkit
modules and written out as reports. Models are immutable; invariants that
the rest of the toolkit relies on are enforced by validators.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


REGISTERED_EXPERIMENTS = frozenset(
    {
        "correction-term",
        "divisibility",
        "divisor-moment",
        "domination",
        "lower-bound",
        "sensitivity",
        "well-conditioned",
    }
)


class DigitGoldbachBaseModel(BaseModel):
    """
    Base model for all toolkit models.

    Configured to:
    - Freeze instances after validation
    - Forbid unknown fields (reports are produced, not consumed loosely)
    - Populate by field name
    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        populate_by_name=True,
    )


# -----------------------------------------------------------------------------
# Digit Systems
# -----------------------------------------------------------------------------


class DigitSystem(DigitGoldbachBaseModel):
    """
    A base g, a forbidden digit b and a digit length k.

    The restricted set 𝒮_b holds the positive integers whose base-g
    expansion avoids b; M = g^k bounds every summand.
    """

    g: int = Field(..., ge=3, description="Base")
    b: int = Field(..., ge=0, description="Forbidden digit")
    k: int = Field(..., ge=1, description="Digit length")

    @model_validator(mode="after")
    def _digit_in_base(self) -> "DigitSystem":
        if self.b >= self.g:
            raise ValueError(f"forbidden digit {self.b} is not a base-{self.g} digit")
        return self

    @property
    def M(self) -> int:
        """Return g^k."""
        return self.g**self.k

    @classmethod
    def for_target(cls, N: int, g: int, b: int) -> "DigitSystem":
        """
        Build the digit system bracketing a target, g^{k−1} ≤ N < g^k.

        Args:
            N: Positive target.
            g: Base.
            b: Forbidden digit.

        Returns:
            The digit system with the smallest k such that N < g^k.
        """
        if N < 1:
            raise ValueError(f"target must be positive: {N}")
        k = 1
        while g**k <= N:
            k += 1
        return cls(g=g, b=b, k=k)


class DigitVector(DigitGoldbachBaseModel):
    """Little-endian base-g digits; digits[j] is the coefficient of g^j."""

    g: int = Field(..., ge=2, description="Base")
    digits: tuple[int, ...] = Field(..., description="Little-endian digits")

    @model_validator(mode="after")
    def _digits_in_base(self) -> "DigitVector":
        if any(not 0 <= d < self.g for d in self.digits):
            raise ValueError(f"digits must lie in [0, {self.g - 1}]: {self.digits}")
        return self

    @property
    def value(self) -> int:
        """Return Σ digits[j]·g^j."""
        total = 0
        for d in reversed(self.digits):
            total = total * self.g + d
        return total


# -----------------------------------------------------------------------------
# Product Measures
# -----------------------------------------------------------------------------


class Block(DigitGoldbachBaseModel):
    """An allowed digit set: the interval [lo, hi] minus at most two digits."""

    lo: int = Field(..., ge=0, description="Smallest digit of the interval")
    hi: int = Field(..., ge=0, description="Largest digit of the interval")
    excluded: tuple[int, ...] = Field(default=(), description="Removed digits")

    @model_validator(mode="after")
    def _check_shape(self) -> "Block":
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if len(self.excluded) > 2:
            raise ValueError(f"at most two excluded digits allowed: {self.excluded}")
        if len(set(self.excluded)) != len(self.excluded):
            raise ValueError(f"excluded digits repeat: {self.excluded}")
        if any(not self.lo <= e <= self.hi for e in self.excluded):
            raise ValueError(f"excluded digits must lie in [{self.lo}, {self.hi}]")
        if self.size == 0:
            raise ValueError("block has no digits")
        return self

    @property
    def size(self) -> int:
        """Return |B|."""
        return self.hi - self.lo + 1 - len(self.excluded)

    def digits(self) -> list[int]:
        """Return the allowed digits in increasing order."""
        return [z for z in range(self.lo, self.hi + 1) if z not in self.excluded]

    @classmethod
    def singleton(cls, digit: int) -> "Block":
        """Return the block {digit}."""
        return cls(lo=digit, hi=digit)


class ProductMeasure(DigitGoldbachBaseModel):
    """
    Unit Dirac masses on the integers Σ z_j g^j with z_j ∈ B_j.

    Blocks are little-endian: blocks[j] constrains the coefficient of g^j.
    """

    g: int = Field(..., ge=2, description="Base")
    blocks: tuple[Block, ...] = Field(..., min_length=1, description="B_0..B_{k-1}")

    @model_validator(mode="after")
    def _blocks_in_base(self) -> "ProductMeasure":
        for j, block in enumerate(self.blocks):
            if block.hi > self.g - 1:
                raise ValueError(f"block {j} exceeds digit range of base {self.g}")
        return self

    @property
    def k(self) -> int:
        """Return the number of digit positions."""
        return len(self.blocks)

    @property
    def mass(self) -> int:
        """Return Π |B_j|."""
        return math.prod(block.size for block in self.blocks)

    def support(self) -> Iterator[int]:
        """Yield every support point (use on small measures only)."""
        points = [0]
        for j, block in enumerate(self.blocks):
            scale = self.g**j
            points = [p + z * scale for p in points for z in block.digits()]
        yield from sorted(points)


class Frequency(DigitGoldbachBaseModel):
    """A frequency θ = a/q + β carried as an exact rational plus a real offset."""

    a: int = Field(default=0, description="Numerator")
    q: int = Field(default=1, ge=1, description="Denominator")
    beta: float = Field(default=0.0, description="Real offset")

    @property
    def approx(self) -> float:
        """Return θ as a float (for display only)."""
        return self.a / self.q + self.beta


class ConditionFailure(DigitGoldbachBaseModel):
    """The first witness found for a failed well-conditioning condition."""

    condition: int = Field(..., ge=1, le=3, description="Condition index (1-3)")
    witness: str = Field(..., description="Interval, block index or fraction")


class WellConditionedReport(DigitGoldbachBaseModel):
    """Outcome of testing the three well-conditioning conditions."""

    C: float = Field(..., description="Constant tested")
    passed: bool = Field(..., description="All three conditions hold")
    failures: tuple[ConditionFailure, ...] = Field(
        default=(), description="First witnesses"
    )
    interval_length: int = Field(
        ..., description="Length of tested windows in condition 1"
    )
    vacuous_condition_1: bool = Field(
        default=False, description="No window fits inside [k/4]"
    )
    b_cap: int = Field(..., description="Largest denominator tested in condition 3")
    log_base: Literal["natural"] = Field(default="natural", description="Base of log b")


class PassRate(DigitGoldbachBaseModel):
    """Share of sampled decomposition entries that are well conditioned."""

    T: int = Field(..., description="Target")
    C: float = Field(..., description="Constant tested")
    trials: int = Field(..., ge=1, description="Entries sampled")
    passed: int = Field(..., ge=0, description="Entries passing all conditions")
    failures_by_condition: dict[int, int] = Field(
        default_factory=dict, description="Condition index -> failing entries"
    )

    @property
    def rate(self) -> float:
        """Return passed / trials."""
        return self.passed / self.trials


class TransformValue(DigitGoldbachBaseModel):
    """A single Fourier coefficient μ̂(a/q + β)."""

    a: int
    q: int
    beta: float = 0.0
    value_real: float = Field(..., description="Re μ̂")
    value_imag: float = Field(..., description="Im μ̂")
    ratio: float = Field(..., description="|μ̂| / mass")


class L1Estimate(DigitGoldbachBaseModel):
    """Riemann-sum estimate of ∫|μ̂|."""

    estimate: float = Field(..., description="Mean of |μ̂| over the grid")
    refinement_delta: float = Field(
        ..., description="|estimate − half-resolution estimate|"
    )
    points: int = Field(..., description="Grid size")
    fitted_constant: float = Field(..., description="C with estimate = (C ln g)^k")


class LargeSieveResult(DigitGoldbachBaseModel):
    """A large-sieve sum and the smallest constant making the bound hold."""

    value: float = Field(..., description="Σ_b Σ_a |μ̂(a/b + β)|")
    fractions: int = Field(..., description="Number of fractions summed")
    fitted_constant: float | None = Field(
        default=None, description="Smallest C with value ≤ RHS(C)"
    )


class LinfBound(DigitGoldbachBaseModel):
    """Per-block L∞ estimate of |μ̂(a/b)| relative to the mass."""

    ratio: float = Field(..., description="|μ̂(a/b)| / mass")
    bound: float = Field(..., description="Product of per-block bounds")
    blocks_used: int = Field(..., description="Blocks holding two consecutive digits")
    satisfied: bool = Field(..., description="ratio ≤ bound")


# -----------------------------------------------------------------------------
# Counting
# -----------------------------------------------------------------------------


class RepCountQuery(DigitGoldbachBaseModel):
    """A representation-count query x_1 + … + x_m = T."""

    T: int = Field(..., ge=0, description="Target")
    m: Literal[2, 3] = Field(default=3, description="Number of summands")
    sys: DigitSystem = Field(..., description="Digit system")
    include_zero: bool = Field(default=False, description="Allow x_i = 0")
    coprime_to_g: bool = Field(default=False, description="Require gcd(x_i, g) = 1")
    forbidden_per_position: dict[int, tuple[int, ...]] | None = Field(
        default=None, description="Per-position forbidden digits replacing {b}"
    )

    @model_validator(mode="after")
    def _check_range(self) -> "RepCountQuery":
        if self.T >= self.m * self.sys.M:
            raise ValueError(
                f"target {self.T} must be below m·g^k = {self.m * self.sys.M}"
            )
        for pos, digits in (self.forbidden_per_position or {}).items():
            if not 0 <= pos < self.sys.k:
                raise ValueError(f"position {pos} outside [0, {self.sys.k})")
            if any(not 0 <= d < self.sys.g for d in digits):
                raise ValueError(f"forbidden digits out of range at position {pos}")
        return self

    def forbidden_at(self, position: int) -> frozenset[int]:
        """Return the forbidden digit set at a position."""
        if self.forbidden_per_position and position in self.forbidden_per_position:
            return frozenset(self.forbidden_per_position[position])
        return frozenset({self.sys.b})


class CarryDecompositionEntry(DigitGoldbachBaseModel):
    """One revealed carry sequence with the product measure of x_1 under it."""

    carries: tuple[int, ...] = Field(..., description="Carry out of each position")
    lengths: tuple[int, int] | None = Field(
        default=None, description="Digit lengths of (x_1, x_2) when revealed"
    )
    measure: ProductMeasure = Field(..., description="Conditional measure of x_1")


class CarryDecomposition(DigitGoldbachBaseModel):
    """All entries of the carry decomposition of x_1 + x_2 = T."""

    target: int = Field(..., description="T")
    sys: DigitSystem = Field(..., description="Digit system")
    include_zero: bool = Field(default=False, description="Zero summands allowed")
    reveal_above: int | None = Field(
        default=None, description="First fully revealed position"
    )
    entries: tuple[CarryDecompositionEntry, ...] = Field(
        default=(), description="Entries"
    )

    @property
    def total_mass(self) -> int:
        """Return Σ over entries of the measure mass."""
        return sum(entry.measure.mass for entry in self.entries)


class CountReport(DigitGoldbachBaseModel):
    """Exact number of representations of one target."""

    query: RepCountQuery = Field(..., description="Counting query")
    count: int = Field(..., ge=0, description="Number of representations")


class SensitivityReport(DigitGoldbachBaseModel):
    """max_{j1,j2} count(T−j1)/count(T−j2) for m = 3."""

    T: int = Field(..., description="Target")
    counts: tuple[int, ...] = Field(..., description="count(T−j) for j = 0..3")
    ratio: float = Field(..., description="Largest ratio (inf if a count vanishes)")
    witness: int | None = Field(default=None, description="j with count(T−j) = 0")


class DominationResult(DigitGoldbachBaseModel):
    """Empirical tail of Σ Y_j against the fitted binomial tail."""

    T: int = Field(..., description="Target")
    trials: int = Field(..., description="Samples drawn")
    positions: tuple[int, ...] = Field(..., description="Positions j in S")
    empirical_tail: tuple[float, ...] = Field(
        ..., description="P̂[Σ Y ≥ t], t = 0..|S|"
    )
    bound_tail: tuple[float, ...] = Field(
        ..., description="Binomial-type tail at fitted C"
    )
    fitted_C: float = Field(..., description="Smallest dominating C")
    marginal: bool = Field(default=False, description="Single-digit variant")


class LowerBoundCheck(DigitGoldbachBaseModel):
    """count(T) against the recursion-derived lower bound."""

    T: int = Field(..., description="Target")
    count: int = Field(..., description="Exact representation count")
    bound: int = Field(..., description="(g² − 3g)^{⌊log_g T⌋ − 3}")
    satisfied: bool = Field(..., description="count ≥ bound")


# -----------------------------------------------------------------------------
# Character Sums
# -----------------------------------------------------------------------------


class WSumResult(DigitGoldbachBaseModel):
    """A mixed character sum W(b1, b2, T) with its applicable bound."""

    value_real: float = Field(..., description="Re W")
    value_imag: float = Field(..., description="Im W")
    bound: float | None = Field(default=None, description="Applicable bound, if any")
    bound_satisfied: bool | None = Field(
        default=None, description="|W| ≤ bound; None when no bound applies"
    )

    @property
    def value(self) -> complex:
        """Return W as a complex number."""
        return complex(self.value_real, self.value_imag)


class WeilCheck(DigitGoldbachBaseModel):
    """A complete character sum Σ χ(f(x)) against the Weil bound."""

    sum_real: float = Field(..., description="Re Σ χ(f(x))")
    sum_imag: float = Field(..., description="Im Σ χ(f(x))")
    bound: float = Field(..., description="(m − 1)√p")
    distinct_roots: int = Field(
        ..., description="Distinct roots over the algebraic closure"
    )
    roots_in_field: int = Field(..., description="Distinct roots in F_p")
    applicable: bool = Field(..., description="f is not c·h^d")
    satisfied: bool | None = Field(
        default=None, description="|sum| ≤ bound when applicable"
    )

    @property
    def value(self) -> complex:
        """Return the sum as a complex number."""
        return complex(self.sum_real, self.sum_imag)


class HenselCheck(DigitGoldbachBaseModel):
    """Both sides of the Hensel-type reduction of a mixed character sum."""

    lhs_real: float
    lhs_imag: float
    rhs_real: float
    rhs_imag: float
    b: int = Field(..., description="Additive parameter of χ on 1 + p^α·Z")
    match: bool = Field(..., description="|lhs − rhs| ≤ 1e-8")

    @property
    def lhs(self) -> complex:
        """Return the direct sum."""
        return complex(self.lhs_real, self.lhs_imag)

    @property
    def rhs(self) -> complex:
        """Return the reduced sum."""
        return complex(self.rhs_real, self.rhs_imag)


class CountCheck(DigitGoldbachBaseModel):
    """An exhaustive count compared with its bound."""

    count: int = Field(..., description="Exhaustive count")
    bound: int = Field(..., description="Bound")
    satisfied: bool = Field(..., description="Bound holds")


class SweepSummary(DigitGoldbachBaseModel):
    """Aggregate of an exhaustive bound sweep."""

    name: str = Field(..., description="Sweep name")
    checked: int = Field(..., description="Instances evaluated")
    applicable: int = Field(..., description="Instances where a hypothesis held")
    failures: tuple[str, ...] = Field(
        default=(), description="Parameter tuples that failed"
    )

    @property
    def passed(self) -> bool:
        """Return True when no applicable instance failed."""
        return not self.failures


# -----------------------------------------------------------------------------
# Zeros & Approximants
# -----------------------------------------------------------------------------


class ZeroDatum(DigitGoldbachBaseModel):
    """A zero ρ = β + iγ of L(s, χ_ρ) with multiplicity."""

    beta: float = Field(..., gt=0.0, lt=1.0, description="Real part")
    gamma: float = Field(..., description="Imaginary part")
    modulus: int = Field(..., ge=1, description="Modulus of χ_ρ")
    char_index: int = Field(..., ge=0, description="Index in character_group(modulus)")
    multiplicity: int = Field(default=1, ge=1, description="Multiplicity")

    @property
    def rho(self) -> complex:
        """Return β + iγ."""
        return complex(self.beta, self.gamma)


class RejectedRow(DigitGoldbachBaseModel):
    """A zeros-file row outside the admissible window."""

    line: int = Field(..., description="1-based line number")
    reason: str = Field(..., description="Why the row was rejected")


class ZeroSet(DigitGoldbachBaseModel):
    """The multiset of zeros with 1 − β ≤ σ₀, |γ| ≤ Q and conductor ≤ Q."""

    zeros: tuple[ZeroDatum, ...] = Field(default=(), description="Accepted zeros")
    Q: float = Field(..., ge=1.0, description="Height and conductor cap")
    sigma0: float = Field(..., gt=0.0, lt=1.0, description="Window width")
    rejected: tuple[RejectedRow, ...] = Field(default=(), description="Rejected rows")

    @model_validator(mode="after")
    def _check_window(self) -> "ZeroSet":
        for zero in self.zeros:
            if 1.0 - zero.beta > self.sigma0 or abs(zero.gamma) > self.Q:
                raise ValueError(f"zero {zero.rho} lies outside the window")
        return self

    @property
    def size(self) -> int:
        """Return the number of zeros counted with multiplicity."""
        return sum(zero.multiplicity for zero in self.zeros)


class ApproximantValue(DigitGoldbachBaseModel):
    """One evaluated approximant value."""

    name: Literal["lambda-q", "lambda-q-sigma0", "f-chi-q"] = Field(
        ..., description="Approximant"
    )
    n: int = Field(..., ge=1)
    Q: float
    modulus: int | None = Field(
        default=None, description="Character modulus for f-chi-q"
    )
    char_index: int | None = Field(
        default=None, description="Character index for f-chi-q"
    )
    value_real: float
    value_imag: float = 0.0


class DeviationPlan(DigitGoldbachBaseModel):
    """Frequencies sampled by a deviation scan."""

    farey_limit: int = Field(default=64, ge=1, description="Largest Farey denominator")
    grid_size: int = Field(default=0, ge=0, description="Uniform grid size (0 = none)")


class DeviationScanResult(DigitGoldbachBaseModel):
    """A sampled lower bound for a supremum over θ."""

    M: int = Field(..., description="Range of n")
    Q: float = Field(..., description="Approximant level")
    sup_estimate: float = Field(..., description="Largest sampled |S(θ)|")
    argmax: str = Field(..., description="Maximizing θ as 'a/q'")
    samples: int = Field(..., description="Frequencies sampled")
    restricted: bool = Field(default=False, description="Weighted by 1_𝒮")
    kind: Literal["sampled lower bound"] = "sampled lower bound"


# -----------------------------------------------------------------------------
# Verification
# -----------------------------------------------------------------------------


class VerificationReport(DigitGoldbachBaseModel):
    """Both sides of the ternary restricted-digit count for one N."""

    N: int
    g: int
    b: int
    k: int
    M: int
    lhs_weighted: float = Field(..., description="Σ Λ(x1)Λ(x2)Λ(x3) over 𝒮_b")
    lhs_coprime_weighted: float = Field(..., description="Same with gcd(x_i, g) = 1")
    lhs_mode: Literal["fft", "direct"] = "fft"
    fft_error_estimate: float = 0.0
    precision_warning: bool = False
    singular_series_truncated: float
    tail_bound: float
    g_factor: float
    coprime_count: int
    restricted_count: int
    main_term: float
    ratio: float | None = None
    P_max: int
    runtime: float | None = None

    @model_validator(mode="after")
    def _check_invariants(self) -> "VerificationReport":
        if self.M != self.g**self.k:
            raise ValueError("M must equal g^k")
        if not self.g ** (self.k - 1) <= self.N < self.M:
            raise ValueError("N must satisfy g^(k-1) <= N < g^k")
        expected = self.singular_series_truncated * self.g_factor * self.coprime_count
        if not math.isclose(self.main_term, expected, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError("main_term must equal series·g_factor·coprime_count")
        return self


class VerificationSummary(DigitGoldbachBaseModel):
    """Per-N reports plus ratio statistics over odd N with main_term > 0."""

    reports: tuple[VerificationReport, ...] = ()
    errors: tuple[str, ...] = Field(default=(), description="Per-N failures")
    ratio_min: float | None = None
    ratio_median: float | None = None
    ratio_max: float | None = None


class DivisorMomentRow(DigitGoldbachBaseModel):
    """Average of τ(·)^A over the representations of T."""

    T: int
    A: int
    ratio: float = Field(..., description="Σ τ^A / count")
    exponent: float | None = Field(default=None, description="ln ratio / lnln T")
    method: Literal["exact", "sampled"] = "exact"


class DivisibilityRow(DigitGoldbachBaseModel):
    """Empirical divisibility probabilities for one d."""

    d: int
    probability: float = Field(..., description="P̂[d | x1 + x2]")
    refined_probability: float = Field(..., description="P̂[d/(x1+x2, d) ≤ √d]")
    exponent: float | None = Field(default=None, description="C with P̂ = d^{−1/C}")


class CorrectionTermResult(DigitGoldbachBaseModel):
    """Correction-term sum against the trivial baseline."""

    N: int
    lhs_sum: float
    baseline: int = Field(..., description="Number of representations of N")
    ratio: float | None = None
    terms: tuple[tuple[int, int, float], ...] = Field(
        default=(), description="(x3, τ(x3), |inner sum|) per x3"
    )


class ExperimentConfig(DigitGoldbachBaseModel):
    """A named experiment run."""

    name: str = Field(..., description="Registered experiment name")
    params: dict[str, Any] = Field(default_factory=dict, description="Parameters")
    seed: int = Field(default=0, ge=0)
    output: str | None = None
    threads: int = Field(default=1, ge=1)

    @field_validator("name")
    @classmethod
    def _registered(cls, value: str) -> str:
        if value not in REGISTERED_EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {value!r}; choose from "
                + ", ".join(sorted(REGISTERED_EXPERIMENTS))
            )
        return value
