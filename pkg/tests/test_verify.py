"""Tests for the ternary verification and the representation experiments."""

import math
from fractions import Fraction

import pytest
from sympy import divisor_count, isprime, primefactors

from digitgoldbach.characters import character_group, primitive_characters
from digitgoldbach.config import ToolkitConfig
from digitgoldbach.counting import count_representations
from digitgoldbach.digits import is_restricted
from digitgoldbach.errors import (
    DigitGoldbachArgumentError,
    DigitGoldbachResourceError,
)
from digitgoldbach.models import DigitSystem, RepCountQuery
from digitgoldbach.verify import (
    TernaryConvolution,
    correction_term_experiment,
    divisibility_experiment,
    divisor_moment_experiment,
    g_factor,
    lhs_ternary,
    main_term,
    singular_series,
    singular_series_factors,
    verify_range,
    verify_target,
)


SYS = DigitSystem(g=10, b=7, k=3)


def von_mangoldt(n: int) -> float:
    """Λ(n) by factorization."""
    factors = primefactors(n) if n > 1 else []
    return math.log(factors[0]) if len(factors) == 1 else 0.0


class TestSingularSeries:
    """Tests for the truncated singular series."""

    def test_even_target_vanishes(self) -> None:
        """Test that the factor at 2 kills even N when 2 ∤ g."""
        assert singular_series(6, 3, 100)[0] == 0.0

    def test_factors_agree(self) -> None:
        """Test that the split form multiplies to the series."""
        for N in (1001, 2310, 4097):
            value, _ = singular_series(N, 10, 500)
            dividing, coprime = singular_series_factors(N, 10, 500)
            assert dividing * coprime == pytest.approx(value, rel=1e-12)

    def test_base_primes_skipped(self) -> None:
        """Test that primes dividing g contribute nothing."""
        value, _ = singular_series(4, 10, 3)
        assert value == pytest.approx(1.0 + 1 / 2**3)

    def test_tail_counts_large_prime_factors(self) -> None:
        """Test the extra tail term for prime factors of N above P_max."""
        assert isprime(1009)
        value, tail = singular_series(3 * 1009, 10, 100)
        base = value * math.expm1(100**-3 + 100**-2 / 2)
        assert tail == pytest.approx(
            value * math.expm1(100**-3 + 100**-2 / 2 + 2 / 1008**2)
        )
        assert tail > base

    def test_p_max(self) -> None:
        """Test that P_max < 3 is rejected."""
        with pytest.raises(DigitGoldbachArgumentError, match="P_max"):
            singular_series(11, 10, 2)
        with pytest.raises(DigitGoldbachArgumentError, match="P_max"):
            singular_series_factors(11, 10, 2)


class TestMainTerm:
    """Tests for g_factor and main_term."""

    def test_g_factor(self) -> None:
        """Test the exact product over primes dividing g."""
        assert g_factor(10) == Fraction(125, 8)
        assert g_factor(7) == Fraction(343, 216)
        assert g_factor(12) == Fraction(8) * Fraction(27, 8)

    def test_main_term(self) -> None:
        """Test that the main term assembles its parts."""
        term = main_term(1001, DigitSystem.for_target(1001, 10, 7), 100)
        assert term.value == pytest.approx(
            term.singular_series * term.g_factor * term.coprime_count
        )
        assert 0 < term.coprime_count <= term.restricted_count
        assert term.g_factor == 15.625


class TestLeftSide:
    """Tests for lhs_ternary and TernaryConvolution."""

    def test_small_target(self) -> None:
        """Test N = 6 = 2 + 2 + 2 in one-digit numbers."""
        value, error = lhs_ternary(6, DigitSystem(g=10, b=7, k=1), mode="direct")
        assert value == pytest.approx(math.log(2) ** 3)
        assert error == 0.0

    def test_direct_matches_definition(self) -> None:
        """Test the direct mode against a brute-force triple sum."""
        N = 60
        sys = DigitSystem(g=10, b=7, k=2)
        support = [n for n in range(1, N) if is_restricted(n, sys)]
        expected = math.fsum(
            von_mangoldt(x1) * von_mangoldt(x2) * von_mangoldt(N - x1 - x2)
            for x1 in support
            for x2 in support
            if N - x1 - x2 >= 1 and is_restricted(N - x1 - x2, sys)
        )
        assert lhs_ternary(N, sys, mode="direct")[0] == pytest.approx(expected)

    @pytest.mark.parametrize("N", [3, 101, 250, 555, 999])
    def test_fft_matches_direct(self, N: int) -> None:
        """Test the shared convolution against direct enumeration."""
        conv = TernaryConvolution(SYS)
        value, error = lhs_ternary(N, SYS, convolution=conv)
        direct, _ = lhs_ternary(N, SYS, mode="direct")
        assert abs(value - direct) <= max(error, 1e-6)

    def test_coprime_side(self) -> None:
        """Test that the coprime left side drops terms with 2 or 5."""
        conv = TernaryConvolution(SYS)
        assert conv.lhs(301, coprime=True) <= conv.lhs(301)
        assert conv.lhs(6) > 0
        assert conv.lhs(6, coprime=True) == pytest.approx(0.0, abs=1e-6)

    def test_out_of_range(self) -> None:
        """Test that N ≥ g^k is rejected."""
        with pytest.raises(DigitGoldbachArgumentError, match="N must lie in"):
            lhs_ternary(1000, SYS, mode="direct")
        with pytest.raises(DigitGoldbachArgumentError, match="N must lie in"):
            TernaryConvolution(SYS).lhs(1000)

    def test_caps(self) -> None:
        """Test the scan and direct-target caps."""
        with pytest.raises(DigitGoldbachResourceError):
            TernaryConvolution(SYS, ToolkitConfig(max_scan_length=500))
        with pytest.raises(DigitGoldbachResourceError):
            lhs_ternary(
                900, SYS, mode="direct", config=ToolkitConfig(max_direct_target=500)
            )


class TestVerifyTarget:
    """Tests for verify_target."""

    def test_report(self) -> None:
        """Test the report for N = 1001 in base 10 without the digit 7."""
        report = verify_target(1001, 10, 7, 1000)
        assert (report.k, report.M) == (4, 10**4)
        assert report.main_term > 0
        assert report.ratio == pytest.approx(report.lhs_weighted / report.main_term)
        assert report.lhs_coprime_weighted <= report.lhs_weighted
        assert report.coprime_count <= report.restricted_count
        assert report.P_max == 1000
        assert report.runtime is None
        assert not report.precision_warning

    def test_modes_agree(self) -> None:
        """Test that both modes give the same report up to rounding."""
        fft = verify_target(301, 10, 7, 100)
        direct = verify_target(301, 10, 7, 100, mode="direct")
        assert direct.lhs_mode == "direct"
        assert direct.fft_error_estimate == 0.0
        assert fft.lhs_weighted == pytest.approx(direct.lhs_weighted, rel=1e-9)
        assert fft.lhs_coprime_weighted == pytest.approx(
            direct.lhs_coprime_weighted, abs=1e-6
        )
        assert fft.main_term == direct.main_term

    def test_timings(self) -> None:
        """Test that the runtime is recorded only on request."""
        assert verify_target(101, 10, 7, 100, timings=True).runtime is not None


class TestVerifyRange:
    """Tests for verify_range."""

    def test_threads_do_not_change_result(self) -> None:
        """Test determinism and input order across thread counts."""
        targets = [1001, 151, 1003, 1005, 999]
        single = verify_range(targets, 10, 7, 200)
        assert [r.N for r in single.reports] == targets
        assert verify_range(targets, 10, 7, 200, threads=3) == single

    def test_statistics(self) -> None:
        """Test that the ratio statistics cover odd targets only."""
        summary = verify_range([1001, 1002, 1003], 10, 7, 200)
        odd = [r.ratio for r in summary.reports if r.N % 2 == 1]
        assert summary.ratio_min == min(odd)
        assert summary.ratio_max == max(odd)
        assert summary.ratio_min <= summary.ratio_median <= summary.ratio_max

    def test_ratio_band(self) -> None:
        """Test that odd targets in [10^5, 10^6] stay near the main term."""
        targets = list(range(100_001, 1_000_000, 111_112))
        summary = verify_range(targets, 10, 7, 1000, threads=2)

        assert len(summary.reports) == len(targets) == 9
        assert summary.errors == ()
        assert all(report.lhs_weighted > 0 for report in summary.reports)
        assert 0.5 <= summary.ratio_median <= 2.0

    def test_failures_recorded(self) -> None:
        """Test that bad targets are recorded instead of aborting the batch."""
        summary = verify_range(
            [0, 101, 5001], 10, 7, 100, config=ToolkitConfig(max_scan_length=1000)
        )
        assert [r.N for r in summary.reports] == [101]
        assert len(summary.errors) == 2
        assert summary.errors[0].startswith("N=0:")
        assert "no convolution" in summary.errors[1]


class TestDivisorMoment:
    """Tests for divisor_moment_experiment."""

    def test_zeroth_moment(self) -> None:
        """Test that A = 0 averages to one."""
        rows = divisor_moment_experiment(SYS, 0, [200, 501])
        assert [row.ratio for row in rows] == [pytest.approx(1.0)] * 2
        assert all(row.method == "exact" for row in rows)

    @pytest.mark.parametrize("target", ["x1", "pair"])
    def test_exact_matches_enumeration(self, target: str) -> None:
        """Test the convolution average against enumerated representations."""
        T = 200
        sys = DigitSystem.for_target(T, 10, 7)
        support = [n for n in range(1, T) if is_restricted(n, sys)]
        values = [
            int(divisor_count(x1 + x2 if target == "pair" else x1))
            for x1 in support
            for x2 in support
            if T - x1 - x2 >= 1 and is_restricted(T - x1 - x2, sys)
        ]
        (row,) = divisor_moment_experiment(SYS, 1, [T], target=target)
        assert row.ratio == pytest.approx(sum(values) / len(values))
        assert row.exponent == pytest.approx(
            math.log(row.ratio) / math.log(math.log(T))
        )

    def test_sampled(self) -> None:
        """Test the sampled method and its seed determinism."""
        rows = divisor_moment_experiment(SYS, 1, [300], trials=400, seed=5)
        assert rows[0].method == "sampled"
        assert rows == divisor_moment_experiment(SYS, 1, [300], trials=400, seed=5)
        assert divisor_moment_experiment(SYS, 0, [300], trials=50)[0].ratio == 1.0

    def test_arguments(self) -> None:
        """Test the range checks on A and T."""
        with pytest.raises(DigitGoldbachArgumentError, match="A must lie"):
            divisor_moment_experiment(SYS, 5, [100])
        with pytest.raises(DigitGoldbachArgumentError, match="T must lie"):
            divisor_moment_experiment(SYS, 1, [2])


class TestDivisibility:
    """Tests for divisibility_experiment."""

    def test_nested_events(self) -> None:
        """Test that probabilities follow divisibility of d."""
        rows = divisibility_experiment(SYS, 10_001, [1, 10, 100, 1000], 2000, seed=3)
        by_d = {row.d: row for row in rows}
        assert by_d[1].probability == 1.0
        assert by_d[1].exponent is None
        assert by_d[1].refined_probability == 1.0
        assert by_d[10].probability >= by_d[100].probability >= by_d[1000].probability
        for row in rows:
            assert row.probability <= row.refined_probability

    def test_threads_do_not_change_result(self) -> None:
        """Test determinism across thread counts."""
        single = divisibility_experiment(SYS, 5001, [3, 9], 1500, seed=1)
        four = divisibility_experiment(SYS, 5001, [3, 9], 1500, seed=1, threads=4)
        assert four == single

    def test_arguments(self) -> None:
        """Test the trial floor and the range of d."""
        with pytest.raises(DigitGoldbachArgumentError, match="1000 trials"):
            divisibility_experiment(SYS, 5001, [3], 999, seed=0)
        with pytest.raises(DigitGoldbachArgumentError, match="d must be positive"):
            divisibility_experiment(SYS, 5001, [0], 1000, seed=0)


class TestCorrectionTerm:
    """Tests for correction_term_experiment."""

    def test_result(self) -> None:
        """Test the sum against its baseline and per-x3 terms."""
        N = 150
        chi1 = character_group(1)[0]
        chi2 = primitive_characters(5)[1]
        result = correction_term_experiment(
            N, SYS, chi1, chi2, complex(0.9995, -1.0), complex(0.9995, 1.0), 4
        )
        sys = DigitSystem.for_target(N, 10, 7)
        assert result.baseline == count_representations(
            RepCountQuery(T=N, m=3, sys=sys)
        )
        assert [x3 for x3, _, _ in result.terms] == [
            n for n in range(1, N - 1) if is_restricted(n, sys)
        ]
        assert result.lhs_sum == pytest.approx(
            math.fsum(t * v for _, t, v in result.terms)
        )
        assert result.ratio == pytest.approx(result.lhs_sum / result.baseline)

    @pytest.mark.parametrize("modulus", [1, 5])
    def test_trivial_second_character(self, modulus: int) -> None:
        """Test that a principal χ2 is rejected whatever χ1 is."""
        first = primitive_characters(modulus)[-1]
        chi2 = character_group(1)[0]
        with pytest.raises(DigitGoldbachArgumentError, match="chi2 must be nontrivial"):
            correction_term_experiment(100, SYS, first, chi2, 0.9 + 0j, 0.9 + 0j, 4)

    def test_target_cap(self) -> None:
        """Test the max_direct_target cap."""
        chi = primitive_characters(3)[0]
        with pytest.raises(DigitGoldbachResourceError):
            correction_term_experiment(
                600,
                SYS,
                chi,
                chi,
                0.9 + 0j,
                0.9 + 0j,
                4,
                ToolkitConfig(max_direct_target=500),
            )
