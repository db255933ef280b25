"""Tests for Dirichlet characters and character sums."""

import cmath
import math

import numpy as np
import pytest

from digitgoldbach.characters import (
    DirichletCharacter,
    character_from_index,
    character_group,
    coefficient_c_chi,
    count_square_roots,
    fraction_pair_count,
    fraction_pair_sweep,
    gauss_sum,
    hensel_reduction_check,
    primitive_characters,
    square_root_bound,
    square_root_sweep,
    w_sum,
    w_sum_bound,
    w_sum_sweep,
    weil_sum_check,
    weil_sweep,
)
from digitgoldbach.config import ToolkitConfig
from digitgoldbach.errors import DigitGoldbachArgumentError, DigitGoldbachResourceError
from digitgoldbach.numtheory import divisors, euler_phi, mobius


def quadratic_character(p: int) -> DirichletCharacter:
    """Return the Legendre symbol modulo an odd prime p."""
    return next(chi for chi in character_group(p) if chi.order == 2)


class TestCharacterGroup:
    """Tests for the character group and its canonical order."""

    @pytest.mark.parametrize("q", [1, 2, 3, 4, 8, 9, 12, 15, 16, 24, 25, 36])
    def test_group_size(self, q: int) -> None:
        """Test that there are φ(q) characters."""
        assert len(character_group(q)) == euler_phi(q)

    def test_index_zero_is_principal(self) -> None:
        """Test that the first character is principal and indices run in order."""
        group = character_group(24)
        assert group[0].is_principal
        assert [chi.index for chi in group] == list(range(len(group)))

    @pytest.mark.parametrize("q", [5, 8, 12, 21])
    def test_orthogonality(self, q: int) -> None:
        """Test Σ_n χ(n) = φ(q)·[χ principal]."""
        for chi in character_group(q):
            total = complex(np.sum(chi.values()))
            expected = euler_phi(q) if chi.is_principal else 0
            assert abs(total - expected) < 1e-9

    def test_multiplicative(self) -> None:
        """Test χ(mn) = χ(m)χ(n) on units."""
        for chi in character_group(20):
            for m in (3, 7, 9):
                for n in (11, 13, 17):
                    assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12

    def test_non_units(self) -> None:
        """Test that χ vanishes off the units."""
        chi = character_group(12)[3]
        assert chi.exponent(6) is None
        assert chi(6) == 0j

    def test_real_character_modulo_four(self) -> None:
        """Test the nontrivial character modulo 4."""
        chi = character_group(4)[1]
        assert chi(1) == pytest.approx(1)
        assert chi(3) == pytest.approx(-1)

    @pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 8, 9, 12, 15, 16, 27, 40])
    def test_primitive_count(self, q: int) -> None:
        """Test the number of primitive characters against Σ_{d|q} μ(q/d)φ(d)."""
        expected = sum(mobius(q // d) * euler_phi(d) for d in divisors(q))
        assert len(primitive_characters(q)) == expected

    def test_conductor_induces(self) -> None:
        """Test that each character agrees on units with its primitive inducer."""
        q = 24
        for chi in character_group(q):
            d = chi.conductor
            assert q % d == 0
            units = [n for n in range(1, q) if math.gcd(n, q) == 1]
            assert any(
                all(psi.exponent(n) == chi.exponent(n) for n in units)
                for psi in primitive_characters(d)
            )

    def test_order(self) -> None:
        """Test that χ^order is principal."""
        for chi in character_group(16):
            assert all(abs(chi(n) ** chi.order - 1) < 1e-9 for n in (3, 5, 7))

    def test_exponent_validation(self) -> None:
        """Test that malformed exponent tuples are rejected."""
        with pytest.raises(ValueError, match="needs 1 exponents"):
            DirichletCharacter(modulus=5, exponents=())
        with pytest.raises(ValueError, match="outside"):
            DirichletCharacter(modulus=5, exponents=(4,))

    def test_invalid_modulus(self) -> None:
        """Test that q < 1 is rejected."""
        with pytest.raises(
            DigitGoldbachArgumentError, match="modulus must be positive"
        ):
            character_group(0)

    def test_modulus_cap(self) -> None:
        """Test the max_character_modulus cap."""
        with pytest.raises(DigitGoldbachResourceError):
            character_group(50, ToolkitConfig(max_character_modulus=40))

    def test_from_index(self) -> None:
        """Test lookup by index and its range check."""
        assert character_from_index(7, 2) == character_group(7)[2]
        with pytest.raises(DigitGoldbachArgumentError, match="has 6 characters"):
            character_from_index(7, 6)


class TestGaussSum:
    """Tests for gauss_sum and coefficient_c_chi."""

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9, 11, 16, 25])
    def test_primitive_modulus(self, q: int) -> None:
        """Test |τ(χ)| = √q for primitive χ."""
        for chi in primitive_characters(q):
            assert abs(gauss_sum(chi)) == pytest.approx(math.sqrt(q))

    def test_quadratic_modulo_three(self) -> None:
        """Test τ = i√3 for the character modulo 3."""
        assert abs(gauss_sum(character_group(3)[1]) - 1j * math.sqrt(3)) < 1e-12

    def test_coefficient_at_modulus(self) -> None:
        """Test |c_χ(b, q)| = √q/φ(q)."""
        chi = primitive_characters(7)[0]
        value = coefficient_c_chi(chi, 3, 7)
        assert abs(value) == pytest.approx(math.sqrt(7) / 6)
        assert value == pytest.approx(chi(3) * gauss_sum(chi).conjugate() / 6)

    def test_coefficient_vanishes(self) -> None:
        """Test c_χ(b, r) = 0 when q ∤ r or r/q is not squarefree."""
        chi = primitive_characters(3)[0]
        assert coefficient_c_chi(chi, 1, 10) == 0j
        assert coefficient_c_chi(chi, 1, 12) == 0j

    def test_coefficient_errors(self) -> None:
        """Test the argument checks."""
        chi = primitive_characters(5)[0]
        with pytest.raises(DigitGoldbachArgumentError, match="r must be positive"):
            coefficient_c_chi(chi, 1, 0)
        with pytest.raises(DigitGoldbachArgumentError, match="primitive"):
            coefficient_c_chi(character_group(10)[0], 1, 10)
        with pytest.raises(DigitGoldbachArgumentError, match="coprime"):
            coefficient_c_chi(chi, 2, 10)


class TestWSum:
    """Tests for w_sum and its bound."""

    def test_example(self) -> None:
        """Test W = −1/3 for χ₁ = χ₂ modulo 3 and T = 1."""
        chi = character_group(3)[1]
        result = w_sum(chi, chi, 0, 0, 1)
        assert result.value == pytest.approx(-1 / 3)
        assert result.bound == pytest.approx(4 / math.sqrt(3))
        assert result.bound_satisfied is True

    def test_matches_definition(self) -> None:
        """Test against a direct evaluation of the sum."""
        chi1 = primitive_characters(25)[3]
        chi2 = primitive_characters(5)[1]
        b1, b2, T = 7, 2, 3
        expected = sum(
            chi1(5 * t + b1) * chi2(t + b2) * cmath.exp(2j * math.pi * T * t / 5)
            for t in range(5)
        ) / 5
        assert abs(w_sum(chi1, chi2, b1, b2, T).value - expected) < 1e-12

    def test_bound_cases(self) -> None:
        """Test when the bound applies."""
        assert w_sum_bound(5, 1, 1, 0) is None
        assert w_sum_bound(5, 1, 1, 10) is None
        assert w_sum_bound(5, 1, 1, 3) == pytest.approx(4 / math.sqrt(5))
        assert w_sum_bound(3, 2, 2, 1) == pytest.approx(1.0)
        assert w_sum_bound(101, 4, 4, 1) == pytest.approx(32 / 101)

    def test_no_bound(self) -> None:
        """Test that T = 0 reports no bound."""
        chi = primitive_characters(5)[0]
        result = w_sum(chi, chi, 1, 1, 0)
        assert result.bound is None
        assert result.bound_satisfied is None

    def test_mismatched_moduli(self) -> None:
        """Test that moduli must be powers of one prime."""
        with pytest.raises(DigitGoldbachArgumentError, match="moduli must be"):
            w_sum(primitive_characters(5)[0], primitive_characters(7)[0], 0, 0, 1)
        with pytest.raises(DigitGoldbachArgumentError, match="moduli must be"):
            w_sum(primitive_characters(3)[0], primitive_characters(9)[0], 0, 0, 1)

    def test_sweep(self) -> None:
        """Test a small sweep and its independence of the thread count."""
        single = w_sum_sweep([3], max_a1=2)
        assert single.passed
        assert single.checked > 0
        assert w_sum_sweep([3], max_a1=2, threads=3) == single


class TestWeil:
    """Tests for weil_sum_check and weil_sweep."""

    def test_linear(self) -> None:
        """Test Σ χ(x) = 0 against the bound 0."""
        check = weil_sum_check(7, (0, 1), primitive_characters(7)[0])
        assert abs(check.value) < 1e-9
        assert check.distinct_roots == 1
        assert check.applicable
        assert check.satisfied is True

    def test_quadratic_shift(self) -> None:
        """Test Σ (x² + 1 / p) = −1 with roots outside F_7."""
        check = weil_sum_check(7, (1, 0, 1), quadratic_character(7))
        assert check.value == pytest.approx(-1)
        assert check.distinct_roots == 2
        assert check.roots_in_field == 0
        assert check.bound == pytest.approx(math.sqrt(7))
        assert check.satisfied is True

    def test_perfect_power(self) -> None:
        """Test that f = x² is exempt for the quadratic character."""
        check = weil_sum_check(7, (0, 0, 1), quadratic_character(7))
        assert not check.applicable
        assert check.satisfied is None
        assert check.value == pytest.approx(6)

    def test_errors(self) -> None:
        """Test the argument checks."""
        with pytest.raises(DigitGoldbachArgumentError, match="p must be prime"):
            weil_sum_check(9, (0, 1), primitive_characters(9)[0])
        with pytest.raises(DigitGoldbachArgumentError, match="nontrivial"):
            weil_sum_check(7, (0, 1), character_group(7)[0])
        with pytest.raises(DigitGoldbachArgumentError, match="vanishes"):
            weil_sum_check(7, (7, 14), quadratic_character(7))

    def test_degree_cap(self) -> None:
        """Test the max_polynomial_degree cap."""
        with pytest.raises(DigitGoldbachResourceError):
            weil_sum_check(
                5,
                (1, 0, 0, 1),
                quadratic_character(5),
                ToolkitConfig(max_polynomial_degree=2),
            )

    def test_sweep(self) -> None:
        """Test a small sweep and its independence of the thread count."""
        single = weil_sweep([3, 5], max_degree=2)
        assert single.passed
        assert single.applicable <= single.checked
        assert weil_sweep([3, 5], max_degree=2, threads=2) == single


class TestHensel:
    """Tests for hensel_reduction_check."""

    @pytest.mark.parametrize("p", [3, 5])
    def test_even_exponent(self, p: int) -> None:
        """Test agreement for q = p² and every character."""
        for chi in character_group(p * p):
            check = hensel_reduction_check(p, 1, (2, 1, 1), (0, 1, 0, 1), chi, 3)
            assert check.match, chi.index

    def test_odd_exponent(self) -> None:
        """Test agreement for q = 5³."""
        for chi in primitive_characters(125)[:12]:
            check = hensel_reduction_check(5, 1, (1, 3), (0, 0, 1), chi, 2)
            assert check.match, chi.index
            assert abs(check.lhs - check.rhs) <= 1e-8

    def test_principal_parameter(self) -> None:
        """Test that the principal character has b = 0."""
        check = hensel_reduction_check(3, 1, (1, 1), (0, 1), character_group(9)[0], 1)
        assert check.b == 0
        assert check.match

    def test_errors(self) -> None:
        """Test the argument checks."""
        chi = character_group(9)[1]
        with pytest.raises(DigitGoldbachArgumentError, match="odd prime"):
            hensel_reduction_check(2, 1, (1, 1), (0, 1), character_group(4)[1], 1)
        with pytest.raises(DigitGoldbachArgumentError, match="alpha"):
            hensel_reduction_check(3, 0, (1, 1), (0, 1), chi, 1)
        with pytest.raises(DigitGoldbachArgumentError, match="character modulus"):
            hensel_reduction_check(5, 1, (1, 1), (0, 1), chi, 1)


class TestCounting:
    """Tests for square-root and fraction-pair counts."""

    def test_square_roots_of_zero(self) -> None:
        """Test x² ≡ 0 mod 9 has three solutions."""
        check = count_square_roots(0, 3, 2)
        assert check.count == 3
        assert check.bound == 6
        assert check.satisfied

    def test_square_roots_modulo_eight(self) -> None:
        """Test that 1 has four square roots modulo 8."""
        check = count_square_roots(1, 2, 3)
        assert check.count == 4
        assert check.bound == square_root_bound(2, 3) == 8

    def test_square_root_errors(self) -> None:
        """Test the argument checks."""
        with pytest.raises(DigitGoldbachArgumentError, match="p must be prime"):
            count_square_roots(1, 4, 2)
        with pytest.raises(DigitGoldbachArgumentError, match="k must be"):
            count_square_roots(1, 3, 0)
        with pytest.raises(DigitGoldbachResourceError):
            count_square_roots(1, 3, 5, ToolkitConfig(max_prime_power=100))

    def test_square_root_sweep(self) -> None:
        """Test the bound over all residues modulo prime powers up to 300."""
        summary = square_root_sweep([2, 3, 5, 7], 300)
        assert summary.passed
        assert summary.checked == sum(
            p**k for p in (2, 3, 5, 7) for k in range(1, 10) if p**k <= 300
        )

    def test_fraction_pairs(self) -> None:
        """Test the basic count and the unit vanishing case."""
        assert fraction_pair_count(2, 1, 1, 0).count == 2
        check = fraction_pair_count(3, 1, 2, 3, units_only=True)
        assert check.count == 0
        assert check.satisfied

    def test_fraction_pair_errors(self) -> None:
        """Test that a1 ≤ a2 is required."""
        with pytest.raises(DigitGoldbachArgumentError, match="a1 <= a2"):
            fraction_pair_count(3, 2, 1, 0)

    def test_fraction_pair_sweep(self) -> None:
        """Test the sweep over small prime powers."""
        summary = fraction_pair_sweep([2, 3], 3)
        assert summary.passed
        assert summary.name == "fraction_pairs"
