"""
Mixed character sums and the exhaustive checks of their bounds.

Polynomials are given as little-endian integer coefficient sequences:
(c_0, c_1, …) stands for c_0 + c_1 x + ….
"""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np
import numpy.typing as npt
from sympy import Poly, isprime, symbols

from digitgoldbach.characters.group import DirichletCharacter, primitive_characters
from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import (
    DigitGoldbachArgumentError,
    DigitGoldbachDiagnosticError,
)
from digitgoldbach.models import (
    CountCheck,
    HenselCheck,
    SweepSummary,
    WeilCheck,
    WSumResult,
)
from digitgoldbach.numtheory import factorize, p_adic_valuation
from digitgoldbach.utils import parallel_map


logger = logging.getLogger("digitgoldbach")

TOLERANCE = 1e-9
MATCH_TOLERANCE = 1e-8

_x = symbols("x")


def _e(x: float | Fraction) -> complex:
    return cmath.exp(2j * math.pi * float(x))


def _prime_power(q: int) -> tuple[int, int]:
    factors = factorize(q) if q > 1 else ()
    if len(factors) != 1:
        raise DigitGoldbachArgumentError(
            "modulus must be a prime power", field="q", value=q
        )
    return factors[0]


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


# -----------------------------------------------------------------------------
# W(b1, b2, T)
# -----------------------------------------------------------------------------


def w_sum_bound(p: int, a1: int, a2: int, T: int) -> float | None:
    """
    Return the bound on |W(b1, b2, T)| that applies to (p, a1, a2, T), if any.

    For a1 > 1 with α = ⌊a1/2⌋ and α + 2 > 2(a1 − a2) + v_p(T) the bound is
    min(1, 32·p^{−⌈(α − v_p(T))/2⌉ + (a1 − a2)}); for a1 = a2 = 1 with p ∤ T
    it is 4/√p. T = 0 never has a bound.
    """
    if T == 0:
        return None
    v = p_adic_valuation(abs(T), p)
    if a1 > 1:
        alpha = a1 // 2
        if alpha + 2 > 2 * (a1 - a2) + v:
            return min(1.0, 32.0 * float(p) ** (-_ceil_half(alpha - v) + (a1 - a2)))
        return None
    if a1 == a2 == 1 and v == 0:
        return 4.0 / math.sqrt(p)
    return None


def _w_terms(
    chi1: DirichletCharacter, chi2: DirichletCharacter, b1: int, b2: int
) -> tuple[int, int, int, npt.NDArray[np.complex128]]:
    p, a1 = _prime_power(chi1.modulus)
    p2, a2 = _prime_power(chi2.modulus)
    if p2 != p or a1 < a2:
        raise DigitGoldbachArgumentError(
            "moduli must be p^a1 and p^a2 with a1 >= a2",
            field="chi2",
            value=(chi1.modulus, chi2.modulus),
        )
    if not (chi1.primitive and chi2.primitive):
        raise DigitGoldbachArgumentError(
            "w_sum needs primitive characters",
            field="chi",
            value=(chi1.index, chi2.index),
        )
    q1, q2 = chi1.modulus, chi2.modulus
    t = np.arange(q2, dtype=np.int64)
    u = chi1.values()[(p ** (a1 - a2) * t + b1) % q1] * chi2.values()[(t + b2) % q2]
    return p, a1, a2, u


def w_sum(
    chi1: DirichletCharacter, chi2: DirichletCharacter, b1: int, b2: int, T: int
) -> WSumResult:
    """
    Return W = p^{−a2} Σ_{t mod p^{a2}} χ₁(p^{a1−a2}t + b₁) χ₂(t + b₂) e(Tt/p^{a2}).

    Args:
        chi1: Primitive character modulo p^{a1}.
        chi2: Primitive character modulo p^{a2}, a2 ≤ a1.
        b1: Shift of the first argument.
        b2: Shift of the second argument.
        T: Frequency.

    Returns:
        WSumResult; bound and bound_satisfied are None when no bound applies.

    Raises:
        DigitGoldbachArgumentError: For non-primitive characters or moduli
            that are not powers of one prime with a1 ≥ a2.

    Example:
        >>> from digitgoldbach.characters.group import character_group
        >>> chi = character_group(3)[1]
        >>> round(w_sum(chi, chi, 0, 0, 1).value_real, 12)
        -0.333333333333
    """
    p, a1, a2, u = _w_terms(chi1, chi2, b1, b2)
    q2 = p**a2
    t = np.arange(q2, dtype=np.float64)
    value = complex(np.sum(u * np.exp(2j * math.pi * ((T % q2) * t) / q2)) / q2)
    bound = w_sum_bound(p, a1, a2, T)
    return WSumResult(
        value_real=value.real,
        value_imag=value.imag,
        bound=bound,
        bound_satisfied=None if bound is None else abs(value) <= bound + TOLERANCE,
    )


def _w_sweep_case(
    case: tuple[int, int, int, DirichletCharacter, DirichletCharacter],
) -> tuple[int, int, list[str]]:
    p, a1, a2, chi1, chi2 = case
    q1, q2 = p**a1, p**a2
    # residue 0 is represented by T = p^{a2}, the smallest positive member
    bounds = [w_sum_bound(p, a1, a2, T if T else q2) for T in range(q2)]
    checked = applicable = 0
    failures: list[str] = []
    for b1 in range(q1):
        for b2 in range(q2):
            _, _, _, u = _w_terms(chi1, chi2, b1, b2)
            values = np.abs(np.fft.ifft(u))
            checked += q2
            for T, bound in enumerate(bounds):
                if bound is None:
                    continue
                applicable += 1
                if values[T] > bound + TOLERANCE:
                    failures.append(
                        f"p={p} a1={a1} a2={a2} chi1={chi1.index} chi2={chi2.index} "
                        f"b1={b1} b2={b2} T={T}"
                    )
    return checked, applicable, failures


def w_sum_sweep(
    primes: Iterable[int],
    max_a1: int,
    max_a2: int | None = None,
    threads: int = 1,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> SweepSummary:
    """
    Check the W bound over all primitive pairs and all (b1, b2, T) residues.

    Args:
        primes: Primes p to sweep.
        max_a1: Largest a1.
        max_a2: Largest a2 (defaults to max_a1).
        threads: Worker threads; the summary does not depend on them.
        config: Supplies the character modulus cap.

    Returns:
        SweepSummary named "w_sum".
    """
    cases = []
    for p in primes:
        for a1 in range(1, max_a1 + 1):
            for a2 in range(1, min(a1, max_a2 or max_a1) + 1):
                for chi1 in primitive_characters(p**a1, config):
                    for chi2 in primitive_characters(p**a2, config):
                        cases.append((p, a1, a2, chi1, chi2))
    logger.info("w_sum sweep over %d character pairs", len(cases))
    results = parallel_map(_w_sweep_case, cases, threads)
    return SweepSummary(
        name="w_sum",
        checked=sum(r[0] for r in results),
        applicable=sum(r[1] for r in results),
        failures=tuple(f for r in results for f in r[2]),
    )


# -----------------------------------------------------------------------------
# Weil bound
# -----------------------------------------------------------------------------


def _trim(coeffs: Sequence[int], modulus: int) -> list[int]:
    reduced = [c % modulus for c in coeffs]
    while reduced and reduced[-1] == 0:
        reduced.pop()
    return reduced


def _poly_values(
    coeffs: Sequence[int], y: npt.NDArray[np.int64], modulus: int
) -> npt.NDArray[np.int64]:
    """Horner evaluation of a polynomial at every y, reduced mod modulus."""
    result = np.zeros(y.shape, dtype=np.int64)
    for c in reversed(coeffs):
        result = (result * y + c) % modulus
    return result


def weil_sum_check(
    p: int,
    f: Sequence[int],
    chi: DirichletCharacter,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> WeilCheck:
    """
    Compare Σ_{x ∈ F_p} χ(f(x)) with (m − 1)√p.

    m counts the distinct roots of f over the algebraic closure of F_p,
    read off the squarefree factorization. The bound is checked only when f
    is not a constant times a d-th power, d the order of χ.

    Args:
        p: Prime.
        f: Little-endian coefficients.
        chi: Nontrivial character modulo p.
        config: Supplies the max_polynomial_degree cap.

    Returns:
        WeilCheck.

    Raises:
        DigitGoldbachArgumentError: For composite p, a character of another
            modulus or the principal character, or f ≡ 0 mod p.
    """
    if not isprime(p):
        raise DigitGoldbachArgumentError("p must be prime", field="p", value=p)
    if chi.modulus != p or chi.is_principal:
        raise DigitGoldbachArgumentError(
            "need a nontrivial character modulo p", field="chi", value=chi.modulus
        )
    coeffs = _trim(f, p)
    if not coeffs:
        raise DigitGoldbachArgumentError(
            "f vanishes modulo p", field="f", value=tuple(f)
        )
    degree = len(coeffs) - 1
    config.require("max_polynomial_degree", degree, "polynomial degree")

    x = np.arange(p, dtype=np.int64)
    total = complex(np.sum(chi.values()[_poly_values(coeffs, x, p)]))

    _, factors = Poly(list(reversed(coeffs)), _x, modulus=p).factor_list()
    distinct = sum(int(factor.degree()) for factor, _ in factors)
    in_field = sum(1 for factor, _ in factors if factor.degree() == 1)
    d = chi.order
    applicable = degree >= 1 and not all(mult % d == 0 for _, mult in factors)
    bound = (distinct - 1) * math.sqrt(p) if distinct else 0.0
    return WeilCheck(
        sum_real=total.real,
        sum_imag=total.imag,
        bound=bound,
        distinct_roots=distinct,
        roots_in_field=in_field,
        applicable=applicable,
        satisfied=abs(total) <= bound + TOLERANCE if applicable else None,
    )


def weil_sweep(
    primes: Iterable[int],
    max_degree: int,
    threads: int = 1,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> SweepSummary:
    """
    Check the Weil bound for every monic f of degree 1..max_degree.

    Monic polynomials suffice: scaling f by c multiplies the sum by χ(c).
    """

    def run(case: tuple[int, DirichletCharacter, tuple[int, ...]]) -> WeilCheck:
        p, chi, coeffs = case
        return weil_sum_check(p, coeffs, chi, config)

    cases = []
    for p in primes:
        nontrivial = [
            chi for chi in primitive_characters(p, config) if not chi.is_principal
        ]
        for degree in range(1, max_degree + 1):
            for lower in itertools.product(range(p), repeat=degree):
                for chi in nontrivial:
                    cases.append((p, chi, lower + (1,)))
    results = parallel_map(run, cases, threads)
    failures = tuple(
        f"p={p} chi={chi.index} f={coeffs}"
        for (p, chi, coeffs), check in zip(cases, results)
        if check.satisfied is False
    )
    return SweepSummary(
        name="weil",
        checked=len(results),
        applicable=sum(1 for check in results if check.applicable),
        failures=failures,
    )


# -----------------------------------------------------------------------------
# Hensel reduction
# -----------------------------------------------------------------------------


def _evaluate(coeffs: Sequence[int], y: int) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * y + c
    return total


def _derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _second_taylor(coeffs: Sequence[int]) -> list[int]:
    """Coefficients of f''/2, which are integers."""
    return [math.comb(i, 2) * c for i, c in enumerate(coeffs)][2:]


def _solve_even_b(chi: DirichletCharacter, P: int) -> int:
    """Find b mod P with χ(1 + zP) = e(bz/P) for every z."""
    x = chi.exponent(1 + P)
    assert x is not None
    b = int(x * P)
    for z in range(P):
        additive = chi.exponent(1 + z * P) == Fraction(b * z % P, P)
        if (x * P).denominator != 1 or not additive:
            raise DigitGoldbachDiagnosticError(
                f"character is not additive on 1 + {P}Z with parameter {b}"
            )
    return b


def _solve_odd_b(chi: DirichletCharacter, p: int, P: int) -> int:
    """Find b mod pP with χ(1 + wP) = e(bw/(pP) + ((p − 1)/2)·b·w²/p) for every w."""
    top = p * P
    half = (p - 1) // 2

    def form(b: int, w: int) -> Fraction:
        value = Fraction(b * w % top, top) + Fraction(half * b * w * w % p, p)
        return value - math.floor(value)

    targets = {w: chi.exponent(1 + w * P) for w in range(top)}
    candidates = [
        b for b in range(top) if all(form(b, w) == targets[w] for w in (1, 2))
    ]
    for b in candidates:
        if all(form(b, w) == targets[w] for w in range(top)):
            return b
    raise DigitGoldbachDiagnosticError(
        f"no parameter b reproduces the character on 1 + {P}Z modulo {chi.modulus}"
    )


def hensel_reduction_check(
    p: int,
    alpha: int,
    f: Sequence[int],
    g: Sequence[int],
    chi: DirichletCharacter,
    a: int,
) -> HenselCheck:
    """
    Evaluate Σ_{y ∈ Z/q} χ(f(y)) e(a g(y)/q) directly and after reduction.

    For q = p^{2α} the reduced side is
    p^α Σ_{y < p^α, p ∤ f(y), h(y) ≡ 0 (p^α)} χ(f(y)) e(a g(y)/q) with
    h = a g′ + b f′·f^{−1}. For q = p^{2α+1} the condition is taken modulo
    p^{α+1} and each surviving y carries the quadratic Gauss factor
    G_p(y) = Σ_{z ∈ F_p} e((d z² + (h/p^α) z)/p).

    Args:
        p: Odd prime.
        alpha: α ≥ 1.
        f: Little-endian coefficients of f.
        g: Little-endian coefficients of g.
        chi: Character of modulus p^{2α} or p^{2α+1}.
        a: Additive frequency.

    Returns:
        HenselCheck with both sides and the parameter b.

    Raises:
        DigitGoldbachArgumentError: For p = 2, composite p, α < 1 or a
            character of another modulus.
        DigitGoldbachDiagnosticError: If no parameter b reproduces χ.
    """
    if p == 2 or not isprime(p):
        raise DigitGoldbachArgumentError("p must be an odd prime", field="p", value=p)
    if alpha < 1:
        raise DigitGoldbachArgumentError(
            "alpha must be at least 1", field="alpha", value=alpha
        )
    q = chi.modulus
    if q not in (p ** (2 * alpha), p ** (2 * alpha + 1)):
        raise DigitGoldbachArgumentError(
            "character modulus must be p^(2 alpha) or p^(2 alpha + 1)",
            field="chi",
            value=q,
        )
    P = p**alpha
    values = chi.values()
    y = np.arange(q, dtype=np.int64)
    phases = np.exp(2j * math.pi * (a * _poly_values(g, y, q) % q) / q)
    lhs = complex(np.sum(values[_poly_values(f, y, q)] * phases))

    df, dg = _derivative(f), _derivative(g)
    rhs = 0j
    if q == P * P:
        b = _solve_even_b(chi, P)
        for y0 in range(P):
            fy = _evaluate(f, y0)
            if fy % p == 0:
                continue
            h = (a * _evaluate(dg, y0) + b * _evaluate(df, y0) * pow(fy, -1, P)) % P
            if h == 0:
                rhs += chi(fy) * _e(Fraction(a * _evaluate(g, y0) % q, q))
        rhs *= P
    else:
        b = _solve_odd_b(chi, p, P)
        top = p * P
        half = (p - 1) // 2
        f2, g2 = _second_taylor(f), _second_taylor(g)
        for y0 in range(P):
            fy = _evaluate(f, y0)
            if fy % p == 0:
                continue
            inverse = pow(fy, -1, top)
            u = _evaluate(df, y0) * inverse % top
            H = (a * _evaluate(dg, y0) + b * u) % top
            if H % P:
                continue
            linear = H // P
            d = (
                a * _evaluate(g2, y0)
                + b * _evaluate(f2, y0) * inverse
                + half * b * u * u
            ) % p
            gauss = sum(_e(Fraction((d * z * z + linear * z) % p, p)) for z in range(p))
            rhs += chi(fy) * _e(Fraction(a * _evaluate(g, y0) % q, q)) * gauss
        rhs *= P
    return HenselCheck(
        lhs_real=lhs.real,
        lhs_imag=lhs.imag,
        rhs_real=rhs.real,
        rhs_imag=rhs.imag,
        b=b,
        match=abs(lhs - rhs) <= MATCH_TOLERANCE,
    )


# -----------------------------------------------------------------------------
# Square roots and fraction pairs
# -----------------------------------------------------------------------------


def square_root_bound(p: int, k: int) -> int:
    """Return 2p^{k−⌈k/2⌉} for odd p and 4·2^{k−⌈k/2⌉} for p = 2."""
    base = 4 if p == 2 else 2
    return base * p ** (k - _ceil_half(k))


def count_square_roots(
    a: int, p: int, k: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> CountCheck:
    """
    Count x ∈ Z/p^k with x² ≡ a by exhaustive scan.

    Example:
        >>> count_square_roots(0, 3, 2).count
        3
    """
    if not isprime(p):
        raise DigitGoldbachArgumentError("p must be prime", field="p", value=p)
    if k < 1:
        raise DigitGoldbachArgumentError("k must be at least 1", field="k", value=k)
    q = p**k
    config.require("max_prime_power", q, "prime power")
    x = np.arange(q, dtype=np.int64)
    count = int(np.count_nonzero((x * x - a) % q == 0))
    bound = square_root_bound(p, k)
    return CountCheck(count=count, bound=bound, satisfied=count <= bound)


def square_root_sweep(
    primes: Iterable[int], max_power: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> SweepSummary:
    """Check every residue a modulo every p^k ≤ max_power."""
    checked = 0
    failures: list[str] = []
    for p in primes:
        k = 1
        while p**k <= max_power:
            q = p**k
            config.require("max_prime_power", q, "prime power")
            x = np.arange(q, dtype=np.int64)
            counts = np.bincount(x * x % q, minlength=q)
            bound = square_root_bound(p, k)
            checked += q
            failures.extend(
                f"a={a} p={p} k={k}" for a in np.nonzero(counts > bound)[0].tolist()
            )
            k += 1
    return SweepSummary(
        name="square_roots",
        checked=checked,
        applicable=checked,
        failures=tuple(failures),
    )


def fraction_pair_count(
    p: int,
    a1: int,
    a2: int,
    t: int,
    units_only: bool = False,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> CountCheck:
    """
    Count (b1, b2) ∈ Z/p^{a1} × Z/p^{a2} with b1/p^{a1} + b2/p^{a2} ≡ t/p^{a2} mod 1.

    The bound p^{a1} always applies; with units_only, a1 < a2 and p | t the
    count must also vanish.

    Example:
        >>> fraction_pair_count(2, 1, 1, 0).count
        2
    """
    if not 1 <= a1 <= a2:
        raise DigitGoldbachArgumentError(
            "require 1 <= a1 <= a2", field="a1", value=(a1, a2)
        )
    q1, q2 = p**a1, p**a2
    config.require("max_prime_power", q2, "prime power")
    b1 = np.arange(q1, dtype=np.int64)
    b2 = (t - b1 * (q2 // q1)) % q2
    keep = np.ones(q1, dtype=bool)
    if units_only:
        keep = (b1 % p != 0) & (b2 % p != 0)
    count = int(np.count_nonzero(keep))
    ok = count <= q1
    if units_only and a1 < a2 and t % p == 0:
        ok = ok and count == 0
    return CountCheck(count=count, bound=q1, satisfied=ok)


def fraction_pair_sweep(
    primes: Iterable[int], max_a2: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> SweepSummary:
    """Check both fraction-pair conclusions for every 1 ≤ a1 ≤ a2 ≤ max_a2 and t."""
    checked = 0
    failures: list[str] = []
    for p in primes:
        for a2 in range(1, max_a2 + 1):
            for a1 in range(1, a2 + 1):
                for t in range(p**a2):
                    for units_only in (False, True):
                        checked += 1
                        check = fraction_pair_count(p, a1, a2, t, units_only, config)
                        if not check.satisfied:
                            failures.append(
                                f"p={p} a1={a1} a2={a2} t={t} units={units_only}"
                            )
    return SweepSummary(
        name="fraction_pairs",
        checked=checked,
        applicable=checked,
        failures=tuple(failures),
    )
