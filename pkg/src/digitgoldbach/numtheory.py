"""
Arithmetic base layer.

Sieved tables of the smallest prime factor, μ, φ, τ and Λ, plus scalar
helpers (Ramanujan sums, p-adic valuations, factorization) used by every
other module.
"""

from __future__ import annotations

import cmath
import logging
import math
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from sympy import factorint, isprime

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import DigitGoldbachArgumentError


logger = logging.getLogger("digitgoldbach")


@dataclass(frozen=True)
class ArithmeticTables:
    """
    Multiplicative-function tables on [0, limit].

    Arrays have length limit + 1 and are indexed by n; entries at 0 (and at
    1 for the smallest prime factor) are conventional. Arrays are marked
    read-only after construction.

    Attributes:
        limit: Largest tabulated n.
        smallest_prime_factor: spf[n] for n ≥ 2, 0 below.
        mobius: μ(n).
        euler_phi: φ(n).
        divisor_count: τ(n).
        von_mangoldt: Λ(n) in natural-log weights.
    """

    limit: int
    smallest_prime_factor: npt.NDArray[np.int64]
    mobius: npt.NDArray[np.int8]
    euler_phi: npt.NDArray[np.int64]
    divisor_count: npt.NDArray[np.int64]
    von_mangoldt: npt.NDArray[np.float64]

    @property
    def primes(self) -> npt.NDArray[np.int64]:
        """Return the primes up to limit."""
        n = np.arange(self.limit + 1)
        return n[(self.smallest_prime_factor == n) & (n >= 2)]

    def factorize(self, n: int) -> dict[int, int]:
        """
        Factor n ≤ limit using the smallest-prime-factor table.

        Args:
            n: Integer in [1, limit].

        Returns:
            A mapping prime → exponent.
        """
        if not 1 <= n <= self.limit:
            raise DigitGoldbachArgumentError(
                f"n must lie in [1, {self.limit}]", field="n", value=n
            )
        factors: dict[int, int] = {}
        while n > 1:
            p = int(self.smallest_prime_factor[n])
            factors[p] = factors.get(p, 0) + 1
            n //= p
        return factors


def build_tables(
    limit: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> ArithmeticTables:
    """
    Sieve the arithmetic tables up to limit.

    Args:
        limit: Largest tabulated n (≥ 2).
        config: Supplies the max_table_limit cap.

    Returns:
        Immutable ArithmeticTables.

    Raises:
        DigitGoldbachArgumentError: If limit < 2.
        DigitGoldbachResourceError: If limit exceeds the cap.

    Example:
        >>> tables = build_tables(10)
        >>> tables.mobius[1:].tolist()
        [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    """
    if limit < 2:
        raise DigitGoldbachArgumentError(
            "limit must be at least 2", field="limit", value=limit
        )
    config.require("max_table_limit", limit, "table limit")

    started = time.perf_counter()
    size = limit + 1
    spf = np.zeros(size, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            multiples = spf[p * p :: p]
            multiples[multiples == 0] = p
    index = np.arange(size, dtype=np.int64)
    unmarked = (spf == 0) & (index >= 2)
    spf[unmarked] = index[unmarked]
    primes = index[(spf == index) & (index >= 2)]

    mobius = np.ones(size, dtype=np.int8)
    phi = index.copy()
    tau = np.ones(size, dtype=np.int64)
    vm = np.zeros(size, dtype=np.float64)
    mobius[0] = 0
    for p in primes.tolist():
        mobius[p::p] *= -1
        if p * p <= limit:
            mobius[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p
        log_p = math.log(p)
        power, e = p, 1
        while power <= limit:
            vm[power] = log_p
            # τ already carries a factor e for p; replace it by e + 1
            tau[power::power] = tau[power::power] // e * (e + 1)
            power *= p
            e += 1

    for array in (spf, mobius, phi, tau, vm):
        array.flags.writeable = False
    logger.debug(
        "Built arithmetic tables to %d in %.3fs", limit, time.perf_counter() - started
    )
    return ArithmeticTables(
        limit=limit,
        smallest_prime_factor=spf,
        mobius=mobius,
        euler_phi=phi,
        divisor_count=tau,
        von_mangoldt=vm,
    )


@lru_cache(maxsize=4)
def get_tables(limit: int) -> ArithmeticTables:
    """Return cached tables for limit (built with the default caps)."""
    return build_tables(limit)


def chebyshev_psi(x: int, tables: ArithmeticTables) -> float:
    """Return ψ(x) = Σ_{n≤x} Λ(n) from the tables."""
    return float(np.sum(tables.von_mangoldt[: x + 1]))


# -----------------------------------------------------------------------------
# Scalar helpers
# -----------------------------------------------------------------------------


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Return the prime factorization of n ≥ 1 as sorted (p, e) pairs."""
    if n < 1:
        raise DigitGoldbachArgumentError("n must be positive", field="n", value=n)
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def mobius(n: int) -> int:
    """Return μ(n)."""
    factors = factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(n: int) -> int:
    """Return φ(n)."""
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    """Return the divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=65536)
def ramanujan_sum(q: int, n: int) -> int:
    """
    Return c_q(n) = Σ_{a ∈ (Z/q)*} e(an/q) via the closed form.

    The closed form is μ(q/(q,n))·φ(q)/φ(q/(q,n)); it is an integer.

    Args:
        q: Positive modulus.
        n: Any integer.

    Returns:
        c_q(n).

    Example:
        >>> ramanujan_sum(4, 2)
        -2
    """
    if q < 1:
        raise DigitGoldbachArgumentError("q must be positive", field="q", value=q)
    reduced = q // math.gcd(q, n)
    return mobius(reduced) * euler_phi(q) // euler_phi(reduced)


def ramanujan_sum_direct(q: int, n: int) -> complex:
    """Return c_q(n) by direct exponential summation (oracle)."""
    total = 0j
    for a in range(q):
        if math.gcd(a, q) == 1:
            total += cmath.exp(2j * math.pi * ((a * n) % q) / q)
    return total


def p_adic_valuation(x: int, p: int) -> int:
    """
    Return the largest e with p^e | x.

    Args:
        x: Positive integer.
        p: Prime.

    Returns:
        v_p(x).

    Raises:
        DigitGoldbachArgumentError: If p is not prime or x < 1.

    Example:
        >>> p_adic_valuation(12, 2)
        2
    """
    if not isprime(p):
        raise DigitGoldbachArgumentError("p must be prime", field="p", value=p)
    if x < 1:
        raise DigitGoldbachArgumentError("x must be positive", field="x", value=x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e
