"""
Dirichlet characters encoded by generator exponents.

(Z/q)* is split over the prime powers p^a ‖ q. Each factor gets a fixed
generating set:

- odd p: the least primitive root of p, lifted to a primitive root of p^a
- p = 2, a = 2: −1
- p = 2, a ≥ 3: −1 (order 2) and 5 (order 2^{a−2})

A character is the tuple of its exponents k_i on these generators, so that
χ(h_i) = e(k_i/n_i). Characters are enumerated in itertools.product order
over the exponent ranges, prime powers ascending; the position in that
order is the character index used by zero files.
"""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from pydantic import Field, model_validator
from sympy import primitive_root

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import DigitGoldbachArgumentError
from digitgoldbach.models import DigitGoldbachBaseModel
from digitgoldbach.numtheory import euler_phi, factorize, mobius, p_adic_valuation


logger = logging.getLogger("digitgoldbach")


# -----------------------------------------------------------------------------
# Generators and discrete logarithms
# -----------------------------------------------------------------------------


@lru_cache(maxsize=1024)
def _generators(p: int, a: int) -> tuple[tuple[int, int], ...]:
    """Return (generator, order) pairs for (Z/p^a)*."""
    if p == 2:
        if a == 1:
            return ()
        if a == 2:
            return ((3, 2),)
        return ((2**a - 1, 2), (5, 2 ** (a - 2)))
    root = int(primitive_root(p))
    if a > 1 and pow(root, p - 1, p * p) == 1:
        root += p
    return ((root, (p - 1) * p ** (a - 1)),)


@lru_cache(maxsize=1024)
def _discrete_logs(p: int, a: int) -> tuple[npt.NDArray[np.int64], ...]:
    """
    Return one log table per generator of (Z/p^a)*.

    Entry n of table i is the exponent of generator i in n, or −1 when n is
    not a unit.
    """
    pa = p**a
    gens = _generators(p, a)
    tables = [np.full(pa, -1, dtype=np.int64) for _ in gens]
    if p == 2 and a >= 3:
        value = 1
        for e in range(gens[1][1]):
            tables[0][value], tables[1][value] = 0, e
            tables[0][pa - value], tables[1][pa - value] = 1, e
            value = value * 5 % pa
    elif gens:
        root, order = gens[0]
        value = 1
        for e in range(order):
            tables[0][value] = e
            value = value * root % pa
    for table in tables:
        table.flags.writeable = False
    return tuple(tables)


@lru_cache(maxsize=1024)
def _layout(q: int) -> tuple[tuple[int, int, int, int], ...]:
    """Return (p, a, generator slot, order) for every generator of (Z/q)*."""
    slots = []
    for p, a in factorize(q) if q > 1 else ():
        for i, (_, order) in enumerate(_generators(p, a)):
            slots.append((p, a, i, order))
    return tuple(slots)


def _component_conductor(p: int, a: int, exps: tuple[int, ...]) -> int:
    if p == 2:
        if a == 1:
            return 1
        if a == 2:
            return 4 if exps[0] else 1
        e1, e2 = exps
        if e2:
            return 2 ** (a - p_adic_valuation(e2, 2))
        return 4 if e1 else 1
    (k,) = exps
    if k == 0:
        return 1
    return p ** (a - min(p_adic_valuation(k, p), a - 1))


class DirichletCharacter(DigitGoldbachBaseModel):
    """
    A Dirichlet character modulo q, stored as generator exponents.

    Exact comparisons go through exponent(); complex values are derived.

    Example:
        >>> chi = character_group(3)[1]
        >>> round(chi(2).real)
        -1
    """

    modulus: int = Field(..., ge=1, description="Modulus q")
    exponents: tuple[int, ...] = Field(default=(), description="Exponent per generator")
    index: int = Field(default=0, ge=0, description="Position in character_group(q)")

    @model_validator(mode="after")
    def _check_exponents(self) -> "DirichletCharacter":
        layout = _layout(self.modulus)
        if len(layout) != len(self.exponents):
            raise ValueError(f"modulus {self.modulus} needs {len(layout)} exponents")
        for (_, _, _, order), k in zip(layout, self.exponents):
            if not 0 <= k < order:
                raise ValueError(f"exponent {k} outside [0, {order})")
        return self

    def _components(self) -> list[tuple[int, int, tuple[int, ...]]]:
        grouped: dict[tuple[int, int], list[int]] = {}
        for (p, a, _, _), k in zip(_layout(self.modulus), self.exponents):
            grouped.setdefault((p, a), []).append(k)
        if self.modulus > 1:
            for p, a in factorize(self.modulus):
                grouped.setdefault((p, a), [])
        return [(p, a, tuple(ks)) for (p, a), ks in sorted(grouped.items())]

    def exponent(self, n: int) -> Fraction | None:
        """Return x ∈ [0, 1) with χ(n) = e(x), or None when gcd(n, q) > 1."""
        if math.gcd(n, self.modulus) != 1:
            return None
        total = Fraction(0)
        for (p, a, slot, order), k in zip(_layout(self.modulus), self.exponents):
            log = int(_discrete_logs(p, a)[slot][n % p**a])
            total += Fraction(k * log, order)
        return total - math.floor(total)

    def __call__(self, n: int) -> complex:
        x = self.exponent(n)
        if x is None:
            return 0j
        return cmath.exp(2j * math.pi * x)

    def values(self) -> npt.NDArray[np.complex128]:
        """Return the array of χ(n) for n ∈ [0, q)."""
        return _character_values(self.modulus, self.exponents)

    @property
    def order(self) -> int:
        """Return the order of χ in the character group."""
        result = 1
        for (_, _, _, n), k in zip(_layout(self.modulus), self.exponents):
            result = math.lcm(result, n // math.gcd(k, n))
        return result

    @property
    def is_principal(self) -> bool:
        """Return True for the principal character."""
        return not any(self.exponents)

    @property
    def conductor(self) -> int:
        """Return the modulus of the primitive character inducing χ."""
        return math.prod(
            _component_conductor(p, a, ks) for p, a, ks in self._components()
        )

    @property
    def primitive(self) -> bool:
        """Return True when the conductor equals the modulus."""
        return self.conductor == self.modulus


@lru_cache(maxsize=4096)
def _character_values(q: int, exponents: tuple[int, ...]) -> npt.NDArray[np.complex128]:
    n = np.arange(q, dtype=np.int64)
    phase = np.zeros(q, dtype=np.float64)
    unit = np.gcd(n, q) == 1
    for (p, a, slot, order), k in zip(_layout(q), exponents):
        logs = _discrete_logs(p, a)[slot][n % p**a]
        phase += (k * logs % order) / order
    values = np.where(unit, np.exp(2j * math.pi * phase), 0j)
    values.flags.writeable = False
    return values


# -----------------------------------------------------------------------------
# Groups and lookups
# -----------------------------------------------------------------------------


@lru_cache(maxsize=256)
def _group(q: int) -> tuple[DirichletCharacter, ...]:
    ranges = [range(order) for _, _, _, order in _layout(q)]
    group = tuple(
        DirichletCharacter(modulus=q, exponents=tuple(exps), index=i)
        for i, exps in enumerate(itertools.product(*ranges))
    )
    logger.debug("Built %d characters modulo %d", len(group), q)
    return group


def character_group(
    q: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> list[DirichletCharacter]:
    """
    Return all φ(q) characters modulo q in canonical order.

    Args:
        q: Modulus (≥ 1).
        config: Supplies the max_character_modulus cap.

    Returns:
        The characters; index 0 is principal.

    Raises:
        DigitGoldbachArgumentError: If q < 1.
        DigitGoldbachResourceError: If q exceeds the cap.

    Example:
        >>> len(character_group(8))
        4
    """
    if q < 1:
        raise DigitGoldbachArgumentError("modulus must be positive", field="q", value=q)
    config.require("max_character_modulus", q, "character modulus")
    return list(_group(q))


def primitive_characters(
    q: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> list[DirichletCharacter]:
    """Return the primitive characters modulo q."""
    return [chi for chi in character_group(q, config) if chi.primitive]


def character_from_index(
    q: int, index: int, config: ToolkitConfig = DEFAULT_CONFIG
) -> DirichletCharacter:
    """Return character number index modulo q."""
    group = character_group(q, config)
    if not 0 <= index < len(group):
        raise DigitGoldbachArgumentError(
            f"modulus {q} has {len(group)} characters", field="index", value=index
        )
    return group[index]


# -----------------------------------------------------------------------------
# Gauss sums and approximant coefficients
# -----------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _gauss_sum(q: int, exponents: tuple[int, ...]) -> complex:
    n = np.arange(q, dtype=np.float64)
    return complex(
        np.sum(_character_values(q, exponents) * np.exp(2j * math.pi * n / q))
    )


def gauss_sum(chi: DirichletCharacter) -> complex:
    """
    Return τ(χ) = Σ_{b ∈ (Z/q)*} χ(b) e(b/q).

    For primitive χ, |τ(χ)| = √q.

    Example:
        >>> abs(gauss_sum(character_group(3)[1]) - 3**0.5 * 1j) < 1e-12
        True
    """
    return _gauss_sum(chi.modulus, chi.exponents)


def coefficient_c_chi(chi: DirichletCharacter, b: int, r: int) -> complex:
    """
    Return c_χ(b, r) = χ(b)μ(r/q)·conj(χ(r/q))·conj(τ(χ))/φ(r), or 0 if q ∤ r.

    Args:
        chi: Primitive character modulo q.
        b: Residue, coprime to r when q | r.
        r: Positive modulus.

    Returns:
        The coefficient.

    Raises:
        DigitGoldbachArgumentError: If r < 1, chi is not primitive, or
            gcd(b, r) > 1 while q | r.
    """
    if r < 1:
        raise DigitGoldbachArgumentError("r must be positive", field="r", value=r)
    if not chi.primitive:
        raise DigitGoldbachArgumentError(
            "c_chi needs a primitive character", field="chi", value=chi.index
        )
    q = chi.modulus
    if r % q:
        return 0j
    if math.gcd(b, r) != 1:
        raise DigitGoldbachArgumentError("b must be coprime to r", field="b", value=b)
    s = r // q
    mu = mobius(s)
    if mu == 0:
        return 0j
    return chi(b) * mu * chi(s).conjugate() * gauss_sum(chi).conjugate() / euler_phi(r)
