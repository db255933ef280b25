"""
Fourier approximants of the von Mangoldt function.

Λ_Q(n) = Σ_{q ≤ Q} μ(q)/φ(q)·c_q(n) is the main approximant; each zero ρ
of L(s, χ_ρ) in the loaded zero set subtracts n^{ρ−1}·F_{χ_ρ,Q}(n). Zero
sets come from a CSV file and default to empty.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Sequence
from functools import lru_cache
from pathlib import Path

import numpy as np
import numpy.typing as npt

from digitgoldbach.characters import DirichletCharacter, character_group, gauss_sum
from digitgoldbach.config import DEFAULT_CONFIG, DEFAULT_SIGMA0, ToolkitConfig
from digitgoldbach.digits import restricted_mask
from digitgoldbach.errors import (
    DigitGoldbachArgumentError,
    DigitGoldbachDomainError,
    DigitGoldbachParseError,
)
from digitgoldbach.models import (
    DeviationPlan,
    DeviationScanResult,
    DigitSystem,
    RejectedRow,
    ZeroDatum,
    ZeroSet,
)
from digitgoldbach.numtheory import build_tables, euler_phi, mobius, ramanujan_sum
from digitgoldbach.utils import iter_csv_rows, parallel_map


logger = logging.getLogger("digitgoldbach")

ZERO_COLUMNS = ("beta", "gamma", "modulus", "char_index", "multiplicity")


# -----------------------------------------------------------------------------
# Zero sets
# -----------------------------------------------------------------------------


def parse_zeros(
    text: str,
    Q: float,
    sigma0: float = DEFAULT_SIGMA0,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> ZeroSet:
    """
    Parse zeros-file text into a ZeroSet.

    Rows outside the window (β ∉ (0, 1), 1 − β > σ₀, |γ| > Q or modulus
    > Q) are rejected with their line number and a warning; malformed rows
    and references to missing or non-primitive characters are errors.

    Args:
        text: CSV text with header beta,gamma,modulus,char_index[,multiplicity].
        Q: Height and conductor cap.
        sigma0: Window width.
        config: Supplies the character modulus cap.

    Returns:
        ZeroSet.

    Raises:
        DigitGoldbachParseError: With the offending line number.
    """
    rows = iter_csv_rows(text)
    header = next(rows, None)
    if header is None:
        return ZeroSet(Q=Q, sigma0=sigma0)
    number, cells = header
    columns = tuple(cells)
    if columns not in (ZERO_COLUMNS, ZERO_COLUMNS[:4]):
        raise DigitGoldbachParseError(
            f"unexpected header {','.join(columns)!r}", line=number
        )

    zeros: list[ZeroDatum] = []
    rejected: list[RejectedRow] = []
    for number, cells in rows:
        if len(cells) != len(columns):
            raise DigitGoldbachParseError(
                f"expected {len(columns)} columns, found {len(cells)}", line=number
            )
        try:
            beta, gamma = float(cells[0]), float(cells[1])
            modulus, index = int(cells[2]), int(cells[3])
            multiplicity = int(cells[4]) if len(cells) > 4 else 1
        except ValueError as e:
            raise DigitGoldbachParseError(f"malformed row: {e}", line=number) from e
        if modulus < 1 or index < 0 or multiplicity < 1:
            raise DigitGoldbachParseError(
                "modulus, index and multiplicity must be positive", line=number
            )

        reason = None
        if not 0.0 < beta < 1.0:
            reason = f"beta {beta} outside (0, 1)"
        elif 1.0 - beta > sigma0:
            reason = f"1 - beta = {1.0 - beta:.6g} exceeds sigma0 {sigma0}"
        elif abs(gamma) > Q:
            reason = f"|gamma| = {abs(gamma)} exceeds Q {Q}"
        elif modulus > Q:
            reason = f"modulus {modulus} exceeds Q {Q}"
        if reason is not None:
            logger.warning("Rejected zero on line %d: %s", number, reason)
            rejected.append(RejectedRow(line=number, reason=reason))
            continue

        group = character_group(modulus, config)
        if index >= len(group):
            raise DigitGoldbachParseError(
                f"modulus {modulus} has no character {index}", line=number
            )
        if not group[index].primitive:
            raise DigitGoldbachParseError(
                f"character {index} modulo {modulus} is not primitive", line=number
            )
        zeros.append(
            ZeroDatum(
                beta=beta,
                gamma=gamma,
                modulus=modulus,
                char_index=index,
                multiplicity=multiplicity,
            )
        )
    logger.debug("Loaded %d zeros (%d rejected)", len(zeros), len(rejected))
    return ZeroSet(zeros=tuple(zeros), Q=Q, sigma0=sigma0, rejected=tuple(rejected))


def load_zeros(
    path: str | Path,
    Q: float,
    sigma0: float = DEFAULT_SIGMA0,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> ZeroSet:
    """Read a UTF-8 zeros file; see parse_zeros."""
    return parse_zeros(Path(path).read_text(encoding="utf-8"), Q, sigma0, config)


def filter_zeros_A(zs: ZeroSet, A: float, M: int) -> ZeroSet:
    """
    Keep the zeros with 1 − β ≤ A·lnln M/ln M, multiplicities preserved.

    Example:
        >>> zs = ZeroSet(Q=10, sigma0=0.5)
        >>> filter_zeros_A(zs, 1.0, 10**6).size
        0
    """
    if M < 16:
        raise DigitGoldbachArgumentError("M must be at least 16", field="M", value=M)
    threshold = A * math.log(math.log(M)) / math.log(M)
    kept = tuple(zero for zero in zs.zeros if 1.0 - zero.beta <= threshold)
    return zs.model_copy(update={"zeros": kept})


def _character_of(zero: ZeroDatum) -> DirichletCharacter:
    return character_group(zero.modulus)[zero.char_index]


# -----------------------------------------------------------------------------
# Λ_Q and F_{χ,Q}
# -----------------------------------------------------------------------------


def _squarefree_up_to(Q: float) -> list[int]:
    return [q for q in range(1, math.floor(Q) + 1) if mobius(q) != 0]


def lambda_Q(n: int, Q: float) -> float:
    """
    Return Λ_Q(n) = Σ_{q ≤ Q} μ(q)/φ(q)·c_q(n).

    Example:
        >>> lambda_Q(7, 2), lambda_Q(8, 2)
        (2.0, 0.0)
    """
    if n < 1:
        raise DigitGoldbachDomainError("Λ_Q is defined for n >= 1", field="n", value=n)
    return math.fsum(
        mobius(q) * ramanujan_sum(q, n) / euler_phi(q) for q in _squarefree_up_to(Q)
    )


def lambda_Q_values(
    M: int, Q: float, config: ToolkitConfig = DEFAULT_CONFIG
) -> npt.NDArray[np.float64]:
    """
    Return Λ_Q(n) for n ∈ [0, M] (entry 0 is 0).

    Each q contributes a q-periodic vector of Ramanujan sums, tiled over
    the range.
    """
    config.require("max_scan_length", M, "scan length")
    n = np.arange(M + 1, dtype=np.int64)
    values = np.zeros(M + 1, dtype=np.float64)
    for q in _squarefree_up_to(Q):
        period = np.array([ramanujan_sum(q, r) for r in range(q)], dtype=np.float64)
        values += mobius(q) / euler_phi(q) * period[n % q]
    values[0] = 0.0
    return values


@lru_cache(maxsize=1024)
def _unit_sums(chi: DirichletCharacter, r: int) -> npt.NDArray[np.complex128]:
    """Return Σ_{b ∈ (Z/r)*} χ(b) e(bm/r) for every m ∈ [0, r)."""
    b = np.arange(r, dtype=np.int64)
    weights = np.where(np.gcd(b, r) == 1, chi.values()[b % chi.modulus], 0j)
    sums = r * np.fft.ifft(weights)
    sums.flags.writeable = False
    return sums


def _f_chi_terms(
    chi: DirichletCharacter, Q: float, config: ToolkitConfig
) -> list[tuple[int, complex]]:
    """Return (r, coefficient) with F = Σ coefficient·Σ_b χ(b) e(bn/r)."""
    if not chi.primitive:
        raise DigitGoldbachArgumentError(
            "F_chi_Q needs a primitive character", field="chi", value=chi.index
        )
    if Q < 1:
        return []
    q = chi.modulus
    config.require("max_f_chi_modulus", q * Q, "F_chi_Q modulus q*Q")
    tau = gauss_sum(chi).conjugate()
    terms = []
    for s in range(1, math.floor(Q) + 1):
        mu = mobius(s)
        if mu == 0 or math.gcd(s, q) != 1:
            continue
        terms.append((q * s, tau * mu * chi(s).conjugate() / euler_phi(q * s)))
    return terms


def F_chi_Q(
    n: int, chi: DirichletCharacter, Q: float, config: ToolkitConfig = DEFAULT_CONFIG
) -> complex:
    """
    Return F_{χ,Q}(n) = Σ_{q | r, r/q ≤ Q} Σ_{b ∈ (Z/r)*} c_χ(b, r) e(bn/r).

    Terms with r/q not squarefree or sharing a factor with q vanish and are
    skipped. For the modulus-1 character this is Λ_Q(n).

    Args:
        n: Integer.
        chi: Primitive character modulo q.
        Q: Level; Q < 1 gives 0.
        config: Supplies the max_f_chi_modulus cap on q·Q.

    Returns:
        The complex value.
    """
    total = 0j
    for r, coefficient in _f_chi_terms(chi, Q, config):
        total += coefficient * _unit_sums(chi, r)[n % r]
    return total


def F_chi_Q_values(
    ns: Sequence[int] | npt.NDArray[np.int64],
    chi: DirichletCharacter,
    Q: float,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> npt.NDArray[np.complex128]:
    """Return F_{χ,Q}(n) for every n in ns."""
    ns = np.asarray(ns, dtype=np.int64)
    values = np.zeros(ns.shape, dtype=np.complex128)
    for r, coefficient in _f_chi_terms(chi, Q, config):
        values += coefficient * _unit_sums(chi, r)[ns % r]
    return values


def fit_F_chi_constant(
    chi: DirichletCharacter,
    Q: float,
    n_max: int,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> float:
    """Return the smallest C with |F_{χ,Q}(n)| ≤ C·τ(n)(ln Q)³ for n ≤ n_max."""
    if Q <= 1:
        raise DigitGoldbachArgumentError("Q must exceed 1", field="Q", value=Q)
    tables = build_tables(max(n_max, 2), config)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    ratios = np.abs(F_chi_Q_values(n, chi, Q, config)) / (
        tables.divisor_count[1 : n_max + 1] * math.log(Q) ** 3
    )
    return float(np.max(ratios)) if ratios.size else 0.0


# -----------------------------------------------------------------------------
# Corrected approximants
# -----------------------------------------------------------------------------


def lambda_Q_sigma0(
    n: int, Q: float, zs: ZeroSet, config: ToolkitConfig = DEFAULT_CONFIG
) -> complex:
    """
    Return Λ_Q(n) − Σ_ρ n^{ρ−1}·F_{χ_ρ,Q}(n), zeros counted with multiplicity.

    Raises:
        DigitGoldbachDomainError: If n < 1.
    """
    if n < 1:
        raise DigitGoldbachDomainError(
            "the approximant is defined for n >= 1", field="n", value=n
        )
    value = complex(lambda_Q(n, Q))
    log_n = math.log(n)
    for zero in zs.zeros:
        weight = cmath.exp((zero.rho - 1) * log_n) * zero.multiplicity
        value -= weight * F_chi_Q(n, _character_of(zero), Q, config)
    return value


def lambda_A_approx(
    n: int,
    Q: float,
    zs: ZeroSet,
    A: float,
    M: int,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> complex:
    """Return the approximant built from the zeros with 1 − β ≤ A·lnln M/ln M."""
    return lambda_Q_sigma0(n, Q, filter_zeros_A(zs, A, M), config)


def approximant_values(
    M: int, Q: float, zs: ZeroSet, config: ToolkitConfig = DEFAULT_CONFIG
) -> npt.NDArray[np.complex128]:
    """Return Λ_{Q,σ₀}(n) for n ∈ [0, M] (entry 0 is 0)."""
    values = lambda_Q_values(M, Q, config).astype(np.complex128)
    if zs.zeros:
        n = np.arange(1, M + 1, dtype=np.int64)
        log_n = np.log(n.astype(np.float64))
        for zero in zs.zeros:
            weight = np.exp((zero.rho - 1) * log_n) * zero.multiplicity
            values[1:] -= weight * F_chi_Q_values(n, _character_of(zero), Q, config)
    return values


# -----------------------------------------------------------------------------
# Deviation scans
# -----------------------------------------------------------------------------


def _fold(deviation: npt.NDArray[np.complex128], q: int) -> npt.NDArray[np.complex128]:
    """Return Σ_n D(n) e(na/q) for a ∈ [0, q) via residue-class sums."""
    residues = np.arange(deviation.size, dtype=np.int64) % q
    real = np.bincount(residues, weights=deviation.real, minlength=q)
    imag = np.bincount(residues, weights=deviation.imag, minlength=q)
    folded = real + 1j * imag
    return q * np.fft.ifft(folded)


def _farey_maximum(
    deviation: npt.NDArray[np.complex128], q: int
) -> tuple[float, str, int]:
    sums = np.abs(_fold(deviation, q))
    best, arg, samples = -1.0, "0/1", 0
    for a in range(q):
        if math.gcd(a, q) != 1:
            continue
        samples += 1
        if sums[a] > best:
            best, arg = float(sums[a]), f"{a}/{q}"
    return best, arg, samples


def deviation_scan(
    M: int,
    Q: float,
    zs: ZeroSet,
    plan: DeviationPlan | None = None,
    restricted: DigitSystem | None = None,
    weights: npt.NDArray[np.floating] | npt.NDArray[np.complexfloating] | None = None,
    threads: int = 1,
    config: ToolkitConfig = DEFAULT_CONFIG,
) -> DeviationScanResult:
    """
    Sample |Σ_{n ≤ M} (Λ(n) − Λ_{Q,σ₀}(n))·w(n)·e(nθ)| over θ.

    θ runs over the Farey fractions a/q with q ≤ farey_limit and, when
    grid_size > 0, over j/grid_size. The maximum is a sampled lower bound
    for the supremum and is labelled as such.

    Args:
        M: Range of n.
        Q: Approximant level.
        zs: Zero set.
        plan: Frequencies to sample (config defaults when omitted).
        restricted: Weight by the indicator of the restricted set.
        weights: Replace Λ by these values on [0, M].
        threads: Worker threads; the result does not depend on them.
        config: Supplies the max_scan_length cap and plan defaults.

    Returns:
        DeviationScanResult.

    Raises:
        DigitGoldbachResourceError: If M exceeds the cap.
    """
    config.require("max_scan_length", M, "scan length")
    plan = plan or DeviationPlan(
        farey_limit=config.farey_limit, grid_size=config.grid_size
    )
    if weights is None:
        lam = build_tables(max(M, 2), config).von_mangoldt[: M + 1]
        base: npt.NDArray[np.complex128] = lam.astype(np.complex128)
    else:
        if len(weights) != M + 1:
            raise DigitGoldbachArgumentError(
                "weights must cover [0, M]", field="weights", value=len(weights)
            )
        base = np.asarray(weights, dtype=np.complex128)
    deviation = base - approximant_values(M, Q, zs, config)
    deviation[0] = 0.0
    if restricted is not None:
        deviation = deviation * restricted_mask(M + 1, restricted)

    results = parallel_map(
        lambda q: _farey_maximum(deviation, q), range(1, plan.farey_limit + 1), threads
    )
    best, arg, samples = -1.0, "0/1", 0
    for value, where, count in results:
        samples += count
        if value > best:
            best, arg = value, where
    if plan.grid_size:
        grid = np.abs(_fold(deviation, plan.grid_size))
        samples += plan.grid_size
        j = int(np.argmax(grid))
        if grid[j] > best:
            best, arg = float(grid[j]), f"{j}/{plan.grid_size}"
    logger.debug("Deviation scan M=%d Q=%s: %.6g at %s", M, Q, best, arg)
    return DeviationScanResult(
        M=M,
        Q=Q,
        sup_estimate=best,
        argmax=arg,
        samples=samples,
        restricted=restricted is not None,
    )
