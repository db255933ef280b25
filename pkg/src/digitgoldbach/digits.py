"""
Base-g digit representations and the restricted set 𝒮_b.

𝒮_b is the set of positive integers whose base-g expansion (without
leading zeros) avoids the digit b. Zero is never a member; operations that
need it take an explicit include-zero flag.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator

import numpy as np
import numpy.typing as npt

from digitgoldbach.errors import DigitGoldbachArgumentError, DigitGoldbachRangeError
from digitgoldbach.models import DigitSystem, DigitVector


def digit_length(n: int, g: int) -> int:
    """Return the number of base-g digits of n ≥ 1 (0 for n = 0)."""
    length = 0
    while n > 0:
        n //= g
        length += 1
    return length


def to_digits(n: int, sys: DigitSystem) -> DigitVector:
    """
    Return the k little-endian base-g digits of n.

    Args:
        n: Integer in [0, g^k).
        sys: Digit system.

    Returns:
        DigitVector of length k.

    Raises:
        DigitGoldbachRangeError: If n is negative or n ≥ g^k.

    Example:
        >>> to_digits(203, DigitSystem(g=10, b=7, k=3)).digits
        (3, 0, 2)
    """
    if not 0 <= n < sys.M:
        raise DigitGoldbachRangeError(
            f"n must lie in [0, {sys.g}^{sys.k})", field="n", value=n
        )
    digits = []
    for _ in range(sys.k):
        n, d = divmod(n, sys.g)
        digits.append(d)
    return DigitVector(g=sys.g, digits=tuple(digits))


def from_digits(dv: DigitVector, sys: DigitSystem) -> int:
    """Return Σ digits[j]·g^j, checking the vector fits the system."""
    if dv.g != sys.g or len(dv.digits) > sys.k:
        raise DigitGoldbachRangeError(
            "digit vector does not fit the digit system",
            field="digits",
            value=dv.digits,
        )
    return dv.value


def is_restricted(n: int, sys: DigitSystem) -> bool:
    """
    Return True iff n ≥ 1 has no base-g digit equal to b.

    Example:
        >>> is_restricted(17, DigitSystem(g=10, b=7, k=2))
        False
    """
    if n < 1:
        raise DigitGoldbachArgumentError(
            "membership is defined for n >= 1", field="n", value=n
        )
    while n > 0:
        n, d = divmod(n, sys.g)
        if d == sys.b:
            return False
    return True


def enumerate_restricted(limit: int, sys: DigitSystem) -> Iterator[int]:
    """
    Yield the members of 𝒮_b below limit in increasing order.

    Members are generated length by length as digit strings with a nonzero
    leading digit, so no candidate is ever rejected.

    Args:
        limit: Exclusive upper bound, at most g^k.
        sys: Digit system.

    Yields:
        Members of 𝒮_b in [1, limit).
    """
    if limit > sys.M:
        raise DigitGoldbachRangeError(
            f"limit must not exceed g^k = {sys.M}", field="limit", value=limit
        )
    allowed = [d for d in range(sys.g) if d != sys.b]
    leading = [d for d in allowed if d != 0]
    for length in range(1, sys.k + 1):
        if sys.g ** (length - 1) >= limit:
            return
        for head in leading:
            for tail in itertools.product(allowed, repeat=length - 1):
                value = head
                for d in tail:
                    value = value * sys.g + d
                if value >= limit:
                    return
                yield value


def restricted_mask(limit: int, sys: DigitSystem) -> npt.NDArray[np.bool_]:
    """
    Return a boolean array m with m[n] = (n ∈ 𝒮_b) for n ∈ [0, limit).

    Leading zeros are padding: a zero digit above the top nonzero digit is
    ignored even when b = 0.
    """
    n = np.arange(limit, dtype=np.int64)
    mask = n >= 1
    power = 1
    while power < limit:
        digit = (n // power) % sys.g
        inside = n >= power
        mask &= ~inside | (digit != sys.b)
        power *= sys.g
    return mask
