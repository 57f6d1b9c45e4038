"""Precision plumbing shared by the numeric modules.

All real arithmetic runs through mpmath binary floats at an explicit
working precision in bits (64 minimum, 256 default).  Results that come
out non-finite raise instead of propagating silently.
"""

from __future__ import annotations

import os

from mpmath import mp, mpf

DEFAULT_BITS = 256
MIN_BITS = 64

ENV_BITS = "LENGTHPOLY_BITS"


class PrecisionError(ArithmeticError):
    """A computation exhausted the configured precision or overflowed."""


def default_bits() -> int:
    """Default precision in bits, overridable via LENGTHPOLY_BITS."""
    raw = os.environ.get(ENV_BITS)
    if raw is None:
        return DEFAULT_BITS
    return check_bits(int(raw))


def check_bits(bits: int) -> int:
    if bits < MIN_BITS:
        raise ValueError(f"precision must be at least {MIN_BITS} bits, got {bits}")
    return bits


def to_real(x, bits: int) -> mpf:
    """Convert int/float/str/mpf to an mpf rounded at the given precision."""
    with mp.workprec(bits):
        v = mpf(x.strip() if isinstance(x, str) else x)
    return ensure_finite(v)


def ensure_finite(v: mpf) -> mpf:
    if mp.isnan(v) or mp.isinf(v):
        raise PrecisionError("non-finite value produced; raise the bit count")
    return v


def boundary_tol(bits: int) -> mpf:
    """Relative tolerance 2**(-bits/2) for sign and boundary decisions."""
    with mp.workprec(bits):
        return mpf(2) ** (-(bits // 2))


def real_str(v, bits: int) -> str:
    """Full-precision decimal string for JSON/CSV payloads."""
    from mpmath import nstr

    dps = max(17, int(bits * 0.30103) + 2)
    return nstr(mpf(v), dps, strip_zeros=True)
