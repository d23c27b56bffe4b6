"""Exact round-to-nearest-even of real values into minifloat bit patterns.

All functions here work on plain Python integers, so they are exact for
any operand size.  The hot array path lives in :mod:`minifp.backend`; this
module is the scalar reference used by the value type and by conversions.
"""

from __future__ import annotations

import math

from .formats import FloatFormat

_F64_EXP_MASK = 0x7FF
_F64_MAN_MASK = (1 << 52) - 1


def _encode_significand(f: FloatFormat, sign: int, q: int, g: int) -> int:
    """Assemble bits for the value ``q * 2^g`` (q >= 0 already rounded).

    ``g`` must be the grid exponent ``max(e_val, emin) - man_bits`` used by
    the rounding step, so q < 2^(m+1) except for a carry to 2^(m+1) which
    is renormalized here.
    """
    m = f.man_bits
    if q == 0:
        return f.zero_bits(sign)
    if q.bit_length() > m + 1:
        # Rounding carried into a new binade; q is an exact power of two.
        q >>= 1
        g += 1
    e_res = q.bit_length() - 1 + g
    if e_res > f.emax:
        return f.inf_bits(sign)
    if q.bit_length() == m + 1:
        exp_field = e_res + f.bias
        man_field = q - (1 << m)
    else:
        # Subnormal: only reachable when g == emin - m.
        exp_field = 0
        man_field = q
    return (sign << (f.width - 1)) | (exp_field << m) | man_field


def round_rational(f: FloatFormat, sign: int, num: int, den: int) -> int:
    """Round the exact value ``(-1)^sign * num/den`` (num >= 0, den >= 1)."""
    if num == 0:
        return f.zero_bits(sign)
    # e_val = floor(log2(num/den)); bit lengths give it within one.
    e_val = num.bit_length() - den.bit_length()
    if e_val >= 0:
        if num < den << e_val:
            e_val -= 1
    else:
        if num << -e_val < den:
            e_val -= 1
    g = max(e_val, f.emin) - f.man_bits
    # q = RNE(num / (den * 2^g))
    if g >= 0:
        n2, d2 = num, den << g
    else:
        n2, d2 = num << -g, den
    q, r = divmod(n2, d2)
    r2 = 2 * r
    if r2 > d2 or (r2 == d2 and q & 1):
        q += 1
    return _encode_significand(f, sign, q, g)


def round_float(f: FloatFormat, x: float) -> int:
    """Round a float64 value to ``f``.  The input is treated as exact.

    NaN inputs collapse to the canonical quiet NaN of ``f``.
    """
    if x != x:
        return f.canonical_nan_bits()
    sign = 1 if math.copysign(1.0, x) < 0 else 0
    if math.isinf(x):
        return f.inf_bits(sign)
    if x == 0.0:
        return f.zero_bits(sign)
    mant, exp2 = math.frexp(abs(x))
    num = int(mant * (1 << 53))  # exact: mant has at most 53 significant bits
    scale = exp2 - 53
    if scale >= 0:
        return round_rational(f, sign, num << scale, 1)
    return round_rational(f, sign, num, 1 << -scale)


def round_sqrt_rational(f: FloatFormat, num: int, den: int) -> int:
    """Round ``sqrt(num/den)`` (num > 0, den >= 1) to ``f``."""
    v_exp = num.bit_length() - den.bit_length()
    if v_exp >= 0:
        if num < den << v_exp:
            v_exp -= 1
    else:
        if num << -v_exp < den:
            v_exp -= 1
    e_val = v_exp // 2  # floor(log2(sqrt(num/den)))
    g = max(e_val, f.emin) - f.man_bits
    # F = floor(sqrt(num/den) / 2^g) via sqrt(A/B) = sqrt(A*B)/B.
    if g >= 0:
        a, b = num, den << (2 * g)
    else:
        a, b = num << (-2 * g), den
    fl = math.isqrt(a * b) // b
    # Compare sqrt(A/B) with F + 1/2 by squaring: 4A ? (2F+1)^2 B.
    lhs = 4 * a
    rhs = (2 * fl + 1) ** 2 * b
    if lhs > rhs:
        q = fl + 1
    elif lhs < rhs:
        q = fl
    else:
        q = fl + (fl & 1)
    return _encode_significand(f, 0, q, g)


def decode_bits(f: FloatFormat, bits: int) -> float:
    """Exact float64 value of a bit pattern (every format fits in float64)."""
    m = f.man_bits
    sign = (bits >> (f.width - 1)) & 1
    exp_field = (bits >> m) & f.exp_mask
    man_field = bits & f.man_mask
    if exp_field == f.exp_mask:
        if man_field:
            return math.nan
        return -math.inf if sign else math.inf
    if exp_field == 0:
        mag = math.ldexp(man_field, f.emin - m)
    else:
        mag = math.ldexp((1 << m) | man_field, exp_field - f.bias - m)
    return -mag if sign else mag


def bits_as_rational(f: FloatFormat, bits: int) -> tuple[int, int, int]:
    """Finite bit pattern as ``(sign, num, den)`` with den a power of two."""
    m = f.man_bits
    sign = (bits >> (f.width - 1)) & 1
    exp_field = (bits >> m) & f.exp_mask
    man_field = bits & f.man_mask
    if exp_field == 0:
        num, scale = man_field, f.emin - m
    else:
        num, scale = (1 << m) | man_field, exp_field - f.bias - m
    if scale >= 0:
        return sign, num << scale, 1
    return sign, num, 1 << -scale


def float64_roundtrip_safe(f: FloatFormat) -> bool:
    """Whether compute-in-float64-then-reround is correct rounding for ``f``.

    Two conditions: the classic double-rounding bound (53 >= 2p + 2, so
    p <= 25) and a margin keeping every result scale the target can resolve
    out of float64's subnormal range, where its effective precision decays
    (scales down to the smallest target midpoint 2^(emin - m - 1) must keep
    at least 2p + 2 bits, giving bias + 3m <= 1071).
    """
    return f.man_bits <= 24 and f.bias + 3 * f.man_bits <= 1071
