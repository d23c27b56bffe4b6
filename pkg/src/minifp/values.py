"""Minifloat values with bit-exact, correctly rounded operations.

A :class:`FlexNum` pairs a :class:`~minifp.formats.FloatFormat` with a bit
pattern laid out as ``sign | exponent | mantissa`` (most significant
first).  Every operation returns the round-to-nearest-even result of the
exact mathematical operation, with IEEE special-value semantics; NaN
results always carry the canonical quiet pattern, so all operations are
bit-deterministic.

Operands of binary operations must share a format; mixing formats raises
:class:`~minifp.errors.FormatMismatch` and conversions must be spelled out
with :func:`cast_fp`.

Finite values of every supported format are exactly representable in
float64, so arithmetic on formats with up to 24 stored mantissa bits runs
as a float64 operation followed by one re-rounding (safe against double
rounding, see :func:`minifp._bitround.float64_roundtrip_safe`).  Wider
formats take an exact integer path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from . import _bitround
from .errors import FormatMismatch, InvalidConversion, OutOfRange
from .formats import FloatFormat

__all__ = [
    "FlexNum", "FpClass", "Ordering", "encode", "decode", "add", "sub",
    "mul", "div", "sqrt", "cast_fp", "cast_from_int", "cast_to_int",
    "compare", "classify", "min_finite", "max_finite", "ulp",
]


class FpClass(enum.Enum):
    POS_ZERO = "pos_zero"
    NEG_ZERO = "neg_zero"
    DENORMAL = "denormal"
    NORMAL = "normal"
    POS_INF = "pos_inf"
    NEG_INF = "neg_inf"
    NAN = "nan"


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    UNORDERED = "unordered"


@dataclass(frozen=True, slots=True)
class FlexNum:
    """An immutable value of a specific minifloat format."""

    format: FloatFormat
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.format.width):
            raise OutOfRange(f"bit pattern {self.bits:#x} does not fit in "
                             f"{self.format.width} bits")

    @property
    def value(self) -> float:
        return decode(self)

    def bit_string(self) -> str:
        """Debug rendering ``s|eee...|mmm...``."""
        f = self.format
        s = (self.bits >> (f.width - 1)) & 1
        e = (self.bits >> f.man_bits) & f.exp_mask
        m = self.bits & f.man_mask
        return f"{s}|{e:0{f.exp_bits}b}|{m:0{f.man_bits}b}"

    def __repr__(self) -> str:
        return f"FlexNum({self.format}, {self.bit_string()}, {decode(self)!r})"

    def __float__(self) -> float:
        return decode(self)

    def __neg__(self) -> "FlexNum":
        return FlexNum(self.format, self.bits ^ (1 << (self.format.width - 1)))

    def __abs__(self) -> "FlexNum":
        return FlexNum(self.format, self.bits & ~(1 << (self.format.width - 1)))

    def __add__(self, other: "FlexNum") -> "FlexNum":
        return add(self, other)

    def __sub__(self, other: "FlexNum") -> "FlexNum":
        return sub(self, other)

    def __mul__(self, other: "FlexNum") -> "FlexNum":
        return mul(self, other)

    def __truediv__(self, other: "FlexNum") -> "FlexNum":
        return div(self, other)

    # IEEE comparison semantics, like Python floats: NaN compares false,
    # -0 == +0.  Bit identity is available through `bits`.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlexNum):
            return NotImplemented
        return compare(self, other) is Ordering.EQUAL

    def __lt__(self, other: "FlexNum") -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: "FlexNum") -> bool:
        return compare(self, other) in (Ordering.LESS, Ordering.EQUAL)

    def __gt__(self, other: "FlexNum") -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: "FlexNum") -> bool:
        return compare(self, other) in (Ordering.GREATER, Ordering.EQUAL)

    def __hash__(self) -> int:
        return hash((self.format, decode(self)))


def _sign_of(a: FlexNum) -> int:
    return (a.bits >> (a.format.width - 1)) & 1


def _exp_field(a: FlexNum) -> int:
    return (a.bits >> a.format.man_bits) & a.format.exp_mask


def _man_field(a: FlexNum) -> int:
    return a.bits & a.format.man_mask


def classify(a: FlexNum) -> FpClass:
    f = a.format
    sign, e, m = _sign_of(a), _exp_field(a), _man_field(a)
    if e == f.exp_mask:
        if m:
            return FpClass.NAN
        return FpClass.NEG_INF if sign else FpClass.POS_INF
    if e == 0:
        if m:
            return FpClass.DENORMAL
        return FpClass.NEG_ZERO if sign else FpClass.POS_ZERO
    return FpClass.NORMAL


def _is_nan(a: FlexNum) -> bool:
    return _exp_field(a) == a.format.exp_mask and _man_field(a) != 0


def _is_inf(a: FlexNum) -> bool:
    return _exp_field(a) == a.format.exp_mask and _man_field(a) == 0


def _is_zero(a: FlexNum) -> bool:
    return _exp_field(a) == 0 and _man_field(a) == 0


def _nan(f: FloatFormat) -> FlexNum:
    return FlexNum(f, f.canonical_nan_bits())


def _inf(f: FloatFormat, sign: int) -> FlexNum:
    return FlexNum(f, f.inf_bits(sign))


def _zero(f: FloatFormat, sign: int) -> FlexNum:
    return FlexNum(f, f.zero_bits(sign))


def decode(a: FlexNum) -> float:
    """Exact value of ``a`` as a float64 (lossless for every format)."""
    return _bitround.decode_bits(a.format, a.bits)


def encode(f: FloatFormat, x: float | int | Rational) -> FlexNum:
    """Round-to-nearest-even representation of ``x`` in ``f``.

    ``x`` is taken exactly: a float contributes its precise binary value,
    ints and rationals are exact by nature.  Magnitudes at or above the
    overflow threshold (max finite plus half an ulp) become infinity,
    magnitudes below half the smallest denormal become signed zero.
    """
    if isinstance(x, float):
        return FlexNum(f, _bitround.round_float(f, x))
    if isinstance(x, int):
        sign = 1 if x < 0 else 0
        return FlexNum(f, _bitround.round_rational(f, sign, abs(x), 1))
    if isinstance(x, Rational):
        num, den = x.numerator, x.denominator
        sign = 1 if num < 0 else 0
        return FlexNum(f, _bitround.round_rational(f, sign, abs(num), den))
    raise TypeError(f"cannot encode {type(x).__name__}")


def _check_formats(a: FlexNum, b: FlexNum) -> FloatFormat:
    if a.format != b.format:
        raise FormatMismatch(f"operand formats differ: {a.format} vs {b.format}")
    return a.format


def _round_result(f: FloatFormat, x: float) -> FlexNum:
    return FlexNum(f, _bitround.round_float(f, x))


def _exact_binary(f: FloatFormat, a: FlexNum, b: FlexNum, op: str) -> FlexNum:
    sa, na, da = _bitround.bits_as_rational(f, a.bits)
    sb, nb, db = _bitround.bits_as_rational(f, b.bits)
    xa = Fraction(-na if sa else na, da)
    xb = Fraction(-nb if sb else nb, db)
    if op == "add":
        r = xa + xb
    elif op == "sub":
        r = xa - xb
    elif op == "mul":
        r = xa * xb
    else:
        r = xa / xb
    if r == 0:
        # Exact cancellation gives +0 under round-to-nearest; exact zero
        # products/quotients keep the XOR sign.
        sign = (sa ^ sb) if op in ("mul", "div") else 0
        return _zero(f, sign)
    sign = 1 if r < 0 else 0
    return FlexNum(f, _bitround.round_rational(f, sign, abs(r.numerator), r.denominator))


def add(a: FlexNum, b: FlexNum) -> FlexNum:
    f = _check_formats(a, b)
    if _is_nan(a) or _is_nan(b):
        return _nan(f)
    if _is_inf(a) or _is_inf(b):
        if _is_inf(a) and _is_inf(b) and _sign_of(a) != _sign_of(b):
            return _nan(f)
        return a if _is_inf(a) else b
    if _is_zero(a) and _is_zero(b):
        return _zero(f, _sign_of(a) & _sign_of(b))
    if _bitround.float64_roundtrip_safe(f):
        return _round_result(f, decode(a) + decode(b))
    return _exact_binary(f, a, b, "add")


def sub(a: FlexNum, b: FlexNum) -> FlexNum:
    f = _check_formats(a, b)
    if _is_nan(a) or _is_nan(b):
        return _nan(f)
    if _is_inf(a) or _is_inf(b):
        if _is_inf(a) and _is_inf(b) and _sign_of(a) == _sign_of(b):
            return _nan(f)
        return a if _is_inf(a) else -b
    if _is_zero(a) and _is_zero(b):
        return _zero(f, _sign_of(a) & (1 - _sign_of(b)))
    if _bitround.float64_roundtrip_safe(f):
        return _round_result(f, decode(a) - decode(b))
    return _exact_binary(f, a, b, "sub")


def mul(a: FlexNum, b: FlexNum) -> FlexNum:
    f = _check_formats(a, b)
    if _is_nan(a) or _is_nan(b):
        return _nan(f)
    sign = _sign_of(a) ^ _sign_of(b)
    if _is_inf(a) or _is_inf(b):
        if _is_zero(a) or _is_zero(b):
            return _nan(f)
        return _inf(f, sign)
    if _is_zero(a) or _is_zero(b):
        return _zero(f, sign)
    if _bitround.float64_roundtrip_safe(f):
        return _round_result(f, decode(a) * decode(b))
    return _exact_binary(f, a, b, "mul")


def div(a: FlexNum, b: FlexNum) -> FlexNum:
    f = _check_formats(a, b)
    if _is_nan(a) or _is_nan(b):
        return _nan(f)
    sign = _sign_of(a) ^ _sign_of(b)
    if _is_inf(a):
        if _is_inf(b):
            return _nan(f)
        return _inf(f, sign)
    if _is_inf(b):
        return _zero(f, sign)
    if _is_zero(b):
        if _is_zero(a):
            return _nan(f)
        return _inf(f, sign)
    if _is_zero(a):
        return _zero(f, sign)
    if _bitround.float64_roundtrip_safe(f):
        return _round_result(f, decode(a) / decode(b))
    return _exact_binary(f, a, b, "div")


def sqrt(a: FlexNum) -> FlexNum:
    f = a.format
    if _is_nan(a):
        return _nan(f)
    if _is_zero(a):
        return a  # sqrt(+-0) keeps its sign
    if _sign_of(a):
        return _nan(f)
    if _is_inf(a):
        return a
    if _bitround.float64_roundtrip_safe(f):
        return _round_result(f, math.sqrt(decode(a)))
    _, num, den = _bitround.bits_as_rational(f, a.bits)
    return FlexNum(f, _bitround.round_sqrt_rational(f, num, den))


def cast_fp(a: FlexNum, target: FloatFormat) -> FlexNum:
    """Re-round ``a`` into ``target``.

    Widening to a format with at least the source's exponent width and
    mantissa width is exact; narrowing rounds and may saturate to infinity.
    """
    if _is_nan(a):
        return _nan(target)
    return FlexNum(target, _bitround.round_float(target, decode(a)))


def cast_from_int(i: int, target: FloatFormat) -> FlexNum:
    """Round an integer to ``target`` (round-to-nearest-even)."""
    sign = 1 if i < 0 else 0
    return FlexNum(target, _bitround.round_rational(target, sign, abs(i), 1))


def cast_to_int(a: FlexNum, width: int, signed: bool) -> int:
    """Truncate ``a`` toward zero, saturating at the integer type's bounds."""
    if _is_nan(a) or _is_inf(a):
        raise InvalidConversion(f"cannot convert {classify(a).value} to integer")
    if width < 1 or width > 64:
        raise OutOfRange(f"integer width must be in [1, 64], got {width}")
    v = int(decode(a))  # int() truncates toward zero
    if signed:
        lo, hi = -(1 << (width - 1)), (1 << (width - 1)) - 1
    else:
        lo, hi = 0, (1 << width) - 1
    return min(max(v, lo), hi)


def compare(a: FlexNum, b: FlexNum) -> Ordering:
    """IEEE comparison: -0 equals +0, NaN is unordered with everything."""
    _check_formats(a, b)
    if _is_nan(a) or _is_nan(b):
        return Ordering.UNORDERED
    xa, xb = decode(a), decode(b)
    if xa < xb:
        return Ordering.LESS
    if xa > xb:
        return Ordering.GREATER
    return Ordering.EQUAL


def min_finite(f: FloatFormat) -> FlexNum:
    """Smallest positive value (the bottom denormal), ``2^(emin - m)``."""
    return FlexNum(f, 1)


def max_finite(f: FloatFormat) -> FlexNum:
    """Largest finite value, ``(2 - 2^-m) * 2^emax``."""
    return FlexNum(f, f.max_finite_bits())


def ulp(f: FloatFormat, x: float) -> float:
    """Gap between representable magnitudes of ``f`` around ``|x|``.

    Uses the spacing of the binade containing ``|x|``, clamped to the
    normal exponent range; zero and the subnormal range share the bottom
    spacing ``2^(emin - m)``.
    """
    if math.isnan(x):
        return math.nan
    ax = abs(x)
    if math.isinf(ax):
        e = f.emax
    elif ax == 0.0:
        e = f.emin
    else:
        e = min(max(math.frexp(ax)[1] - 1, f.emin), f.emax)
    return math.ldexp(1.0, e - f.man_bits)
