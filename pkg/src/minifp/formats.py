"""Parameterized minifloat formats.

A format is an (exponent bits, mantissa bits) pair following the IEEE 754
encoding conventions: one sign bit, a biased exponent field, an explicitly
stored mantissa with an implicit leading bit for normal values.  The
mantissa count excludes the implicit bit, so the precision (significand
digits) is ``man_bits + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRange

MIN_EXP_BITS = 2
MAX_EXP_BITS = 11
MIN_MAN_BITS = 1
MAX_MAN_BITS = 52
MAX_WIDTH = 64


@dataclass(frozen=True, slots=True)
class FloatFormat:
    """An IEEE-style floating-point format with ``1 + exp_bits + man_bits`` bits.

    Bounds: ``2 <= exp_bits <= 11``, ``1 <= man_bits <= 52`` and a total
    width of at most 64 bits.  A single exponent bit is excluded because it
    leaves no normal range (bias would be 0).
    """

    exp_bits: int
    man_bits: int

    def __post_init__(self) -> None:
        e, m = self.exp_bits, self.man_bits
        if not (MIN_EXP_BITS <= e <= MAX_EXP_BITS):
            raise OutOfRange(f"exp_bits must be in [{MIN_EXP_BITS}, {MAX_EXP_BITS}], got {e}")
        if not (MIN_MAN_BITS <= m <= MAX_MAN_BITS):
            raise OutOfRange(f"man_bits must be in [{MIN_MAN_BITS}, {MAX_MAN_BITS}], got {m}")
        if 1 + e + m > MAX_WIDTH:
            raise OutOfRange(f"total width 1+{e}+{m} exceeds {MAX_WIDTH} bits")

    @property
    def width(self) -> int:
        """Total storage width in bits, including the sign."""
        return 1 + self.exp_bits + self.man_bits

    @property
    def precision(self) -> int:
        """Significand digits preserved, counting the implicit bit."""
        return self.man_bits + 1

    @property
    def bias(self) -> int:
        return (1 << (self.exp_bits - 1)) - 1

    @property
    def emax(self) -> int:
        """Largest unbiased exponent of a normal value."""
        return self.bias

    @property
    def emin(self) -> int:
        """Smallest unbiased exponent of a normal value."""
        return 1 - self.bias

    @property
    def exp_mask(self) -> int:
        return (1 << self.exp_bits) - 1

    @property
    def man_mask(self) -> int:
        return (1 << self.man_bits) - 1

    def max_finite_value(self) -> float:
        """Largest finite magnitude, ``(2 - 2^-m) * 2^emax``.  Exact."""
        return math.ldexp(2.0 - math.ldexp(1.0, -self.man_bits), self.emax)

    def min_normal_value(self) -> float:
        """Smallest positive normal magnitude, ``2^emin``."""
        return math.ldexp(1.0, self.emin)

    def min_subnormal_value(self) -> float:
        """Smallest positive magnitude, ``2^(emin - m)``."""
        return math.ldexp(1.0, self.emin - self.man_bits)

    def canonical_nan_bits(self) -> int:
        """Quiet NaN with sign 0 and only the top mantissa bit set."""
        return (self.exp_mask << self.man_bits) | (1 << (self.man_bits - 1))

    def inf_bits(self, sign: int) -> int:
        return (sign << (self.width - 1)) | (self.exp_mask << self.man_bits)

    def zero_bits(self, sign: int) -> int:
        return sign << (self.width - 1)

    def max_finite_bits(self, sign: int = 0) -> int:
        return (sign << (self.width - 1)) | ((self.exp_mask - 1) << self.man_bits) | self.man_mask

    def __str__(self) -> str:
        return f"({self.exp_bits},{self.man_bits})"


def make_format(exp_bits: int, man_bits: int) -> FloatFormat:
    """Build a :class:`FloatFormat`, raising :class:`OutOfRange` on bad bounds."""
    return FloatFormat(exp_bits, man_bits)


# The four storage formats of the transprecision FPU.
BINARY8 = FloatFormat(5, 2)
BINARY16 = FloatFormat(5, 10)
BINARY16ALT = FloatFormat(8, 7)
BINARY32 = FloatFormat(8, 23)
