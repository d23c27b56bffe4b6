import math
from fractions import Fraction

from minifp import (BINARY8, BINARY16, BINARY16ALT, FlexNum, FpClass,
                    Ordering, add, classify, compare, decode, div, encode,
                    mul, sqrt, sub, ulp)

FORMATS = (BINARY8, BINARY16, BINARY16ALT)


def _nan(f):
    return FlexNum(f, f.canonical_nan_bits())


def _inf(f, sign=0):
    return FlexNum(f, f.inf_bits(sign))


def test_nan_propagates_canonically():
    for f in FORMATS:
        # NaN with a non-canonical payload still comes out canonical.
        ugly = FlexNum(f, f.inf_bits(1) | 1)
        assert classify(ugly) is FpClass.NAN
        one = encode(f, 1.0)
        for op in (add, sub, mul, div):
            assert op(ugly, one).bits == f.canonical_nan_bits()
            assert op(one, ugly).bits == f.canonical_nan_bits()
        assert sqrt(ugly).bits == f.canonical_nan_bits()


def test_inf_arithmetic_table():
    for f in FORMATS:
        inf, ninf = _inf(f, 0), _inf(f, 1)
        one = encode(f, 1.0)
        zero = encode(f, 0.0)
        assert add(inf, inf).bits == inf.bits
        assert add(inf, ninf).bits == f.canonical_nan_bits()
        assert sub(inf, inf).bits == f.canonical_nan_bits()
        assert sub(inf, ninf).bits == inf.bits
        assert add(inf, one).bits == inf.bits
        assert mul(inf, ninf).bits == ninf.bits
        assert mul(inf, zero).bits == f.canonical_nan_bits()
        assert mul(zero, ninf).bits == f.canonical_nan_bits()
        assert div(inf, inf).bits == f.canonical_nan_bits()
        assert div(one, inf).bits == zero.bits
        assert div(one, ninf).bits == encode(f, -0.0).bits
        assert div(inf, one).bits == inf.bits


def test_division_by_zero_gives_signed_infinity():
    for f in FORMATS:
        one = encode(f, 1.0)
        zero = encode(f, 0.0)
        nzero = encode(f, -0.0)
        assert div(one, zero).bits == f.inf_bits(0)
        assert div(one, nzero).bits == f.inf_bits(1)
        assert div(-one, zero).bits == f.inf_bits(1)
        assert div(zero, zero).bits == f.canonical_nan_bits()


def test_signed_zero_algebra():
    for f in FORMATS:
        pz, nz = encode(f, 0.0), encode(f, -0.0)
        assert add(pz, nz).bits == pz.bits
        assert add(nz, nz).bits == nz.bits
        assert sub(nz, pz).bits == nz.bits
        assert sub(pz, pz).bits == pz.bits
        assert mul(nz, encode(f, 2.0)).bits == nz.bits
        x = encode(f, 1.5)
        assert add(x, -x).bits == pz.bits  # cancellation gives +0
        assert sub(x, x).bits == pz.bits


def test_cancellation_exhaustive_binary8():
    for bits in range(256):
        a = FlexNum(BINARY8, bits)
        if not math.isfinite(decode(a)) or decode(a) == 0.0:
            continue
        assert add(a, -a).bits == 0


def test_saturation_boundary_exact():
    for f in FORMATS:
        threshold = (Fraction(2) - Fraction(1, 2 ** (f.man_bits + 1))) * \
            Fraction(2) ** f.emax
        below = threshold - Fraction(1, 2 ** 40)
        assert decode(encode(f, threshold)) == math.inf
        assert decode(encode(f, below)) == f.max_finite_value()
        assert decode(encode(f, -threshold)) == -math.inf


def test_compare_semantics():
    f = BINARY8
    one, two = encode(f, 1.0), encode(f, 2.0)
    assert compare(one, two) is Ordering.LESS
    assert compare(two, one) is Ordering.GREATER
    assert compare(encode(f, -0.0), encode(f, 0.0)) is Ordering.EQUAL
    assert compare(_nan(f), one) is Ordering.UNORDERED
    assert compare(one, _nan(f)) is Ordering.UNORDERED
    assert not (_nan(f) == _nan(f))
    assert not (_nan(f) < one)


def test_classify_total_over_binary8():
    seen = set()
    for bits in range(256):
        seen.add(classify(FlexNum(BINARY8, bits)))
    assert seen == set(FpClass)
    assert classify(FlexNum(BINARY8, 0b0_11111_01)) is FpClass.NAN
    assert classify(FlexNum(BINARY8, 0b0_11111_00)) is FpClass.POS_INF
    assert classify(FlexNum(BINARY8, 0b1_00000_01)) is FpClass.DENORMAL


def test_ulp_helper():
    assert ulp(BINARY8, 1.0) == 0.25
    assert ulp(BINARY8, 1.99) == 0.25
    assert ulp(BINARY8, 2.0) == 0.5
    assert ulp(BINARY8, 0.0) == 2.0 ** -16
    assert ulp(BINARY8, 2.0 ** -15) == 2.0 ** -16  # subnormal range
    assert ulp(BINARY8, 1e9) == ulp(BINARY8, 57344.0)  # clamped at emax
    assert math.isnan(ulp(BINARY8, math.nan))
