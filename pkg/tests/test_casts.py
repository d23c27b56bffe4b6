import math

import pytest

import oracle
from minifp import (BINARY8, BINARY16, BINARY16ALT, BINARY32, FlexNum,
                    InvalidConversion, cast_fp, cast_from_int, cast_to_int,
                    decode, encode)


def test_widening_binary8_to_binary16_exact_and_roundtrip():
    for bits in range(256):
        a = FlexNum(BINARY8, bits)
        wide = cast_fp(a, BINARY16)
        x = decode(a)
        if math.isnan(x):
            assert wide.bits == BINARY16.canonical_nan_bits()
            back = cast_fp(wide, BINARY8)
            assert back.bits == BINARY8.canonical_nan_bits()
            continue
        assert decode(wide) == x
        assert cast_fp(wide, BINARY8).bits == bits


def test_widening_binary16alt_to_binary32_exhaustive():
    for bits in range(1 << 16):
        a = FlexNum(BINARY16ALT, bits)
        x = decode(a)
        wide = cast_fp(a, BINARY32)
        if math.isnan(x):
            assert wide.bits == BINARY32.canonical_nan_bits()
        else:
            assert decode(wide) == x


def test_narrowing_saturates():
    big = encode(BINARY32, 100000.0)
    assert decode(cast_fp(big, BINARY16)) == math.inf
    assert decode(cast_fp(-big, BINARY16)) == -math.inf


def test_high_range_survives_in_binary16alt():
    huge = encode(BINARY32, 2.0 ** 100)
    alt = cast_fp(huge, BINARY16ALT)
    assert math.isfinite(decode(alt))
    assert decode(alt) == 2.0 ** 100


def test_narrowing_rounds_correctly_random():
    import random
    rng = random.Random(3)
    of = oracle.Fmt(5, 2)
    for _ in range(2000):
        bits = rng.randrange(1 << 16)
        a = FlexNum(BINARY16, bits)
        got = cast_fp(a, BINARY8)
        v = oracle.decode_pattern(oracle.Fmt(5, 10), bits)
        want = oracle.round_value(of, v)
        assert got.bits == want


def test_cast_from_int_examples():
    assert decode(cast_from_int(1, BINARY8)) == 1.0
    assert decode(cast_from_int(-3, BINARY8)) == -3.0
    assert decode(cast_from_int(100000, BINARY8)) == math.inf
    assert decode(cast_from_int(-100000, BINARY8)) == -math.inf
    # round-to-nearest-even on integers
    assert decode(cast_from_int(2049, BINARY16)) == 2048.0
    assert decode(cast_from_int(2050, BINARY16)) == 2050.0
    assert decode(cast_from_int(2051, BINARY16)) == 2052.0
    # 64-bit magnitudes stay exact through the integer path
    assert decode(cast_from_int((1 << 63) - 1, BINARY32)) == float((1 << 63) - 1)


def test_cast_to_int_truncates_and_saturates():
    assert cast_to_int(encode(BINARY8, 1.75), 32, signed=True) == 1
    assert cast_to_int(encode(BINARY8, -1.75), 32, signed=True) == -1
    assert cast_to_int(encode(BINARY8, 0.75), 32, signed=True) == 0
    assert cast_to_int(encode(BINARY8, 57344.0), 8, signed=True) == 127
    assert cast_to_int(encode(BINARY8, -57344.0), 8, signed=True) == -128
    assert cast_to_int(encode(BINARY8, -2.0), 8, signed=False) == 0
    assert cast_to_int(encode(BINARY8, 57344.0), 16, signed=False) == 57344
    assert cast_to_int(encode(BINARY8, 57344.0), 16, signed=True) == 32767
    assert cast_to_int(encode(BINARY32, 2.0 ** 40), 64, signed=False) == 1 << 40


def test_cast_to_int_rejects_non_finite():
    with pytest.raises(InvalidConversion):
        cast_to_int(encode(BINARY8, math.inf), 32, signed=True)
    with pytest.raises(InvalidConversion):
        cast_to_int(encode(BINARY8, math.nan), 32, signed=True)


def test_cast_preserves_zero_sign():
    neg_zero = encode(BINARY8, -0.0)
    assert cast_fp(neg_zero, BINARY16).bits == encode(BINARY16, -0.0).bits
    assert cast_to_int(neg_zero, 8, signed=True) == 0
