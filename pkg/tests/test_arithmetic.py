import math
import random

import pytest

import oracle
from minifp import (BINARY8, BINARY16, BINARY16ALT, FlexNum, FormatMismatch,
                    add, decode, div, encode, make_format, mul, sqrt, sub)

OPS = {"add": add, "sub": sub, "mul": mul, "div": div}


def _sweep(fmt, ofmt, n, seed):
    rng = random.Random(seed)
    width = fmt.width
    for _ in range(n):
        ba = rng.randrange(1 << width)
        bb = rng.randrange(1 << width)
        for name, op in OPS.items():
            got = op(FlexNum(fmt, ba), FlexNum(fmt, bb)).bits
            want = oracle.oracle_binary_op(ofmt, ba, bb, name)
            assert got == want, (name, hex(ba), hex(bb))
        got = sqrt(FlexNum(fmt, ba)).bits
        want = oracle.oracle_sqrt(ofmt, ba)
        assert got == want, ("sqrt", hex(ba))


def test_binary8_spot_values():
    one = encode(BINARY8, 1.0)
    assert decode(add(one, one)) == 2.0
    assert decode(sub(one, one)) == 0.0
    assert decode(mul(one, encode(BINARY8, 3.0))) == 3.0
    assert decode(div(encode(BINARY8, 1.0), encode(BINARY8, 4.0))) == 0.25
    assert decode(sqrt(encode(BINARY8, 4.0))) == 2.0


def test_random_sweep_binary8():
    _sweep(BINARY8, oracle.Fmt(5, 2), 1500, seed=11)


def test_random_sweep_odd_formats():
    # Formats off the named grid, still on the float64 fast path.
    _sweep(make_format(4, 6), oracle.Fmt(4, 6), 400, seed=12)
    _sweep(make_format(7, 16), oracle.Fmt(7, 16), 400, seed=13)


def test_random_sweep_wide_formats_exact_path():
    # man_bits > 24 forces the exact integer path.
    _sweep(make_format(9, 30), oracle.Fmt(9, 30), 150, seed=14)
    _sweep(make_format(11, 40), oracle.Fmt(11, 40), 150, seed=15)


def test_double_rounding_hazard_case():
    # For (11, 20), compute-in-float64-then-reround mis-rounds this product:
    # both operands are normal, the exact product lies just below the
    # midpoint 3*2^-1043 of the target's subnormal grid, and float64 (whose
    # own subnormal grid is coarser than the margin) lands exactly on the
    # midpoint, after which the tie resolves upward instead of down.
    fmt = make_format(11, 20)
    ofmt = oracle.Fmt(11, 20)
    a = encode(fmt, math.ldexp(1620525, -541))
    b = encode(fmt, math.ldexp(2035473, -542))
    assert decode(a) == math.ldexp(1620525, -541)  # exactly representable
    assert decode(b) == math.ldexp(2035473, -542)
    got = mul(a, b)
    want = oracle.oracle_binary_op(ofmt, a.bits, b.bits, "mul")
    assert got.bits == want
    assert decode(got) == math.ldexp(1, -1042)
    # The naive float64 route really does disagree, so the guard matters.
    naive = encode(fmt, decode(a) * decode(b))
    assert naive.bits != want


def test_mixed_formats_rejected():
    a = encode(BINARY8, 1.0)
    b = encode(BINARY16, 1.0)
    for op in (add, sub, mul, div):
        with pytest.raises(FormatMismatch):
            op(a, b)


def test_operator_overloads():
    a = encode(BINARY8, 1.5)
    b = encode(BINARY8, 2.0)
    assert decode(a + b) == 3.5
    assert decode(a * b) == 3.0
    assert decode(a - b) == -0.5
    assert decode(a / b) == 0.75
    assert decode(-a) == -1.5
    assert decode(abs(-a)) == 1.5
    assert a < b and b > a and a <= a and a >= a


def test_division_by_power_of_two_exact():
    # binary16: integers up to 2048 are exact; check rounding at quarters.
    f = BINARY16
    of = oracle.Fmt(5, 10)
    four = encode(f, 4.0)
    for k in range(8185, 8205):
        got = div(encode(f, float(k)), four).bits
        want = oracle.oracle_binary_op(of, encode(f, float(k)).bits, four.bits, "div")
        assert got == want


def test_sqrt_specials():
    f = BINARY16ALT
    assert sqrt(encode(f, -4.0)).bits == f.canonical_nan_bits()
    assert sqrt(encode(f, -0.0)).bits == encode(f, -0.0).bits
    assert sqrt(encode(f, 0.0)).bits == 0
    assert decode(sqrt(encode(f, math.inf))) == math.inf
    assert sqrt(encode(f, math.nan)).bits == f.canonical_nan_bits()
