import pytest

from minifp import (BINARY8, BINARY16, BINARY16ALT, BINARY32, FormatMap,
                    NamedFormat, OutOfRange, TypeSystem, V1, V2,
                    classify_precision, make_format, map_precision,
                    storage_class)


def test_stock_type_system_tables():
    assert V1.fmap.entries == ((3, 5), (11, 5), (24, 8))
    assert V2.fmap.entries == ((3, 5), (8, 8), (11, 5), (24, 8))


@pytest.mark.parametrize("p,want", [(3, (5, 2)), (8, (8, 7)), (11, (5, 10)),
                                    (2, (5, 1)), (24, (8, 23)), (12, (8, 11))])
def test_map_precision_v2(p, want):
    fmt = map_precision(V2, p)
    assert (fmt.exp_bits, fmt.man_bits) == want


def test_map_precision_one_bit_clamps_mantissa():
    # One precision bit would need zero stored mantissa bits, which no
    # valid format has; it is served by the one-bit format of its interval.
    assert map_precision(V2, 1) == make_format(5, 1)
    assert map_precision(V1, 1) == make_format(5, 1)


@pytest.mark.parametrize("p", [0, 25, -3])
def test_map_precision_bounds(p):
    with pytest.raises(OutOfRange):
        map_precision(V2, p)


@pytest.mark.parametrize("p,want", [
    (1, NamedFormat.BINARY8), (3, NamedFormat.BINARY8),
    (4, NamedFormat.BINARY16ALT), (8, NamedFormat.BINARY16ALT),
    (9, NamedFormat.BINARY16), (11, NamedFormat.BINARY16),
    (12, NamedFormat.BINARY32), (24, NamedFormat.BINARY32),
])
def test_classify_precision_v2(p, want):
    assert classify_precision(V2, p) is want


def test_classify_precision_v1_has_no_binary16alt():
    for p in range(1, 25):
        named = classify_precision(V1, p)
        assert named is not NamedFormat.BINARY16ALT
    assert classify_precision(V1, 4) is NamedFormat.BINARY16


def test_mapped_mantissa_monotone_in_precision():
    for ts in (V1, V2):
        widths = [map_precision(ts, p).man_bits for p in range(1, 25)]
        assert widths == sorted(widths)


def test_v2_storage_never_wider_than_v1():
    for p in range(1, 25):
        assert classify_precision(V2, p).width <= classify_precision(V1, p).width


def test_named_formats_roundtrip_through_their_own_precision():
    reachable = {
        V1: (NamedFormat.BINARY8, NamedFormat.BINARY16, NamedFormat.BINARY32),
        V2: tuple(NamedFormat),
    }
    for ts, named_set in reachable.items():
        for named in named_set:
            p = named.value.precision
            assert classify_precision(ts, p) is named


def test_format_map_validation():
    with pytest.raises(OutOfRange):
        FormatMap(((11, 5), (3, 5), (24, 8)))  # not ascending
    with pytest.raises(OutOfRange):
        FormatMap(((3, 5), (23, 8)))  # wrong final bound
    with pytest.raises(OutOfRange):
        FormatMap(())
    with pytest.raises(OutOfRange):
        FormatMap(((24, 1),))  # bad exponent width


def test_format_map_parse_and_render():
    text = "# comment\n3 5\n8 8   # binary16alt range\n11 5\n24 8\n"
    fmap = FormatMap.parse(text)
    assert fmap == V2.fmap
    assert FormatMap.parse("\n".join(fmap.to_lines())) == fmap
    with pytest.raises(OutOfRange):
        FormatMap.parse("3 5 9\n24 8")
    with pytest.raises(OutOfRange):
        FormatMap.parse("three five\n24 8")


def test_custom_type_system_lookup():
    ts = TypeSystem("flat8", FormatMap(((24, 8),)))
    assert map_precision(ts, 5) == make_format(8, 4)
    assert classify_precision(ts, 5) is NamedFormat.BINARY16ALT


def test_storage_class_containment():
    assert storage_class(make_format(5, 2)) is NamedFormat.BINARY8
    assert storage_class(make_format(5, 1)) is NamedFormat.BINARY8
    assert storage_class(make_format(4, 2)) is NamedFormat.BINARY8
    assert storage_class(make_format(5, 10)) is NamedFormat.BINARY16
    assert storage_class(make_format(5, 3)) is NamedFormat.BINARY16
    assert storage_class(make_format(8, 7)) is NamedFormat.BINARY16ALT
    assert storage_class(make_format(8, 3)) is NamedFormat.BINARY16ALT
    assert storage_class(make_format(6, 9)) is NamedFormat.BINARY32
    assert storage_class(make_format(8, 23)) is NamedFormat.BINARY32
    with pytest.raises(OutOfRange):
        storage_class(make_format(11, 52))
    with pytest.raises(OutOfRange):
        storage_class(make_format(9, 2))


def test_storage_class_is_value_preserving():
    import math

    from minifp import FlexNum, cast_fp, decode

    for e in range(2, 9):
        for m in range(1, 24):
            fmt = make_format(e, m)
            named = storage_class(fmt)
            for bits in (0, 1, fmt.max_finite_bits(), fmt.inf_bits(1)):
                a = FlexNum(fmt, bits)
                if not math.isnan(decode(a)):
                    assert decode(cast_fp(a, named.value)) == decode(a)
