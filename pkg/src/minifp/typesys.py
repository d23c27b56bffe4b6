"""Named storage formats and precision-interval type systems.

The tuner works in precision bits p (significand digits, implicit bit
included).  A :class:`FormatMap` assigns an exponent width to each interval
of precision bits, turning a precision into a concrete
:class:`~minifp.formats.FloatFormat`; :func:`classify_precision` then picks
the named storage type the hardware would use for it.

Two stock type systems are provided:

* ``V1``: binary8, binary16, binary32
* ``V2``: V1 plus binary16alt, which trades mantissa bits for the full
  8-bit exponent range of binary32.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import OutOfRange
from .formats import BINARY8, BINARY16, BINARY16ALT, BINARY32, FloatFormat

MAX_PRECISION = 24


class NamedFormat(enum.Enum):
    BINARY8 = BINARY8
    BINARY16 = BINARY16
    BINARY16ALT = BINARY16ALT
    BINARY32 = BINARY32

    @property
    def format(self) -> FloatFormat:
        return self.value

    @property
    def width(self) -> int:
        return self.value.width

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "NamedFormat":
        try:
            return cls[label.upper()]
        except KeyError:
            raise OutOfRange(f"unknown named format {label!r}") from None


# Containment-ordered (narrowest storage first) for storage classification.
_STORAGE_ORDER = (NamedFormat.BINARY8, NamedFormat.BINARY16,
                  NamedFormat.BINARY16ALT, NamedFormat.BINARY32)


def storage_class(fmt: FloatFormat) -> NamedFormat:
    """Narrowest named format that holds every value of ``fmt`` exactly.

    Containment requires both the exponent width and the mantissa width to
    be no smaller than the source's.  Formats outside every named type (for
    example more than 8 exponent or 23 mantissa bits) have no storage class
    on the FPU and raise :class:`OutOfRange`.
    """
    for named in _STORAGE_ORDER:
        nf = named.value
        if nf.exp_bits >= fmt.exp_bits and nf.man_bits >= fmt.man_bits:
            return named
    raise OutOfRange(f"format {fmt} has no named storage class")


@dataclass(frozen=True)
class FormatMap:
    """Ordered ``(p_max, exp_bits)`` entries partitioning (0, 24].

    Entry ``(p_max, e)`` covers precisions up to and including ``p_max``
    that previous entries did not cover.  Bounds must be strictly
    increasing and end at 24.
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise OutOfRange("format map needs at least one entry")
        prev = 0
        for p_max, exp_bits in self.entries:
            if p_max <= prev:
                raise OutOfRange(f"format map bounds must increase, got {p_max} after {prev}")
            if not (2 <= exp_bits <= 11):
                raise OutOfRange(f"exponent width {exp_bits} outside [2, 11]")
            prev = p_max
        if prev != MAX_PRECISION:
            raise OutOfRange(f"final format map bound must be {MAX_PRECISION}, got {prev}")

    def exp_bits_for(self, p: int) -> int:
        if not 1 <= p <= MAX_PRECISION:
            raise OutOfRange(f"precision must be in [1, {MAX_PRECISION}], got {p}")
        for p_max, exp_bits in self.entries:
            if p <= p_max:
                return exp_bits
        raise AssertionError("unreachable: map covers (0, 24]")

    def to_lines(self) -> list[str]:
        return [f"{p_max} {exp_bits}" for p_max, exp_bits in self.entries]

    @classmethod
    def parse(cls, text: str) -> "FormatMap":
        """Parse the map file format: one ``p_max exp_bits`` pair per line,
        ascending; blank lines and ``#`` comments are skipped."""
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise OutOfRange(f"format map line {lineno}: expected 'p_max exp_bits'")
            try:
                entries.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise OutOfRange(f"format map line {lineno}: not integers") from None
        return cls(tuple(entries))


@dataclass(frozen=True)
class TypeSystem:
    name: str
    fmap: FormatMap


V1 = TypeSystem("V1", FormatMap(((3, 5), (11, 5), (24, 8))))
V2 = TypeSystem("V2", FormatMap(((3, 5), (8, 8), (11, 5), (24, 8))))


def map_precision(ts: TypeSystem, p: int) -> FloatFormat:
    """Concrete format for ``p`` precision bits under ``ts``.

    The mantissa carries ``p - 1`` stored bits (the implicit bit supplies
    the last digit).  ``p == 1`` would need zero stored bits, which no
    valid format has (NaN needs a nonzero mantissa field), so it is served
    by the one-bit mantissa format of its interval.
    """
    exp_bits = ts.fmap.exp_bits_for(p)
    return FloatFormat(exp_bits, max(p - 1, 1))


def classify_precision(ts: TypeSystem, p: int) -> NamedFormat:
    """Named storage type for ``p`` precision bits under ``ts``: the
    smallest named format matching the mapped exponent width with at least
    the mapped mantissa width."""
    fmt = map_precision(ts, p)
    candidates = [named for named in _STORAGE_ORDER
                  if named.value.exp_bits == fmt.exp_bits
                  and named.value.man_bits >= fmt.man_bits]
    if not candidates:
        raise OutOfRange(f"no named storage type matches {fmt} "
                         f"(type system {ts.name})")
    return min(candidates, key=lambda named: named.value.man_bits)
