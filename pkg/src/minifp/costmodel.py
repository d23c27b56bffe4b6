"""Analytical cost model of the transprecision FPU and memory traffic.

From a :class:`~minifp.stats.StatsReport` the model derives cycle counts,
memory access counts and an energy estimate split into FP, memory and
other contributions, after packing vectorizable events into sub-word SIMD
lanes (a 32-bit datapath executes two 16-bit or four 8-bit element
operations per instruction).

Latency defaults follow the pipelined-unit convention: 32-bit and 16-bit
arithmetic has a 2-cycle latency at one operation per cycle, 8-bit
arithmetic and every conversion take a single cycle.  An issued operation
therefore costs one cycle plus a configurable stall fraction for each
latency cycle the surrounding code fails to fill (default 0, as no
instruction scheduler is modeled).

Energy values are configuration inputs; the shipped defaults are unit
costs per event and are placeholders, useful only for relative structure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import DivisionByZeroBaseline, MissingTableEntry, OutOfRange
from .stats import (ARITH_KINDS, CAST_KINDS, OpKind, RegionTag, StatsReport,
                    _freeze)
from .typesys import NamedFormat


@dataclass(frozen=True)
class VectorLanes:
    """SIMD lanes per operand width; lanes * width must fill the 32-bit slice."""

    by_width: Mapping[int, int] = field(
        default_factory=lambda: {8: 4, 16: 2, 32: 1})

    def __post_init__(self) -> None:
        for width, lanes in self.by_width.items():
            if lanes * width != 32:
                raise OutOfRange(f"lanes * width must be 32, got {lanes} x {width}")

    def for_width(self, width: int) -> int:
        try:
            return self.by_width[width]
        except KeyError:
            raise MissingTableEntry(f"no lane count for width {width}") from None


_TWO_CYCLE = (NamedFormat.BINARY16, NamedFormat.BINARY16ALT, NamedFormat.BINARY32)


def _default_arith_latency() -> dict[tuple[NamedFormat, OpKind], int]:
    table: dict[tuple[NamedFormat, OpKind], int] = {}
    for kind in ARITH_KINDS:
        table[(NamedFormat.BINARY8, kind)] = 1
        for named in _TWO_CYCLE:
            table[(named, kind)] = 2
    return table


@dataclass(frozen=True)
class LatencyTable:
    """Cycle latencies; every entry must be at least one cycle."""

    arith: Mapping[tuple[NamedFormat, OpKind], int] = field(
        default_factory=_default_arith_latency)
    cast: int = 1
    mem: int = 1
    stall_fraction: float = 0.0

    def __post_init__(self) -> None:
        if any(v < 1 for v in self.arith.values()) or self.cast < 1 or self.mem < 1:
            raise OutOfRange("latencies must be >= 1 cycle")
        if not 0.0 <= self.stall_fraction <= 1.0:
            raise OutOfRange("stall fraction must lie in [0, 1]")

    def arith_latency(self, named: NamedFormat, kind: OpKind) -> int:
        try:
            return self.arith[(named, kind)]
        except KeyError:
            raise MissingTableEntry(
                f"no latency for {named.label} {kind.value}") from None

    def cycles_for(self, latency: int) -> float:
        return 1.0 + self.stall_fraction * (latency - 1)


def _default_fp_energy() -> dict[tuple[NamedFormat, RegionTag], float]:
    return {(named, tag): 1.0 for named in NamedFormat for tag in RegionTag}


def _default_mem_energy() -> dict[tuple[int, RegionTag], float]:
    return {(width, tag): 1.0 for width in (8, 16, 32) for tag in RegionTag}


@dataclass(frozen=True)
class EnergyTable:
    """Energy per event class.  Shipped defaults are unit placeholders."""

    fp: Mapping[tuple[NamedFormat, RegionTag], float] = field(
        default_factory=_default_fp_energy)
    cast: float = 1.0
    mem: Mapping[tuple[int, RegionTag], float] = field(
        default_factory=_default_mem_energy)
    other: float = 1.0

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.fp.values()) or self.cast < 0 or \
                any(v < 0 for v in self.mem.values()) or self.other < 0:
            raise OutOfRange("energy costs must be non-negative")

    def fp_energy(self, named: NamedFormat, tag: RegionTag) -> float:
        try:
            return self.fp[(named, tag)]
        except KeyError:
            raise MissingTableEntry(
                f"no FP energy for {named.label} {tag.value}") from None

    def mem_energy(self, width: int, tag: RegionTag) -> float:
        try:
            return self.mem[(width, tag)]
        except KeyError:
            raise MissingTableEntry(
                f"no memory energy for width {width} {tag.value}") from None


@dataclass(frozen=True)
class CostReport:
    """Derived costs; counts are post-packing."""

    cycles: float
    cycles_fp: float
    cycles_cast: float
    cycles_mem: float
    cycles_other: float
    mem_scalar: int
    mem_vector: int
    energy_fp: float
    energy_mem: float
    energy_other: float
    op_breakdown: Mapping[tuple[NamedFormat, RegionTag], int]
    cycles_ratio: float | None = None
    mem_ratio: float | None = None
    energy_ratio: float | None = None

    @property
    def mem_total(self) -> int:
        return self.mem_scalar + self.mem_vector

    @property
    def energy(self) -> float:
        return self.energy_fp + self.energy_mem + self.energy_other


def _ceil_div(n: int, d: int) -> int:
    return -(-n // d)


def _cast_lane_width(src: NamedFormat, dst: NamedFormat) -> int:
    return max(src.width, dst.width)


def pack_vectors(report: StatsReport, lanes: VectorLanes | None = None) -> StatsReport:
    """Pack vectorizable element events into SIMD instructions.

    Within vector-tagged buckets, n element operations of width w become
    ceil(n / lanes(w)) instructions; conversions pack by the wider of
    their two widths, integer conversions by the full 32-bit slice.
    Scalar buckets and the bookkeeping count are unchanged.
    """
    lanes = lanes or VectorLanes()
    ops: dict = {}
    for (named, kind, tag), n in report.ops.items():
        if tag is RegionTag.VECTORIZABLE:
            width = 32 if kind in CAST_KINDS else named.width
            n = _ceil_div(n, lanes.for_width(width))
        ops[(named, kind, tag)] = n
    casts: dict = {}
    for (src, dst, tag), n in report.casts.items():
        if tag is RegionTag.VECTORIZABLE:
            n = _ceil_div(n, lanes.for_width(_cast_lane_width(src, dst)))
        casts[(src, dst, tag)] = n
    mem: dict = {}
    for (width, kind, tag), n in report.mem.items():
        if tag is RegionTag.VECTORIZABLE:
            n = _ceil_div(n, lanes.for_width(width))
        mem[(width, kind, tag)] = n
    return StatsReport(_freeze(Counter(ops)), _freeze(Counter(casts)),
                       _freeze(Counter(mem)), report.other_instructions)


def estimate(report: StatsReport, lt: LatencyTable | None = None,
             et: EnergyTable | None = None,
             lanes: VectorLanes | None = None) -> CostReport:
    """Cycle, memory and energy estimate of a stats report.

    Vector packing is applied first; every resulting instruction then
    contributes its issue cycle (plus the stall fraction of its latency
    tail) and its energy table entry.
    """
    lt = lt or LatencyTable()
    et = et or EnergyTable()
    packed = pack_vectors(report, lanes)

    cycles_fp = 0.0
    cycles_cast = 0.0
    energy_fp = 0.0
    breakdown: dict[tuple[NamedFormat, RegionTag], int] = {}
    for (named, kind, tag), n in packed.ops.items():
        if kind in CAST_KINDS:
            cycles_cast += n * lt.cycles_for(lt.cast)
            energy_fp += n * et.cast
            continue
        cycles_fp += n * lt.cycles_for(lt.arith_latency(named, kind))
        energy_fp += n * et.fp_energy(named, tag)
        breakdown[(named, tag)] = breakdown.get((named, tag), 0) + n
    for (src, dst, tag), n in packed.casts.items():
        cycles_cast += n * lt.cycles_for(lt.cast)
        energy_fp += n * et.cast

    cycles_mem = 0.0
    energy_mem = 0.0
    mem_scalar = 0
    mem_vector = 0
    for (width, kind, tag), n in packed.mem.items():
        cycles_mem += n * lt.cycles_for(lt.mem)
        energy_mem += n * et.mem_energy(width, tag)
        if tag is RegionTag.VECTORIZABLE:
            mem_vector += n
        else:
            mem_scalar += n

    cycles_other = float(packed.other_instructions)
    energy_other = packed.other_instructions * et.other

    return CostReport(
        cycles=cycles_fp + cycles_cast + cycles_mem + cycles_other,
        cycles_fp=cycles_fp,
        cycles_cast=cycles_cast,
        cycles_mem=cycles_mem,
        cycles_other=cycles_other,
        mem_scalar=mem_scalar,
        mem_vector=mem_vector,
        energy_fp=energy_fp,
        energy_mem=energy_mem,
        energy_other=energy_other,
        op_breakdown={k: breakdown[k] for k in sorted(breakdown, key=repr)},
    )


def normalize(test: CostReport, baseline: CostReport) -> CostReport:
    """Populate the ratio fields of ``test`` relative to ``baseline``."""
    if baseline.cycles <= 0 or baseline.mem_total <= 0 or baseline.energy <= 0:
        raise DivisionByZeroBaseline("baseline totals must be positive")
    return replace(
        test,
        cycles_ratio=test.cycles / baseline.cycles,
        mem_ratio=test.mem_total / baseline.mem_total,
        energy_ratio=test.energy / baseline.energy,
    )


def _parse_scalar(value: str, want_float: bool):
    return float(value) if want_float else int(value)


def load_tables(text: str) -> tuple[LatencyTable, EnergyTable]:
    """Parse the key-value table file, starting from the defaults.

    Recognized keys::

        stall_fraction <f>
        latency.<class>.<op> <n>     op in add|sub|mul|div|sqrt|cmp
        latency.cast <n>
        latency.mem <n>
        energy.fp.<class>.<scalar|vector> <f>
        energy.cast <f>
        energy.mem.<8|16|32>.<scalar|vector> <f>
        energy.other <f>
    """
    arith = _default_arith_latency()
    cast_lat, mem_lat, stall = 1, 1, 0.0
    fp = _default_fp_energy()
    mem = _default_mem_energy()
    cast_e, other_e = 1.0, 1.0

    kind_by_name = {k.value: k for k in ARITH_KINDS}
    tag_by_name = {"scalar": RegionTag.SCALAR, "vector": RegionTag.VECTORIZABLE}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, value = line.split()
        except ValueError:
            raise OutOfRange(f"tables line {lineno}: expected 'key value'") from None
        parts = key.split(".")
        try:
            if key == "stall_fraction":
                stall = float(value)
            elif key == "latency.cast":
                cast_lat = int(value)
            elif key == "latency.mem":
                mem_lat = int(value)
            elif parts[0] == "latency" and len(parts) == 3:
                named = NamedFormat.from_label(parts[1])
                arith[(named, kind_by_name[parts[2]])] = int(value)
            elif key == "energy.cast":
                cast_e = float(value)
            elif key == "energy.other":
                other_e = float(value)
            elif parts[:2] == ["energy", "fp"] and len(parts) == 4:
                named = NamedFormat.from_label(parts[2])
                fp[(named, tag_by_name[parts[3]])] = float(value)
            elif parts[:2] == ["energy", "mem"] and len(parts) == 4:
                mem[(int(parts[2]), tag_by_name[parts[3]])] = float(value)
            else:
                raise KeyError(key)
        except (KeyError, ValueError) as exc:
            raise OutOfRange(f"tables line {lineno}: bad entry {line!r}") from exc

    return (LatencyTable(arith, cast_lat, mem_lat, stall),
            EnergyTable(fp, cast_e, mem, other_e))
