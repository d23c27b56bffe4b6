"""Operation and cast counting for kernel runs.

Events are bucketed three ways:

* arithmetic and comparisons by named storage class (the FPU slice that
  would execute them);
* conversions by (source class, destination class) pair;
* loads and stores by operand storage width in bits.

Every bucket is split by region tag: scalar, or vectorizable (eligible for
sub-word SIMD packing in the cost model).  A context additionally counts
non-FP bookkeeping instructions (loop control, addressing) which feed the
"other" component of the energy model.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import MixedVectorRegion, RegionImbalance
from .formats import FloatFormat
from .typesys import NamedFormat, storage_class


class OpKind(enum.Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    SQRT = "sqrt"
    CMP = "cmp"
    CAST_FP = "cast_fp"
    CAST_TO_INT = "cast_to_int"
    CAST_FROM_INT = "cast_from_int"
    LOAD = "load"
    STORE = "store"


ARITH_KINDS = frozenset({OpKind.ADD, OpKind.SUB, OpKind.MUL, OpKind.DIV,
                         OpKind.SQRT, OpKind.CMP})
CAST_KINDS = frozenset({OpKind.CAST_FP, OpKind.CAST_TO_INT, OpKind.CAST_FROM_INT})
MEM_KINDS = frozenset({OpKind.LOAD, OpKind.STORE})


class RegionTag(enum.Enum):
    SCALAR = "scalar"
    VECTORIZABLE = "vector"


OpKey = tuple[NamedFormat, OpKind, RegionTag]
CastKey = tuple[NamedFormat, NamedFormat, RegionTag]
MemKey = tuple[int, OpKind, RegionTag]


@dataclass(frozen=True)
class StatsReport:
    """Immutable snapshot of event counts for one kernel evaluation."""

    ops: Mapping[OpKey, int]
    casts: Mapping[CastKey, int]
    mem: Mapping[MemKey, int]
    other_instructions: int = 0

    def total_fp_ops(self) -> int:
        """Arithmetic and comparison events (casts excluded)."""
        return sum(n for (_, kind, _), n in self.ops.items() if kind in ARITH_KINDS)

    def total_casts(self) -> int:
        """Format conversions plus integer conversions."""
        int_casts = sum(n for (_, kind, _), n in self.ops.items() if kind in CAST_KINDS)
        return sum(self.casts.values()) + int_casts

    def total_mem(self) -> int:
        return sum(self.mem.values())

    def total_events(self) -> int:
        return self.total_fp_ops() + self.total_casts() + self.total_mem()


def _freeze(counter: Counter) -> Mapping:
    return MappingProxyType({k: v for k, v in sorted(counter.items(),
                                                     key=lambda kv: repr(kv[0])) if v})


def empty_report() -> StatsReport:
    return StatsReport(MappingProxyType({}), MappingProxyType({}), MappingProxyType({}), 0)


def merge(r1: StatsReport, r2: StatsReport) -> StatsReport:
    """Pointwise sum of two reports."""
    ops = Counter(r1.ops)
    ops.update(r2.ops)
    casts = Counter(r1.casts)
    casts.update(r2.casts)
    mem = Counter(r1.mem)
    mem.update(r2.mem)
    return StatsReport(_freeze(ops), _freeze(casts), _freeze(mem),
                       r1.other_instructions + r2.other_instructions)


@dataclass
class StatsContext:
    """Mutable accumulator confined to one kernel evaluation.

    Regions cannot nest.  Within a vectorizable region all arithmetic must
    run in a single format, mirroring the one-format-per-SIMD-lane-group
    constraint of the hardware.
    """

    _ops: Counter = field(default_factory=Counter)
    _casts: Counter = field(default_factory=Counter)
    _mem: Counter = field(default_factory=Counter)
    _other: int = 0
    _region: RegionTag | None = None
    _region_fmt: FloatFormat | None = None

    @property
    def current_tag(self) -> RegionTag:
        return self._region if self._region is not None else RegionTag.SCALAR

    def enter_region(self, tag: RegionTag) -> None:
        if self._region is not None:
            raise RegionImbalance("regions cannot nest")
        self._region = tag
        self._region_fmt = None

    def exit_region(self) -> None:
        if self._region is None:
            raise RegionImbalance("exit_region without matching enter_region")
        self._region = None
        self._region_fmt = None

    def region(self, tag: RegionTag):
        ctx = self

        class _Region:
            def __enter__(self):
                ctx.enter_region(tag)

            def __exit__(self, *exc):
                ctx.exit_region()
                return False

        return _Region()

    def record(self, kind: OpKind, fmt: FloatFormat, count: int = 1) -> None:
        """Count arithmetic/comparison events in ``fmt``."""
        if kind not in ARITH_KINDS:
            raise ValueError(f"record() takes arithmetic kinds, got {kind}")
        if count < 0:
            raise ValueError("count must be non-negative")
        if count == 0:
            return
        if self._region is RegionTag.VECTORIZABLE:
            if self._region_fmt is None:
                self._region_fmt = fmt
            elif self._region_fmt != fmt:
                raise MixedVectorRegion(
                    f"vectorizable region saw arithmetic in {fmt} after {self._region_fmt}")
        self._ops[(storage_class(fmt), kind, self.current_tag)] += count

    def record_cast(self, src: FloatFormat, dst: FloatFormat, count: int = 1) -> None:
        if count < 0:
            raise ValueError("count must be non-negative")
        if count == 0:
            return
        self._casts[(storage_class(src), storage_class(dst), self.current_tag)] += count

    def record_int_cast(self, kind: OpKind, fmt: FloatFormat, count: int = 1) -> None:
        """Count integer<->float conversions; stored under the FP class's
        self-pair with the conversion kind folded into the op table."""
        if kind not in (OpKind.CAST_TO_INT, OpKind.CAST_FROM_INT):
            raise ValueError(f"record_int_cast() takes integer cast kinds, got {kind}")
        if count:
            cls = storage_class(fmt)
            self._ops[(cls, kind, self.current_tag)] += count

    def record_mem(self, kind: OpKind, width: int, count: int = 1) -> None:
        if kind not in MEM_KINDS:
            raise ValueError(f"record_mem() takes load/store kinds, got {kind}")
        if width not in (8, 16, 32):
            raise ValueError(f"operand width must be 8, 16 or 32, got {width}")
        if count < 0:
            raise ValueError("count must be non-negative")
        if count:
            self._mem[(width, kind, self.current_tag)] += count

    def record_other(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError("count must be non-negative")
        self._other += count

    def report(self) -> StatsReport:
        if self._region is not None:
            raise RegionImbalance("report() inside an open region")
        return StatsReport(_freeze(self._ops), _freeze(self._casts),
                           _freeze(self._mem), self._other)


def new_context() -> StatsContext:
    return StatsContext()
