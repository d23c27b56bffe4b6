"""Shared kernel plumbing: specs, configs, inputs, format-aware helpers.

Every kernel declares an ordered list of variable groups (arrays or
scalars).  A configuration binds each group to a format; the kernel then
performs every operation in the format of the value it produces, with an
explicit conversion event on every dataflow edge whose source format
differs.  Event counts model the element-level program (one event per
element operation), while the actual evaluation is vectorized with numpy
plus the quantization backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .. import backend
from ..errors import ConfigError, OutOfRange
from ..formats import BINARY32, FloatFormat
from ..stats import OpKind, StatsContext
from ..typesys import TypeSystem, map_precision, storage_class


@dataclass(frozen=True)
class VariableSpec:
    name: str
    shape: str  # "array" or "scalar"
    default_format: FloatFormat = BINARY32


@dataclass(frozen=True)
class KernelSpec:
    """Static description of one benchmark kernel."""

    name: str
    description: str
    variables: tuple[VariableSpec, ...]
    default_size: int
    size_bounds: tuple[int, int]
    default_params: Mapping[str, int]
    generate: Callable[["KernelSpec", int, int, Mapping[str, int]], "KernelInput"]
    run: Callable[["KernelInput", Mapping[str, FloatFormat], StatsContext], np.ndarray]
    output_len: Callable[["KernelInput"], int]

    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]


@dataclass(frozen=True)
class KernelInput:
    """Deterministic input data plus the parameters that shaped it."""

    kernel: str
    seed: int
    size: int
    params: Mapping[str, int]
    arrays: Mapping[str, np.ndarray]


@dataclass(frozen=True)
class KernelConfig:
    """Per-variable-group format binding for one kernel."""

    formats: Mapping[str, FloatFormat]

    @classmethod
    def uniform(cls, spec: KernelSpec, fmt: FloatFormat) -> "KernelConfig":
        return cls({v.name: fmt for v in spec.variables})

    @classmethod
    def from_precisions(cls, spec: KernelSpec, precisions: Mapping[str, int] | list[int],
                        ts: TypeSystem) -> "KernelConfig":
        names = spec.variable_names()
        if isinstance(precisions, Mapping):
            table = dict(precisions)
        else:
            if len(precisions) < len(names):
                missing = names[len(precisions)]
                raise ConfigError(f"kernel {spec.name!r}: no precision bound for "
                                  f"variable {missing!r}")
            if len(precisions) > len(names):
                raise ConfigError(f"kernel {spec.name!r}: {len(precisions)} precisions "
                                  f"given but only {len(names)} variables exist")
            table = dict(zip(names, precisions))
        return cls({name: map_precision(ts, p) for name, p in table.items()})

    def validated(self, spec: KernelSpec) -> dict[str, FloatFormat]:
        """Check the binding covers exactly the kernel's variables and every
        format fits one of the FPU's storage classes."""
        out: dict[str, FloatFormat] = {}
        for v in spec.variables:
            if v.name not in self.formats:
                raise ConfigError(f"kernel {spec.name!r}: no format bound for "
                                  f"variable {v.name!r}")
            fmt = self.formats[v.name]
            storage_class(fmt)  # raises OutOfRange for unstorable formats
            out[v.name] = fmt
        extra = set(self.formats) - set(out)
        if extra:
            raise ConfigError(f"kernel {spec.name!r}: unknown variable "
                              f"{sorted(extra)[0]!r} in config")
        return out


class GroupVals:
    """Format-tagged array values plus the event recorder for one run."""

    def __init__(self, ctx: StatsContext, fmts: Mapping[str, FloatFormat]):
        self.ctx = ctx
        self.fmts = dict(fmts)

    def fmt(self, group: str) -> FloatFormat:
        return self.fmts[group]

    def width(self, group: str) -> int:
        return storage_class(self.fmts[group]).width

    def quantize(self, group: str, x: np.ndarray) -> np.ndarray:
        return backend.quantize_array(self.fmts[group], x)

    def load(self, group: str, count: int) -> None:
        self.ctx.record_mem(OpKind.LOAD, self.width(group), count)

    def store(self, group: str, count: int) -> None:
        self.ctx.record_mem(OpKind.STORE, self.width(group), count)

    def convert(self, x: np.ndarray, src: str, dst: str, count: int) -> np.ndarray:
        """Move values from group ``src``'s format to ``dst``'s.

        Values re-round whenever the tuned formats differ, but a cast
        event is recorded only when the storage classes differ: groups
        sharing a named type become one hardware type after mapping, so no
        conversion instruction exists between them."""
        fs, fd = self.fmts[src], self.fmts[dst]
        if fs == fd:
            return x
        if storage_class(fs) != storage_class(fd):
            self.ctx.record_cast(fs, fd, count)
        return backend.quantize_array(fd, x)

    def op(self, kind: OpKind, group: str, x: np.ndarray, count: int) -> np.ndarray:
        """Round an elementwise float64 result into ``group``'s format and
        count one event per element."""
        self.ctx.record(kind, self.fmts[group], count)
        return backend.quantize_array(self.fmts[group], x)


def check_size(spec: KernelSpec, size: int) -> None:
    lo, hi = spec.size_bounds
    if not lo <= size <= hi:
        raise OutOfRange(f"kernel {spec.name!r}: size must be in [{lo}, {hi}], got {size}")


def format_constant(fmt: FloatFormat, x: float) -> float:
    """A literal as the kernel sees it: rounded once into ``fmt``."""
    from .. import _bitround

    return _bitround.decode_bits(fmt, _bitround.round_float(fmt, x))
