"""One-level 1-D Haar wavelet transform.

Each input pair (x0, x1) produces an approximation coefficient
``(x0 + x1) * s`` and a detail coefficient ``(x0 - x1) * s`` where ``s``
is the scale constant 1/sqrt(2) held in its own tunable group.  The two
output passes run separately so that each stays a single-format
vectorizable region.

Variable groups: ``signal``, ``approx``, ``detail``, ``scale``.

Per pass, with P = n/2 pairs: 2P signal loads, P scale loads, one add or
sub, one mul and one store per pair, plus casts on differing edges and P
bookkeeping instructions.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from ..formats import FloatFormat
from ..stats import OpKind, RegionTag, StatsContext
from ._base import (GroupVals, KernelInput, KernelSpec, VariableSpec,
                    check_size, format_constant)
from ._rng import stream


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    if size % 2:
        raise ValueError("dwt signal length must be even")
    rng = stream(spec.name, seed)
    return KernelInput(spec.name, seed, size, dict(params),
                       {"signal": rng.unit_floats(size)})


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    x = g.quantize("signal", inp.arrays["signal"])
    pairs = inp.size // 2
    even, odd = x[0::2], x[1::2]
    scale = format_constant(g.fmt("scale"), 1.0 / math.sqrt(2.0))

    def pass_(dst: str, kind: OpKind) -> np.ndarray:
        with ctx.region(RegionTag.VECTORIZABLE):
            g.load("signal", 2 * pairs)
            a = g.convert(even, "signal", dst, pairs)
            b = g.convert(odd, "signal", dst, pairs)
            raw = a + b if kind is OpKind.ADD else a - b
            t = g.op(kind, dst, raw, pairs)
            g.load("scale", pairs)
            s = g.convert(np.float64(scale), "scale", dst, pairs)
            out = g.op(OpKind.MUL, dst, t * s, pairs)
            g.store(dst, pairs)
            ctx.record_other(pairs)
        return out

    approx = pass_("approx", OpKind.ADD)
    detail = pass_("detail", OpKind.SUB)
    return np.concatenate([approx, detail])


SPEC = KernelSpec(
    name="dwt",
    description="one-level Haar wavelet transform of an n-point signal",
    variables=(VariableSpec("signal", "array"), VariableSpec("approx", "array"),
               VariableSpec("detail", "array"), VariableSpec("scale", "scalar")),
    default_size=256,
    size_bounds=(4, 2048),
    default_params={},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.size,
)
