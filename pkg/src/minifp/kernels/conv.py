"""5x5 same-padding convolution over a single-channel image.

The image is zero-padded by two pixels so every output pixel executes
exactly 25 multiply-accumulate steps regardless of position.  Products and
sums accumulate in the ``acc`` group, which is also the storage format of
the output.

Variable groups: ``image``, ``weights``, ``acc``.

The whole per-pixel pipeline is one vectorizable region (independent
across pixels).  With P = N*N output pixels: 25P image loads, 25P weight
loads, 25P muls, 25P adds, P stores, plus 25P casts per differing operand
edge and 25P bookkeeping instructions.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..formats import FloatFormat
from ..stats import OpKind, RegionTag, StatsContext
from ._base import GroupVals, KernelInput, KernelSpec, VariableSpec, check_size
from ._rng import stream

TAPS = 5


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    rng = stream(spec.name, seed)
    image = rng.unit_floats(size * size).reshape(size, size)
    weights = rng.symmetric_floats(TAPS * TAPS).reshape(TAPS, TAPS)
    return KernelInput(spec.name, seed, size, dict(params),
                       {"image": image, "weights": weights})


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    n = inp.size
    pixels = n * n
    image = g.quantize("image", inp.arrays["image"])
    weights = g.quantize("weights", inp.arrays["weights"])
    padded = np.zeros((n + TAPS - 1, n + TAPS - 1), dtype=np.float64)
    padded[2:-2, 2:-2] = image

    with ctx.region(RegionTag.VECTORIZABLE):
        acc = np.zeros((n, n), dtype=np.float64)
        for dy in range(TAPS):
            for dx in range(TAPS):
                px = padded[dy:dy + n, dx:dx + n]
                g.load("image", pixels)
                g.load("weights", pixels)
                px = g.convert(px, "image", "acc", pixels)
                w = g.convert(np.float64(weights[dy, dx]), "weights", "acc", pixels)
                prod = g.op(OpKind.MUL, "acc", px * w, pixels)
                acc = g.op(OpKind.ADD, "acc", acc + prod, pixels)
                ctx.record_other(pixels)
        g.store("acc", pixels)

    return acc.reshape(-1)


SPEC = KernelSpec(
    name="conv",
    description="5x5 zero-padded convolution on an NxN image",
    variables=(VariableSpec("image", "array"), VariableSpec("weights", "array"),
               VariableSpec("acc", "scalar")),
    default_size=16,
    size_bounds=(5, 64),
    default_params={},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.size * inp.size,
)
