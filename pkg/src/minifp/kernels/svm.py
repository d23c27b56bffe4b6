"""Linear support-vector-machine decision function.

For each of m input samples the kernel evaluates ``w . x + b`` and writes
the margin.  Accumulation runs in the ``acc`` group, which is also the
output storage format.  The whole evaluation is independent across samples
and forms a single vectorizable region.

Variable groups: ``samples``, ``weights``, ``bias``, ``acc``.

With m samples and d features: per feature, m sample loads, m weight
loads, m muls and m adds; then m bias loads, m adds and m stores, plus
casts on differing edges and m bookkeeping instructions per feature.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..formats import FloatFormat
from ..stats import OpKind, RegionTag, StatsContext
from ._base import GroupVals, KernelInput, KernelSpec, VariableSpec, check_size
from ._rng import stream

FEATURES = 16


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    rng = stream(spec.name, seed)
    samples = rng.unit_floats(size * FEATURES).reshape(size, FEATURES)
    weights = rng.symmetric_floats(FEATURES)
    bias = rng.symmetric_floats(1).reshape(())
    return KernelInput(spec.name, seed, size, dict(params),
                       {"samples": samples, "weights": weights, "bias": bias})


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    m = inp.size
    samples = g.quantize("samples", inp.arrays["samples"])
    weights = g.quantize("weights", inp.arrays["weights"])
    bias = g.quantize("bias", inp.arrays["bias"])

    with ctx.region(RegionTag.VECTORIZABLE):
        acc = np.zeros(m, dtype=np.float64)
        for j in range(FEATURES):
            xj = samples[:, j]
            g.load("samples", m)
            g.load("weights", m)
            xj = g.convert(xj, "samples", "acc", m)
            wj = g.convert(np.float64(weights[j]), "weights", "acc", m)
            prod = g.op(OpKind.MUL, "acc", xj * wj, m)
            acc = g.op(OpKind.ADD, "acc", acc + prod, m)
            ctx.record_other(m)
        g.load("bias", m)
        b = g.convert(np.float64(bias), "bias", "acc", m)
        acc = g.op(OpKind.ADD, "acc", acc + b, m)
        g.store("acc", m)

    return acc


SPEC = KernelSpec(
    name="svm",
    description="linear SVM decision margins for m samples",
    variables=(VariableSpec("samples", "array"), VariableSpec("weights", "array"),
               VariableSpec("bias", "scalar"), VariableSpec("acc", "scalar")),
    default_size=48,
    size_bounds=(4, 1024),
    default_params={},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.size,
)
