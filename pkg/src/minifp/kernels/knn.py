"""k-nearest-neighbour distances under the euclidean metric.

Squared differences accumulate per dataset point in the ``acc`` group, a
square root turns them into distances, and the ``dist`` group stores them.
A selection pass then moves the k smallest distances to the front, always
swapping once per pass so event counts stay data-independent; the sorted k
smallest distances are the output.

Variable groups: ``data``, ``query``, ``acc``, ``dist``.

The distance computation (including the square root) is one vectorizable
region across the n dataset points; the selection pass is scalar.  Per
feature: n data loads, n query loads, n subs, n muls, n adds; then n
sqrts, n stores.  Selection pass p (0-based) performs n-p distance loads,
n-1-p comparisons and 2 stores.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..formats import FloatFormat
from ..stats import OpKind, RegionTag, StatsContext
from ._base import GroupVals, KernelInput, KernelSpec, VariableSpec, check_size
from ._rng import stream

DIMS = 8


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    if params["k"] < 1 or params["k"] > size:
        raise ValueError(f"knn needs 1 <= k <= size, got k={params['k']}")
    rng = stream(spec.name, seed)
    data = rng.unit_floats(size * DIMS).reshape(size, DIMS)
    query = rng.unit_floats(DIMS)
    return KernelInput(spec.name, seed, size, dict(params),
                       {"data": data, "query": query})


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    n, k = inp.size, inp.params["k"]
    data = g.quantize("data", inp.arrays["data"])
    query = g.quantize("query", inp.arrays["query"])

    with ctx.region(RegionTag.VECTORIZABLE):
        acc = np.zeros(n, dtype=np.float64)
        for j in range(DIMS):
            dj = data[:, j]
            g.load("data", n)
            g.load("query", n)
            dj = g.convert(dj, "data", "acc", n)
            qj = g.convert(np.float64(query[j]), "query", "acc", n)
            diff = g.op(OpKind.SUB, "acc", dj - qj, n)
            sq = g.op(OpKind.MUL, "acc", diff * diff, n)
            acc = g.op(OpKind.ADD, "acc", acc + sq, n)
            ctx.record_other(n)
        dn = g.op(OpKind.SQRT, "acc", np.sqrt(acc), n)
        dist = g.convert(dn, "acc", "dist", n)
        g.store("dist", n)
        ctx.record_other(n)

    # Partial selection sort; the swap is unconditional so load/store
    # counts stay independent of the data.
    dist = dist.copy()
    for p in range(k):
        g.load("dist", n - p)
        ctx.record(OpKind.CMP, g.fmt("dist"), n - 1 - p)
        best = p
        for i in range(p + 1, n):
            if dist[i] < dist[best]:
                best = i
        dist[p], dist[best] = dist[best], dist[p]
        g.store("dist", 2)
        ctx.record_other(n - 1 - p)

    return dist[:k].copy()


SPEC = KernelSpec(
    name="knn",
    description="k smallest euclidean distances from a query to n points",
    variables=(VariableSpec("data", "array"), VariableSpec("query", "array"),
               VariableSpec("acc", "scalar"), VariableSpec("dist", "array")),
    default_size=96,
    size_bounds=(2, 1024),
    default_params={"k": 4},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.params["k"],
)
