"""Principal component analysis via the power method with deflation.

The kernel mean-centers the data, forms the covariance matrix, then
extracts the leading components one at a time: a fixed number of power
iterations per component (deterministic operation counts), followed by a
rank-one deflation of the covariance.  Each component's sign is
canonicalized so its first coordinate is non-negative, keeping outputs
comparable across precision configurations.  The output lists, per
component, the eigenvalue estimate followed by the component vector.

Variable groups: ``data`` (input and centered matrix), ``mean`` (column
means), ``cov`` (covariance matrix), ``vec`` (iteration vectors and
eigenvalues).

Only the centering step is tagged vectorizable; the remaining steps run
scalar, which matches the mostly serial character of this kernel.
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

DIMS = 6


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    if params["components"] < 1 or params["components"] > DIMS:
        raise ValueError(f"pca needs 1 <= components <= {DIMS}")
    if params["iters"] < 1:
        raise ValueError("pca needs at least one power iteration")
    rng = stream(spec.name, seed)
    data = rng.unit_floats(size * DIMS).reshape(size, DIMS)
    return KernelInput(spec.name, seed, size, dict(params), {"data": data})


def _fold_sum(g: GroupVals, group: str, terms: np.ndarray) -> float:
    """Sequential rounded accumulation of a 1-D array, starting from zero."""
    acc = np.float64(0.0)
    for t in terms:
        acc = g.op(OpKind.ADD, group, acc + t, 1)
    return acc


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    n, d = inp.size, DIMS
    comps, iters = inp.params["components"], inp.params["iters"]
    data = g.quantize("data", inp.arrays["data"])

    # Column means.
    count_c = format_constant(g.fmt("mean"), float(n))
    mean = np.zeros(d, dtype=np.float64)
    for j in range(d):
        g.load("data", n)
        col = g.convert(data[:, j], "data", "mean", n)
        mean[j] = _fold_sum(g, "mean", col)
        mean[j] = g.op(OpKind.DIV, "mean", mean[j] / count_c, 1)
        g.store("mean", 1)
        ctx.record_other(n)

    # Centering, vectorized across rows column by column.
    centered = np.empty_like(data)
    with ctx.region(RegionTag.VECTORIZABLE):
        for j in range(d):
            g.load("data", n)
            g.load("mean", n)
            mj = g.convert(np.float64(mean[j]), "mean", "data", n)
            centered[:, j] = g.op(OpKind.SUB, "data", data[:, j] - mj, n)
            g.store("data", n)
            ctx.record_other(n)

    # Covariance, accumulating all d*d entries row by row.
    cov = np.zeros((d, d), dtype=np.float64)
    for i in range(n):
        g.load("data", 2 * d * d)
        row = g.convert(centered[i], "data", "cov", 2 * d * d)
        outer = g.op(OpKind.MUL, "cov", row[:, None] * row[None, :], d * d)
        cov = g.op(OpKind.ADD, "cov", cov + outer, d * d)
        ctx.record_other(d * d)
    dof_c = format_constant(g.fmt("cov"), float(n - 1))
    cov = g.op(OpKind.DIV, "cov", cov / dof_c, d * d)
    g.store("cov", d * d)

    # Power iterations with deflation.
    out = np.empty(comps * (d + 1), dtype=np.float64)
    v_init = format_constant(g.fmt("vec"), 1.0 / math.sqrt(d))
    for c in range(comps):
        v = np.full(d, v_init, dtype=np.float64)
        lam = np.float64(0.0)
        for _ in range(iters):
            # w = cov @ v, accumulated column by column.
            w = np.zeros(d, dtype=np.float64)
            g.load("cov", d * d)
            g.load("vec", d * d)
            cov_v = g.convert(cov, "cov", "vec", d * d)
            for b in range(d):
                prod = g.op(OpKind.MUL, "vec", cov_v[:, b] * v[b], d)
                w = g.op(OpKind.ADD, "vec", w + prod, d)
            g.store("vec", d)
            # Rayleigh estimate lam = v . w.
            g.load("vec", 2 * d)
            prods = g.op(OpKind.MUL, "vec", v * w, d)
            lam = _fold_sum(g, "vec", prods)
            # Normalize w into the next v.
            g.load("vec", d)
            sq = g.op(OpKind.MUL, "vec", w * w, d)
            norm = g.op(OpKind.SQRT, "vec", np.sqrt(_fold_sum(g, "vec", sq)), 1)
            g.load("vec", d)
            v = g.op(OpKind.DIV, "vec", w / norm, d)
            g.store("vec", d)
            ctx.record_other(d * d + 3 * d)

        # Sign canonicalization: first coordinate non-negative.
        g.load("vec", 1)
        ctx.record(OpKind.CMP, g.fmt("vec"), 1)
        flip = -1.0 if v[0] < 0 else 1.0
        g.load("vec", d)
        v = g.op(OpKind.MUL, "vec", v * flip, d)
        g.store("vec", d + 1)
        out[c * (d + 1)] = lam
        out[c * (d + 1) + 1:(c + 1) * (d + 1)] = v

        if c + 1 < comps:
            # Deflate: cov -= lam * v v^T.
            g.load("cov", d * d)
            g.load("vec", 3 * d * d)
            lam_c = g.convert(np.float64(lam), "vec", "cov", d * d)
            v_c = g.convert(v, "vec", "cov", 2 * d * d)
            col = g.op(OpKind.MUL, "cov", lam_c * v_c, d * d)
            outer = g.op(OpKind.MUL, "cov", col[:, None] * v_c[None, :], d * d)
            cov = g.op(OpKind.SUB, "cov", cov - outer, d * d)
            g.store("cov", d * d)
            ctx.record_other(d * d)

    return out


SPEC = KernelSpec(
    name="pca",
    description="leading principal components of an n x 6 data matrix",
    variables=(VariableSpec("data", "array"), VariableSpec("mean", "array"),
               VariableSpec("cov", "array"), VariableSpec("vec", "array")),
    default_size=48,
    size_bounds=(8, 1024),
    default_params={"components": 2, "iters": 12},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.params["components"] * (DIMS + 1),
)
