"""Jacobi relaxation on a 2D heat grid.

Dirichlet boundary values stay fixed; each sweep replaces every interior
cell with the average of its four neighbours, for a fixed number of
iterations (``iters`` parameter) so that operation counts do not depend on
the data.  The sum of the neighbours accumulates in the ``acc`` group and
is scaled by one multiplication with the constant 0.25.

Variable groups: ``grid`` (state array), ``acc`` (sweep accumulator).

No section of this kernel is tagged vectorizable.

Per iteration, with I interior cells: 4I grid loads, 4I grid->acc casts
(when formats differ), 3I adds, I muls, I acc->grid casts, I stores and I
bookkeeping instructions.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..formats import FloatFormat
from ..stats import OpKind, StatsContext
from ._base import (GroupVals, KernelInput, KernelSpec, VariableSpec,
                    check_size, format_constant)
from ._rng import stream

_BOUNDARY = {"top": 1.0, "bottom": 0.0, "left": 0.25, "right": 0.75}


def _generate(spec: KernelSpec, seed: int, size: int, params) -> KernelInput:
    check_size(spec, size)
    rng = stream(spec.name, seed)
    grid = np.zeros((size, size), dtype=np.float64)
    grid[1:-1, 1:-1] = rng.unit_floats((size - 2) ** 2).reshape(size - 2, size - 2)
    grid[:, 0] = _BOUNDARY["left"]
    grid[:, -1] = _BOUNDARY["right"]
    grid[0, :] = _BOUNDARY["top"]
    grid[-1, :] = _BOUNDARY["bottom"]
    return KernelInput(spec.name, seed, size, dict(params), {"grid": grid})


def _run(inp: KernelInput, fmts: Mapping[str, FloatFormat], ctx: StatsContext) -> np.ndarray:
    g = GroupVals(ctx, fmts)
    iters = inp.params["iters"]
    grid = g.quantize("grid", inp.arrays["grid"])
    n = grid.shape[0]
    interior = (n - 2) * (n - 2)
    quarter = format_constant(g.fmt("acc"), 0.25)

    for _ in range(iters):
        up = grid[:-2, 1:-1]
        down = grid[2:, 1:-1]
        left = grid[1:-1, :-2]
        right = grid[1:-1, 2:]
        g.load("grid", 4 * interior)
        up = g.convert(up, "grid", "acc", interior)
        down = g.convert(down, "grid", "acc", interior)
        left = g.convert(left, "grid", "acc", interior)
        right = g.convert(right, "grid", "acc", interior)
        s = g.op(OpKind.ADD, "acc", up + down, interior)
        s = g.op(OpKind.ADD, "acc", s + left, interior)
        s = g.op(OpKind.ADD, "acc", s + right, interior)
        avg = g.op(OpKind.MUL, "acc", s * quarter, interior)
        new_interior = g.convert(avg, "acc", "grid", interior)
        g.store("grid", interior)
        ctx.record_other(interior)
        nxt = grid.copy()
        nxt[1:-1, 1:-1] = new_interior
        grid = nxt

    return grid.reshape(-1)


SPEC = KernelSpec(
    name="jacobi",
    description="Jacobi relaxation on an NxN heat grid with fixed boundary",
    variables=(VariableSpec("grid", "array"), VariableSpec("acc", "scalar")),
    default_size=16,
    size_bounds=(4, 128),
    default_params={"iters": 50},
    generate=_generate,
    run=_run,
    output_len=lambda inp: inp.size * inp.size,
)
