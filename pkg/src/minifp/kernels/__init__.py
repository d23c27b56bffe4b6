"""Benchmark kernels with per-variable format configuration.

Six kernels cover near-sensor processing and embedded machine learning:
``jacobi``, ``knn``, ``pca``, ``dwt``, ``svm`` and ``conv``.  All floating
point work routes through the quantization backend in the configured
format of the variable producing each value, with a conversion event on
every dataflow edge between distinct storage types, so a
:class:`~minifp.stats.StatsContext` observes exactly the operation mix a
transprecision FPU would execute.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..errors import UnknownKernel
from ..formats import BINARY32, FloatFormat
from ..stats import StatsContext, new_context
from . import conv, dwt, jacobi, knn, pca, svm
from ._base import (KernelConfig, KernelInput, KernelSpec, VariableSpec,
                    format_constant)
from ._io import load_arrays, save_arrays

__all__ = [
    "KernelConfig", "KernelInput", "KernelSpec", "VariableSpec",
    "list_kernels", "get_kernel", "generate_input", "run_kernel",
    "reference_output", "save_input", "load_input", "format_constant",
]

_REGISTRY: dict[str, KernelSpec] = {
    spec.name: spec
    for spec in (jacobi.SPEC, knn.SPEC, pca.SPEC, dwt.SPEC, svm.SPEC, conv.SPEC)
}


def list_kernels() -> list[KernelSpec]:
    """All kernel specs in their canonical order."""
    return list(_REGISTRY.values())


def get_kernel(name: str) -> KernelSpec:
    try:
        return _REGISTRY[name.lower()]
    except KeyError:
        raise UnknownKernel(f"unknown kernel {name!r}; available: "
                            f"{', '.join(_REGISTRY)}") from None


def generate_input(name: str, seed: int, size: int | None = None,
                   **params: int) -> KernelInput:
    """Deterministic input data for a kernel.

    ``params`` override per-kernel defaults (for example ``iters`` for
    jacobi, ``k`` for knn, ``components``/``iters`` for pca).
    """
    spec = get_kernel(name)
    if size is None:
        size = spec.default_size
    merged = dict(spec.default_params)
    for key, value in params.items():
        if key not in merged:
            raise UnknownKernel(f"kernel {spec.name!r} has no parameter {key!r}")
        merged[key] = int(value)
    return spec.generate(spec, seed, size, merged)


def run_kernel(spec: KernelSpec, config: KernelConfig | Mapping[str, FloatFormat],
               inp: KernelInput, ctx: StatsContext) -> np.ndarray:
    """Evaluate a kernel under a format configuration, recording stats.

    Returns the flat float64 output sequence (each element is the exact
    value of a bit pattern in its producing variable's format).
    """
    if not isinstance(config, KernelConfig):
        config = KernelConfig(dict(config))
    fmts = config.validated(spec)
    with np.errstate(all="ignore"):
        return spec.run(inp, fmts, ctx)


def reference_output(spec: KernelSpec, inp: KernelInput) -> np.ndarray:
    """The all-binary32 run of the kernel, the baseline for quality metrics."""
    return run_kernel(spec, KernelConfig.uniform(spec, BINARY32), inp, new_context())


def save_input(path, inp: KernelInput) -> None:
    """Write input arrays to the golden binary layout (metadata is carried
    in the filename convention, arrays in the file)."""
    save_arrays(path, dict(inp.arrays))


def load_input(path, name: str, seed: int, size: int, **params: int) -> KernelInput:
    """Rebuild a :class:`KernelInput` from a golden file plus its metadata."""
    spec = get_kernel(name)
    merged = dict(spec.default_params)
    merged.update({k: int(v) for k, v in params.items()})
    return KernelInput(spec.name, seed, size, merged, load_arrays(path))
