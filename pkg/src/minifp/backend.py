"""Array quantization backends.

Kernel evaluation spends nearly all its time rounding float64 arrays into a
target format.  Two implementations of that primitive are provided:

* ``numba`` - an ``@njit``-compiled element loop (default when numba is
  importable);
* ``numpy`` - a pure-numpy vectorized fallback.

Both produce bit-identical results.  Selection is controlled by the
``MINIFP_BACKEND`` environment variable (``numba``, ``numpy`` or unset for
auto-detection) and can be overridden at runtime with :func:`use`.

The algorithm relies on exact power-of-two scaling: with ``g`` the grid
exponent of the target format at the value's magnitude, ``x * 2^-g`` is
exact, ``rint`` applies round-half-even, and scaling back is exact, so the
whole chain performs a single correct rounding of the float64 value.
"""

from __future__ import annotations

import contextlib
import math
import os
import warnings

import numpy as np

from .formats import FloatFormat

_ENV_VAR = "MINIFP_BACKEND"


def _quantize_numpy(exp_bits: int, man_bits: int, x: np.ndarray) -> np.ndarray:
    bias = (1 << (exp_bits - 1)) - 1
    emin = 1 - bias
    max_finite = math.ldexp(2.0 - math.ldexp(1.0, -man_bits), bias)
    with np.errstate(invalid="ignore", over="ignore"):
        _, ex = np.frexp(x)
        g = np.maximum(ex - 1, emin) - man_bits
        y = np.ldexp(x, -g)
        q = np.rint(y)
        out = np.ldexp(q, g)
        out = np.where(np.abs(out) > max_finite, np.copysign(np.inf, x), out)
    return out.astype(np.float64, copy=False)


try:
    from numba import njit as _njit

    @_njit(cache=True)
    def _quantize_numba_flat(exp_bits, man_bits, x, out):  # pragma: no cover
        bias = (1 << (exp_bits - 1)) - 1
        emin = 1 - bias
        max_finite = math.ldexp(2.0 - math.ldexp(1.0, -man_bits), bias)
        for i in range(x.size):
            v = x[i]
            if v != v:
                out[i] = math.nan
                continue
            if v == math.inf or v == -math.inf:
                out[i] = v
                continue
            _, ex = math.frexp(v)
            g = ex - 1
            if g < emin:
                g = emin
            g -= man_bits
            y = math.ldexp(v, -g)
            a = abs(y)
            fl = np.floor(a)  # float-valued floor; a < 2^53 here
            r = a - fl
            if r > 0.5 or (r == 0.5 and (fl % 2.0) == 1.0):
                fl += 1.0
            res = math.ldexp(math.copysign(fl, v), g)
            if abs(res) > max_finite:
                res = math.copysign(math.inf, v)
            out[i] = res

    def _quantize_numba(exp_bits: int, man_bits: int, x: np.ndarray) -> np.ndarray:
        flat = np.ascontiguousarray(x, dtype=np.float64).reshape(-1)
        out = np.empty_like(flat)
        _quantize_numba_flat(exp_bits, man_bits, flat, out)
        return out.reshape(x.shape)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False
    _quantize_numba = None


def _resolve(name: str | None):
    if name in (None, "", "auto"):
        name = "numba" if HAVE_NUMBA else "numpy"
    if name == "numba":
        if not HAVE_NUMBA:
            warnings.warn("numba backend requested but numba is not importable; "
                          "falling back to numpy")
            return "numpy", _quantize_numpy
        return "numba", _quantize_numba
    if name == "numpy":
        return "numpy", _quantize_numpy
    warnings.warn(f"unknown {_ENV_VAR} value {name!r}; using auto-detection")
    return _resolve("auto")


ACTIVE_BACKEND, _active_fn = _resolve(os.environ.get(_ENV_VAR, "").strip().lower())


def quantize_array(fmt: FloatFormat, x: np.ndarray) -> np.ndarray:
    """Round every element of ``x`` (float64) to ``fmt``, returning float64.

    Results are the exact decoded values of the rounded bit patterns; NaNs
    collapse to a single quiet NaN value.
    """
    return _active_fn(fmt.exp_bits, fmt.man_bits, np.asarray(x, dtype=np.float64))


@contextlib.contextmanager
def use(name: str):
    """Temporarily force a backend (``numba`` or ``numpy``).  For tests and
    the backend benchmark."""
    global ACTIVE_BACKEND, _active_fn
    saved = ACTIVE_BACKEND, _active_fn
    ACTIVE_BACKEND, _active_fn = _resolve(name)
    try:
        yield
    finally:
        ACTIVE_BACKEND, _active_fn = saved


def backends() -> dict[str, object]:
    """Importable backend implementations keyed by name."""
    table: dict[str, object] = {"numpy": _quantize_numpy}
    if HAVE_NUMBA:
        table["numba"] = _quantize_numba
    return table
