"""Self-contained deterministic pseudo-random input generation.

A splitmix64 stream is used instead of numpy's generators so that golden
input files stay stable across numpy versions.  Values are produced in
[0, 1) and pre-rounded to the binary32 grid, making the all-binary32
reference run lossless from the first load.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def unit_floats(self, n: int) -> np.ndarray:
        """n float64 values in [0, 1), each exact on the binary32 grid."""
        out = np.empty(n, dtype=np.float64)
        for i in range(n):
            # Top 24 bits give a value k / 2^24, exactly a binary32 number.
            out[i] = (self.next_u64() >> 40) * 2.0**-24
        return out

    def symmetric_floats(self, n: int) -> np.ndarray:
        """n float64 values in [-1, 1), exact on the binary32 grid."""
        return self.unit_floats(n) * 2.0 - 1.0


def stream(name: str, seed: int) -> SplitMix64:
    """Stream seeded by kernel name and seed, so kernels do not share data."""
    h = 0xCBF29CE484222325
    for ch in name.encode("utf-8"):
        h = ((h ^ ch) * 0x100000001B3) & _MASK64
    return SplitMix64(h ^ (seed & _MASK64) ^ 0xA5A5A5A55A5A5A5A)
