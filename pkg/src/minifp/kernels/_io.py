"""Golden input file format.

Layout (all integers little-endian):

    magic   4 bytes  b"MFPI"
    version u32      currently 1
    count   u32      number of named arrays
    then per array:
        name_len u32, name utf-8 bytes
        ndim     u32, dims ndim x u64
        payload  float64 little-endian, C order

Scalars are stored as zero-dimensional arrays.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ..errors import MinifpError

MAGIC = b"MFPI"
VERSION = 1


class GoldenFileError(MinifpError):
    pass


def save_arrays(path: str | Path, arrays: dict[str, np.ndarray]) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(arrays)))
        for name, arr in arrays.items():
            data = np.ascontiguousarray(arr, dtype=np.float64)
            raw = name.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)
            fh.write(struct.pack("<I", data.ndim))
            for d in data.shape:
                fh.write(struct.pack("<Q", d))
            fh.write(data.astype("<f8").tobytes())


def load_arrays(path: str | Path) -> dict[str, np.ndarray]:
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise GoldenFileError(f"{path}: bad magic")
        version, count = struct.unpack("<II", fh.read(8))
        if version != VERSION:
            raise GoldenFileError(f"{path}: unsupported version {version}")
        arrays: dict[str, np.ndarray] = {}
        for _ in range(count):
            (name_len,) = struct.unpack("<I", fh.read(4))
            name = fh.read(name_len).decode("utf-8")
            (ndim,) = struct.unpack("<I", fh.read(4))
            shape = tuple(struct.unpack("<Q", fh.read(8))[0] for _ in range(ndim))
            n = 1
            for d in shape:
                n *= d
            payload = fh.read(8 * n)
            if len(payload) != 8 * n:
                raise GoldenFileError(f"{path}: truncated payload for {name!r}")
            arrays[name] = np.frombuffer(payload, dtype="<f8").reshape(shape).copy()
        return arrays
