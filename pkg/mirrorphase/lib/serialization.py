"""Binary and text encodings shared by datasets, trajectories, and reports."""

# Types.
from typing import Dict, Tuple, Optional, Any

# Struct standard lib.
import struct

# JSON standard lib.
import json

# Path standard class.
from pathlib import Path

import numpy as np

# Errors.
from mirrorphase.lib.errors import InvalidParameterError

# Dataset binary layout.
# Header: magic, layout version, flags, n, m, k, seed, source_m, sigma.
# Body: m float64 observations, then m uint64 row indices if FLAG_ROWS,
# then m * n float64 sensing entries (row-major) if FLAG_SENSING.
# Everything is little-endian.
DATASET_MAGIC: bytes = b"MPDS"
DATASET_LAYOUT: int = 1
DATASET_HEADER: struct.Struct = struct.Struct("<4sHHQQQQQd")

FLAG_SENSING: int = 0b01
FLAG_ROWS: int = 0b10

FLOAT_ARRAY: np.dtype = np.dtype("<f8")
INDEX_ARRAY: np.dtype = np.dtype("<u8")


def pack_dataset_header(
    flags: int, n: int, m: int, k: int, seed: int, source_m: int, sigma: float
) -> bytes:
    """Serialize the dataset header."""

    return DATASET_HEADER.pack(
        DATASET_MAGIC, DATASET_LAYOUT, flags, n, m, k, seed, source_m, sigma
    )


def unpack_dataset_header(data: bytes) -> Tuple[int, int, int, int, int, int, float]:
    """
    Parse the dataset header.
    Returns the flags, n, m, k, seed, source_m, and sigma.
    """

    if len(data) < DATASET_HEADER.size:
        raise InvalidParameterError("Dataset blob is shorter than its header.")

    magic: bytes
    layout: int
    flags: int
    n: int
    m: int
    k: int
    seed: int
    source_m: int
    sigma: float
    (magic, layout, flags, n, m, k, seed, source_m, sigma) = DATASET_HEADER.unpack_from(data, 0)
    if magic != DATASET_MAGIC:
        raise InvalidParameterError("Dataset blob has an unknown magic.")
    if layout != DATASET_LAYOUT:
        raise InvalidParameterError(f"Dataset blob has unsupported layout {layout}.")
    return (flags, n, m, k, seed, source_m, sigma)


def read_array(data: bytes, cursor: int, dtype: np.dtype, count: int) -> Tuple[np.ndarray, int]:
    """Read `count` items of `dtype` at the cursor. Returns the array and the new cursor."""

    length: int = count * dtype.itemsize
    if cursor + length > len(data):
        raise InvalidParameterError("Dataset blob is truncated.")
    array: np.ndarray = np.frombuffer(data, dtype=dtype, count=count, offset=cursor)
    return (array.astype(dtype.newbyteorder("="), copy=True), cursor + length)


def format_float(value: Optional[float]) -> str:
    """Formats a float for CSV: shortest round-trip repr, empty when absent."""

    if value is None:
        return ""
    return repr(float(value))


def parse_float(value: str) -> Optional[float]:
    """Inverse of format_float."""

    if value == "":
        return None
    return float(value)


def json_ready(value: Any) -> Any:
    """Converts numpy scalars/arrays and non-finite floats to JSON-safe values."""

    if isinstance(value, dict):
        return {str(key): json_ready(value[key]) for key in value}
    if isinstance(value, (list, tuple)):
        return [json_ready(elem) for elem in value]
    if isinstance(value, np.ndarray):
        return [json_ready(elem) for elem in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number: float = float(value)
        if not np.isfinite(number):
            return None
        return number
    return value


def dump_json(report: Dict[str, Any]) -> str:
    """Serializes a report deterministically."""

    return json.dumps(json_ready(report), sort_keys=True, indent=2) + "\n"


def write_json(path: Path, report: Dict[str, Any]) -> None:
    """Writes a report as UTF-8 JSON."""

    path.write_text(dump_json(report), encoding="utf-8")
