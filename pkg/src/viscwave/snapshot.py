"""VWAV snapshot files.

Little-endian layout:

    offset  size  field
         0     4  magic b"VWAV"
         4     4  version (u32, = 1)
         8     8  grid_n (u64)
        16     8  t (f64)
        24    40  delta, beta, epsilon, alpha1, alpha2 (f64 each)
        64     1  variant code (u8: 0 linear, 1 simplified, 2 full)
        65     3  zero padding
        68  8N    physical samples of f (f64)
    68+8N   8N    physical samples of f_t (f64)
"""

from pathlib import Path

import numpy as np
from loguru import logger
from pydantic import ValidationError

from spectral import Grid, forward_transform, inverse_transform
from viscwave.params import ModelParams, Variant, WaveState

MAGIC = b"VWAV"
VERSION = 1

HEADER_DTYPE = np.dtype(
    [
        ("magic", "S4"),
        ("version", "<u4"),
        ("grid_n", "<u8"),
        ("t", "<f8"),
        ("params", "<f8", (5,)),
        ("variant", "u1"),
        ("pad", "u1", (3,)),
    ]
)
HEADER_SIZE = HEADER_DTYPE.itemsize
SAMPLE_DTYPE = np.dtype("<f8")


class SnapshotFormatError(ValueError):
    """Malformed snapshot; offset is the byte position where reading failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def _field_offset(name: str) -> int:
    return HEADER_DTYPE.fields[name][1]


def encode_snapshot(s: WaveState, p: ModelParams) -> bytes:
    """Serialize a state and its parameters to VWAV bytes."""
    header = np.zeros((), dtype=HEADER_DTYPE)
    header["magic"] = MAGIC
    header["version"] = VERSION
    header["grid_n"] = s.grid.N
    header["t"] = s.t
    header["params"] = (p.delta, p.beta, p.epsilon, p.alpha1, p.alpha2)
    header["variant"] = p.variant.code

    f = np.ascontiguousarray(inverse_transform(s.f), dtype=SAMPLE_DTYPE)
    ft = np.ascontiguousarray(inverse_transform(s.ft), dtype=SAMPLE_DTYPE)
    return header.tobytes() + f.tobytes() + ft.tobytes()


def decode_snapshot(data: bytes) -> tuple[WaveState, ModelParams]:
    """Parse VWAV bytes.

    Raises:
        SnapshotFormatError: On bad magic, unsupported version, truncation,
            trailing bytes or header values that do not form a valid run
    """
    if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
        if len(data) < len(MAGIC):
            raise SnapshotFormatError(f"truncated file: {len(data)} bytes, no magic", len(data))
        raise SnapshotFormatError(f"bad magic {data[:4]!r}, expected {MAGIC!r}", 0)
    if len(data) < HEADER_SIZE:
        raise SnapshotFormatError(
            f"truncated header: expected {HEADER_SIZE} bytes, got {len(data)}", len(data)
        )

    header = np.frombuffer(data, dtype=HEADER_DTYPE, count=1)[0]
    version = int(header["version"])
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported version {version}", _field_offset("version"))
    if np.any(header["pad"] != 0):
        raise SnapshotFormatError("non-zero padding", _field_offset("pad"))

    n = int(header["grid_n"])
    try:
        grid = Grid(n)
    except ValueError as e:
        raise SnapshotFormatError(f"invalid grid_n {n}: {e}", _field_offset("grid_n")) from None

    expected = HEADER_SIZE + 2 * n * SAMPLE_DTYPE.itemsize
    if len(data) < expected:
        raise SnapshotFormatError(
            f"truncated payload: expected {expected} bytes for grid_n={n}, got {len(data)}", len(data)
        )
    if len(data) > expected:
        raise SnapshotFormatError(f"{len(data) - expected} trailing bytes", expected)

    try:
        variant = Variant.from_code(int(header["variant"]))
    except ValueError as e:
        raise SnapshotFormatError(str(e), _field_offset("variant")) from None
    delta, beta, epsilon, alpha1, alpha2 = (float(v) for v in header["params"])
    try:
        params = ModelParams(
            delta=delta, beta=beta, epsilon=epsilon, alpha1=alpha1, alpha2=alpha2, variant=variant
        )
    except ValidationError as e:
        raise SnapshotFormatError(f"invalid parameters: {e.errors()[0]['msg']}", _field_offset("params")) from None

    samples = np.frombuffer(data, dtype=SAMPLE_DTYPE, count=2 * n, offset=HEADER_SIZE).astype(np.float64)
    if not np.all(np.isfinite(samples)):
        bad = int(np.argmax(~np.isfinite(samples)))
        raise SnapshotFormatError("non-finite sample", HEADER_SIZE + bad * SAMPLE_DTYPE.itemsize)

    state = WaveState(
        forward_transform(samples[:n], grid),
        forward_transform(samples[n:], grid),
        float(header["t"]),
    )
    return state, params


def write_snapshot(s: WaveState, p: ModelParams, path: str | Path) -> None:
    """Write a VWAV snapshot; fields read from a snapshot are written back byte for byte."""
    path = Path(path)
    try:
        path.write_bytes(encode_snapshot(s, p))
    except OSError as e:
        logger.error(f"Failed to write snapshot {path}: {e}")
        raise
    logger.debug(f"Snapshot written: {path} (t={s.t:.6g}, N={s.grid.N})")


def read_snapshot(path: str | Path) -> tuple[WaveState, ModelParams]:
    """Read a VWAV snapshot.

    Returns:
        The state (fields remember their samples) and the stored parameters

    Raises:
        SnapshotFormatError: If the file is not a valid version-1 snapshot
    """
    path = Path(path)
    state, params = decode_snapshot(path.read_bytes())
    logger.debug(f"Snapshot read: {path} (t={state.t:.6g}, N={state.grid.N}, variant={params.variant.value})")
    return state, params
