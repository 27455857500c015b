import struct

import numpy as np
import pytest

from spectral import SpectralField, forward_transform
from viscwave.diagnostics import CSV_COLUMNS, diagnostics_record
from viscwave.output import RunWriter, read_diagnostics, snapshot_name
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.snapshot import (
    HEADER_SIZE,
    SnapshotFormatError,
    decode_snapshot,
    encode_snapshot,
    read_snapshot,
    write_snapshot,
)
from viscwave.timestepper import SimConfig, simulate

PARAMS = ModelParams(delta=0.1, beta=0.01, epsilon=0.5, alpha1=0.05, alpha2=0.2, variant=Variant.FULL)


@pytest.fixture
def sampled_state(grid64, rng):
    return WaveState(
        forward_transform(rng.standard_normal(64), grid64),
        forward_transform(rng.standard_normal(64), grid64),
        1.25,
    )


# Layout

def test_header_is_68_bytes():
    assert HEADER_SIZE == 68


def test_encoded_layout(sampled_state):
    data = encode_snapshot(sampled_state, PARAMS)
    assert len(data) == 68 + 2 * 64 * 8
    assert data[:4] == b"VWAV"
    assert struct.unpack_from("<I", data, 4) == (1,)
    assert struct.unpack_from("<Q", data, 8) == (64,)
    assert struct.unpack_from("<d", data, 16) == (1.25,)
    assert struct.unpack_from("<5d", data, 24) == (0.1, 0.01, 0.5, 0.05, 0.2)
    assert data[64:68] == b"\x02\x00\x00\x00"
    assert np.array_equal(np.frombuffer(data, "<f8", 64, 68), sampled_state.f.samples)
    assert np.array_equal(np.frombuffer(data, "<f8", 64, 68 + 512), sampled_state.ft.samples)


# Round trips

def test_write_then_read(tmp_path, sampled_state):
    path = tmp_path / "state.vwav"
    write_snapshot(sampled_state, PARAMS, path)
    state, params = read_snapshot(path)
    assert params == PARAMS
    assert state.t == 1.25
    assert np.array_equal(state.f.coeffs, sampled_state.f.coeffs)
    assert np.array_equal(state.ft.coeffs, sampled_state.ft.coeffs)


def test_read_then_write_is_byte_identical(tmp_path, sampled_state):
    first = tmp_path / "first.vwav"
    second = tmp_path / "second.vwav"
    write_snapshot(sampled_state, PARAMS, first)
    state, params = read_snapshot(first)
    write_snapshot(state, params, second)
    assert first.read_bytes() == second.read_bytes()


def test_spectral_fields_survive_synthesis(grid64, random_state):
    state = random_state(grid64)
    decoded, _ = decode_snapshot(encode_snapshot(state, PARAMS))
    assert decoded.f.max_abs_difference(state.f) < 1e-14
    assert decoded.ft.max_abs_difference(state.ft) < 1e-14


# Format errors

@pytest.fixture
def encoded(sampled_state):
    return encode_snapshot(sampled_state, PARAMS)


def test_bad_magic(encoded):
    with pytest.raises(SnapshotFormatError, match="bad magic") as info:
        decode_snapshot(b"XWAV" + encoded[4:])
    assert info.value.offset == 0


def test_unsupported_version(encoded):
    data = encoded[:4] + struct.pack("<I", 2) + encoded[8:]
    with pytest.raises(SnapshotFormatError, match="unsupported version 2") as info:
        decode_snapshot(data)
    assert info.value.offset == 4


@pytest.mark.parametrize("length", [2, 40, 68, 500, 68 + 1023])
def test_truncation_names_the_offset(encoded, length):
    with pytest.raises(SnapshotFormatError, match="truncated") as info:
        decode_snapshot(encoded[:length])
    assert info.value.offset == length


def test_trailing_bytes(encoded):
    with pytest.raises(SnapshotFormatError, match="3 trailing bytes") as info:
        decode_snapshot(encoded + b"\x00\x00\x00")
    assert info.value.offset == len(encoded)


def test_non_zero_padding(encoded):
    with pytest.raises(SnapshotFormatError, match="padding") as info:
        decode_snapshot(encoded[:66] + b"\x01" + encoded[67:])
    assert info.value.offset == 65


def test_invalid_grid_size(encoded):
    data = encoded[:8] + struct.pack("<Q", 7) + encoded[16:]
    with pytest.raises(SnapshotFormatError, match="invalid grid_n 7") as info:
        decode_snapshot(data)
    assert info.value.offset == 8


def test_unknown_variant_code(encoded):
    with pytest.raises(SnapshotFormatError, match="Unknown variant code") as info:
        decode_snapshot(encoded[:64] + b"\x09" + encoded[65:])
    assert info.value.offset == 64


def test_non_finite_sample(encoded):
    data = encoded[: 68 + 16] + struct.pack("<d", np.nan) + encoded[68 + 24 :]
    with pytest.raises(SnapshotFormatError, match="non-finite sample") as info:
        decode_snapshot(data)
    assert info.value.offset == 68 + 16


# Run output directory

def test_run_writer_produces_snapshots_and_csv(tmp_path, grid64):
    params = ModelParams(delta=0.05, beta=1e-3, epsilon=0.5)
    init = WaveState(forward_transform(0.05 * np.cos(grid64.points), grid64), SpectralField.zeros(grid64))
    cfg = SimConfig(dt=0.1, t_end=1.0, snapshot_every=4, diagnostics_every=2)
    with RunWriter(tmp_path / "run", params) as writer:
        simulate(init, params, cfg, writer)
        writer.write_summary({"records": 6})

    names = sorted(p.name for p in (tmp_path / "run").glob("*.vwav"))
    assert names == [snapshot_name(0), snapshot_name(4), snapshot_name(8)]
    assert snapshot_name(8) == "snap_000008.vwav"

    header = (tmp_path / "run" / "diagnostics.csv").read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    rows = read_diagnostics(tmp_path / "run" / "diagnostics.csv")
    assert len(rows) == 10 // 2 + 1
    assert [row["t"] for row in rows] == pytest.approx([0.0, 0.2, 0.4, 0.6, 0.8, 1.0])
    assert writer.snapshots_written == 3
    assert (tmp_path / "run" / "summary.json").exists()


def test_run_writer_rejects_rows_before_open(tmp_path, grid64, random_state):
    writer = RunWriter(tmp_path, PARAMS)
    with pytest.raises(RuntimeError, match="before open"):
        writer(diagnostics_record(random_state(grid64), PARAMS))
