"""Tests for the on-disk formats: snapshots with sidecars, error CSVs, and
key=value files."""

import numpy as np
import pytest

from calmedkse.experiments import ErrorSeries, make_initial
from calmedkse.spectral import Field, build_grid
from calmedkse.storage import (
    load_snapshot,
    read_error_csv,
    read_keyvalue,
    sidecar_path,
    write_error_csv,
    write_keyvalue,
    write_snapshot,
)


class TestSnapshots:
    def test_round_trip_bit_identical_vector(self, tmp_path):
        g = build_grid(64)
        u0 = make_initial("grad-sines", g, "vector")
        path = str(tmp_path / "snap.bin")
        meta = {"form": "vector", "lambda": 4.1, "epsilon": 0.1, "kind": "type3", "t": 2.0, "dt": 4.2943e-4}
        write_snapshot(path, u0, meta)
        loaded, got = load_snapshot(path)
        assert np.array_equal(loaded.physical, u0.physical)
        assert loaded.components == 2
        assert got["n"] == 64
        assert got["lambda"] == 4.1
        assert got["epsilon"] == 0.1
        assert got["t"] == 2.0
        assert got["dt"] == 4.2943e-4
        assert got["kind"] == "type3"
        assert got["shape"] == "vector"

    def test_round_trip_scalar(self, tmp_path):
        g = build_grid(32)
        phi = make_initial("grad-sines", g, "scalar")
        path = str(tmp_path / "phi.bin")
        write_snapshot(path, phi, {"t": 0.0})
        loaded, got = load_snapshot(path)
        assert np.array_equal(loaded.physical, phi.physical)
        assert loaded.components == 1
        assert got["shape"] == "scalar"

    def test_payload_layout_is_little_endian_row_major(self, tmp_path):
        g = build_grid(8)
        vals = np.arange(2 * 8 * 8, dtype=np.float64).reshape(2, 8, 8)
        path = str(tmp_path / "layout.bin")
        write_snapshot(path, Field.from_physical(vals), {})
        raw = np.frombuffer(open(path, "rb").read(), dtype="<f8")
        assert np.array_equal(raw, np.arange(128, dtype=np.float64))

    def test_size_mismatch_rejected(self, tmp_path):
        g = build_grid(32)
        phi = make_initial("grad-sines", g, "scalar")
        path = str(tmp_path / "bad.bin")
        write_snapshot(path, phi, {})
        # truncate payload
        data = open(path, "rb").read()
        open(path, "wb").write(data[:-8])
        with pytest.raises(ValueError, match="payload"):
            load_snapshot(path)

    def test_metadata_n_mismatch_rejected(self, tmp_path):
        g = build_grid(64)
        phi = make_initial("grad-sines", g, "scalar")
        path = str(tmp_path / "mismatch.bin")
        write_snapshot(path, phi, {})
        meta = read_keyvalue(sidecar_path(path))
        meta["n"] = "128"
        write_keyvalue(sidecar_path(path), meta)
        with pytest.raises(ValueError, match="payload"):
            load_snapshot(path)

    def test_missing_files_rejected(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_snapshot(str(tmp_path / "absent.bin"))
        payload = tmp_path / "orphan.bin"
        payload.write_bytes(b"\x00" * 64)
        with pytest.raises(FileNotFoundError):
            load_snapshot(str(payload))

    def test_unsupported_layout_version(self, tmp_path):
        g = build_grid(32)
        phi = make_initial("grad-sines", g, "scalar")
        path = str(tmp_path / "v99.bin")
        write_snapshot(path, phi, {})
        meta = read_keyvalue(sidecar_path(path))
        meta["layout_version"] = "99"
        write_keyvalue(sidecar_path(path), meta)
        with pytest.raises(ValueError, match="layout_version"):
            load_snapshot(path)


class TestErrorCsv:
    def test_round_trip_exact(self, tmp_path):
        rows = [
            ErrorSeries(epsilon=0.1, err_linf_l2=0.123456789012345678, err_linf_linf=1e-17, err_l2_h2=np.pi),
            ErrorSeries(epsilon=1e-3, err_linf_l2=4.2943e-4, err_linf_linf=2.0 / 3.0, err_l2_h2=1e300),
        ]
        path = str(tmp_path / "errors.csv")
        write_error_csv(path, rows)
        header = open(path).readline().strip()
        assert header == "epsilon,err_linf_l2,err_linf_linf,err_l2_h2"
        back = read_error_csv(path)
        for row, got in zip(rows, back):
            assert got["epsilon"] == row.epsilon
            assert got["err_linf_l2"] == row.err_linf_l2
            assert got["err_linf_linf"] == row.err_linf_linf
            assert got["err_l2_h2"] == row.err_l2_h2

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            read_error_csv(str(path))


class TestKeyValue:
    def test_round_trip_and_comments(self, tmp_path):
        path = str(tmp_path / "conf.txt")
        write_keyvalue(path, {"n": 128, "dt": 4.2943e-4, "kind": "type1"})
        with open(path, "a") as fh:
            fh.write("# a comment\n\n")
        got = read_keyvalue(path)
        assert got == {"n": "128", "dt": repr(4.2943e-4), "kind": "type1"}

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("just some words\n")
        with pytest.raises(ValueError, match="key=value"):
            read_keyvalue(str(path))
