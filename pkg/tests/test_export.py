"""Tests for the JSON and CSV exports."""

import numpy as np
import orjson
import pytest

from backend.storage import (
    ledger_document,
    parse_smatrix,
    read_smatrix,
    render_csv,
    smatrix_document,
    trace_rows,
    write_csv,
    write_json,
)
from backend.storage.export import RESIDUAL_HEADER, TRACE_HEADER, dumps
from logic.scattering import straight_smatrix
from logic.waves import build_ledger
from utils.errors import ExportError

K = 4.0


@pytest.fixture
def smatrix(straight_guide):
    s = straight_smatrix(straight_guide, K)
    return s.with_inverse(straight_smatrix(straight_guide, K, reverse=True))


class TestSmatrixExport:
    """Tests for scattering-matrix documents."""

    def test_round_trip(self, smatrix, tmp_path):
        """Test a written matrix reads back within the last printed digit."""
        path = write_json(smatrix_document(smatrix, 12), tmp_path / "out" / "s.json")
        back = read_smatrix(path)
        assert back.rows == smatrix.rows
        assert back.cols == smatrix.cols
        assert back.k == smatrix.k
        assert np.abs(back.entries - smatrix.entries).max() < 1e-11

    def test_document_fields(self, smatrix):
        doc = smatrix_document(smatrix, 8)
        assert doc["dimension"] == 4
        assert list(doc["rows"][0]) == [1, "TE", [0, 1], "incoming"]
        assert doc["cols"][0][3] == "outgoing"
        assert doc["inverse_residual"] < 1e-12
        assert len(doc["entries"][0][0]) == 2

    def test_deterministic_bytes(self, smatrix):
        """Test identical inputs serialize to identical bytes with sorted keys."""
        first = dumps(smatrix_document(smatrix, 10))
        assert first == dumps(smatrix_document(smatrix, 10))
        keys = list(orjson.loads(first))
        assert keys == sorted(keys)

    def test_malformed_document(self):
        with pytest.raises(ExportError):
            parse_smatrix(b'{"k": 1.0}')
        with pytest.raises(ExportError):
            parse_smatrix(b"not json")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExportError):
            read_smatrix(tmp_path / "absent.json")

    def test_unwritable_path(self, smatrix, tmp_path):
        """Test a file standing where a directory should be is reported."""
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        with pytest.raises(ExportError):
            write_json(smatrix_document(smatrix, 8), blocker / "s.json")


class TestLedgerExport:
    def test_ledger_document(self, unit_square):
        doc = ledger_document(build_ledger([unit_square], K), 8)
        assert doc["upsilon"] == 2
        assert doc["t_total"] == 5
        end = doc["ends"][0]
        assert end["kappa"] == 4
        assert len(end["gamma_waves"]) == 6
        assert len(end["evanescent"]) == 8
        assert {w["direction"] for w in end["e_waves"]} == {"incoming", "outgoing"}
        orjson.dumps(doc)


class TestCsv:
    """Tests for CSV tables."""

    def test_render(self):
        text = render_csv(("k", "name", "value"), [(1.5, "a", 1.0 / 3.0), (2.0, "b", -0.0)], 6)
        assert text.splitlines() == ["k,name,value", "1.5,a,0.333333", "2,b,0"]

    def test_trace_rows(self, smatrix):
        rows = trace_rows(smatrix)
        assert len(rows) == smatrix.dimension**2
        assert len(rows[0]) == len(TRACE_HEADER)
        k, i, j, re, im = rows[2]
        assert (i, j) == (0, 2)
        assert complex(re, im) == smatrix.entries[0, 2]

    def test_write_csv(self, tmp_path):
        path = write_csv(RESIDUAL_HEADER, [(4.0, 4, 1e-15, 2e-15)], tmp_path / "r" / "residuals.csv", 8)
        assert path.read_text(encoding="utf-8").splitlines() == ["k,dimension,unitarity,inverse", "4,4,1e-15,2e-15"]

    def test_write_csv_failure(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        with pytest.raises(ExportError):
            write_csv(TRACE_HEADER, [], blocker / "t.csv", 8)
