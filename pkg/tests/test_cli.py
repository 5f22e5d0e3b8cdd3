"""End-to-end tests for the waveguide-scatter command line."""

import math

import orjson
import pytest

from app.cli import build_parser, main, retained_frequencies
from backend.run_config import parse_run_config
from utils import WSLogger

SQUARE = "geometry.kind = rectangle\ngeometry.a = 1\ngeometry.b = 1\n"
STRAIGHT = "geometry.preset = demo-straight\n"
STEP = "geometry.preset = demo-step\n"


def _run(command: str, path, *extra: str) -> int:
    return main([command, "--config", str(path), *extra])


class TestModes:
    def test_csv_table(self, write_config, capsys):
        """Test the eigenvalue table of the unit square up to mu = 25."""
        path = write_config(SQUARE + "solve.cutoff = 25\noutput.format = csv\n")
        assert _run("modes", path) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "end,bc,index,mu,label,rel_error"
        assert len(lines) == 1 + 1 + 4
        assert lines[1].startswith("1,dirichlet,0,19.7392088022")
        assert lines[2] == "1,neumann,0,0,const,"

    def test_json_to_file(self, write_config, tmp_path):
        path = write_config(SQUARE + "solve.cutoff = 12\nsolve.bc = neumann\n")
        out = tmp_path / "modes.json"
        assert _run("modes", path, "--out", str(out)) == 0
        records = orjson.loads(out.read_bytes())["modes"]
        assert [r["label"] for r in records] == ["const", "0,1", "1,0"]
        assert records[1]["mu"] == pytest.approx(math.pi**2)


class TestThresholds:
    def test_square_up_to_eight(self, write_config, capsys):
        path = write_config(SQUARE + "solve.k_max = 8\n")
        assert _run("thresholds", path) == 0
        rows = orjson.loads(capsys.readouterr().out)["thresholds"]
        assert len(rows) == 6
        assert rows[0] == {"k": pytest.approx(math.pi), "end": 1, "bc": "neumann", "multiplicity": 2}
        assert [r["bc"] for r in rows[1:3]] == ["dirichlet", "neumann"]
        assert rows[1]["k"] == pytest.approx(math.sqrt(2.0) * math.pi)

    def test_empty_table(self, write_config, capsys):
        """Test no threshold below k_max is a successful empty run."""
        path = write_config(SQUARE + "solve.k_max = 3\n")
        assert _run("thresholds", path) == 0
        assert orjson.loads(capsys.readouterr().out) == {"thresholds": []}

    def test_needs_k_max(self, write_config):
        assert _run("thresholds", write_config(SQUARE)) == 2


class TestLedger:
    def test_unit_square(self, write_config, capsys):
        path = write_config(SQUARE + "solve.k = 4\n")
        assert _run("ledger", path) == 0
        ledger = orjson.loads(capsys.readouterr().out)["ledgers"][0]
        assert (ledger["upsilon"], ledger["t_total"]) == (2, 5)

    def test_on_threshold(self, write_config):
        """Test a single frequency on a threshold is a solver-class failure."""
        path = write_config(SQUARE + f"solve.k = {math.pi!r}\n")
        assert _run("ledger", path) == 3


class TestScatter:
    def test_straight_sweep(self, write_config, tmp_path):
        """Test one JSON export per frequency plus the residual table."""
        text = "sweep.k_start = 3.5\nsweep.k_end = 4.4\nsweep.samples = 4\noutput.path = results\n"
        path = write_config(STRAIGHT + text)
        assert _run("scatter", path) == 0
        results = tmp_path / "results"
        names = sorted(p.name for p in results.glob("smatrix_*.json"))
        assert names == [f"smatrix_{i:03d}_k{k:.6f}.json" for i, k in enumerate((3.5, 3.8, 4.1, 4.4))]
        document = orjson.loads((results / "smatrix_002_k4.100000.json").read_bytes())
        assert document["dimension"] == 4
        assert document["unitarity_residual"] < 1e-12
        residuals = (results / "residuals.csv").read_text(encoding="utf-8").splitlines()
        assert residuals[0] == "k,dimension,unitarity,inverse"
        assert len(residuals) == 5

    def test_threshold_point_dropped(self, write_config, tmp_path, capsys):
        """Test a sweep point on the first threshold is skipped with a notice."""
        k_end = 2.0 * math.pi - 3.0
        path = write_config(STRAIGHT + f"sweep.k_start = 3.0\nsweep.k_end = {k_end!r}\nsweep.samples = 3\n")
        assert _run("scatter", path, "--out", str(tmp_path / "sweep")) == 0
        assert "Dropped k near thresholds" in capsys.readouterr().err
        assert len(list((tmp_path / "sweep").glob("smatrix_*.json"))) == 2

    def test_close_frequencies_keep_separate_files(self, write_config, tmp_path):
        """Test sweep points that agree to six decimals still get one file each."""
        text = "sweep.k_start = 3.5\nsweep.k_end = 3.5000004\nsweep.samples = 3\n"
        path = write_config(STRAIGHT + text)
        assert _run("scatter", path, "--out", str(tmp_path / "close")) == 0
        names = sorted(p.name for p in (tmp_path / "close").glob("smatrix_*.json"))
        assert names == [f"smatrix_{i:03d}_k3.500000.json" for i in range(3)]

    def test_retained_frequencies(self):
        text = "sweep.k_start = 3.0\nsweep.k_end = 3.3\nsweep.samples = 31\nsweep.skip_radius = 0.002\n"
        config = parse_run_config(STRAIGHT + text)
        kept, dropped = retained_frequencies(config)
        assert dropped.tolist() == pytest.approx([3.14])
        assert len(kept) == 30

    def test_empty_band(self, write_config, tmp_path):
        """Test a sweep whose only point is on a threshold exits with 4."""
        path = write_config(STRAIGHT + f"sweep.k_start = {math.pi!r}\nsweep.k_end = 4\nsweep.samples = 1\n")
        assert _run("scatter", path, "--out", str(tmp_path / "none")) == 4

    def test_step_trace(self, write_config, tmp_path):
        """Test a CSV sweep of the Dirichlet step writes the entry trace."""
        path = write_config(
            STEP + "solve.block = dirichlet\nsolve.truncation = 20\nsolve.k = 4.5\noutput.format = csv\n"
        )
        assert _run("scatter", path, "--out", str(tmp_path / "step")) == 0
        trace = (tmp_path / "step" / "trace.csv").read_text(encoding="utf-8").splitlines()
        assert trace[0] == "k,i,j,re,im"
        assert len(trace) == 1 + 9

    def test_needs_junction(self, write_config, tmp_path):
        path = write_config(SQUARE + "solve.k = 4\n")
        assert _run("scatter", path, "--out", str(tmp_path / "x")) == 2


class TestRadiate:
    def test_modal_source(self, write_config, capsys):
        """Test formula and direct amplitudes agree for a TE source."""
        path = write_config(STRAIGHT + "solve.k = 4\nsource.family = TE\nsource.mode = 1\n")
        assert _run("radiate", path) == 0
        rows = orjson.loads(capsys.readouterr().out)["radiation"]
        assert len(rows) == 4
        assert max(r["difference"] for r in rows) < 1e-6

    def test_gradient_source(self, write_config):
        path = write_config(STRAIGHT + "solve.k = 4\nsource.family = gradient\n")
        assert _run("radiate", path) == 3

    def test_missing_potential(self, write_config):
        path = write_config(STRAIGHT + "solve.k = 4\nsource.family = TM\n")
        assert _run("radiate", path) == 2

    def test_needs_straight_guide(self, write_config):
        path = write_config(STEP + "solve.k = 4\n")
        assert _run("radiate", path) == 2


class TestEntryPoint:
    def test_missing_config_file(self, tmp_path):
        assert _run("modes", tmp_path / "absent.cfg") == 2

    def test_bad_config(self, write_config):
        assert _run("modes", write_config(SQUARE + "solve.nope = 1\n")) == 2

    def test_config_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["modes"])

    def test_verbose_flag(self, write_config):
        path = write_config(SQUARE + "solve.cutoff = 12\n")
        assert _run("modes", path, "--verbose") == 0
        WSLogger.set_level("INFO")


class TestDeterminism:
    def test_identical_runs_give_identical_bytes(self, write_config, tmp_path):
        """Test two runs of the same config write byte-identical files."""
        path = write_config(STEP + "solve.block = neumann\nsolve.truncation = 16\nsolve.k = 4.5\n")
        assert _run("scatter", path, "--out", str(tmp_path / "a")) == 0
        assert _run("scatter", path, "--out", str(tmp_path / "b")) == 0
        for name in ("smatrix_000_k4.500000.json", "residuals.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
