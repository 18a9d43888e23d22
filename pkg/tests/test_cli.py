import csv
import subprocess
import sys

import numpy as np
import pandas as pd
import pytest

from qwalk import cli
from qwalk.cli import (COMPARE_TOL, RunConfig, format_complex, main, parse_complex,
                       parse_grid, run, thread_count)
from qwalk.errors import ConfigError
from qwalk.io import ResultTable, emit_csv, read_csv, render_csv


class TestParsing:
    @pytest.mark.parametrize("text,value", [
        ("0.6-0.8i", 0.6 - 0.8j), ("i", 1j), ("-i", -1j), ("2", 2), ("1+i", 1 + 1j),
        ("0.7071067811865476i", 0.7071067811865476j), ("1e-3+2.5i", 1e-3 + 2.5j),
        (" 0.5 + 0.5i ", 0.5 + 0.5j),
    ])
    def test_complex(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "abc", "1+2k", "i+i"])
    def test_complex_bad(self, text):
        with pytest.raises(ConfigError):
            parse_complex(text)

    def test_complex_round_trip(self):
        for z in (0.1 + 0.2j, -1e-300 - 3j, 1 / np.sqrt(2) * 1j):
            assert parse_complex(format_complex(z)) == z

    def test_grid(self):
        assert parse_grid("-1:1:0.5") == (-1.0, 1.0, 0.5)
        a, b, h = parse_grid("-pi:pi:pi/4")
        assert (a, b, h) == (-np.pi, np.pi, np.pi / 4)
        assert parse_grid("0:2pi:0.1")[1] == 2 * np.pi

    @pytest.mark.parametrize("text", ["1:0:1", "0:1:0", "0:1", "a:b:c", "0:inf:1"])
    def test_grid_bad(self, text):
        with pytest.raises(ConfigError):
            parse_grid(text)

    def test_grid_points_include_end(self):
        pts = cli.grid_points(parse_grid("-pi:pi:pi/500"))
        assert pts.size == 1001 and pts[-1] == pytest.approx(np.pi)

    def test_threads(self):
        assert thread_count({"QWALK_THREADS": "3"}) == 3
        assert thread_count({"QWALK_THREADS": "0"}) >= 1
        assert thread_count({}) >= 1
        for bad in ("-1", "two"):
            with pytest.raises(ConfigError):
                thread_count({"QWALK_THREADS": bad})


class TestConfig:
    @pytest.mark.parametrize("kw", [
        dict(mode="walk"),                           # rho missing
        dict(mode="walk", rho=1.5, steps=3),
        dict(mode="walk", rho=0.5),                  # steps missing
        dict(mode="walk", rho=0.5, steps=-1),
        dict(mode="walk", rho=0.5, tau=2.5),
        dict(mode="walk", rho=0.5, steps=3, tau=4.0),
        dict(mode="longwave", rho=0.5),
        dict(mode="longwave", rho=1.0, tau=3.0),
        dict(mode="longwave", rho=0.5, tau=3.0, w=0.0),
        dict(mode="spectral", rho=0.5, steps=3, nodes=100),
        dict(mode="walk", rho=0.5, steps=3, r0=1, l0=1),
        dict(mode="nv", rho=0.3, steps=3),
        dict(mode="nv", steps=3, spinor_given=True),
        dict(mode="bogus", rho=0.5, steps=1),
    ])
    def test_invalid(self, kw):
        with pytest.raises(ConfigError):
            RunConfig(**kw)

    def test_tau_as_steps(self):
        assert RunConfig(mode="walk", rho=0.5, tau=7.0).steps == 7
        assert RunConfig(mode="longwave", rho=0.5, steps=7).tau == 7.0


class TestRun:
    def test_walk(self):
        t = run(RunConfig(mode="walk", rho=0.5, steps=200))
        assert t.columns == ["m", "P", "P_R", "P_L"]
        assert abs(t.column("P").sum() - 1) <= 1e-12
        np.testing.assert_allclose(t.column("P"), t.column("P_R") + t.column("P_L"))

    @pytest.mark.parametrize("mode", ["decoupled", "spectral"])
    def test_agrees_with_walk(self, mode):
        a = run(RunConfig(mode="walk", rho=0.3, steps=40))
        b = run(RunConfig(mode=mode, rho=0.3, steps=40))
        assert np.abs(a.data - b.data).max() <= 1e-12

    def test_spectral_rho_one_fallback(self, caplog):
        t = run(RunConfig(mode="spectral", rho=1.0, steps=5))
        assert "direct iteration" in t.metadata["note"]
        assert "direct iteration" in caplog.text

    def test_dispersion(self):
        t = run(RunConfig(mode="dispersion", rho=0.5, grid=(-np.pi, np.pi, np.pi / 5000)))
        assert t.columns == ["k", "omega0", "omega1", "residual"]
        assert t.n_rows == 10001
        assert t.column("residual").max() <= 1e-14

    def test_compare(self):
        t = run(RunConfig(mode="compare", rho=0.5, steps=50))
        assert t.columns == ["m", "P_iter", "P_decoupled", "P_spectral"]
        assert float(t.metadata["max_diff_decoupled"]) <= COMPARE_TOL
        assert float(t.metadata["max_diff_spectral"]) <= COMPARE_TOL
        assert "longwave_l1_vs_exact" in t.metadata

    def test_compare_rho_edges(self):
        for rho in (0.0, 1.0):
            t = run(RunConfig(mode="compare", rho=rho, steps=10))
            assert "not applicable" in t.metadata["longwave"]

    def test_longwave(self):
        t = run(RunConfig(mode="longwave", rho=0.5, tau=200.0, grid=(-200, 200, 1),
                          normalize=True))
        assert t.columns == ["xi", "P", "P_R", "P_L"]
        assert np.trapezoid(t.column("P"), t.column("xi")) == pytest.approx(1.0)

    def test_nv(self):
        t = run(RunConfig(mode="nv", steps=20))
        np.testing.assert_allclose(t.column("P"), t.column("P_closed"), atol=1e-12)
        assert float(t.metadata["max_diff_closed_form"]) <= 1e-8


class TestCsv:
    def test_empty_table(self, tmp_path):
        p = tmp_path / "e.csv"
        emit_csv(ResultTable(["a", "b"], np.zeros((0, 2))), p)
        assert p.read_bytes() == b"a,b\n"

    def test_round_trip(self, tmp_path):
        t = run(RunConfig(mode="walk", rho=0.37, steps=60, r0=0.6, l0=0.8j))
        p = tmp_path / "w.csv"
        emit_csv(t, p)
        back = read_csv(p)
        assert back.columns == t.columns
        np.testing.assert_array_equal(back.data, t.data)
        assert back.metadata["mode"] == "walk"
        raw = p.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")

    def test_plottable(self, tmp_path):
        t = run(RunConfig(mode="longwave", rho=0.5, tau=200.0))
        p = tmp_path / "lw.csv"
        emit_csv(t, p)
        d = pd.read_csv(p, comment="#")
        assert list(d.columns) == ["xi", "P", "P_R", "P_L"]
        assert len(d) == t.n_rows and np.all(np.isfinite(d["P"]))
        with open(p, newline="") as fh:
            rows = [r for r in csv.reader(fh) if not r[0].startswith("#")]
        assert rows[0] == ["xi", "P", "P_R", "P_L"]

    def test_table_validation(self):
        with pytest.raises(ValueError):
            ResultTable(["a"], np.array([[np.nan]]))
        with pytest.raises(ValueError):
            ResultTable(["a", "b"], np.zeros((2, 3)))
        with pytest.raises(ValueError):
            ResultTable(["a"], np.array([[1j]]))

    def test_seventeen_digits(self):
        text = render_csv(ResultTable(["x"], np.array([[0.1], [1 / 3], [-0.0], [2.0]])))
        assert text.splitlines()[1:] == ["0.10000000000000001", "0.33333333333333331",
                                         "0", "2"]


class TestMain:
    def test_exit_codes(self, tmp_path, capsys):
        out = str(tmp_path / "x.csv")
        assert main(["walk", "--rho", "0.5", "--steps", "4", "--out", out]) == 0
        assert main(["walk", "--rho", "2", "--steps", "4", "--out", out]) == 2
        assert main(["walk", "--rho", ".5", "--steps", "4", "--r0", "1"]) == 2
        assert main(["walk", "--rho", ".5", "--steps", "4", "--grid", "0:1:1"]) == 2
        assert main(["spectral", "--rho", ".5", "--steps", "400", "--nodes", "512",
                     "--out", out]) == 3
        assert main(["walk", "--rho", ".5", "--steps", "4",
                     "--out", str(tmp_path / "missing" / "x.csv")]) == 4
        with pytest.raises(SystemExit) as exc:
            main(["nonsense"])
        assert exc.value.code == 2

    def test_compare_failure_is_exit_3(self, tmp_path, monkeypatch):
        monkeypatch.setattr(cli, "COMPARE_TOL", -1.0)
        assert main(["compare", "--rho", "0.5", "--steps", "5",
                     "--out", str(tmp_path / "c.csv")]) == 3

    def test_env_threads(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QWALK_THREADS", "bogus")
        assert main(["walk", "--rho", "0.5", "--steps", "2",
                     "--out", str(tmp_path / "t.csv")]) == 2
        monkeypatch.setenv("QWALK_THREADS", "1")
        assert main(["compare", "--rho", "0.5", "--steps", "8",
                     "--out", str(tmp_path / "t.csv")]) == 0

    def test_stdout(self, capsys):
        assert main(["dispersion", "--rho", "0.5", "--grid=0:1:0.5"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[-4] == "k,omega0,omega1,residual"

    def test_console_script_deterministic(self, tmp_path):
        args = ["longwave", "--rho", "0.5", "--tau", "200", "--r0", "0.7071067811865476",
                "--l0", "0.7071067811865476i", "--w", "0.4"]
        outs = []
        for i in range(2):
            p = tmp_path / f"run{i}.csv"
            subprocess.run([sys.executable, "-m", "qwalk.cli", *args, "--out", str(p)],
                           check=True)
            outs.append(p.read_bytes())
        assert outs[0] == outs[1]
