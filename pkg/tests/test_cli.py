import json
import math
import os

import pytest

from rsplanner.cli import main, write_atomic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSolve:
    def test_cusp_example(self, capsys):
        code, out, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", "0.05,0.12,-1.5", "--r", "1")
        d = json.loads(out)
        assert code == 0
        assert d["schema_version"] == 1
        assert d["length"] == pytest.approx(1.5, abs=1e-4)
        assert {"kind", "dir", "len"} == set(d["segments"][0])

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", "0,0,0", "--r", "1")
        d = json.loads(out)
        assert code == 0 and d["length"] == 0 and d["segments"] == []

    def test_check(self, capsys):
        code, out, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", "10,0,0", "--r", "1",
                           "--check")
        err = json.loads(out)["endpoint_error"]
        assert err["position"] <= 1e-12 and err["heading"] <= 1e-12

    def test_degrees_and_exhaustive(self, capsys):
        _, a, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", "3,4,90", "--r", "1", "--deg")
        _, b, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", f"3,4,{math.pi / 2}",
                      "--r", "1", "--solver", "exhaustive")
        assert json.loads(a)["length"] == pytest.approx(json.loads(b)["length"], abs=1e-12)

    def test_polyline_csv(self, capsys):
        code, out, _ = run(capsys, "solve", "--p0", "0,0,0", "--pf", "10,0,0", "--r", "1",
                           "--polyline", "1", "--format", "csv")
        rows = out.splitlines()
        assert code == 0 and rows[0] == "s,x,y,theta" and len(rows) == 12

    @pytest.mark.parametrize("argv", [
        ["solve", "--p0", "0,0", "--pf", "1,1,1", "--r", "1"],
        ["solve", "--p0", "0,0,0", "--pf", "1,1,1", "--r", "0"],
        ["solve", "--p0", "0,nan,0", "--pf", "1,1,1", "--r", "1"],
        ["solve", "--p0", "0,0,0", "--pf", "1,1,1"],
        ["nope"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert main(argv) == 2


class TestOmega:
    def test_straight_ahead(self, capsys):
        code, out, _ = run(capsys, "omega", "--p0", "0,0,1.5707963", "--goal", "0,100",
                           "--r", "20", "--sweep", "0.05")
        d = json.loads(out)
        assert code == 0
        assert d["region"] == "R1"
        assert d["omega_rad"] == pytest.approx(math.pi / 2, abs=1e-6)
        assert d["sweep"]["ok"]

    def test_goal_at_start(self, capsys):
        _, out, _ = run(capsys, "omega", "--p0", "4,5,1", "--goal", "4,5", "--r", "2")
        assert json.loads(out)["length"] == 0

    def test_random_goal_against_sweep(self, capsys):
        code, out, _ = run(capsys, "omega", "--p0", "0,0,0.3", "--goal=-37,12", "--r", "15",
                           "--sweep", "0.05")
        d = json.loads(out)
        assert code == 0 and d["length"] <= d["sweep"]["length"] + 1e-6


class TestFiles:
    def test_grid_csv(self, tmp_path, capsys):
        path = tmp_path / "grid.csv"
        code = main(["grid", "--size", "100x100", "--r", "40", "--p0", "50,50,1.5707963",
                     "-o", str(path)])
        rows = path.read_text().splitlines()
        assert code == 0 and len(rows) == 10001
        center = next(r for r in rows if r.startswith("50,50,"))
        assert float(center.split(",")[5]) == 0.0

    def test_partition_map_json(self, tmp_path):
        path = tmp_path / "pm.json"
        assert main(["partition-map", "--n", "2000", "--format", "json", "-o", str(path)]) == 0
        d = json.loads(path.read_text())
        assert d["n"] == 2000 and sum(d["counts"].values()) == 2000

    def test_bench_and_validate(self, tmp_path):
        b, v = tmp_path / "b.json", tmp_path / "v.json"
        assert main(["bench", "--n", "2000", "-o", str(b)]) == 0
        assert main(["validate", "--n", "2000", "-o", str(v)]) == 0
        assert json.loads(b.read_text())["n"] == 2000
        assert json.loads(v.read_text())["ok"] is True

    def test_rs_seed_overrides_flag(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        monkeypatch.setenv("RS_SEED", "7")
        main(["partition-map", "--n", "500", "--seed", "1", "--format", "json", "-o", str(a)])
        monkeypatch.delenv("RS_SEED")
        main(["partition-map", "--n", "500", "--seed", "7", "--format", "json", "-o", str(b)])
        assert json.loads(a.read_text()) == json.loads(b.read_text())

    def test_bad_rs_seed(self, monkeypatch):
        monkeypatch.setenv("RS_SEED", "abc")
        assert main(["validate", "--n", "10"]) == 2

    def test_unwritable_output(self, tmp_path):
        out = tmp_path / "missing" / "x.csv"
        assert main(["grid", "--size", "3x3", "--r", "1", "-o", str(out)]) == 1

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        target = tmp_path / "out.txt"
        target.write_text("old")
        write_atomic(str(target), "new")
        assert target.read_text() == "new"
        assert os.listdir(tmp_path) == ["out.txt"]
