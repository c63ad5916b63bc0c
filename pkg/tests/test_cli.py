import csv
import io
import json

import pytest

from app.main import main
from app.storage.config_files import parse_config, read_config, write_config


@pytest.fixture
def pencil_file(tmp_path, line_pencil4):
    path = tmp_path / "pencil.json"
    write_config(path, line_pencil4)
    return str(path)


@pytest.fixture
def grid_file(tmp_path, grid2):
    path = tmp_path / "grid.json"
    write_config(path, grid2)
    return str(path)


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


class TestGen:
    def test_planted_to_file(self, tmp_path):
        path = tmp_path / "planted.json"
        code, out = run_cli("gen", "--d", "4", "--plant", "2:6:4", "--seed", "3", "--out", str(path))
        assert code == 0 and out == ""
        c = read_config(path)
        assert (c.dim, c.m, c.n) == (4, 6, 4)

    def test_grid_to_stdout(self):
        code, out = run_cli("gen", "--kind", "grid", "--d", "2", "--grid-side", "3")
        assert code == 0
        assert parse_config(out).m == 9

    def test_same_seed_same_document(self):
        argv = ("gen", "--d", "3", "--plant", "1:4:3", "--noise-points", "5", "--seed", "8")
        assert run_cli(*argv) == run_cli(*argv)

    def test_needs_dimension(self):
        assert run_cli("gen", "--plant", "1:4:3")[0] == 1

    def test_bad_plant(self):
        assert run_cli("gen", "--d", "3", "--plant", "1:four:3")[0] == 1

    def test_infeasible_plan(self):
        assert run_cli("gen", "--d", "3", "--plant", "0:2:0")[0] == 1

    def test_unwritable_output(self, tmp_path):
        assert run_cli("gen", "--d", "3", "--out", str(tmp_path / "no" / "such.json"))[0] == 3


class TestAnalysis:
    def test_incidences(self, grid_file):
        code, out = run_cli("incidences", "--config", grid_file)
        assert code == 0
        summary = json.loads(out)
        assert (summary["m"], summary["n"], summary["I"]) == (9, 6, 18)

    def test_oracle(self, pencil_file):
        code, out = run_cli("oracle", "--config", pencil_file)
        assert code == 0
        result = json.loads(out)
        assert result["rs"] == 30 and result["valid"]

    def test_oracle_cap(self, pencil_file):
        assert run_cli("oracle", "--config", pencil_file, "--oracle-cap", "1")[0] == 2

    def test_extract(self, pencil_file):
        code, out = run_cli("extract", "--config", pencil_file, "--seed", "4")
        assert code == 0
        result = json.loads(out)
        assert result["biclique"]["rs"] == 30
        assert result["incidences"] == 30
        assert result["steps"][0]["step"] == "degree"

    def test_extract_in_the_plane_is_rejected(self, grid_file):
        assert run_cli("extract", "--config", grid_file)[0] == 1

    def test_classify_hyperplanes(self, grid_file):
        code, out = run_cli("classify", "--config", grid_file, "--beta", "1/2")
        assert code == 0
        verdicts = json.loads(out)
        assert len(verdicts) == 6
        assert {v["verdict"] for v in verdicts} == {"nondegenerate"}

    def test_classify_points(self, pencil_file):
        code, out = run_cli("classify", "--config", pencil_file, "--kind", "points")
        assert code == 0
        verdicts = json.loads(out)
        assert all(v["verdict"] == "degenerate" and v["witness_count"] == 6 for v in verdicts)

    def test_bad_beta(self, grid_file):
        assert run_cli("classify", "--config", grid_file, "--beta", "3/2")[0] == 1

    def test_dimension_mismatch(self, grid_file):
        assert run_cli("incidences", "--config", grid_file, "--d", "4")[0] == 1

    def test_missing_config(self, tmp_path):
        assert run_cli("incidences", "--config", str(tmp_path / "absent.json"))[0] == 3

    def test_malformed_config(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "points": [["1/0", "1"]]}', encoding="utf-8")
        assert run_cli("incidences", "--config", str(path))[0] == 1


class TestBounds:
    def test_named_bound(self):
        code, out = run_cli("bounds", "--m", "16", "--n", "64", "--d", "4", "--name", "et")
        assert code == 0
        [bound] = json.loads(out)
        assert bound["value"] == 512 and bound["exact"] == "512"

    def test_all_applicable(self):
        code, out = run_cli("bounds", "--m", "32", "--n", "32", "--I", "1024", "--d", "4",
                            "--constant", "thm4d=2")
        assert code == 0
        values = {b["name"]: b for b in json.loads(out)}
        assert values["thm4d"]["exact"] == "128/625"
        assert values["thm4d"]["constant"] == "2"
        assert "thm5d" not in values

    def test_from_configuration(self, pencil_file):
        code, out = run_cli("bounds", "--config", pencil_file, "--name", "as_lower")
        assert code == 0
        assert json.loads(out)[0]["value"] == 30

    def test_missing_dimension(self):
        assert run_cli("bounds", "--m", "16", "--n", "64", "--I", "4")[0] == 1


class TestExperiments:
    def test_run_csv(self, pencil_file):
        code, out = run_cli("run", "--config", pencil_file, "--with-oracle")
        assert code == 0
        assert out.endswith("\r\n")
        [row] = list(csv.DictReader(io.StringIO(out, newline="")))
        assert row["rs_oracle"] == "30" and row["rs_extracted"] == "30"
        assert row["wall_time_s"] == ""

    def test_run_json_to_file(self, pencil_file, tmp_path):
        path = tmp_path / "row.jsonl"
        code, out = run_cli("run", "--config", pencil_file, "--format", "json", "--timing", "--out", str(path))
        assert code == 0 and out == ""
        record = json.loads(path.read_text(encoding="utf-8"))
        assert record["I"] == 30 and record["wall_time_s"] is not None

    def test_sweep(self):
        code, out = run_cli("sweep", "--d", "4", "--plant", "2:6:4", "--seed", "1",
                            "--vary", "noise_points", "--values", "0,3", "--format", "json")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["m"] for r in records] == [6, 9]
        assert [r["varied"] for r in records] == ["noise_points=0", "noise_points=3"]

    def test_sweep_unknown_parameter(self):
        code, _ = run_cli("sweep", "--d", "4", "--vary", "nope", "--values", "1")
        assert code == 1

    def test_sweep_needs_values(self):
        assert run_cli("sweep", "--d", "4", "--vary", "noise_points", "--values", ",")[0] == 1


class TestUsage:
    def test_no_command(self):
        assert run_cli()[0] == 1

    def test_unknown_command(self):
        assert run_cli("frobnicate")[0] == 1

    def test_help(self):
        assert run_cli("--help")[0] == 0

    def test_invalid_environment(self, monkeypatch, grid_file):
        monkeypatch.setenv("BICLIQUE_ORACLE_CAP", "lots")
        assert run_cli("incidences", "--config", grid_file)[0] == 1
