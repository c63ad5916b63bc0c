import io
import json
from fractions import Fraction

import pytest

from app.errors import ConfigParseError, InvalidArgumentError, StorageError
from app.models.geometry import Configuration, Hyperplane, Point
from app.schemas.experiment import REPORT_COLUMNS, ExperimentRow
from app.storage.config_files import parse_config, read_config, read_spec, serialize_config, write_config
from app.storage.report_writer import render_report, write_output, write_report
from scripts.generate_golden_sweep import REPORT_FILE, golden_rows


def document(**overrides):
    doc = {"dim": 2, "points": [["1/3", "0"], ["2", "-1/2"]], "hyperplanes": [{"coeffs": ["1", "0"], "offset": "1/3"}]}
    doc.update(overrides)
    return json.dumps(doc)


class TestConfigFiles:
    def test_exact_rationals(self):
        c = parse_config(document())
        assert c.points[0] == Point.of(Fraction(1, 3), 0)
        assert c.hyperplanes[0] == Hyperplane((1, 0), Fraction(1, 3))

    def test_round_trip_keeps_provenance(self, planted5):
        again = parse_config(serialize_config(planted5))
        assert again == planted5
        assert again.provenance == planted5.provenance

    def test_serialized_rationals_are_strings(self):
        c = Configuration(2, (Point.of("1/3", 4),))
        doc = json.loads(serialize_config(c))
        assert doc["points"] == [["1/3", "4"]]

    @pytest.mark.parametrize(
        "text",
        [
            document(points=[["1/0", "0"]]),
            document(points=[["1.5", "0"]]),
            document(points=[["1", "2", "3"]]),
            document(points=[["1", "1"], ["1", "1"]]),
            document(hyperplanes=[{"coeffs": ["0", "0"], "offset": "1"}]),
            document(dim=7),
            json.dumps({"points": []}),
            "{not json",
        ],
    )
    def test_malformed_documents(self, text):
        with pytest.raises(ConfigParseError):
            parse_config(text)

    def test_file_round_trip(self, tmp_path, grid2):
        path = tmp_path / "grid.json"
        write_config(path, grid2)
        assert read_config(path) == grid2

    def test_missing_file(self, tmp_path):
        with pytest.raises(StorageError):
            read_config(tmp_path / "absent.json")

    def test_unwritable_path(self, tmp_path, grid2):
        with pytest.raises(StorageError):
            write_config(tmp_path / "no" / "such" / "dir.json", grid2)

    def test_read_spec(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"kind": "grid", "dim": 3, "grid_side": 2}), encoding="utf-8")
        spec = read_spec(path)
        assert (spec.kind, spec.dim, spec.grid_side) == ("grid", 3, 2)

    def test_read_bad_spec(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"kind": "grid", "dim": 9}), encoding="utf-8")
        with pytest.raises(ConfigParseError):
            read_spec(path)


ROW = ExperimentRow(row=0, d=4, m=5, n=6, I=30, rs_extracted=30, r=5, s=6, source="witness-core",
                    thm4d=0.5, varied="noise_points=0, twice")


class TestReports:
    def test_csv_header_and_line_endings(self):
        text = render_report([ROW], "csv")
        lines = text.split("\r\n")
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert lines[-1] == ""
        assert len(lines) == 3
        assert "\n" not in text.replace("\r\n", "")

    def test_csv_cells(self):
        cells = render_report([ROW], "csv").split("\r\n")[1]
        assert cells.startswith("0,4,5,6,30,,30,5,6,witness-core,0.5,")
        assert '"noise_points=0, twice"' in cells

    def test_json_lines(self):
        text = render_report([ROW, ROW.model_copy(update={"row": 1})], "json")
        records = [json.loads(line) for line in text.splitlines()]
        assert [r["row"] for r in records] == [0, 1]
        assert list(records[0]) == list(REPORT_COLUMNS)
        assert records[0]["rs_oracle"] is None

    def test_unknown_format(self):
        with pytest.raises(InvalidArgumentError):
            render_report([ROW], "xml")

    def test_stdout(self):
        out = io.StringIO()
        write_output("hello", None, out)
        assert out.getvalue() == "hello"

    def test_write_report_to_file(self, tmp_path):
        path = tmp_path / "report.csv"
        text = write_report([ROW], path, "csv")
        assert path.read_bytes() == text.encode("utf-8")
        assert path.read_bytes().count(b"\r\n") == 2

    def test_unwritable_report(self, tmp_path):
        with pytest.raises(StorageError):
            write_report([ROW], tmp_path / "missing" / "r.csv")


@pytest.mark.slow
def test_golden_sweep_is_byte_identical():
    first = render_report(golden_rows(), "csv")
    assert render_report(golden_rows(), "csv") == first
    if REPORT_FILE.exists():
        assert REPORT_FILE.read_bytes() == first.encode("utf-8")
