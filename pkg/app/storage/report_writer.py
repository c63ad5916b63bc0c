"""
Report writers. Both formats use the fixed REPORT_COLUMNS order and write
rows in the order given; CSV is RFC-4180 (minimal quoting, CRLF).
"""
import csv
import io
import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Union

from app.errors import InvalidArgumentError, StorageError
from app.schemas.experiment import REPORT_COLUMNS, ExperimentRow

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: Iterable[ExperimentRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        writer.writerow([_cell(v) for v in row.cells()])


def write_jsonl(rows: Iterable[ExperimentRow], stream: TextIO) -> None:
    for row in rows:
        record = dict(zip(REPORT_COLUMNS, row.cells()))
        stream.write(json.dumps(record) + "\n")


def render_report(rows: Iterable[ExperimentRow], fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise InvalidArgumentError(f"unknown report format {fmt!r}")
    buffer = io.StringIO(newline="")
    if fmt == "csv":
        write_csv(rows, buffer)
    else:
        write_jsonl(rows, buffer)
    return buffer.getvalue()


def write_output(text: str, path: Optional[Union[str, Path]], stdout: Optional[TextIO] = None) -> None:
    """Write ``text`` to ``path``, or to ``stdout`` when no path is given."""
    if path is None:
        if stdout is not None:
            stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise StorageError(f"cannot write {path}: {e}") from e


def write_report(rows: List[ExperimentRow], path: Optional[Union[str, Path]], fmt: str = "csv",
                 stdout: Optional[TextIO] = None) -> str:
    text = render_report(rows, fmt)
    write_output(text, path, stdout)
    if path is not None:
        logger.info(f"Wrote {len(rows)} row(s) to {path} ({fmt})")
    return text
