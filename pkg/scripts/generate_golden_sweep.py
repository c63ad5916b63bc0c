"""
Regenerate the golden sweep report from tests/golden/sweep_spec.json.
Run after any change that intentionally alters generated configurations
or extraction results, then commit the new tests/golden/sweep.csv.
"""
import json
import logging
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from app.models.experiment import sweep  # noqa: E402
from app.schemas.params import GeneratorSpec  # noqa: E402
from app.storage.report_writer import write_report  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")
logger = logging.getLogger(__name__)

GOLDEN_DIR = ROOT / "tests" / "golden"
SPEC_FILE = GOLDEN_DIR / "sweep_spec.json"
REPORT_FILE = GOLDEN_DIR / "sweep.csv"


def golden_rows():
    definition = json.loads(SPEC_FILE.read_text(encoding="utf-8"))
    template = GeneratorSpec.model_validate(definition["template"])
    return sweep(template, definition["parameter"], definition["values"],
                 with_oracle=definition.get("with_oracle", False))


def main():
    try:
        rows = golden_rows()
        write_report(rows, REPORT_FILE, "csv")
        logger.info(f"Golden sweep written to {REPORT_FILE} ({len(rows)} rows)")
    except Exception as e:
        logger.error(f"Error generating the golden sweep: {e}", exc_info=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
