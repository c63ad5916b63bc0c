import logging
from typing import Any, List, Optional, Sequence

from app.controllers.base import command_error
from app.models.experiment import run_experiment, sweep
from app.models.geometry import Configuration
from app.schemas.experiment import ExperimentRow
from app.schemas.params import ExtractionParams, GeneratorSpec
from app.storage.report_writer import write_report

logger = logging.getLogger(__name__)


class ExperimentController:
    """
    Controller for experiment reports.
    Connects the CLI to the experiment runner and the report writers.
    """

    def run(self, c: Configuration, params: ExtractionParams, with_oracle: bool = False,
            seed: int = 0, timing: bool = False) -> ExperimentRow:
        try:
            return run_experiment(c, params, with_oracle=with_oracle, seed=seed, timing=timing)
        except Exception as e:
            raise command_error(e, "run experiment")

    def sweep(self, template: GeneratorSpec, parameter: str, values: Sequence[Any],
              params: ExtractionParams, with_oracle: bool = False, workers: int = 1,
              timing: bool = False) -> List[ExperimentRow]:
        """
        Sweep one generator parameter. Row failures are recorded in the
        report; only an unusable sweep definition fails the command.
        """
        try:
            rows = sweep(template, parameter, values, params, with_oracle=with_oracle,
                         workers=workers, timing=timing)
        except Exception as e:
            raise command_error(e, f"sweep {parameter}")
        failed = sum(1 for row in rows if row.error)
        if failed:
            logger.warning(f"{failed} of {len(rows)} sweep rows recorded an error")
        return rows

    def report(self, rows: List[ExperimentRow], out: Optional[str], fmt: str, stdout=None) -> str:
        try:
            return write_report(rows, out, fmt, stdout=stdout)
        except Exception as e:
            raise command_error(e, "write report")
