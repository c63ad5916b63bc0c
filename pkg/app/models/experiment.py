"""
Experiment runner: extraction against the oracle and the closed-form bounds,
one report row per configuration, and seeded parameter sweeps.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, List, Optional, Sequence

from pydantic import ValidationError

from app.errors import BicliqueError, ExtractionAbortedError, InvalidArgumentError, OracleCapExceededError
from app.models.bounds import REPORT_BOUNDS, evaluate_all, ratio
from app.models.extraction import EXTRACTION_DIMS, extract
from app.models.generators import generate
from app.models.geometry import Configuration
from app.models.oracle import Biclique, best_of, degree_bicliques, incidence_graph, max_biclique_oracle
from app.models.rng import derive_seed
from app.schemas.experiment import ExperimentRow
from app.schemas.params import ExtractionParams, GeneratorSpec

logger = logging.getLogger(__name__)


def run_experiment(c: Configuration, params: Optional[ExtractionParams] = None, with_oracle: bool = False,
                   seed: int = 0, row: int = 0, varied: str = "", timing: bool = False) -> ExperimentRow:
    """Extract, optionally run the oracle, evaluate the report bounds; one row."""
    params = params or ExtractionParams()
    started = time.perf_counter()
    graph = incidence_graph(c)
    incidences = graph.edge_count
    errors: List[str] = []

    if c.dim in EXTRACTION_DIMS and c.m and c.n:
        try:
            best, _ = extract(c, params, seed)
        except ExtractionAbortedError as e:
            errors.append(f"extract: {e}")
            best = e.trace.best() if e.trace is not None else Biclique()
    else:
        best = best_of(degree_bicliques(graph))

    rs_oracle = None
    if with_oracle:
        try:
            rs_oracle = max_biclique_oracle(c, params.oracle_cap).rs
        except OracleCapExceededError as e:
            errors.append(f"oracle: {e}")
        if rs_oracle is not None and best.rs > rs_oracle:
            logger.error(f"row {row}: extracted rs {best.rs} exceeds oracle rs {rs_oracle}")

    values = {}
    if c.m and c.n:
        for name, bound in evaluate_all(c.m, c.n, incidences, c.dim, names=REPORT_BOUNDS).items():
            values[name] = float(bound.value)
            values[f"ratio_{name}"] = ratio(best.rs, bound)

    return ExperimentRow(
        row=row, d=c.dim, m=c.m, n=c.n, I=incidences,
        rs_oracle=rs_oracle, rs_extracted=best.rs, r=best.r, s=best.s, source=best.source,
        seed=seed, varied=varied, error="; ".join(errors),
        wall_time_s=round(time.perf_counter() - started, 6) if timing else None,
        **values,
    )


def with_parameter(template: GeneratorSpec, parameter: str, value: Any) -> GeneratorSpec:
    """Copy of the template with a dotted path (e.g. ``planted.0.points_on_flat``) set."""
    data = template.model_dump()
    parts = parameter.split(".")
    target = data
    try:
        for part in parts[:-1]:
            target = target[int(part)] if isinstance(target, list) else target[part]
        last = parts[-1]
        if isinstance(target, list):
            target[int(last)] = value
        elif last in target:
            target[last] = value
        else:
            raise KeyError(last)
    except (KeyError, IndexError, ValueError) as e:
        raise InvalidArgumentError(f"unknown generator parameter {parameter!r}") from e
    return GeneratorSpec.model_validate(data)


def _run_row(index: int, spec: GeneratorSpec, params: ExtractionParams, with_oracle: bool,
             varied: str, timing: bool) -> ExperimentRow:
    try:
        config = generate(spec)
        return run_experiment(config, params, with_oracle, spec.seed, index, varied, timing)
    except (BicliqueError, ValidationError) as e:
        logger.warning(f"sweep row {index} ({varied}) failed: {e}")
        return ExperimentRow(row=index, d=spec.dim, m=0, n=0, I=0, seed=spec.seed, varied=varied,
                             error=f"{type(e).__name__}: {e}")


def sweep(template: GeneratorSpec, parameter: str, values: Sequence[Any],
          params: Optional[ExtractionParams] = None, with_oracle: bool = False,
          workers: int = 1, timing: bool = False) -> List[ExperimentRow]:
    """
    One row per value of the varied parameter. Row i is generated and
    extracted with derive_seed(template.seed, i); failures are recorded in
    the row. Rows come back sorted by the varied value.
    """
    if not values:
        raise InvalidArgumentError("sweep needs at least one parameter value")
    params = params or ExtractionParams()
    jobs = []
    for index, value in enumerate(values):
        varied = f"{parameter}={value}"
        spec = with_parameter(template, parameter, value)
        spec = spec.model_copy(update={"seed": derive_seed(template.seed, index)})
        jobs.append((index, spec, params, with_oracle, varied, timing))
    logger.info(f"sweep over {parameter}: {len(jobs)} rows, {workers} worker(s)")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_row, *zip(*jobs)))
    else:
        rows = [_run_row(*job) for job in jobs]
    order = sorted(range(len(rows)), key=lambda i: (values[i], i))
    return [rows[i] for i in order]
