"""
Constructive biclique extraction.

The pipeline peels a configuration layer by layer: hyperplanes degenerate
to rich codim-1 flats, points degenerate to lines through them, and (in
R^5) 3-flats degenerate to planes, until a generic projection leaves a
point/line configuration in the plane. Every flat met on the way yields a
certified biclique (points on it against hyperplanes containing it); the
best one is returned.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.errors import (
    CapExceededError,
    DimensionMismatchError,
    ExtractionAbortedError,
    InvalidArgumentError,
)
from app.models.bounds import evaluate
from app.models.degeneracy import classify_hyperplane, classify_point_dual
from app.models.geometry import Configuration, Flat, affine_hull, flat_contained
from app.models.incidence_graph import IncidenceGraph, Side, build_graph, dyadic_buckets, filter_rich
from app.models.numeric import Number, floored_log2, power, power_bounds, to_rational
from app.models.oracle import (
    Biclique,
    best_of,
    degree_bicliques,
    flat_biclique,
    incidence_graph,
    validate_biclique,
)
from app.models.rng import derive_seed
from app.models.transforms import ProjectionResult, generic_project
from app.schemas.params import ExtractionParams

logger = logging.getLogger(__name__)

EXTRACTION_DIMS = (3, 4, 5)
HIGHER_DIM_NOTE = (
    "the layer-peeling argument stops at five dimensions: from d = 6 on the "
    "exponents of the line-layer step no longer close"
)


@dataclass(frozen=True)
class Thresholds:
    """s0, r0 (and t0 in R^5); exact whenever the powers are rational."""
    s0: Number
    r0: Number
    t0: Optional[Number] = None
    log_factor: Number = Fraction(1)


@dataclass
class StepRecord:
    step: str
    branch: str
    level: Optional[int] = None
    counts: Dict[str, Any] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)
    candidates: List[Biclique] = field(default_factory=list)


@dataclass
class ExtractionTrace:
    dim: int
    m: int
    n: int
    incidences: int
    seed: int
    thresholds: Optional[Thresholds] = None
    steps: List[StepRecord] = field(default_factory=list)

    def add(self, step: str, branch: str = "continue", **counts) -> StepRecord:
        record = StepRecord(step, branch, counts=dict(counts))
        self.steps.append(record)
        return record

    def candidates(self) -> List[Biclique]:
        return [b for s in self.steps for b in s.candidates]

    def best(self) -> Biclique:
        return best_of(self.candidates())

    def branches(self) -> str:
        """Compact "step:branch" summary used as report provenance."""
        return ";".join(f"{s.step}:{s.branch}" for s in self.steps)

    def flags(self) -> List[str]:
        return [f for s in self.steps for f in s.flags]


def require_extraction_dim(d: int) -> int:
    if d > 5:
        logger.warning(f"extraction requested in R^{d}: {HIGHER_DIM_NOTE}")
    if d not in EXTRACTION_DIMS:
        raise DimensionMismatchError(f"extraction runs in R^3, R^4 and R^5, not R^{d}")
    return d


def compute_thresholds(m: int, n: int, I: int, d: int, params: ExtractionParams) -> Thresholds:
    """
    d = 4: s0 = c1 I^{3/2} / (m^{3/2} n^{1/2} L^4), r0 = c5 I^{3/2} / (m^{1/2} n^{3/2} L^3);
    d = 5: s0 = c1 I^2/(m^2 n), r0 = c5 I^2/(m n^2), t0 = t0_const I^2/(m^2 n);
    with L = max(1, log2(mn)). Logarithmic factors in R^5 live in the constants.
    """
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"thresholds need m, n >= 1, got m={m}, n={n}")
    if not 0 <= I <= m * n:
        raise InvalidArgumentError(f"incidence count {I} outside [0, mn={m * n}]")
    if d == 4:
        log = floored_log2(m * n)
        s0 = params.c1 * power(Fraction(I ** 3, m ** 3 * n), Fraction(1, 2)) / log ** 4
        r0 = params.c5 * power(Fraction(I ** 3, m * n ** 3), Fraction(1, 2)) / log ** 3
        return Thresholds(s0, r0, None, log)
    if d == 5:
        return Thresholds(
            params.c1 * Fraction(I ** 2, m ** 2 * n),
            params.c5 * Fraction(I ** 2, m * n ** 2),
            params.t0_const * Fraction(I ** 2, m ** 2 * n),
        )
    raise InvalidArgumentError(f"thresholds are defined for d = 4 and d = 5, not {d}")


_HYPOTHESIS_EXPONENTS = {
    4: (Fraction(2, 3), Fraction(3, 5)),
    5: (Fraction(3, 4), Fraction(2, 3)),
}


def check_hypothesis(m: int, n: int, I: int, d: int, C=1, max_digits: int = 240) -> bool:
    """
    I >= C (m n^a + n m^b) with (a, b) = (2/3, 3/5) in R^4 and (3/4, 2/3) in R^5,
    decided with rational brackets refined until they separate.
    """
    if d not in _HYPOTHESIS_EXPONENTS:
        raise InvalidArgumentError(f"the incidence hypothesis is stated for d = 4 and d = 5, not {d}")
    C = to_rational(C)
    a, b = _HYPOTHESIS_EXPONENTS[d]
    digits = 30
    while True:
        lo_n, hi_n = power_bounds(n, a, digits)
        lo_m, hi_m = power_bounds(m, b, digits)
        lo = C * (m * lo_n + n * lo_m)
        hi = C * (m * hi_n + n * hi_m)
        if I >= hi:
            return True
        if I < lo:
            return False
        if digits >= max_digits:
            return I >= (lo + hi) / 2
        digits *= 2


def _exceeds(value: int, threshold: Optional[Number]) -> bool:
    return threshold is not None and value >= threshold


class _Pipeline:
    """One extraction run; stages append to the trace and harvest candidates."""

    def __init__(self, c: Configuration, params: ExtractionParams, seed: int):
        self.c = c
        self.params = params
        self.seed = seed
        self.graph: IncidenceGraph = incidence_graph(c)
        self.trace = ExtractionTrace(c.dim, c.m, c.n, self.graph.edge_count, seed)

    # -- helpers -----------------------------------------------------------

    def harvest(self, record: StepRecord, flat: Flat, source: str) -> Biclique:
        biclique = flat_biclique(self.c, flat, source)
        if not validate_biclique(self.c, biclique):
            logger.warning(f"{source}: dropped a candidate that failed validation")
            return biclique
        if biclique.rs and biclique not in record.candidates:
            record.candidates.append(biclique)
        return biclique

    def project(self, low: Sequence[Flat], high: Sequence[Flat], target_dim: int,
                stage: int) -> ProjectionResult:
        try:
            return generic_project(
                low, high, target_dim, derive_seed(self.seed, stage),
                retry_cap=self.params.retry_cap, bound=self.params.projection_bound,
            )
        except CapExceededError as e:
            self.trace.add(f"projection-{stage}", "aborted", detail=str(e))
            raise ExtractionAbortedError(f"extraction aborted at stage {stage}: {e}", self.trace) from e

    def harvest_projection(self, step: str, projection: ProjectionResult,
                           low: Sequence[Flat], high: Sequence[Flat]) -> StepRecord:
        """Lift the max-degree objects of a projected configuration back to flats."""
        edges = projection.edges()
        low_deg = [0] * len(low)
        high_deg = [0] * len(high)
        for a, b in edges:
            low_deg[a] += 1
            high_deg[b] += 1
        if projection.generic_map.dim_to == 2:
            bound = evaluate("kst_free", m=len(low), n=len(high), d=2).value
        else:
            bound = evaluate("et_dual", m=len(low), n=len(high), d=projection.generic_map.dim_to).value
        record = self.trace.add(
            step, "harvest", incidences=len(edges), low=len(low), high=len(high),
            incidence_bound=float(bound), dim_to=projection.generic_map.dim_to,
            projection_seed=projection.generic_map.seed,
            retries=projection.generic_map.retries_used,
        )
        if edges:
            a = max(range(len(low)), key=lambda i: (low_deg[i], -i))
            b = max(range(len(high)), key=lambda j: (high_deg[j], -j))
            self.harvest(record, low[a], f"{step}:low")
            self.harvest(record, high[b], f"{step}:high")
        if len(edges) > bound:
            record.flags.append(f"{step}: {len(edges)} incidences exceed the bound {float(bound):.3f}")
        return record

    def dyadic_choice(self, step: str, assigned: Dict[Flat, List[Any]], weight,
                      total_mass: Fraction) -> Tuple[int, List[Flat], StepRecord]:
        """
        Bucket flats by multiplicity and pick the level i maximising
        2^{i+1} * weight(bucket_i); records the pigeonhole check.
        """
        buckets = dyadic_buckets({f: len(v) for f, v in assigned.items()})
        scored = []
        for bucket in buckets:
            mass = sum(weight(f) for f in bucket.members)
            scored.append((bucket.high * mass, -bucket.level, bucket))
        score, _, chosen = max(scored, key=lambda t: (t[0], t[1]))
        rhs = self.params.beta / self.params.rich_divisor * total_mass / len(buckets)
        record = self.trace.add(step, "continue", levels=len(buckets), score=score,
                                pigeonhole_rhs=float(rhs), pigeonhole_ok=score >= rhs)
        record.level = chosen.level
        logger.info(f"{step}: chose level {chosen.level} of {len(buckets)} ({len(chosen)} flats, score {score})")
        return chosen.level, list(chosen.members), record

    # -- stages ------------------------------------------------------------

    def degree_stage(self):
        record = self.trace.add("degree", "harvest")
        record.candidates.extend(degree_bicliques(self.graph))

    def hyperplane_layer(self, thresholds: Optional[Thresholds]) -> Tuple[Dict[Flat, List[int]], int]:
        """Rich filter, classification and witness harvest."""
        c, params, I = self.c, self.params, self.graph.edge_count
        k = Fraction(I, params.rich_divisor * c.n)
        rich = sorted(filter_rich(self.graph, Side.RIGHT, k))
        degenerate, nondegenerate_mass, nondegenerate, boundary = {}, 0, [], 0
        for j in rich:
            verdict = classify_hyperplane(c.hyperplanes[j], c.points, params.beta)
            boundary += verdict.boundary
            if verdict.degenerate:
                degenerate[j] = verdict
            else:
                nondegenerate.append(j)
                nondegenerate_mass += self.graph.degree(Side.RIGHT, j)
        record = self.trace.add(
            "rich-filter", "continue", rich_threshold=float(k), n1=len(rich),
            degenerate=len(degenerate), nondegenerate=len(nondegenerate),
            nondegenerate_incidences=nondegenerate_mass,
        )
        if nondegenerate:
            et = evaluate("et", m=c.m, n=len(nondegenerate), d=c.dim).value
            record.counts["nondegenerate_bound"] = float(et)
            for j in nondegenerate:
                self.harvest(record, c.hyperplanes[j].to_flat(), "nondegenerate")
        if boundary:
            record.flags.append(f"{boundary} hyperplanes sit on the strict boundary (a subflat holds exactly beta)")
        logger.info(f"hyperplane layer: {len(rich)} rich hyperplanes, {len(degenerate)} degenerate")

        assigned: Dict[Flat, List[int]] = {}
        for j, verdict in degenerate.items():
            assigned.setdefault(verdict.witness, []).append(j)
        record = self.trace.add("witness", "harvest", witness_flats=len(assigned))
        cores = {v.core for v in degenerate.values()}
        for flat in assigned:
            self.harvest(record, flat, "witness")
        for flat in sorted(cores - set(assigned), key=Flat.sort_key):
            self.harvest(record, flat, "witness-core")
        if thresholds is not None:
            for flat, hyperplanes in assigned.items():
                if _exceeds(len(hyperplanes), thresholds.s0):
                    points = sum(1 for p in c.points if flat.contains_point(p))
                    record.flags.append(f"s0 exceeded: {flat} assigned to {len(hyperplanes)} hyperplanes, {points} points")
                    record.branch = "threshold-exceeded"
        degenerate_mass = sum(self.graph.degree(Side.RIGHT, j) for j in degenerate)
        return assigned, degenerate_mass

    def point_layer(self, flats: List[Flat], thresholds: Optional[Thresholds],
                    threshold_name: str = "r0") -> Tuple[Dict[Flat, List[int]], int, int]:
        """Points degenerate to lines with respect to a family of flats."""
        c, params = self.c, self.params
        graph = build_graph(c.points, flats)
        i_prime = graph.edge_count
        k = Fraction(i_prime, params.rich_divisor * c.m)
        rich = sorted(filter_rich(graph, Side.LEFT, k))
        lines: Dict[Flat, List[int]] = {}
        degenerate_mass = 0
        for a in rich:
            through = [flats[b] for b in graph.neighbors(Side.LEFT, a)]
            verdict = classify_point_dual(c.points[a], through, params.beta)
            if verdict.degenerate:
                lines.setdefault(verdict.witness, []).append(a)
                degenerate_mass += len(through)
        rhs = evaluate("et_dual", m=c.m, n=len(flats), d=c.dim - 1).value if flats else 0
        record = self.trace.add(
            "point-layer", "harvest", incidences=i_prime, rich_threshold=float(k),
            rich_points=len(rich), lines=len(lines), nondegenerate_bound=float(rhs),
        )
        for line in sorted(lines, key=Flat.sort_key):
            self.harvest(record, line, "point-line")
        if thresholds is not None:
            limit = getattr(thresholds, threshold_name)
            for line, points in lines.items():
                if _exceeds(len(points), limit):
                    record.flags.append(f"{threshold_name} exceeded: {line} holds {len(points)} assigned points")
                    record.branch = "threshold-exceeded"
        logger.info(f"point layer: I'={i_prime}, {len(rich)} rich points, {len(lines)} witness lines")
        return lines, i_prime, degenerate_mass

    def line_choice(self, lines: Dict[Flat, List[int]], flats: List[Flat],
                    mass: int) -> Tuple[List[Flat], StepRecord]:
        """Dyadic choice over lines weighted by their containments in the flat family."""
        def weight(line: Flat) -> int:
            return sum(1 for f in flats if flat_contained(line, f))

        _, chosen, record = self.dyadic_choice("line-levels", lines, weight, Fraction(mass))
        record.counts["incidences"] = sum(weight(line) for line in chosen)
        return chosen, record

    def plane_layer(self, projection: ProjectionResult, lines: List[Flat],
                    flats: List[Flat], thresholds: Optional[Thresholds]) -> Dict[Flat, List[int]]:
        """
        In R^5, after the lines and 3-flats are mapped to points and planes
        of R^3: each 3-flat whose image degenerates to a line is assigned the
        plane spanned by the lines landing on that image line.
        """
        projected = projection.to_configuration()
        images = projected.points
        planes: Dict[Flat, List[int]] = {}
        skipped = 0
        for b, image in enumerate(projected.hyperplanes):
            verdict = classify_hyperplane(image, images, self.params.beta)
            if not verdict.degenerate:
                continue
            lifted = [lines[a] for a, q in enumerate(images) if verdict.witness.contains_point(q)]
            hull = affine_hull([p for line in lifted for p in line.spanning_points()])
            if isinstance(hull, Flat) and hull.dim_flat == 2 and flat_contained(hull, flats[b]):
                planes.setdefault(hull, []).append(b)
            else:
                skipped += 1
        record = self.trace.add("plane-layer", "harvest", planes=len(planes), skipped=skipped,
                                projection_seed=projection.generic_map.seed)
        for plane in sorted(planes, key=Flat.sort_key):
            self.harvest(record, plane, "flat-plane")
        if thresholds is not None and thresholds.t0 is not None:
            for plane, owners in planes.items():
                if _exceeds(len(owners), thresholds.t0):
                    record.flags.append(f"t0 exceeded: {plane} assigned to {len(owners)} 3-flats")
                    record.branch = "threshold-exceeded"
        return planes

    # -- driver ------------------------------------------------------------

    def run(self) -> Tuple[Biclique, ExtractionTrace]:
        c, trace = self.c, self.trace
        self.degree_stage()
        if self.graph.edge_count == 0:
            trace.add("stop", "empty")
            return trace.best(), trace
        thresholds = None
        if c.dim in (4, 5):
            thresholds = compute_thresholds(c.m, c.n, self.graph.edge_count, c.dim, self.params)
            trace.thresholds = thresholds
            logger.info(f"thresholds: s0={float(thresholds.s0):.4g}, r0={float(thresholds.r0):.4g}")

        assigned, degenerate_mass = self.hyperplane_layer(thresholds)
        if not assigned:
            trace.add("stop", "no-degenerate-hyperplanes")
            return trace.best(), trace
        points_on = {f: sum(1 for p in c.points if f.contains_point(p)) for f in assigned}
        _, bucket, _ = self.dyadic_choice("flat-levels", assigned, points_on.get, Fraction(degenerate_mass))

        if c.dim == 3:
            low = [Flat.of_point(p) for p in c.points if any(f.contains_point(p) for f in bucket)]
            projection = self.project(low, bucket, 2, 6)
            self.harvest_projection("planar", projection, low, bucket)
            return trace.best(), trace

        lines, _, line_mass = self.point_layer(bucket, thresholds)
        if not lines:
            trace.add("stop", "no-degenerate-points")
            return trace.best(), trace
        chosen_lines, _ = self.line_choice(lines, bucket, line_mass)

        if c.dim == 4:
            projection = self.project(chosen_lines, bucket, 2, 6)
            self.harvest_projection("planar", projection, chosen_lines, bucket)
            return trace.best(), trace

        hosts = [f for f in bucket if any(flat_contained(line, f) for line in chosen_lines)]
        projection = self.project(chosen_lines, hosts, 3, 6)
        self.harvest_projection("spatial", projection, chosen_lines, hosts)
        planes = self.plane_layer(projection, chosen_lines, hosts, thresholds)
        if not planes:
            trace.add("stop", "no-degenerate-flats")
            return trace.best(), trace

        def plane_weight(plane: Flat) -> int:
            return sum(1 for line in chosen_lines if flat_contained(line, plane))

        _, plane_bucket, record = self.dyadic_choice(
            "plane-levels", planes, plane_weight,
            Fraction(sum(plane_weight(p) for p in planes)),
        )
        final_lines = [line for line in chosen_lines if any(flat_contained(line, p) for p in plane_bucket)]
        record.counts["incidences"] = sum(plane_weight(p) for p in plane_bucket)
        if final_lines:
            projection = self.project(final_lines, plane_bucket, 2, 8)
            self.harvest_projection("planar", projection, final_lines, plane_bucket)
        return trace.best(), trace


def extract(c: Configuration, params: Optional[ExtractionParams] = None,
            seed: int = 0) -> Tuple[Biclique, ExtractionTrace]:
    """
    Run the layer-peeling pipeline and return the best certified biclique
    with its trace. Caps hit in a generic projection raise
    ExtractionAbortedError carrying the partial trace.
    """
    params = params or ExtractionParams()
    require_extraction_dim(c.dim)
    if c.m < 1 or c.n < 1:
        raise InvalidArgumentError(f"extraction needs m, n >= 1, got m={c.m}, n={c.n}")
    best, trace = _Pipeline(c, params, seed).run()
    logger.info(
        f"extract: d={c.dim} m={c.m} n={c.n} I={trace.incidences} -> rs={best.rs} "
        f"(r={best.r}, s={best.s}) from {best.source or 'none'}"
    )
    return best, trace

