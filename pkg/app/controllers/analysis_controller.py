import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from app.controllers.base import command_error
from app.errors import InvalidArgumentError
from app.models.bounds import FORMULAS, evaluate, evaluate_all
from app.models.degeneracy import DegeneracyVerdict, classify_hyperplane, classify_point_dual
from app.models.extraction import extract
from app.models.geometry import Configuration, incident
from app.models.incidence_graph import Side
from app.models.numeric import RationalLike, as_float, format_rational
from app.models.oracle import Biclique, incidence_graph, max_biclique_oracle, validate_biclique
from app.schemas.params import ExtractionParams
from app.schemas.results import (
    BicliqueResponse,
    BoundResponse,
    ExtractResponse,
    IncidenceResponse,
    StepResponse,
    VerdictResponse,
)

logger = logging.getLogger(__name__)

CLASSIFY_KINDS = ("hyperplanes", "points")


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def biclique_response(c: Configuration, b: Biclique) -> BicliqueResponse:
    return BicliqueResponse(
        r=b.r, s=b.s, rs=b.rs,
        point_indices=list(b.point_indices),
        hyperplane_indices=list(b.hyperplane_indices),
        witness_flat=str(b.witness_flat) if b.witness_flat is not None else None,
        source=b.source,
        valid=validate_biclique(c, b),
    )


def verdict_response(index: int, kind: str, v: DegeneracyVerdict) -> VerdictResponse:
    return VerdictResponse(
        index=index, kind=kind, verdict=v.verdict.value, total=v.total,
        witness=str(v.witness) if v.witness is not None else None,
        witness_count=v.witness_count, core_count=v.core_count, boundary=v.boundary,
    )


class AnalysisController:
    """
    Controller for questions asked about a single configuration:
    incidence counts, the exact oracle, extraction, classification and bounds.
    """

    def incidences(self, c: Configuration) -> IncidenceResponse:
        graph = incidence_graph(c)
        return IncidenceResponse(
            d=c.dim, m=c.m, n=c.n, I=graph.edge_count,
            max_point_degree=max(graph.degrees(Side.LEFT), default=0),
            max_hyperplane_degree=max(graph.degrees(Side.RIGHT), default=0),
        )

    def oracle(self, c: Configuration, cap: int) -> BicliqueResponse:
        try:
            return biclique_response(c, max_biclique_oracle(c, cap))
        except Exception as e:
            raise command_error(e, "run the biclique oracle")

    def extract(self, c: Configuration, params: ExtractionParams, seed: int) -> ExtractResponse:
        try:
            best, trace = extract(c, params, seed)
        except Exception as e:
            raise command_error(e, "extract a biclique")
        thresholds = trace.thresholds
        return ExtractResponse(
            biclique=biclique_response(c, best),
            incidences=trace.incidences,
            s0=as_float(thresholds.s0) if thresholds else None,
            r0=as_float(thresholds.r0) if thresholds else None,
            t0=as_float(thresholds.t0) if thresholds and thresholds.t0 is not None else None,
            steps=[
                StepResponse(
                    step=record.step, branch=record.branch, level=record.level,
                    counts={k: _jsonable(v) for k, v in record.counts.items()},
                    flags=list(record.flags),
                    best_rs=max((b.rs for b in record.candidates), default=0),
                )
                for record in trace.steps
            ],
        )

    def classify(self, c: Configuration, beta: RationalLike, kind: str = "hyperplanes") -> List[VerdictResponse]:
        """
        Classify every hyperplane against the points (strict beta test), or
        every point against the hyperplanes through it (non-strict, dual).
        """
        if kind not in CLASSIFY_KINDS:
            raise command_error(InvalidArgumentError(f"unknown kind {kind!r}, expected one of {CLASSIFY_KINDS}"),
                                "classify")
        try:
            if kind == "hyperplanes":
                return [
                    verdict_response(j, "hyperplane", classify_hyperplane(h, c.points, beta))
                    for j, h in enumerate(c.hyperplanes)
                ]
            out = []
            for a, p in enumerate(c.points):
                through = [h for h in c.hyperplanes if incident(p, h)]
                out.append(verdict_response(a, "point", classify_point_dual(p, through, beta)))
            return out
        except Exception as e:
            raise command_error(e, f"classify {kind}")

    def bounds(self, m: int, n: int, I: int, d: int, k: Optional[RationalLike] = None,
               names: Optional[List[str]] = None,
               constants: Optional[Dict[str, RationalLike]] = None) -> List[BoundResponse]:
        """Named bounds when ``names`` is given, otherwise every applicable one."""
        constants = constants or {}
        try:
            if names:
                values = [
                    evaluate(name, m=m, n=n, I=I, k=k, d=d, constant=constants.get(name, 1))
                    for name in names
                ]
            else:
                values = list(evaluate_all(m, n, I, d, k=k, constants=constants).values())
        except Exception as e:
            raise command_error(e, "evaluate bounds")
        return [
            BoundResponse(
                name=v.name,
                value=as_float(v.value),
                exact=format_rational(v.value) if isinstance(v.value, Fraction) else None,
                constant=format_rational(v.constant),
            )
            for v in values
        ]

    @staticmethod
    def bound_names() -> List[str]:
        return list(FORMULAS)
