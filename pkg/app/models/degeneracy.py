"""
Beta-(non)degeneracy of hyperplanes with respect to point sets, and of
points with respect to the flats through them.

A hyperplane H is degenerate when some proper subflat of H holds more than
a beta fraction of the points on H. A point p is degenerate when some line
through p lies in at least a beta fraction of the flats through p. The two
comparisons differ in strictness and are kept that way.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from app.errors import InvalidArgumentError
from app.models.geometry import (
    Configuration,
    Flat,
    Hyperplane,
    Point,
    affine_hull,
    as_flat,
    contains,
    flat_contained,
    intersect_flats,
    intersect_hyperplanes,
    spanned_flats,
)
from app.models.numeric import RationalLike, to_rational
from app.models.transforms import dualize

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    DEGENERATE = "degenerate"
    NONDEGENERATE = "nondegenerate"


@dataclass(frozen=True)
class DegeneracyVerdict:
    """
    ``core`` is the richest flat found, ``witness`` its extension to the
    dimension the pipeline works with (codim 1 in H, or a line through p).
    ``witness`` is set only for degenerate verdicts.
    """
    beta: Fraction
    total: int
    verdict: Verdict
    witness: Optional[Flat] = None
    witness_count: int = 0
    core: Optional[Flat] = None
    core_count: int = 0
    strict: bool = True
    boundary: bool = False

    @property
    def degenerate(self) -> bool:
        return self.verdict == Verdict.DEGENERATE


def check_beta(beta: RationalLike) -> Fraction:
    beta = to_rational(beta)
    if not 0 < beta < 1:
        raise InvalidArgumentError(f"beta must lie in (0, 1), got {beta}")
    return beta


def _points_on(container: Union[Flat, Hyperplane], points: Sequence[Point]) -> List[Point]:
    return [p for p in points if contains(container, p)]


def _count_on(flat: Flat, points: Sequence[Point]) -> int:
    return sum(1 for p in points if flat.contains_point(p))


def richest_proper_subflat(h: Union[Hyperplane, Flat], s_in: Sequence[Point]) -> Tuple[Flat, int]:
    """
    Proper subflat of h holding the most points of s_in.

    Any richest subflat may be replaced by the hull of its points, and a
    proper hull inside a k-flat is spanned by at most k points, so the
    search runs over the hull lattice of s_in up to dimension k - 1.
    Ties go to the lower dimension, then to the canonical order.
    """
    flat_h = as_flat(h)
    points = list(s_in)
    if len(points) <= 1:
        raise InvalidArgumentError("richest_proper_subflat needs at least two points")
    for p in points:
        if not flat_h.contains_point(p):
            raise InvalidArgumentError(f"point {p} does not lie on {flat_h}")
    hull = affine_hull(points)
    if isinstance(hull, Flat) and hull != flat_h:
        return hull, len(points)
    lattice = spanned_flats(points, flat_h.dim_flat - 1)
    best: Optional[Tuple[int, Tuple, Flat]] = None
    for flat, mask in lattice.items():
        count = bin(mask).count("1")
        key = (-count, flat.sort_key())
        if best is None or key < best[:2]:
            best = (-count, flat.sort_key(), flat)
    assert best is not None
    return best[2], -best[0]


def extend_within(core: Flat, h: Flat, points: Sequence[Point], target_dim: int) -> Flat:
    """
    Grow core inside h to target_dim, first through points of h (always the
    one that keeps the most points on the flat, lowest index on ties), then
    through directions of h.
    """
    flat = core
    while flat.dim_flat < target_dim:
        best: Optional[Tuple[int, int, Flat]] = None
        for i, p in enumerate(points):
            if flat.contains_point(p):
                continue
            ext = flat.extend(p)
            if not isinstance(ext, Flat):
                continue
            count = _count_on(ext, points)
            if best is None or count > best[0]:
                best = (count, i, ext)
        if best is not None:
            flat = best[2]
            continue
        direction = next(v for v in h.directions if not flat.spans(v))
        flat = Flat(flat.basepoint, flat.directions + (direction,))
    return flat


def classify_hyperplane(h: Union[Hyperplane, Flat], points: Sequence[Point],
                        beta: RationalLike) -> DegeneracyVerdict:
    """Degenerate iff the richest proper subflat holds more than beta * |h ∩ S| points."""
    beta = check_beta(beta)
    flat_h = as_flat(h)
    s_in = _points_on(h, points)
    total = len(s_in)
    if total <= 1:
        return DegeneracyVerdict(beta, total, Verdict.NONDEGENERATE)
    core, core_count = richest_proper_subflat(flat_h, s_in)
    threshold = beta * total
    boundary = core_count == threshold
    if core_count <= threshold:
        return DegeneracyVerdict(beta, total, Verdict.NONDEGENERATE, core=core,
                                 core_count=core_count, boundary=boundary)
    witness = extend_within(core, flat_h, s_in, flat_h.dim_flat - 1)
    logger.debug(f"degenerate: {core_count}/{total} points on a {core.dim_flat}-flat (beta {beta})")
    return DegeneracyVerdict(
        beta, total, Verdict.DEGENERATE,
        witness=witness, witness_count=_count_on(witness, s_in),
        core=core, core_count=core_count, boundary=boundary,
    )


def _line_through(p: Point, flat: Flat) -> Flat:
    if flat.dim_flat == 1:
        return flat
    return Flat(p, (flat.directions[0],))


def _count_containing(line: Flat, flats: Sequence[Union[Flat, Hyperplane]]) -> int:
    return sum(1 for f in flats if flat_contained(line, f))


def _richest_line_dual(p: Point, hyperplanes: Sequence[Hyperplane]) -> Tuple[Flat, int, Flat]:
    """Richest line through p, found as the richest subflat of the dual hyperplane of p."""
    dual = dualize(Configuration(p.dim, (p,), tuple(hyperplanes)))
    p_star = dual.hyperplanes[0]
    dual_points = list(dual.points)
    core, count = richest_proper_subflat(p_star, dual_points)
    core_set = [hyperplanes[i] for i, q in enumerate(dual_points) if core.contains_point(q)]
    shared = intersect_hyperplanes(core_set, p.dim)
    witness = extend_within(core, p_star.to_flat(), dual_points, p.dim - 2)
    on_witness = [hyperplanes[i] for i, q in enumerate(dual_points) if witness.contains_point(q)]
    line_host = intersect_hyperplanes(on_witness, p.dim)
    assert isinstance(shared, Flat) and isinstance(line_host, Flat)
    return shared, count, _line_through(p, line_host)


def _richest_line_primal(p: Point, flats: Sequence[Flat]) -> Tuple[Flat, int, Flat]:
    """Richest line through p over the intersection lattice of the flats."""
    masks: Dict[Flat, int] = {}
    work: List[Flat] = []
    for f in flats:
        if f.dim_flat >= 1 and f not in masks:
            masks[f] = 0
            work.append(f)
    while work:
        x = work.pop()
        for f in flats:
            if f.dim_flat < 1 or flat_contained(x, f):
                continue
            y = intersect_flats([x, f])
            if isinstance(y, Flat) and y.dim_flat >= 1 and y not in masks:
                masks[y] = 0
                work.append(y)
    for x in masks:
        masks[x] = sum(1 << i for i, f in enumerate(flats) if flat_contained(x, f))
    if not masks:
        raise InvalidArgumentError("no flat of positive dimension passes through the point")
    core = min(masks, key=lambda x: (-bin(masks[x]).count("1"), x.sort_key()))
    return core, bin(masks[core]).count("1"), _line_through(p, core)


def classify_point_dual(p: Point, flats: Sequence[Union[Hyperplane, Flat]],
                        beta: RationalLike) -> DegeneracyVerdict:
    """
    Degenerate iff some line through p lies in at least beta * |flats| of
    the flats. Hyperplane families are solved in the dual; general flat
    families through the intersection lattice.
    """
    beta = check_beta(beta)
    flats = list(flats)
    for f in flats:
        if not contains(f, p):
            raise InvalidArgumentError(f"{f} does not pass through {p}")
    total = len(flats)
    if total <= 1:
        return DegeneracyVerdict(beta, total, Verdict.NONDEGENERATE, strict=False)
    if all(isinstance(f, Hyperplane) for f in flats):
        core, count, line = _richest_line_dual(p, flats)
    else:
        core, count, line = _richest_line_primal(p, [as_flat(f) for f in flats])
    threshold = beta * total
    boundary = count == threshold
    if count < threshold:
        return DegeneracyVerdict(beta, total, Verdict.NONDEGENERATE, core=core, core_count=count,
                                 strict=False, boundary=boundary)
    return DegeneracyVerdict(
        beta, total, Verdict.DEGENERATE,
        witness=line, witness_count=_count_containing(line, flats),
        core=core, core_count=count, strict=False, boundary=boundary,
    )

