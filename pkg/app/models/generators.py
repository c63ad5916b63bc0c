"""
Seeded configuration generators: planted flats with noise, integer grids,
and uniform random configurations.
"""
import logging
from fractions import Fraction
from itertools import product
from typing import Callable, List, Set, TypeVar

import numpy as np

from app.errors import InfeasibleSpecError
from app.models.geometry import (
    Configuration,
    Flat,
    Hyperplane,
    Point,
    add,
    dot,
    flat_contained,
    nullspace,
    rank,
    scale,
)
from app.models.rng import make_rng, random_integers, random_rationals
from app.schemas.params import GeneratorSpec, PlantedFlat

logger = logging.getLogger(__name__)

MAX_REDRAWS = 1000

T = TypeVar("T")


def _draw_distinct(draw: Callable[[], T], taken: Set[T], what: str) -> T:
    for _ in range(MAX_REDRAWS):
        obj = draw()
        if obj not in taken:
            taken.add(obj)
            return obj
    raise InfeasibleSpecError(f"could not draw a new distinct {what} in {MAX_REDRAWS} attempts")


class _Draws:
    def __init__(self, spec: GeneratorSpec, rng: np.random.Generator):
        self.spec = spec
        self.rng = rng
        self.d = spec.dim

    def rational_vector(self, size: int) -> tuple:
        return tuple(random_rationals(self.rng, self.spec.coord_bound, self.spec.denominator_bound, size))

    def integer_vector(self, size: int) -> tuple:
        return tuple(Fraction(v) for v in random_integers(self.rng, self.spec.coord_bound, size))

    def directions(self, k: int, basis=None) -> tuple:
        """k independent directions, inside span(basis) when given."""
        for _ in range(MAX_REDRAWS):
            if basis is None:
                dirs = [self.integer_vector(self.d) for _ in range(k)]
            else:
                dirs = [self._combine(basis, self.integer_vector(len(basis))) for _ in range(k)]
            if rank(dirs, self.d) == k:
                return tuple(dirs)
        raise InfeasibleSpecError(f"could not draw {k} independent directions")

    def _combine(self, basis, weights) -> tuple:
        out = tuple(Fraction(0) for _ in range(self.d))
        for w, v in zip(weights, basis):
            out = add(out, scale(w, v))
        return out

    def point_on(self, flat: Flat) -> Point:
        weights = self.rational_vector(flat.dim_flat)
        return Point(add(flat.basepoint.coords, self._combine(flat.directions, weights)))

    def flat(self, entry: PlantedFlat, parent: Flat = None) -> Flat:
        if parent is None:
            base = Point(self.rational_vector(self.d))
            return Flat(base, self.directions(entry.flat_dim))
        base = self.point_on(parent)
        return Flat(base, self.directions(entry.flat_dim, parent.directions))

    def hyperplane_through(self, flat: Flat) -> Hyperplane:
        normals = nullspace(flat.directions, self.d)
        for _ in range(MAX_REDRAWS):
            normal = self._combine(normals, self.integer_vector(len(normals)))
            if any(normal):
                return Hyperplane(normal, dot(normal, flat.basepoint.coords))
        raise InfeasibleSpecError("could not draw a hyperplane through the planted flat")

    def random_point(self) -> Point:
        return Point(self.rational_vector(self.d))

    def random_hyperplane(self) -> Hyperplane:
        for _ in range(MAX_REDRAWS):
            coeffs = self.integer_vector(self.d)
            if any(coeffs):
                return Hyperplane(coeffs, self.rational_vector(1)[0])
        raise InfeasibleSpecError("could not draw a nonzero hyperplane normal")


def _check_feasible(spec: GeneratorSpec):
    for index, entry in enumerate(spec.planted):
        if entry.flat_dim == 0 and entry.points_on_flat > 1:
            raise InfeasibleSpecError(f"planted flat {index} is a point and cannot hold {entry.points_on_flat} points")
        if entry.flat_dim == spec.dim - 1 and entry.hyperplanes_through_flat > 1:
            raise InfeasibleSpecError(
                f"planted flat {index} is a hyperplane; only one hyperplane contains it, "
                f"not {entry.hyperplanes_through_flat}"
            )


def generate_planted(spec: GeneratorSpec) -> Configuration:
    _check_feasible(spec)
    draws = _Draws(spec, make_rng(spec.seed))
    flats: List[Flat] = []
    points: List[Point] = []
    hyperplanes: List[Hyperplane] = []
    seen_points: Set[Point] = set()
    seen_hyperplanes: Set[Hyperplane] = set()
    for entry in spec.planted:
        parent = flats[entry.parent] if entry.parent is not None else None
        flat = draws.flat(entry, parent)
        flats.append(flat)
        for _ in range(entry.points_on_flat):
            points.append(_draw_distinct(lambda: draws.point_on(flat), seen_points, "planted point"))
        for _ in range(entry.hyperplanes_through_flat):
            hyperplanes.append(_draw_distinct(lambda: draws.hyperplane_through(flat), seen_hyperplanes,
                                              "planted hyperplane"))

    noise_points = [_draw_distinct(draws.random_point, seen_points, "noise point")
                    for _ in range(spec.noise_points)]
    noise_hyperplanes = [_draw_distinct(draws.random_hyperplane, seen_hyperplanes, "noise hyperplane")
                         for _ in range(spec.noise_hyperplanes)]
    point_hits = sum(1 for p in noise_points if any(f.contains_point(p) for f in flats))
    hyperplane_hits = sum(1 for h in noise_hyperplanes if any(flat_contained(f, h) for f in flats))
    if point_hits or hyperplane_hits:
        logger.warning(f"noise hit planted flats: {point_hits} points, {hyperplane_hits} hyperplanes (kept)")

    provenance = ("generator=planted", f"seed={spec.seed}") + tuple(
        f"planted[{i}]: dim={e.flat_dim} points={e.points_on_flat} hyperplanes={e.hyperplanes_through_flat}"
        + (f" parent={e.parent}" if e.parent is not None else "")
        for i, e in enumerate(spec.planted)
    ) + (f"noise hits: points={point_hits} hyperplanes={hyperplane_hits}",)
    return Configuration(spec.dim, tuple(points + noise_points), tuple(hyperplanes + noise_hyperplanes), provenance)


def generate_grid(spec: GeneratorSpec) -> Configuration:
    """{0..s-1}^d with every axis hyperplane x_i = v."""
    d, s = spec.dim, spec.grid_side
    points = tuple(Point(coords) for coords in product(range(s), repeat=d))
    hyperplanes = tuple(
        Hyperplane(tuple(int(i == axis) for i in range(d)), v)
        for axis in range(d) for v in range(s)
    )
    return Configuration(d, points, hyperplanes, ("generator=grid", f"side={s}"))


def generate_random(spec: GeneratorSpec) -> Configuration:
    draws = _Draws(spec, make_rng(spec.seed))
    seen_points: Set[Point] = set()
    seen_hyperplanes: Set[Hyperplane] = set()

    def integer_point() -> Point:
        return Point(draws.integer_vector(spec.dim))

    def integer_hyperplane() -> Hyperplane:
        for _ in range(MAX_REDRAWS):
            coeffs = draws.integer_vector(spec.dim)
            if any(coeffs):
                return Hyperplane(coeffs, draws.integer_vector(1)[0])
        raise InfeasibleSpecError("could not draw a nonzero hyperplane normal")

    points = tuple(_draw_distinct(integer_point, seen_points, "point") for _ in range(spec.noise_points))
    hyperplanes = tuple(_draw_distinct(integer_hyperplane, seen_hyperplanes, "hyperplane")
                        for _ in range(spec.noise_hyperplanes))
    return Configuration(spec.dim, points, hyperplanes, ("generator=random", f"seed={spec.seed}"))


GENERATORS = {
    "planted": generate_planted,
    "grid": generate_grid,
    "random": generate_random,
}


def generate(spec: GeneratorSpec) -> Configuration:
    config = GENERATORS[spec.kind](spec)
    logger.info(f"generated {spec.kind} configuration in R^{spec.dim}: m={config.m}, n={config.n}")
    return config
