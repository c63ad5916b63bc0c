"""
Point/hyperplane duality and the generic dimension-reducing map.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from app.errors import DimensionMismatchError, InvalidArgumentError, RetryCapExceededError
from app.models.geometry import (
    Configuration,
    Flat,
    Hyperplane,
    Marker,
    Point,
    Vector,
    check_dim,
    dot,
    flat_contained,
    format_vector,
    intersect_hyperplanes,
    nullspace,
    rank,
)
from app.models.rng import derive_seed, make_rng, random_integers

logger = logging.getLogger(__name__)

DEFAULT_RETRY_CAP = 32
DEFAULT_ENTRY_BOUND = 10 ** 4


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def dual_hyperplane(p: Point) -> Hyperplane:
    """(a_1..a_d) -> x_d = a_1 x_1 + ... + a_{d-1} x_{d-1} - a_d."""
    a = p.coords
    return Hyperplane(tuple(-x for x in a[:-1]) + (Fraction(1),), -a[-1])


def dual_point(h: Hyperplane) -> Point:
    """Inverse of dual_hyperplane; needs a nonzero x_d coefficient."""
    c, last = h.coeffs, h.coeffs[-1]
    if last == 0:
        raise InvalidArgumentError(f"hyperplane {h} has no dual point without a shear")
    return Point(tuple(-x / last for x in c[:-1]) + (-h.offset / last,))


def shear_vector(hyperplanes: Sequence[Hyperplane], d: int) -> Optional[Vector]:
    """
    A vector u (u_d = 0) such that every hyperplane has a nonzero x_d
    coefficient after x_j -> x_j - u_j x_d; None when no shear is needed.

    Candidates walk the moment curve (1, t, t^2, ...), so each hyperplane
    rules out finitely many t.
    """
    if all(h.coeffs[-1] != 0 for h in hyperplanes):
        return None
    for t in count(1):
        u = tuple(Fraction(t ** i) for i in range(d - 1)) + (Fraction(0),)
        if all(h.coeffs[-1] + dot(h.coeffs[:-1], u[:-1]) != 0 for h in hyperplanes):
            return u
    raise AssertionError("unreachable")


def shear_point(p: Point, u: Vector) -> Point:
    x = p.coords
    return Point(tuple(x[j] - u[j] * x[-1] for j in range(len(x) - 1)) + (x[-1],))


def shear_hyperplane(h: Hyperplane, u: Vector) -> Hyperplane:
    c = h.coeffs
    return Hyperplane(c[:-1] + (c[-1] + dot(c[:-1], u[:-1]),), h.offset)


def dualize(config: Configuration) -> Configuration:
    """
    Swap points and hyperplanes. Hyperplane j becomes point j and point i
    becomes hyperplane i, so (i, j) is an incidence of the input iff (j, i)
    is one of the output. A shear is applied first when some hyperplane is
    parallel to the x_d axis; it is recorded in the provenance.
    """
    d = config.dim
    points, hyperplanes = list(config.points), list(config.hyperplanes)
    notes: Tuple[str, ...] = ("dual",)
    u = shear_vector(hyperplanes, d)
    if u is not None:
        points = [shear_point(p, u) for p in points]
        hyperplanes = [shear_hyperplane(h, u) for h in hyperplanes]
        notes += (f"pre-shear u={format_vector(u)}",)
        logger.info(f"dualize: applied pre-shear u={format_vector(u)}")
    return Configuration(
        d,
        tuple(dual_point(h) for h in hyperplanes),
        tuple(dual_hyperplane(p) for p in points),
        config.provenance + notes,
    )


# ---------------------------------------------------------------------------
# Generic projection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenericMap:
    """
    Affine projection x -> matrix x + shift into R^{d1}, followed by the
    section with the linear subspace spanned by the columns of ``section``
    (d1 x dim_to). With d1 == dim_to the section is the identity and the
    map is a plain affine projection.
    """
    dim_from: int
    dim_to: int
    matrix: Tuple[Vector, ...]
    shift: Vector
    section: Tuple[Vector, ...]
    seed: int
    retries_used: int = 0

    @property
    def middle_dim(self) -> int:
        return len(self.matrix)

    def project(self, coords: Sequence[Fraction]) -> Vector:
        return tuple(dot(row, coords) + s for row, s in zip(self.matrix, self.shift))

    def project_direction(self, v: Sequence[Fraction]) -> Vector:
        return tuple(dot(row, v) for row in self.matrix)

    def image(self, flat: Flat) -> Union[Flat, Marker]:
        """Preimage under the section of the projected flat."""
        d1 = self.middle_dim
        base = self.project(flat.basepoint.coords)
        dirs = [self.project_direction(v) for v in flat.directions]
        if rank(dirs, d1) < len(dirs):
            return Marker.EMPTY
        equations: List[Hyperplane] = []
        for n in nullspace(dirs, d1):
            coeffs = tuple(sum((n[r] * self.section[r][c] for r in range(d1)), Fraction(0))
                           for c in range(self.dim_to))
            rhs = dot(n, base)
            if any(coeffs):
                equations.append(Hyperplane(coeffs, rhs))
            elif rhs != 0:
                return Marker.EMPTY
        return intersect_hyperplanes(equations, self.dim_to)


@dataclass(frozen=True)
class ProjectionResult:
    low: Tuple[Flat, ...]
    high: Tuple[Flat, ...]
    generic_map: GenericMap

    def edges(self) -> List[Tuple[int, int]]:
        return containment_edges(self.low, self.high)

    def to_configuration(self) -> Configuration:
        """Points and hyperplanes of R^{dim_to}, when the images have those dimensions."""
        d = self.generic_map.dim_to
        if any(f.dim_flat != 0 for f in self.low) or any(f.dim_flat != d - 1 for f in self.high):
            raise DimensionMismatchError("projected images are not points and hyperplanes")
        return Configuration(
            d,
            tuple(f.basepoint for f in self.low),
            tuple(f.as_hyperplane() for f in self.high),
            ("generic projection", f"seed={self.generic_map.seed}"),
        )


def containment_edges(low: Sequence[Flat], high: Sequence[Flat]) -> List[Tuple[int, int]]:
    return [(a, b) for a, f in enumerate(low) for b, g in enumerate(high) if flat_contained(f, g)]


def _draw_map(rng: np.random.Generator, d: int, d1: int, d_to: int, bound: int):
    matrix = tuple(tuple(Fraction(v) for v in random_integers(rng, bound, d)) for _ in range(d1))
    shift = tuple(Fraction(v) for v in random_integers(rng, bound, d1))
    if d1 == d_to:
        section = tuple(tuple(Fraction(int(r == c)) for c in range(d_to)) for r in range(d1))
    else:
        section = tuple(tuple(Fraction(v) for v in random_integers(rng, bound, d_to)) for _ in range(d1))
    return matrix, shift, section


def _check_draw(gmap: GenericMap, low: Sequence[Flat], high: Sequence[Flat], low_dim: int,
                expected_edges: List[Tuple[int, int]]) -> Optional[ProjectionResult]:
    low_img, high_img = [], []
    for f, out in ((low, low_img), (high, high_img)):
        for flat in f:
            img = gmap.image(flat)
            if not isinstance(img, Flat) or img.dim_flat != flat.dim_flat - low_dim:
                return None
            out.append(img)
    if len(set(low_img)) != len(low_img) or len(set(high_img)) != len(high_img):
        return None
    result = ProjectionResult(tuple(low_img), tuple(high_img), gmap)
    if result.edges() != expected_edges:
        return None
    return result


def generic_project(low: Sequence[Flat], high: Sequence[Flat], target_dim: int, seed: int,
                    retry_cap: int = DEFAULT_RETRY_CAP, bound: int = DEFAULT_ENTRY_BOUND,
                    low_dim: Optional[int] = None) -> ProjectionResult:
    """
    Map two families of flats of R^d into R^{target_dim} so that the low
    flats become points and the containment graph is preserved exactly.

    A draw whose images collapse, change dimension, or gain or lose an
    incidence is rejected and redrawn from a derived seed.
    """
    low, high = list(low), list(high)
    check_dim(target_dim)
    objects = low + high
    d = objects[0].dim_ambient if objects else target_dim
    if any(f.dim_ambient != d for f in objects):
        raise DimensionMismatchError("generic_project needs flats of one ambient space")
    k = low_dim if low_dim is not None else (low[0].dim_flat if low else 0)
    if any(f.dim_flat != k for f in low):
        raise InvalidArgumentError("low flats must share one dimension")
    if any(f.dim_flat <= k or f.dim_flat - k > target_dim - 1 for f in high):
        raise InvalidArgumentError(f"high flats must have dimension in ({k}, {k + target_dim - 1}]")
    d1 = target_dim + k
    if d1 > d:
        raise InvalidArgumentError(f"cannot reduce {k}-flats to points in R^{target_dim} from R^{d}")
    expected = containment_edges(low, high)
    for attempt in range(retry_cap):
        draw_seed = seed if attempt == 0 else derive_seed(seed, attempt)
        matrix, shift, section = _draw_map(make_rng(draw_seed), d, d1, target_dim, bound)
        gmap = GenericMap(d, target_dim, matrix, shift, section, draw_seed, attempt)
        result = _check_draw(gmap, low, high, k, expected)
        if result is not None:
            if attempt:
                logger.info(f"generic projection accepted after {attempt} redraws (seed {seed})")
            return result
        logger.debug(f"generic projection draw {attempt} (seed {draw_seed}) degenerate, redrawing")
    logger.warning(f"generic projection failed {retry_cap} draws for seed {seed}")
    raise RetryCapExceededError(retry_cap, seed)
