"""
Geometry core: exact points, hyperplanes and flats in R^d (d = 2..5).

Every predicate is evaluated over the rationals. Hyperplanes and flats are
kept in canonical form so that equality and hashing are structural.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from app.errors import DimensionMismatchError, DuplicateObjectError, EmptyInputError, InvalidArgumentError
from app.models.numeric import RationalLike, to_rational

logger = logging.getLogger(__name__)

SUPPORTED_DIMS = (2, 3, 4, 5)

Vector = Tuple[Fraction, ...]


class Marker(Enum):
    """Results that are not a proper flat."""
    FULL_SPACE = "full-space"
    EMPTY = "empty"


def check_dim(d: int) -> int:
    if d not in SUPPORTED_DIMS:
        raise DimensionMismatchError(f"ambient dimension {d} is not supported (expected 2..5)")
    return d


def as_vector(values: Iterable[RationalLike]) -> Vector:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def subtract(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def format_vector(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(c) for c in v) + ")"


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row-echelon form by Gauss-Jordan elimination; zero rows dropped."""
    aug = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(aug)
    pivot_row = 0
    pivots: List[int] = []
    for col in range(ncols):
        piv = None
        for r in range(pivot_row, n_rows):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        aug[pivot_row], aug[piv] = aug[piv], aug[pivot_row]
        lead = aug[pivot_row][col]
        if lead != 1:
            aug[pivot_row] = [x / lead for x in aug[pivot_row]]
        for r in range(n_rows):
            if r != pivot_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == n_rows:
            break
    return aug[:pivot_row], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[Vector]:
    """Basis of {x : row . x = 0 for every row}."""
    echelon, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis: List[Vector] = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(echelon, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def reduce_against(vector: Sequence[Fraction], echelon: Sequence[Sequence[Fraction]],
                   pivots: Sequence[int]) -> Vector:
    """Remainder of vector after removing its component in the row space of an RREF basis."""
    v = list(vector)
    for row, p in zip(echelon, pivots):
        if v[p] != 0:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def _pivots_of(echelon: Sequence[Sequence[Fraction]]) -> List[int]:
    return [next(i for i, x in enumerate(row) if x != 0) for row in echelon]


# ---------------------------------------------------------------------------
# Objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    coords: Vector

    def __post_init__(self):
        coords = as_vector(self.coords)
        check_dim(len(coords))
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *values: RationalLike) -> "Point":
        return cls(tuple(values))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def sort_key(self) -> Tuple:
        return self.coords

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Hyperplane:
    """{x : coeffs . x = offset}, scaled so the first nonzero coefficient is 1."""
    coeffs: Vector
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        coeffs = as_vector(self.coeffs)
        offset = to_rational(self.offset)
        check_dim(len(coeffs))
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            raise InvalidArgumentError("hyperplane normal must be nonzero")
        if lead != 1:
            coeffs = tuple(c / lead for c in coeffs)
            offset = offset / lead
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def to_flat(self) -> "Flat":
        flat = intersect_hyperplanes([self])
        assert isinstance(flat, Flat)
        return flat

    def sort_key(self) -> Tuple:
        return self.coeffs + (self.offset,)

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*x{i + 1}" for i, c in enumerate(self.coeffs) if c != 0)
        return f"{terms} = {self.offset}"


@dataclass(frozen=True)
class Flat:
    """
    Affine subspace basepoint + span(directions) of dimension 0..d-1.

    Canonical form: directions in reduced row-echelon form, basepoint the
    unique point of the flat with zero coordinates in the pivot columns.
    """
    basepoint: Point
    directions: Tuple[Vector, ...] = ()

    def __post_init__(self):
        base = self.basepoint if isinstance(self.basepoint, Point) else Point(self.basepoint)
        d = base.dim
        rows = [as_vector(v) for v in self.directions]
        for v in rows:
            if len(v) != d:
                raise DimensionMismatchError(f"direction of length {len(v)} in R^{d}")
        echelon, pivots = rref(rows, d)
        if len(pivots) >= d:
            raise DimensionMismatchError("a Flat must be proper; use Marker.FULL_SPACE for R^d")
        base = Point(reduce_against(base.coords, echelon, pivots))
        object.__setattr__(self, "basepoint", base)
        object.__setattr__(self, "directions", tuple(tuple(r) for r in echelon))

    @classmethod
    def of_point(cls, p: Point) -> "Flat":
        return cls(p, ())

    @property
    def dim_ambient(self) -> int:
        return self.basepoint.dim

    @property
    def dim_flat(self) -> int:
        return len(self.directions)

    def _pivots(self) -> List[int]:
        return _pivots_of(self.directions)

    def contains_point(self, p: Point) -> bool:
        if p.dim != self.dim_ambient:
            raise DimensionMismatchError(f"point in R^{p.dim} vs flat in R^{self.dim_ambient}")
        rest = reduce_against(subtract(p.coords, self.basepoint.coords), self.directions, self._pivots())
        return not any(rest)

    def spans(self, v: Sequence[Fraction]) -> bool:
        return not any(reduce_against(v, self.directions, self._pivots()))

    def extend(self, p: Point) -> Union["Flat", Marker]:
        """Affine hull of this flat and one more point."""
        v = subtract(p.coords, self.basepoint.coords)
        if self.spans(v):
            return self
        if self.dim_flat + 1 == self.dim_ambient:
            return Marker.FULL_SPACE
        return Flat(self.basepoint, self.directions + (v,))

    def equations(self) -> List[Hyperplane]:
        """Hyperplanes whose intersection is this flat."""
        normals = nullspace(self.directions, self.dim_ambient)
        return [Hyperplane(n, dot(n, self.basepoint.coords)) for n in normals]

    def as_hyperplane(self) -> Hyperplane:
        if self.dim_flat != self.dim_ambient - 1:
            raise DimensionMismatchError(f"a {self.dim_flat}-flat in R^{self.dim_ambient} is not a hyperplane")
        return self.equations()[0]

    def spanning_points(self) -> List[Point]:
        base = self.basepoint.coords
        return [self.basepoint] + [Point(add(base, v)) for v in self.directions]

    def sort_key(self) -> Tuple:
        return (self.dim_flat, self.basepoint.coords, self.directions)

    def __str__(self) -> str:
        if not self.directions:
            return f"point {self.basepoint}"
        dirs = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.directions)
        return f"{self.dim_flat}-flat {self.basepoint} + span[{dirs}]"


GeometricObject = Union[Point, Flat, Hyperplane]


def ambient_dim(obj: GeometricObject) -> int:
    if isinstance(obj, Flat):
        return obj.dim_ambient
    return obj.dim


def object_dim(obj: GeometricObject) -> int:
    if isinstance(obj, Point):
        return 0
    if isinstance(obj, Hyperplane):
        return obj.dim - 1
    return obj.dim_flat


def as_flat(obj: GeometricObject) -> Flat:
    if isinstance(obj, Point):
        return Flat.of_point(obj)
    if isinstance(obj, Hyperplane):
        return obj.to_flat()
    return obj


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------

def incident(p: Point, h: Hyperplane) -> bool:
    """True iff p lies on h, evaluated exactly."""
    if p.dim != h.dim:
        raise DimensionMismatchError(f"point in R^{p.dim} vs hyperplane in R^{h.dim}")
    return dot(h.coeffs, p.coords) == h.offset


def affine_hull(points: Sequence[Point]) -> Union[Flat, Marker]:
    """Smallest flat containing every point; Marker.FULL_SPACE when it is R^d."""
    if not points:
        raise EmptyInputError("affine_hull needs at least one point")
    base = points[0]
    d = base.dim
    diffs = []
    for p in points[1:]:
        if p.dim != d:
            raise DimensionMismatchError(f"point in R^{p.dim} mixed with points in R^{d}")
        diffs.append(subtract(p.coords, base.coords))
    echelon, pivots = rref(diffs, d)
    if len(pivots) == d:
        return Marker.FULL_SPACE
    return Flat(base, tuple(tuple(r) for r in echelon))


def flat_contained(f: Union[Flat, Point], g: Union[Flat, Hyperplane, Marker]) -> bool:
    """True iff flat f lies inside flat or hyperplane g."""
    if isinstance(f, Point):
        f = Flat.of_point(f)
    if g is Marker.FULL_SPACE:
        return True
    if g is Marker.EMPTY:
        return False
    if isinstance(g, Hyperplane):
        if f.dim_ambient != g.dim:
            raise DimensionMismatchError(f"flat in R^{f.dim_ambient} vs hyperplane in R^{g.dim}")
        return incident(f.basepoint, g) and all(dot(g.coeffs, v) == 0 for v in f.directions)
    if f.dim_ambient != g.dim_ambient:
        raise DimensionMismatchError(f"flat in R^{f.dim_ambient} vs flat in R^{g.dim_ambient}")
    if f.dim_flat > g.dim_flat:
        return False
    return g.contains_point(f.basepoint) and all(g.spans(v) for v in f.directions)


def contains(container: Union[Flat, Hyperplane, Marker], obj: GeometricObject) -> bool:
    """Incidence in the sense a ⊆ b, for any pair of object kinds."""
    if isinstance(obj, Point):
        if isinstance(container, Hyperplane):
            return incident(obj, container)
        if isinstance(container, Flat):
            return container.contains_point(obj)
        return container is Marker.FULL_SPACE
    return flat_contained(as_flat(obj), container)


def intersect_hyperplanes(hyperplanes: Sequence[Hyperplane],
                          dim: Optional[int] = None) -> Union[Flat, Marker]:
    """Solution set of the stacked system; Marker.EMPTY if inconsistent."""
    if not hyperplanes:
        if dim is None:
            raise EmptyInputError("intersect_hyperplanes needs a dimension when given no hyperplanes")
        check_dim(dim)
        return Marker.FULL_SPACE
    d = hyperplanes[0].dim
    if dim is not None and dim != d:
        raise DimensionMismatchError(f"hyperplanes in R^{d} requested in R^{dim}")
    for h in hyperplanes:
        if h.dim != d:
            raise DimensionMismatchError(f"hyperplane in R^{h.dim} mixed with hyperplanes in R^{d}")
    echelon, pivots = rref([h.coeffs + (h.offset,) for h in hyperplanes], d + 1)
    if d in pivots:
        return Marker.EMPTY
    if not pivots:
        return Marker.FULL_SPACE
    particular = [Fraction(0)] * d
    for row, p in zip(echelon, pivots):
        particular[p] = row[d]
    directions = nullspace([row[:d] for row in echelon], d)
    return Flat(Point(tuple(particular)), tuple(directions))


def intersect_flats(flats: Sequence[Union[Flat, Hyperplane]]) -> Union[Flat, Marker]:
    """Intersection of flats, through their equations."""
    if not flats:
        raise EmptyInputError("intersect_flats needs at least one flat")
    d = ambient_dim(flats[0])
    equations: List[Hyperplane] = []
    for f in flats:
        equations.extend([f] if isinstance(f, Hyperplane) else f.equations())
    return intersect_hyperplanes(equations, d)


def spanned_flats(points: Sequence[Point], max_dim: int) -> Dict[Flat, int]:
    """
    Every flat of dimension <= max_dim spanned by some of the points,
    mapped to the bitmask of the points lying on it.

    Grows the hull lattice one dimension at a time; an extension is skipped
    when its point set is already covered by a flat of the next level.
    """
    if not points:
        return {}
    d = points[0].dim
    max_dim = min(max_dim, d - 1)
    level: Dict[Flat, int] = {}
    for i, p in enumerate(points):
        level.setdefault(Flat.of_point(p), 0)
        level[Flat.of_point(p)] |= 1 << i
    found: Dict[Flat, int] = dict(level)
    for _ in range(max_dim):
        nxt: Dict[Flat, int] = {}
        by_point: Dict[int, List[int]] = defaultdict(list)
        for flat, mask in level.items():
            for j, q in enumerate(points):
                bit = 1 << j
                if mask & bit:
                    continue
                want = mask | bit
                if any(m & want == want for m in by_point[j]):
                    continue
                ext = flat.extend(q)
                if not isinstance(ext, Flat) or ext in nxt:
                    continue
                ext_mask = 0
                for t, r in enumerate(points):
                    if ext.contains_point(r):
                        ext_mask |= 1 << t
                nxt[ext] = ext_mask
                for t in range(len(points)):
                    if ext_mask >> t & 1:
                        by_point[t].append(ext_mask)
        if not nxt:
            break
        found.update(nxt)
        level = nxt
    logger.debug(f"spanned {len(found)} flats from {len(points)} points (max dim {max_dim})")
    return found


def mask_indices(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Configuration:
    """m labelled points and n labelled hyperplanes sharing one ambient dimension."""
    dim: int
    points: Tuple[Point, ...] = ()
    hyperplanes: Tuple[Hyperplane, ...] = ()
    provenance: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        check_dim(self.dim)
        points = tuple(self.points)
        hyperplanes = tuple(self.hyperplanes)
        for p in points:
            if p.dim != self.dim:
                raise DimensionMismatchError(f"point {p} is not in R^{self.dim}")
        for h in hyperplanes:
            if h.dim != self.dim:
                raise DimensionMismatchError(f"hyperplane {h} is not in R^{self.dim}")
        if len(set(points)) != len(points):
            raise DuplicateObjectError("configuration contains a duplicate point")
        if len(set(hyperplanes)) != len(hyperplanes):
            raise DuplicateObjectError("configuration contains a duplicate hyperplane")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "hyperplanes", hyperplanes)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def with_provenance(self, *notes: str) -> "Configuration":
        return Configuration(self.dim, self.points, self.hyperplanes, self.provenance + notes)
