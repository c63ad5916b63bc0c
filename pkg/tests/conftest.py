"""
Shared fixtures, hypothesis strategies and brute-force reference helpers.
"""
from itertools import combinations

import pytest
from hypothesis import strategies as st

from app.models.generators import generate
from app.models.geometry import Configuration, Flat, Hyperplane, Point, affine_hull, as_flat, incident
from app.schemas.params import GeneratorSpec, PlantedFlat


# ---------------------------------------------------------------------------
# Brute force references
# ---------------------------------------------------------------------------

def brute_force_rs(c: Configuration) -> int:
    """max r*s over every nonempty point subset against its common hyperplanes."""
    best = 0
    for size in range(1, c.m + 1):
        for subset in combinations(range(c.m), size):
            s = sum(1 for h in c.hyperplanes if all(incident(c.points[i], h) for i in subset))
            best = max(best, size * s)
    return best


def brute_force_richest(h, points) -> int:
    """Largest number of points on a proper subflat of h, over the hulls of all subsets."""
    host = as_flat(h)
    best = 0
    for size in range(1, len(points) + 1):
        for subset in combinations(points, size):
            hull = affine_hull(list(subset))
            if not isinstance(hull, Flat) or hull == host:
                continue
            best = max(best, sum(1 for p in points if hull.contains_point(p)))
    return best


def incidence_count(c: Configuration) -> int:
    return sum(1 for p in c.points for h in c.hyperplanes if incident(p, h))


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

@st.composite
def small_configurations(draw, dims=(2, 3, 4), max_points=8, max_hyperplanes=8, coord=2):
    """Small integer configurations; tiny coordinates make incidences common."""
    d = draw(st.sampled_from(dims))
    values = st.integers(-coord, coord)
    raw_points = draw(st.lists(st.tuples(*[values] * d), max_size=max_points, unique=True))
    normal = st.tuples(*[st.integers(-1, 1)] * d).filter(any)
    raw_hyperplanes = draw(st.lists(st.tuples(normal, st.integers(-1, 1)), max_size=max_hyperplanes))
    hyperplanes = list(dict.fromkeys(Hyperplane(c, o) for c, o in raw_hyperplanes))
    return Configuration(d, tuple(Point(p) for p in raw_points), tuple(hyperplanes))


@st.composite
def points_in_hyperplane(draw, dims=(3, 4), max_points=10):
    """A hyperplane x_d = 0 (or a tilted one) with up to max_points distinct points on it."""
    d = draw(st.sampled_from(dims))
    values = st.integers(-1, 1) if d == 4 else st.integers(-2, 2)
    raw = draw(st.lists(st.tuples(*[values] * (d - 1)), min_size=0, max_size=max_points, unique=True))
    tilt = draw(st.integers(0, 2))
    # x_d = tilt * x_1
    h = Hyperplane(tuple([-tilt] + [0] * (d - 2) + [1]), 0)
    points = [Point(tuple(x) + (tilt * x[0],)) for x in raw]
    return h, points


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

def planted_spec(dim, planted, noise_points=0, noise_hyperplanes=0, seed=0) -> GeneratorSpec:
    return GeneratorSpec(
        kind="planted", dim=dim,
        planted=[PlantedFlat(**entry) for entry in planted],
        noise_points=noise_points, noise_hyperplanes=noise_hyperplanes, seed=seed,
    )


PLANTED_4D = [{"flat_dim": 2, "points_on_flat": 20, "hyperplanes_through_flat": 15}]
PLANTED_5D = [
    {"flat_dim": 3, "points_on_flat": 0, "hyperplanes_through_flat": 10},
    {"flat_dim": 2, "points_on_flat": 12, "hyperplanes_through_flat": 0, "parent": 0},
]


@pytest.fixture
def grid2() -> Configuration:
    """3x3 integer grid with its 3 horizontal and 3 vertical lines."""
    return generate(GeneratorSpec(kind="grid", dim=2, grid_side=3))


@pytest.fixture
def grid4() -> Configuration:
    return generate(GeneratorSpec(kind="grid", dim=4, grid_side=3))


@pytest.fixture
def line_pencil4() -> Configuration:
    """5 points on the x1-axis of R^4 and 6 hyperplanes containing it."""
    points = tuple(Point.of(t, 0, 0, 0) for t in range(5))
    hyperplanes = tuple(Hyperplane((0, a, b, 1), 0) for a, b in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
    return Configuration(4, points, hyperplanes)


@pytest.fixture
def planted4() -> Configuration:
    return generate(planted_spec(4, PLANTED_4D, noise_points=30, noise_hyperplanes=10, seed=7))


@pytest.fixture
def planted5() -> Configuration:
    return generate(planted_spec(5, PLANTED_5D, seed=11))
