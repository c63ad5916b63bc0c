from fractions import Fraction

import pytest
from hypothesis import given, settings

import app.models.transforms as transforms
from app.errors import InvalidArgumentError, RetryCapExceededError
from app.models.geometry import Configuration, Flat, Hyperplane, Point, affine_hull, incident
from app.models.transforms import (
    containment_edges,
    dual_hyperplane,
    dual_point,
    dualize,
    generic_project,
)
from tests.conftest import incidence_count, small_configurations


def edge_set(c: Configuration):
    return {(i, j) for i, p in enumerate(c.points) for j, h in enumerate(c.hyperplanes) if incident(p, h)}


class TestDuality:
    def test_point_on_line_dualizes(self):
        p = Point.of(1, 2)
        line = Hyperplane((-3, 1), -1)  # y = 3x - 1
        assert incident(p, line)
        assert incident(dual_point(line), dual_hyperplane(p))

    def test_dual_point_needs_last_coefficient(self):
        with pytest.raises(InvalidArgumentError):
            dual_point(Hyperplane((1, 0, 0), 0))

    def test_dual_round_trip(self):
        p = Point.of(3, "1/2", -4)
        assert dual_point(dual_hyperplane(p)) == p

    def test_shear_recorded_and_edges_preserved(self):
        c = Configuration(
            2,
            (Point.of(0, 0), Point.of(0, 1), Point.of(1, 1)),
            (Hyperplane((1, 0), 0), Hyperplane((0, 1), 1)),
        )
        dual = dualize(c)
        assert any(note.startswith("pre-shear") for note in dual.provenance)
        assert edge_set(dual) == {(j, i) for i, j in edge_set(c)}

    @settings(max_examples=100, deadline=None)
    @given(small_configurations(dims=(2, 3, 4, 5)))
    def test_dualize_transposes_edges(self, c):
        dual = dualize(c)
        assert (dual.m, dual.n) == (c.n, c.m)
        assert edge_set(dual) == {(j, i) for i, j in edge_set(c)}

    @settings(max_examples=50, deadline=None)
    @given(small_configurations())
    def test_double_dual_isomorphic(self, c):
        twice = dualize(dualize(c))
        assert edge_set(twice) == edge_set(c)
        assert incidence_count(twice) == incidence_count(c)


def two_planes_sharing_a_line():
    origin = Point.of(0, 0, 0, 0)
    line = Flat(origin, ((1, 0, 0, 0),))
    plane_a = Flat(origin, ((1, 0, 0, 0), (0, 1, 0, 0)))
    plane_b = Flat(origin, ((1, 0, 0, 0), (0, 0, 1, 0)))
    return line, plane_a, plane_b


class TestGenericProject:
    def test_line_and_two_planes(self):
        line, plane_a, plane_b = two_planes_sharing_a_line()
        result = generic_project([line], [plane_a, plane_b], 2, seed=5)
        assert result.edges() == [(0, 0), (0, 1)]
        projected = result.to_configuration()
        assert (projected.m, projected.n) == (1, 2)
        assert incidence_count(projected) == 2

    def test_empty_inputs(self):
        result = generic_project([], [], 2, seed=1)
        assert result.edges() == []
        assert result.to_configuration().m == 0

    def test_points_and_lines_to_plane(self):
        pts = [Point.of(x, y, 0) for x in range(3) for y in range(2)]
        lines = [affine_hull([Point.of(0, y, 0), Point.of(1, y, 0)]) for y in range(2)]
        low = [Flat.of_point(p) for p in pts]
        result = generic_project(low, lines, 2, seed=3)
        assert result.edges() == containment_edges(low, lines)
        assert len(result.edges()) == 6

    def test_forced_degenerate_draw_is_retried(self, monkeypatch):
        line, plane_a, plane_b = two_planes_sharing_a_line()
        real = transforms._draw_map
        calls = []

        def collapsing(rng, d, d1, d_to, bound):
            calls.append(d1)
            if len(calls) == 1:
                zero = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d1))
                return zero, tuple(Fraction(0) for _ in range(d1)), real(rng, d, d1, d_to, bound)[2]
            return real(rng, d, d1, d_to, bound)

        monkeypatch.setattr(transforms, "_draw_map", collapsing)
        result = generic_project([line], [plane_a, plane_b], 2, seed=9)
        assert result.generic_map.retries_used >= 1
        assert result.edges() == [(0, 0), (0, 1)]

    def test_retry_cap(self):
        line, plane_a, plane_b = two_planes_sharing_a_line()
        with pytest.raises(RetryCapExceededError):
            generic_project([line], [plane_a, plane_b], 2, seed=9, retry_cap=3, bound=0)

    def test_same_seed_same_map(self):
        line, plane_a, plane_b = two_planes_sharing_a_line()
        a = generic_project([line], [plane_a, plane_b], 2, seed=42)
        b = generic_project([line], [plane_a, plane_b], 2, seed=42)
        assert a.generic_map == b.generic_map

    def test_rejects_bad_dimensions(self):
        line, plane_a, _ = two_planes_sharing_a_line()
        with pytest.raises(InvalidArgumentError):
            generic_project([plane_a], [line], 2, seed=0)
