from fractions import Fraction

import pytest
from hypothesis import given, settings

import app.models.transforms as transforms
from app.errors import DimensionMismatchError, ExtractionAbortedError, InvalidArgumentError
from app.models.extraction import check_hypothesis, compute_thresholds, extract, require_extraction_dim
from app.models.generators import generate
from app.models.geometry import Configuration, Hyperplane, Point
from app.models.incidence_graph import Side
from app.models.oracle import incidence_graph, validate_biclique
from app.schemas.params import ExtractionParams
from tests.conftest import PLANTED_4D, PLANTED_5D, brute_force_rs, planted_spec, small_configurations

PARAMS = ExtractionParams()


def plane_with_six_collinear():
    points = [Point.of(t, 0, 0) for t in range(6)]
    points += [Point.of(0, 1, 0), Point.of(2, 5, 0), Point.of(5, 3, 0), Point.of(-1, 4, 0)]
    return Configuration(3, tuple(points), (Hyperplane((0, 0, 1), 0),))


class TestThresholds:
    def test_four_dimensions(self):
        t = compute_thresholds(16, 16, 256, 4, PARAMS)
        assert t.s0 == Fraction(1, 256)
        assert t.r0 == Fraction(1, 32)
        assert t.t0 is None
        assert t.log_factor == 8

    def test_five_dimensions(self):
        t = compute_thresholds(16, 16, 256, 5, PARAMS)
        assert (t.s0, t.r0, t.t0) == (16, 16, 16)

    def test_trivial_configuration(self):
        assert compute_thresholds(1, 1, 1, 4, PARAMS).s0 == 1

    def test_constants_scale(self):
        params = ExtractionParams(c1="1/2")
        assert compute_thresholds(16, 16, 256, 5, params).s0 == 8

    @pytest.mark.parametrize("args", [(0, 4, 0, 4), (4, 4, 17, 4), (4, 4, 4, 3)])
    def test_invalid(self, args):
        with pytest.raises(InvalidArgumentError):
            compute_thresholds(*args, PARAMS)


class TestHypothesis:
    def test_four_dimensions_holds(self):
        assert check_hypothesis(2 ** 15, 2 ** 10, 2 ** 22, 4)

    def test_no_incidences(self):
        assert not check_hypothesis(2 ** 15, 2 ** 10, 0, 4)

    def test_five_dimensions_holds(self):
        assert check_hypothesis(2 ** 10, 2 ** 10, 2 ** 19, 5)

    def test_constant_tightens(self):
        assert not check_hypothesis(2 ** 10, 2 ** 10, 2 ** 19, 5, C=1000)

    def test_other_dimensions(self):
        with pytest.raises(InvalidArgumentError):
            check_hypothesis(4, 4, 4, 3)


class TestDimensions:
    @pytest.mark.parametrize("d", [2, 6, 7])
    def test_rejected(self, d):
        with pytest.raises(DimensionMismatchError):
            require_extraction_dim(d)

    def test_empty_side(self):
        with pytest.raises(InvalidArgumentError):
            extract(Configuration(4, (Point.of(0, 0, 0, 0),)))


class TestExtract:
    def test_single_hyperplane_gives_star(self):
        points = tuple(Point.of(t, t, 0, 1) for t in range(5))
        c = Configuration(4, points, (Hyperplane((0, 0, 0, 1), 1),))
        best, _ = extract(c)
        assert (best.r, best.s) == (5, 1)

    def test_line_pencil(self, line_pencil4):
        best, trace = extract(line_pencil4)
        assert best.rs == 30
        assert trace.incidences == 30

    def test_planted_four_dimensions(self, planted4):
        best, trace = extract(planted4, seed=3)
        assert best.rs >= 300
        assert validate_biclique(planted4, best)
        assert trace.thresholds is not None
        assert [s.step for s in trace.steps][:3] == ["degree", "rich-filter", "witness"]

    def test_planted_five_dimensions(self, planted5):
        best, _ = extract(planted5, seed=3)
        assert best.rs >= 120
        assert validate_biclique(planted5, best)

    def test_three_dimensions_projects_to_the_plane(self):
        c = plane_with_six_collinear()
        best, trace = extract(c)
        assert best.rs == 10
        assert "planar:harvest" in trace.branches()
        assert any(b.source == "witness" and b.rs == 6 for b in trace.candidates())

    def test_same_seed_same_result(self, planted4):
        a, ta = extract(planted4, seed=5)
        b, tb = extract(planted4, seed=5)
        assert a == b
        assert ta.branches() == tb.branches()

    def test_projection_abort_keeps_trace(self, monkeypatch):
        real = transforms._draw_map

        def collapsing(rng, d, d1, d_to, bound):
            section = real(rng, d, d1, d_to, bound)[2]
            zero = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d1))
            return zero, tuple(Fraction(0) for _ in range(d1)), section

        monkeypatch.setattr(transforms, "_draw_map", collapsing)
        with pytest.raises(ExtractionAbortedError) as info:
            extract(plane_with_six_collinear(), ExtractionParams(retry_cap=2))
        trace = info.value.trace
        assert trace.steps[-1].branch == "aborted"
        assert trace.best().rs == 10


@settings(max_examples=40, deadline=None)
@given(small_configurations(dims=(3, 4), max_points=7, max_hyperplanes=6))
def test_extraction_is_sound(c):
    if not c.m or not c.n:
        return
    best, _ = extract(c)
    graph = incidence_graph(c)
    assert validate_biclique(c, best)
    assert best.rs <= brute_force_rs(c)
    degrees = list(graph.degrees(Side.LEFT)) + list(graph.degrees(Side.RIGHT))
    assert best.rs >= max(degrees)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_planted_four_dimensions_across_seeds(seed):
    c = generate(planted_spec(4, PLANTED_4D, noise_points=30, noise_hyperplanes=10, seed=seed))
    best, _ = extract(c, seed=seed)
    assert best.rs >= 300
    assert validate_biclique(c, best)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_planted_five_dimensions_across_seeds(seed):
    c = generate(planted_spec(5, PLANTED_5D, seed=seed))
    best, _ = extract(c, seed=seed)
    assert best.rs >= 120
    assert validate_biclique(c, best)
