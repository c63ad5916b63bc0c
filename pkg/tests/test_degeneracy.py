from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.errors import InvalidArgumentError
from app.models.degeneracy import (
    Verdict,
    classify_hyperplane,
    classify_point_dual,
    richest_proper_subflat,
)
from app.models.geometry import Configuration, Flat, Hyperplane, Point
from app.models.transforms import dualize
from tests.conftest import brute_force_richest, points_in_hyperplane

PLANE_Z0 = Hyperplane((0, 0, 1), 0)
X_AXIS = Flat(Point.of(0, 0, 0), ((1, 0, 0),))
Z_AXIS = Flat(Point.of(0, 0, 0), ((0, 0, 1),))

OFF_AXIS = [Point.of(0, 1, 0), Point.of(2, 5, 0), Point.of(5, 3, 0), Point.of(-1, 4, 0), Point.of(3, 7, 0)]


def six_collinear_of_ten():
    return [Point.of(t, 0, 0) for t in range(6)] + OFF_AXIS[:4]


def five_collinear_of_ten():
    return [Point.of(t, 0, 0) for t in range(5)] + OFF_AXIS


class TestRichestProperSubflat:
    def test_collinear_majority(self):
        flat, count = richest_proper_subflat(PLANE_Z0, six_collinear_of_ten())
        assert (flat, count) == (X_AXIS, 6)

    def test_general_position(self):
        pts = [Point.of(0, 0, 0), Point.of(1, 0, 0), Point.of(0, 1, 0), Point.of(2, 3, 0), Point.of(5, 1, 0)]
        flat, count = richest_proper_subflat(PLANE_Z0, pts)
        assert count == 2 and flat.dim_flat == 1

    def test_hull_equal_to_host_is_excluded(self):
        pts = [Point.of(0, 0, 0), Point.of(1, 0, 0), Point.of(0, 1, 0)]
        flat, count = richest_proper_subflat(PLANE_Z0, pts)
        assert count == 2 and flat.dim_flat == 1

    def test_needs_two_points(self):
        with pytest.raises(InvalidArgumentError):
            richest_proper_subflat(PLANE_Z0, [Point.of(0, 0, 0)])

    def test_point_off_host(self):
        with pytest.raises(InvalidArgumentError):
            richest_proper_subflat(PLANE_Z0, [Point.of(0, 0, 0), Point.of(0, 0, 1)])


class TestClassifyHyperplane:
    def test_degenerate_six_of_ten(self):
        v = classify_hyperplane(PLANE_Z0, six_collinear_of_ten(), Fraction(1, 2))
        assert v.verdict == Verdict.DEGENERATE
        assert v.witness == X_AXIS
        assert v.witness_count == 6
        assert v.total == 10

    def test_nondegenerate_at_larger_beta(self):
        v = classify_hyperplane(PLANE_Z0, six_collinear_of_ten(), Fraction(2, 3))
        assert v.verdict == Verdict.NONDEGENERATE
        assert v.witness is None

    def test_strict_boundary(self):
        v = classify_hyperplane(PLANE_Z0, five_collinear_of_ten(), "1/2")
        assert v.verdict == Verdict.NONDEGENERATE
        assert v.boundary
        assert v.core_count == 5

    def test_points_off_the_hyperplane_are_ignored(self):
        pts = six_collinear_of_ten() + [Point.of(1, 1, 1), Point.of(2, 2, 2)]
        assert classify_hyperplane(PLANE_Z0, pts, "1/2").total == 10

    def test_at_most_one_point(self):
        assert classify_hyperplane(PLANE_Z0, [Point.of(1, 1, 0)], "1/2").verdict == Verdict.NONDEGENERATE
        assert classify_hyperplane(PLANE_Z0, [], "1/2").total == 0

    @pytest.mark.parametrize("beta", [0, 1, "3/2", -1])
    def test_beta_outside_unit_interval(self, beta):
        with pytest.raises(InvalidArgumentError):
            classify_hyperplane(PLANE_Z0, six_collinear_of_ten(), beta)

    def test_richer_plane_beats_line_in_four_dimensions(self):
        h = Hyperplane((0, 0, 0, 1), 0)
        pts = [Point.of(t, 0, 0, 0) for t in range(5)] + [Point.of(0, 1, 0, 0), Point.of(0, 0, 1, 0)]
        v = classify_hyperplane(h, pts, "1/2")
        assert v.degenerate
        assert v.core_count == 6 and v.core.dim_flat == 2
        assert v.witness == v.core
        assert v.witness_count == 6


BETAS = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]


@settings(max_examples=100, deadline=None)
@given(points_in_hyperplane(), st.sampled_from(BETAS))
def test_classifier_matches_brute_force(case, beta):
    h, pts = case
    v = classify_hyperplane(h, pts, beta)
    assert v.total == len(pts)
    if len(pts) <= 1:
        assert v.verdict == Verdict.NONDEGENERATE
        return
    richest = brute_force_richest(h, pts)
    assert v.core_count == richest
    assert v.degenerate == (richest > beta * len(pts))
    if v.degenerate:
        assert v.witness.dim_flat == h.to_flat().dim_flat - 1


@settings(max_examples=50, deadline=None)
@given(points_in_hyperplane(), st.sampled_from(BETAS), st.sampled_from(BETAS))
def test_degeneracy_is_monotone_in_beta(case, a, b):
    h, pts = case
    low, high = min(a, b), max(a, b)
    if classify_hyperplane(h, pts, high).degenerate:
        assert classify_hyperplane(h, pts, low).degenerate


def pencil_through_z_axis():
    through_axis = [Hyperplane((a, b, 0), 0) for a, b in [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)]]
    others = [Hyperplane((1, 1, 1), 0), Hyperplane((1, -1, 2), 0)]
    return through_axis + others


class TestClassifyPoint:
    def test_degenerate_to_common_line(self):
        v = classify_point_dual(Point.of(0, 0, 0), pencil_through_z_axis(), "1/2")
        assert v.verdict == Verdict.DEGENERATE
        assert v.witness == Z_AXIS
        assert v.witness_count == 8
        assert not v.strict

    def test_single_hyperplane(self):
        v = classify_point_dual(Point.of(0, 0, 0), [PLANE_Z0], "1/2")
        assert v.verdict == Verdict.NONDEGENERATE

    def test_non_strict_boundary(self):
        # 5 of 10 through the z-axis is enough for a point.
        generic = [(1, 1, 1), (1, -1, 2), (2, 1, 3), (1, 3, -1), (3, -2, 1)]
        hs = pencil_through_z_axis()[:5] + [Hyperplane(n, 0) for n in generic]
        v = classify_point_dual(Point.of(0, 0, 0), hs, "1/2")
        assert v.core_count == 5
        assert v.degenerate and v.boundary

    def test_hyperplane_must_pass_through_point(self):
        with pytest.raises(InvalidArgumentError):
            classify_point_dual(Point.of(0, 0, 0), [Hyperplane((1, 0, 0), 1)], "1/2")

    def test_agrees_with_dual_hyperplane_classification(self):
        p = Point.of(0, 0, 0)
        hs = pencil_through_z_axis()
        dual = dualize(Configuration(3, (p,), tuple(hs)))
        primal = classify_point_dual(p, hs, "1/2")
        mirrored = classify_hyperplane(dual.hyperplanes[0], dual.points, "1/2")
        assert primal.degenerate == mirrored.degenerate
        assert primal.core_count == mirrored.core_count

    def test_primal_route_for_flats(self):
        hs = pencil_through_z_axis()
        v = classify_point_dual(Point.of(0, 0, 0), [h.to_flat() for h in hs], "1/2")
        assert v.degenerate
        assert v.witness == Z_AXIS
        assert v.core_count == 8

    def test_lines_through_point_against_planes(self):
        origin = Point.of(0, 0, 0, 0)
        planes = [Flat(origin, ((1, 0, 0, 0), (0, a, 1, 0))) for a in range(3)]
        planes.append(Flat(origin, ((0, 1, 0, 0), (0, 0, 0, 1))))
        v = classify_point_dual(origin, planes, "1/2")
        assert v.degenerate
        assert v.witness == Flat(origin, ((1, 0, 0, 0),))
        assert v.witness_count == 3


@st.composite
def pencils(draw):
    d = draw(st.sampled_from([3, 4]))
    normal = st.tuples(*[st.integers(-2, 2)] * d).filter(any)
    normals = draw(st.lists(normal, min_size=2, max_size=7))
    hyperplanes = list(dict.fromkeys(Hyperplane(n, 0) for n in normals))
    return Point(tuple([0] * d)), hyperplanes


@settings(max_examples=60, deadline=None)
@given(pencils(), st.sampled_from(BETAS))
def test_dual_and_primal_routes_agree(pencil, beta):
    p, hs = pencil
    dual_route = classify_point_dual(p, hs, beta)
    primal_route = classify_point_dual(p, [h.to_flat() for h in hs], beta)
    assert dual_route.degenerate == primal_route.degenerate
    assert dual_route.core_count == primal_route.core_count
