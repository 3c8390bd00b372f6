import pytest
from hypothesis import given
from hypothesis import strategies as st

from noncrossing.geom import (
    Intersection,
    Location,
    Orientation,
    Point,
    orientation,
    point_in_ring,
    segment_interior_in_region_interior,
    segments_intersect,
)
from noncrossing.region import validate

coord = st.integers(-(2**29), 2**29)
points = st.builds(Point, coord, coord)
small = st.builds(Point, st.integers(-6, 6), st.integers(-6, 6))


@pytest.mark.parametrize(
    "p, q, r, expected",
    [
        ((0, 0), (1, 0), (0, 1), Orientation.LEFT),
        ((0, 0), (1, 0), (2, 0), Orientation.COLLINEAR),
        ((0, 0), (0, 1), (1, 0), Orientation.RIGHT),
    ],
)
def test_orientation_examples(p, q, r, expected):
    assert orientation(p, q, r) is expected


@given(points, points, points)
def test_orientation_antisymmetric(p, q, r):
    assert orientation(p, q, r) == -orientation(p, r, q)


@given(points, points, points, st.integers(-(2**29), 2**29), st.integers(-(2**29), 2**29))
def test_orientation_translation_invariant(p, q, r, dx, dy):
    shift = lambda a: (a[0] + dx, a[1] + dy)  # noqa: E731
    assert orientation(p, q, r) == orientation(shift(p), shift(q), shift(r))


def test_orientation_exact_near_degenerate():
    # products here exceed 2**53, where doubles would round
    big = 2**29 - 1
    assert orientation((0, 0), (big, big - 1), (big - 1, big - 2)) is Orientation.RIGHT
    assert orientation((0, 0), (big, big), (big - 1, big - 1)) is Orientation.COLLINEAR


@pytest.mark.parametrize(
    "s1, s2, expected",
    [
        (((0, 0), (2, 2)), ((0, 2), (2, 0)), Intersection.PROPER_CROSSING),
        (((0, 0), (1, 0)), ((1, 0), (2, 1)), Intersection.SHARED_ENDPOINT_ONLY),
        (((0, 0), (4, 0)), ((1, 0), (3, 0)), Intersection.OVERLAPPING),
        (((0, 0), (4, 0)), ((2, 0), (2, 3)), Intersection.TOUCHING),
        (((0, 0), (1, 0)), ((2, 0), (3, 0)), Intersection.DISJOINT),
        (((0, 0), (1, 0)), ((1, 0), (2, 0)), Intersection.SHARED_ENDPOINT_ONLY),
        (((0, 0), (1, 1)), ((3, 0), (4, 5)), Intersection.DISJOINT),
    ],
)
def test_segments_intersect_examples(s1, s2, expected):
    assert segments_intersect(s1, s2) is expected


@given(small, small, small, small)
def test_segments_intersect_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    assert segments_intersect((a, b), (c, d)) is segments_intersect((c, d), (a, b))
    assert segments_intersect((a, b), (c, d)) is segments_intersect((b, a), (d, c))


SQUARE3 = [(0, 0), (3, 0), (3, 3), (0, 3)]


@pytest.mark.parametrize(
    "p, expected",
    [((1, 1), Location.INTERIOR), ((0, 1), Location.BOUNDARY), ((5, 5), Location.EXTERIOR), ((3, 3), Location.BOUNDARY)],
)
def test_point_in_ring_examples(p, expected):
    assert point_in_ring(p, SQUARE3) is expected


def test_point_in_ring_ray_through_vertex():
    # horizontal ray from p passes exactly through vertex (4, 2)
    diamond = [(2, 0), (4, 2), (2, 4), (0, 2)]
    assert point_in_ring((1, 2), diamond) is Location.INTERIOR
    assert point_in_ring((-1, 2), diamond) is Location.EXTERIOR


def test_segment_interior_examples():
    square = validate(SQUARE3)
    assert segment_interior_in_region_interior(((0, 0), (3, 3)), square)
    assert not segment_interior_in_region_interior(((0, 0), (3, 0)), square)
    dart = validate([(0, 0), (2, 1), (4, 0), (2, 3)])
    assert not segment_interior_in_region_interior(((0, 0), (4, 0)), dart)
    assert segment_interior_in_region_interior(((2, 1), (2, 3)), dart)


def test_segment_through_vertex_is_rejected():
    # (0,0)-(4,4) runs through the reflex vertex (2,2)
    region = validate([(0, 0), (4, 0), (4, 4), (2, 2), (0, 4)])
    assert not segment_interior_in_region_interior(((0, 0), (4, 4)), region)


def test_segment_interior_respects_holes():
    region = validate([(0, 0), (9, 0), (9, 9), (0, 9)], [[(3, 3), (6, 3), (6, 6), (3, 6)]])
    assert not segment_interior_in_region_interior(((0, 0), (9, 9)), region)
    assert segment_interior_in_region_interior(((0, 0), (3, 3)), region)
    assert not segment_interior_in_region_interior(((3, 3), (6, 6)), region)
