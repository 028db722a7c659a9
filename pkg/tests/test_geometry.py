import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxplane.geometry import convex_hull, hulls_disjoint, hulls_touch_once, on_boundary

coord = st.integers(min_value=-20, max_value=20).map(lambda v: v / 4)
points = st.lists(st.tuples(coord, coord), min_size=1, max_size=8)


def test_square_diagonals_cross():
    a = convex_hull([(1, 0), (-1, 0)])
    b = convex_hull([(0, 1), (0, -1)])
    assert not hulls_disjoint(a, b)
    assert not hulls_touch_once(a, b)


def test_segments_sharing_an_endpoint_touch_once():
    a = convex_hull([(0, 0), (1, 0)])
    b = convex_hull([(0, 0), (0, 1)])
    assert not hulls_disjoint(a, b)
    assert hulls_touch_once(a, b)


def test_coincident_points_touch_once():
    a = convex_hull([(0, 0)])
    assert not hulls_disjoint(a, a)
    assert hulls_touch_once(a, a)


def test_polygon_and_point_on_edge():
    tri = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert on_boundary(np.array([1.0, 0.0]), tri)
    assert not on_boundary(np.array([0.5, 0.5]), tri)
    assert hulls_touch_once(tri, convex_hull([(1, 0), (1, -1)]))
    assert not hulls_touch_once(tri, convex_hull([(0.5, 0.5), (3, 3)]))


def test_collinear_input_gives_segment():
    hull = convex_hull([(0, 0), (1, 1), (2, 2), (0.5, 0.5)])
    assert len(hull) == 2
    assert sorted(map(tuple, hull)) == [(0.0, 0.0), (2.0, 2.0)]


@settings(max_examples=150, deadline=None)
@given(points, points)
def test_disjointness_is_symmetric(p, q):
    a, b = convex_hull(p), convex_hull(q)
    assert hulls_disjoint(a, b) == hulls_disjoint(b, a)
    assert hulls_touch_once(a, b) == hulls_touch_once(b, a)


@settings(max_examples=100, deadline=None)
@given(points, points)
def test_far_translates_are_disjoint(p, q):
    a = convex_hull(p)
    b = convex_hull([(x + 100.0, y) for x, y in q])
    assert hulls_disjoint(a, b)


@settings(max_examples=100, deadline=None)
@given(points)
def test_hull_contains_its_points(p):
    hull = convex_hull(p)
    for x in p:
        assert not hulls_disjoint(hull, convex_hull([x]))


@pytest.mark.parametrize("k", [3, 5, 8])
def test_regular_polygon_hull(k):
    ang = 2 * np.pi * np.arange(k) / k
    pts = np.c_[np.cos(ang), np.sin(ang)]
    assert len(convex_hull(pts)) == k
