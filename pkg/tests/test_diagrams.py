import math

import numpy as np
import pytest

from coxplane.core import build_coxeter_system
from coxplane.diagrams import (
    ORIGIN,
    LabeledSegment,
    build_diagrams,
    distinguished_edges,
    gray_zone,
    reflection_segments,
    tau_on_diagram,
    tau_rotation_order,
)
from coxplane.plane import line_angle_distance, wrap

TYPES = ["A2", "A3", "A4", "B2", "B3", "B4", "D4", "D5", "I2(5)", "I2(8)", "H3", "F4", "E6"]
BIG = ["H4", "E7", "E8"]


@pytest.mark.parametrize("label", TYPES + BIG)
def test_two_distinguished_edges_per_ring(label, cache):
    ds = cache.diagrams(label)
    edges = distinguished_edges(ds.config)
    assert len(edges) == len(ds.config.rings)
    for ring_edges in edges:
        assert len(ring_edges) == 2
        lines = {round(line, 9) for _, _, line in ring_edges}
        if ds.system.h % 2:
            assert len(lines) == 2
        else:
            # for even h both midpoints lie on one axis, on opposite rays
            assert len(lines) == 1
            (_, m1, _), (_, m2, _) = ring_edges
            assert abs(abs(wrap(m1 - m2 + math.pi) - math.pi) - math.pi) < 1e-7


@pytest.mark.parametrize("label", TYPES + BIG)
def test_expanded_rings(label, cache):
    ds = cache.diagrams(label)
    ex, cfg = ds.expanded, ds.config
    assert ex.size == ds.system.h + 2
    assert [r.count for r in ex.rings] == [ex.size] * len(cfg.rings)
    assert np.allclose(ex.ring_radii, [r.radius for r in cfg.rings])
    assert len(ex.new_vertices) == 2 * len(ex.rings)
    assert ex.num_points == len(ex.coords)
    m = ex.size
    for ring in ex.rings:
        q = ring.phase * m / math.pi
        assert abs(q - round(q)) < 1e-9
    # the old vertices keep their cyclic order
    for r in range(len(cfg.rings)):
        new = [int(ex.old_to_new[r * cfg.h + k]) for k in range(cfg.h)]
        assert new == sorted(new)
    assert line_angle_distance(ex.l_prime_plus, ex.l_prime_minus) == pytest.approx(math.pi / m)


@pytest.mark.parametrize("label", TYPES)
def test_simple_reflection_segments_are_perpendicular_to_their_line(label, cache):
    ds = cache.diagrams(label)
    cfg = ds.config
    for s in range(ds.system.rank):
        line = cfg.l_plus_angle if s in ds.bip.s_plus else cfg.l_minus_angle
        for a, b in reflection_segments(s, cfg, ds.orbit):
            d = cfg.coords[b] - cfg.coords[a]
            direction = math.atan2(d[1], d[0])
            assert line_angle_distance(direction, line + math.pi / 2) < 1e-7


@pytest.mark.parametrize("label", TYPES + BIG)
def test_tau_fixes_opposite_negative_simples(label, cache):
    ds = cache.diagrams(label)
    for sign in (+1, -1):
        for s in ds.bip.part(-sign):
            d = ds.diagrams[s]
            assert tau_on_diagram(sign, d, ds.expanded).segments == d.segments


@pytest.mark.parametrize("label", TYPES + BIG)
def test_diagrams_are_tau_equivariant(label, cache):
    ds = cache.diagrams(label)
    for sign in (+1, -1):
        table = ds.aps.tau_table(sign)
        for a, d in ds.diagrams.items():
            image = tau_on_diagram(sign, d, ds.expanded)
            assert image.segments == ds.diagrams[int(table[a])].segments
            assert tau_on_diagram(sign, image, ds.expanded).segments == d.segments


@pytest.mark.parametrize("label", TYPES + ["H4", "E7"])
def test_tau_rotation_order_divides_polygon_size(label, cache):
    ds = cache.diagrams(label)
    k = tau_rotation_order(ds)
    assert k is not None and ds.expanded.size % k == 0


@pytest.mark.parametrize("label", TYPES + BIG)
def test_diagrams_are_distinct_and_well_formed(label, cache):
    ds = cache.diagrams(label)
    ex = ds.expanded
    assert len(ds.diagrams) == len(ds.aps)
    assert len({d.segments for d in ds.diagrams.values()}) == len(ds.aps)
    for d in ds.diagrams.values():
        assert len(d) > 0
        for a, b in d.segments:
            assert a < b
            assert not (ex.is_origin(a) and ex.is_origin(b))
            assert 0 <= a < ex.num_points and 0 <= b < ex.num_points


def test_h3_origin_segments(cache):
    ds = cache.diagrams("H3")
    ex = ds.expanded
    with_origin = [s for s in range(3) if any(ex.is_origin(p) for seg in ds.diagrams[s].segments for p in seg)]
    assert len(with_origin) == 2
    assert len(ex.origin_labels) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_diagrams_are_single_chords(n, cache):
    ds = cache.diagrams(f"A{n}")
    assert all(len(d) == 1 for d in ds.diagrams.values())
    # n(n+3)/2 roots, n(n+3)/2 chords of an (n+3)-gon that are not sides
    m = n + 3
    assert len(ds.aps) == m * (m - 3) // 2
    for d in ds.diagrams.values():
        (a, b), = d.segments
        assert (b - a) % m not in (1, m - 1)


@pytest.mark.parametrize("m", [3, 5, 6, 8, 12])
def test_dihedral_axes(m):
    ds = build_diagrams(build_coxeter_system(f"I2({m})"))
    ex = ds.expanded
    assert ex.size == m + 2
    for sign in (+1, -1):
        assert any(line_angle_distance(a, ex.axis(sign)) < 1e-9 for a in ex.axis_candidates[sign])
    assert line_angle_distance(ex.l_prime_plus, ex.l_prime_minus) == pytest.approx(math.pi / (m + 2))


@pytest.mark.parametrize("label", TYPES + BIG)
def test_gray_zone(label, cache):
    ds = cache.diagrams(label)
    gz, ex = ds.gray, ds.expanded
    assert gz.width == pytest.approx(math.pi / ex.size)
    for axis in (ex.l_prime_plus, ex.l_prime_minus):
        assert not gz.contains(axis) and not gz.contains(axis + math.pi)
        assert gz.contains(axis + math.pi / 2) is False
    mid = gz.start + gz.width / 2
    assert gz.contains(mid) and gz.contains(mid + math.pi)
    for axis in (ex.l_prime_plus, ex.l_prime_minus):
        assert gz.crosses(axis, axis + math.pi)
        assert not gz.crosses(axis, axis)


def test_gray_zone_is_recomputed_consistently(cache):
    ds = cache.diagrams("E6")
    assert gray_zone(ds.expanded) == ds.gray


def test_e6_orbit_of_minus_alpha1(cache):
    ds = cache.diagrams("E6")
    aps = ds.aps
    seen, frontier = {0}, [0]
    while frontier:
        a = frontier.pop()
        for sign in (+1, -1):
            b = int(aps.tau_table(sign)[a])
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    assert len(seen) == 14
    assert 5 in seen


def test_swap_builds(cache):
    for label in ["A3", "D4", "H3", "E6"]:
        ds = cache.diagrams(label, swap=True)
        assert len(ds.diagrams) == len(ds.aps)


def test_labeled_segment():
    assert LabeledSegment.make(5, 2) == (2, 5)
    with pytest.raises(Exception):
        LabeledSegment.make(3, 3)


def test_origin_geometric_id(cache):
    ex = cache.diagrams("D4").expanded
    for pid in range(ex.num_ring_vertices, ex.num_points):
        assert ex.geometric(pid) == ORIGIN
