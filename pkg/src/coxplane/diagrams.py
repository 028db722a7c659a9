"""Coxeter-plane diagrams for almost positive roots.

Each regular h-gon of the projected orbit is expanded to a regular
(h+2)-gon by subdividing its two distinguished edges.  Negative simple roots
inherit the segments of their simple reflections, and every other almost
positive root receives the image of one of these under the action of
tau_+ and tau_- on labelled segments.

Point ids of an expanded configuration number ring vertices first
(``ring * (h + 2) + j``) and then the origin points, one id per label.
"""
import math
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .clusters import AlmostPositiveSystem
from .core import CoxeterError, smallest_orbit
from .plane import (
    TWO_PI,
    Ring,
    bipartition,
    coxeter_plane,
    line_angle_distance,
    project_orbit,
    wrap,
)

ORIGIN = -1


class DistinguishedEdgeCountError(CoxeterError):
    pass


class AxisNotFound(CoxeterError):
    pass


class AxisNotUnique(CoxeterError):
    pass


class InconsistentPropagation(CoxeterError):
    pass


class LabeledSegment(NamedTuple):
    """Segment between two point ids (``a < b``).

    Origin points carry distinct ids, so the id of an origin endpoint is
    its label.
    """

    a: int
    b: int

    @classmethod
    def make(cls, p, q):
        if p == q:
            raise CoxeterError("degenerate segment")
        return cls(min(p, q), max(p, q))


@dataclass(frozen=True)
class RootDiagram:
    root: int
    segments: frozenset

    def __len__(self):
        return len(self.segments)


def _ray_distance(a, b):
    d = wrap(a - b)
    return min(d, TWO_PI - d)


def _is_on_line(angle, line):
    return line_angle_distance(angle, line) < 1e-7


@dataclass(eq=False)
class ExpandedConfiguration:
    """Regular (h+2)-gons replacing the h-gons of a projected orbit."""

    h: int
    rings: list
    old_to_new: np.ndarray
    origin_labels: tuple
    origin_c_plus: dict
    origin_c_minus: dict
    new_vertices: list
    distinguished: list
    l_prime_plus: float
    l_prime_minus: float
    source: object = field(repr=False)
    orbit: object = field(repr=False)
    coords: np.ndarray = field(repr=False, default=None)
    axis_candidates: dict = field(default_factory=dict)

    @property
    def size(self):
        return self.h + 2

    @property
    def num_ring_vertices(self):
        return len(self.rings) * self.size

    @property
    def num_points(self):
        return self.num_ring_vertices + len(self.origin_labels)

    def is_origin(self, pid):
        return pid >= self.num_ring_vertices

    def origin_label(self, pid):
        return self.origin_labels[pid - self.num_ring_vertices]

    def ring_of(self, pid):
        return divmod(pid, self.size)

    def geometric(self, pid):
        return ORIGIN if self.is_origin(pid) else pid

    def angle_of(self, pid):
        r, j = self.ring_of(pid)
        return wrap(self.rings[r].angle(j))

    def axis(self, sign):
        return self.l_prime_plus if sign > 0 else self.l_prime_minus

    def reflect_vertex(self, pid, axis_angle):
        """Index map of the reflection through the line at ``axis_angle``."""
        r, j = self.ring_of(pid)
        m = self.size
        a = (axis_angle - self.rings[r].phase) * m / math.pi
        ai = round(a)
        if abs(a - ai) > 1e-6:
            raise CoxeterError("axis is not a symmetry line of the ring")
        return r * m + (ai - j) % m

    def origin_action(self, sign):
        return self.origin_c_plus if sign > 0 else self.origin_c_minus

    @property
    def ring_radii(self):
        return [ring.radius for ring in self.rings]


def reflection_segments(t, config, orbit):
    """Segments of the parabolic ``{1, t}`` as a set of LabeledSegment on ``config`` ids."""
    pm = config.point_map
    segs = set()
    for x, y in enumerate(orbit.reflection_perms[t]):
        if x != y:
            a, b = int(pm[x]), int(pm[y])
            if config.is_origin(a) and config.is_origin(b):
                raise CoxeterError(f"reflection {t} has a segment projecting to the origin")
            segs.add(LabeledSegment.make(a, b))
    coords = config.coords
    dirs = []
    for a, b in segs:
        d = coords[b] - coords[a]
        dirs.append(math.atan2(d[1], d[0]))
    for d in dirs[1:]:
        if line_angle_distance(d, dirs[0]) > 1e-7:
            raise CoxeterError(f"segments of reflection {t} are not parallel")
    return segs


def distinguished_edges(config):
    """Per ring, the edges ``(k, k+1)`` perpendicular to L_+ or L_- with the axis ray they meet."""
    h = config.h
    out = []
    for r, ring in enumerate(config.rings):
        edges = []
        for k in range(h):
            mid = wrap(ring.phase + math.pi * (2 * k + 1) / h)
            for line in (config.l_plus_angle, config.l_minus_angle):
                if _is_on_line(mid, line):
                    edges.append((k, mid, line))
        if len(edges) != 2:
            raise DistinguishedEdgeCountError(f"ring {r} has {len(edges)} distinguished edges")
        out.append(edges)
    return out


def expand_configuration(config, bip, orbit):
    """Subdivide distinguished edges and regularize every ring to an (h+2)-gon.

    The output frame puts L'_- on the positive x-axis.  The old L_+ ray
    closest to the x-axis goes to angle 0 (new vertices on edges bisected
    by L_+ lie on L'_-), and the old L_- rays go to the L'_+ rays.
    """
    h = config.h
    m = h + 2
    delta = wrap(config.l_plus_angle + math.pi / 2, math.pi) - math.pi / 2  # in (-pi/2, pi/2]
    sigma = 1 if delta > 0 else -1
    lp = wrap(-sigma * math.pi / m, math.pi)
    lm = 0.0

    def new_ray(old_ray):
        d = wrap(old_ray - delta)
        if d < 1e-7 or TWO_PI - d < 1e-7:
            return 0.0
        if abs(d - math.pi) < 1e-7:
            return math.pi
        d = wrap(old_ray)
        if d < 1e-7 or TWO_PI - d < 1e-7:
            return wrap(-sigma * math.pi / m)
        if abs(d - math.pi) < 1e-7:
            return wrap(math.pi - sigma * math.pi / m)
        raise CoxeterError("distinguished edge midpoint is not on an axis ray")

    dist = distinguished_edges(config)
    rings, new_vertices = [], []
    old_to_new = np.full(len(config.coords), -1, dtype=np.int64)
    for r, ring in enumerate(config.rings):
        seq = []
        after = {k: mid for k, mid, _ in dist[r]}
        for k in range(h):
            seq.append(("old", k))
            if k in after:
                seq.append(("new", after[k]))
        anchor = next(i for i, item in enumerate(seq) if item[0] == "new")
        phase = wrap(new_ray(seq[anchor][1]) - TWO_PI * anchor / m)
        # snap to the lattice of multiples of pi/m
        q = round(phase * m / math.pi)
        if abs(phase * m / math.pi - q) > 1e-6:
            raise CoxeterError("expanded ring phase is off the pi/(h+2) lattice")
        phase = wrap(q * math.pi / m)
        newring = Ring(ring.radius, m, phase)
        for j, item in enumerate(seq):
            if item[0] == "new":
                if _ray_distance(newring.angle(j), new_ray(item[1])) > 1e-7:
                    raise CoxeterError("inserted vertices cannot both sit on their axis rays")
                new_vertices.append(r * m + j)
            else:
                old_to_new[r * h + item[1]] = r * m + j
        rings.append(newring)

    # relative orientation: offsets 0 / pi/h become 0 / pi/(h+2)
    for r in range(1, len(rings)):
        old = wrap(config.rings[r].phase - config.rings[0].phase, TWO_PI / h) * h / math.pi
        new = wrap(rings[r].phase - rings[0].phase, TWO_PI / m) * m / math.pi
        if abs(round(old) - round(new)) != 0 or abs(old - round(old)) > 1e-6:
            raise CoxeterError(f"ring {r} changes its alignment with ring 0 under expansion")

    base_old = len(config.rings) * h
    base_new = len(rings) * m
    for i in range(len(config.origin_points)):
        old_to_new[base_old + i] = base_new + i

    def origin_map(action):
        label_pid = {lab: base_new + i for i, lab in enumerate(config.origin_points)}
        return {label_pid[x]: label_pid[y] for x, y in action.items()}

    coords = np.zeros((base_new + len(config.origin_points), 2))
    for r, ring in enumerate(rings):
        for j in range(m):
            coords[r * m + j] = ring.point(j)
    return ExpandedConfiguration(
        h=h,
        rings=rings,
        old_to_new=old_to_new,
        origin_labels=tuple(config.origin_points),
        origin_c_plus=origin_map(config.origin_c_plus),
        origin_c_minus=origin_map(config.origin_c_minus),
        new_vertices=new_vertices,
        distinguished=dist,
        l_prime_plus=lp,
        l_prime_minus=lm,
        source=config,
        orbit=orbit,
        coords=coords,
    )


def negative_simple_diagram(s, expanded):
    config = expanded.source
    segs = reflection_segments(s, config, expanded.orbit)
    o2n = expanded.old_to_new
    moved = frozenset(LabeledSegment.make(int(o2n[a]), int(o2n[b])) for a, b in segs)
    return RootDiagram(s, moved)


def _unlabeled(expanded, segments):
    return frozenset(
        tuple(sorted((expanded.geometric(a), expanded.geometric(b)))) for a, b in segments
    )


def _reflect_unlabeled(expanded, segments, axis):
    out = set()
    for a, b in segments:
        pa = ORIGIN if expanded.is_origin(a) else expanded.reflect_vertex(a, axis)
        pb = ORIGIN if expanded.is_origin(b) else expanded.reflect_vertex(b, axis)
        out.add(tuple(sorted((pa, pb))))
    return frozenset(out)


def symmetry_axes(expanded, diagrams):
    """Lines ``k pi/(h+2)`` whose reflection fixes every diagram (unlabeled) setwise."""
    m = expanded.size
    hits = []
    for k in range(m):
        axis = k * math.pi / m
        if all(_reflect_unlabeled(expanded, d.segments, axis) == _unlabeled(expanded, d.segments) for d in diagrams):
            hits.append(axis)
    return hits


def compute_axes(expanded, neg_simple_diagrams, bip):
    """Check the constructive axes L'_+ and L'_- against the symmetry search.

    The search can return several axes when the negative simple diagrams
    have extra symmetry (for instance a single diameter); the constructive
    axis must be among them, and then it is kept.
    """
    result = []
    for sign in (+1, -1):
        diags = [neg_simple_diagrams[s] for s in bip.part(-sign)]
        hits = symmetry_axes(expanded, diags)
        target = expanded.axis(sign)
        if not any(line_angle_distance(a, target) < 1e-9 for a in hits):
            raise AxisNotFound(f"no symmetry axis of the negative simple diagrams at the expected position ({sign:+d})")
        expanded.axis_candidates[sign] = hits
        result.append(target)
    gap = line_angle_distance(result[0], result[1])
    if abs(gap - math.pi / expanded.size) > 1e-9:
        raise CoxeterError("L'_+ and L'_- are not at angle pi/(h+2)")
    return tuple(result)


@dataclass(frozen=True)
class GrayZone:
    """Two opposite open wedges bounded by the perpendiculars to L'_+ and L'_-.

    ``start`` is the counterclockwise-first boundary of one wedge, ``width``
    its opening angle.
    """

    start: float
    width: float

    def contains(self, angle):
        d = wrap(angle - self.start, math.pi)
        return 1e-9 < d < self.width - 1e-9

    def side(self, angle):
        """0 or 1 for the two closed arcs of the complement, None inside the open wedges."""
        if self.contains(angle):
            return None
        d = wrap(angle - self.start - self.width + 1e-9)
        return 0 if d < math.pi - self.width + 2e-9 else 1

    def crosses(self, angle_a, angle_b):
        sa, sb = self.side(angle_a), self.side(angle_b)
        return sa is not None and sb is not None and sa != sb


def gray_zone(expanded):
    a = wrap(expanded.l_prime_plus + math.pi / 2, math.pi)
    b = wrap(expanded.l_prime_minus + math.pi / 2, math.pi)
    d = wrap(b - a, math.pi)
    if d < math.pi / 2:
        return GrayZone(a, d)
    return GrayZone(b, math.pi - d)


def tau_on_segment(sign, seg, expanded):
    axis = expanded.axis(sign)
    a, b = seg
    oa, ob = expanded.is_origin(a), expanded.is_origin(b)
    if not oa and not ob:
        return LabeledSegment.make(expanded.reflect_vertex(a, axis), expanded.reflect_vertex(b, axis))
    origin, vertex = (a, b) if oa else (b, a)
    image = expanded.reflect_vertex(vertex, axis)
    r, j = expanded.ring_of(vertex)
    m = expanded.size
    if m % 2 == 0 and image == r * m + (j + m // 2) % m:
        # perpendicular to the axis: fixed
        return seg
    return LabeledSegment.make(expanded.origin_action(sign)[origin], image)


def tau_on_diagram(sign, diag, expanded, root=None):
    segs = frozenset(tau_on_segment(sign, s, expanded) for s in diag.segments)
    if len(segs) != len(diag.segments):
        raise CoxeterError("tau merged two segments of a diagram")
    return RootDiagram(diag.root if root is None else root, segs)


def all_root_diagrams(aps, expanded, neg_simple_diagrams):
    """Propagate negative simple diagrams to every almost positive root.

    Raises InconsistentPropagation when a root is reached twice with
    different diagrams.
    """
    diagrams = {}
    queue = deque()
    for s, d in neg_simple_diagrams.items():
        a = s  # negative simples come first in the canonical order
        diagrams[a] = RootDiagram(a, d.segments)
        queue.append(a)
    while queue:
        a = queue.popleft()
        for sign in (+1, -1):
            b = int(aps.tau_table(sign)[a])
            image = tau_on_diagram(sign, diagrams[a], expanded, root=b)
            if b in diagrams:
                if diagrams[b].segments != image.segments:
                    raise InconsistentPropagation(
                        f"{aps[b].label()} reached from {aps[a].label()} by tau({sign:+d}) with a different diagram"
                    )
                continue
            diagrams[b] = image
            queue.append(b)
    if len(diagrams) != len(aps):
        raise CoxeterError("some almost positive roots received no diagram")
    seen = {}
    for a, d in diagrams.items():
        if d.segments in seen:
            raise CoxeterError(f"roots {seen[d.segments]} and {a} share a diagram")
        seen[d.segments] = a
    return dict(sorted(diagrams.items()))


@dataclass(eq=False)
class DiagramSystem:
    """All data of the almost-positive-root diagram construction for one type."""

    system: object
    bip: object
    plane: object
    orbit: object
    config: object
    expanded: object
    aps: object
    negative_simples: dict
    diagrams: dict
    gray: GrayZone

    def diagram(self, root):
        return self.diagrams[self.aps.index_of(root)]


def build_diagrams(system, swap=False):
    bip = bipartition(system, swap=swap)
    pb = coxeter_plane(system, bip)
    orbit = smallest_orbit(system)
    config = project_orbit(system, bip, pb, orbit)
    expanded = expand_configuration(config, bip, orbit)
    negs = {s: negative_simple_diagram(s, expanded) for s in range(system.rank)}
    compute_axes(expanded, negs, bip)
    aps = AlmostPositiveSystem(system, bip)
    diagrams = all_root_diagrams(aps, expanded, negs)
    return DiagramSystem(system, bip, pb, orbit, config, expanded, aps, negs, diagrams, gray_zone(expanded))


def tau_rotation_order(ds):
    """Smallest k with (tau_+ tau_-)^k the identity on every root diagram."""
    ex = ds.expanded
    limit = 2 * (ex.size) + 2
    current = {a: d for a, d in ds.diagrams.items()}
    for k in range(1, limit + 1):
        current = {a: tau_on_diagram(+1, tau_on_diagram(-1, d, ex), ex) for a, d in current.items()}
        if all(current[a].segments == ds.diagrams[a].segments for a in current):
            return k
    return None
