"""Segment predicates and the five compatibility criteria.

Every criterion takes two root diagrams and a :class:`CriteriaContext`
and answers whether the roots are declared compatible.  ``verify_compat``
compares a criterion with the compatibility oracle on all pairs of
distinct almost positive roots.
"""
import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .clusters import CompatibilityOracle
from .core import CoxeterError
from .diagrams import build_diagrams
from .report import ExactnessReport

ANNULUS_TOL = 1e-7


class SegmentRelation(enum.IntEnum):
    DISJOINT = kernels.DISJOINT
    TOUCH = kernels.TOUCH
    CROSS = kernels.CROSS
    COINCIDE = kernels.COINCIDE
    OVERLAP = kernels.OVERLAP


class AnnulusBoundaryCrossing(CoxeterError):
    pass


@dataclass(eq=False)
class RingContext:
    """Ring levels by distinct radius, outermost first; the origin is the last level."""

    radii: list
    ring_level: list

    @classmethod
    def from_expanded(cls, expanded):
        distinct = []
        for r in sorted((ring.radius for ring in expanded.rings), reverse=True):
            if not distinct or distinct[-1] - r > 1e-7:
                distinct.append(r)
        levels = [next(i for i, d in enumerate(distinct) if abs(d - ring.radius) <= 1e-7) for ring in expanded.rings]
        return cls(distinct, levels)

    @property
    def outermost_index(self):
        return 0

    @property
    def innermost_index(self):
        return len(self.radii) - 1

    def radius(self, level):
        return self.radii[level] if level < len(self.radii) else 0.0


@dataclass(eq=False)
class CriteriaContext:
    """Geometry of one diagram system prepared for fast pair checks."""

    ds: object
    rings: RingContext = field(init=False)

    def __post_init__(self):
        self.rings = RingContext.from_expanded(self.ds.expanded)

    @property
    def expanded(self):
        return self.ds.expanded

    @property
    def gray(self):
        return self.ds.gray

    def level_of(self, pid):
        ex = self.expanded
        if ex.is_origin(pid):
            return len(self.rings.radii)
        return self.rings.ring_level[ex.ring_of(pid)[0]]

    def outer_level(self, seg):
        return min(self.level_of(seg[0]), self.level_of(seg[1]))

    @cached_property
    def arrays(self):
        """Per root: (segments, coordinate rows, geometric keys, outer levels)."""
        ex = self.expanded
        out = {}
        for a, d in self.ds.diagrams.items():
            segs = sorted(d.segments)
            coords = np.array([[*ex.coords[s[0]], *ex.coords[s[1]]] for s in segs], dtype=float)
            keys = np.array([sorted((ex.geometric(s[0]), ex.geometric(s[1]))) for s in segs], dtype=np.int64)
            levels = np.array([self.outer_level(s) for s in segs], dtype=np.int64)
            out[a] = (segs, coords, keys, levels)
        return out

    def relations(self, a, b):
        _, ca, ka, _ = self.arrays[a]
        _, cb, kb, _ = self.arrays[b]
        return kernels.classify_pairs(ca, cb, ka, kb)


def segment_relation(s1, s2, expanded):
    """Relation of two labelled segments of one expanded configuration."""
    rows, keys = [], []
    for s in (s1, s2):
        rows.append([*expanded.coords[s[0]], *expanded.coords[s[1]]])
        keys.append(sorted((expanded.geometric(s[0]), expanded.geometric(s[1]))))
    rel = kernels.classify_pairs(np.array(rows[:1]), np.array(rows[1:]), np.array(keys[:1]), np.array(keys[1:]))
    return SegmentRelation(int(rel[0, 0]))


def _crossing_point(p1, p2, q1, q2):
    d, e = p2 - p1, q2 - q1
    den = d[0] * e[1] - d[1] * e[0]
    t = ((q1[0] - p1[0]) * e[1] - (q1[1] - p1[1]) * e[0]) / den
    return p1 + t * d


def _direction(expanded, seg):
    """Angle of the non-origin endpoint of an origin segment."""
    v = seg[1] if expanded.is_origin(seg[0]) else seg[0]
    return expanded.angle_of(v)


def _shared_origin(expanded, s1, s2):
    o1 = [p for p in s1 if expanded.is_origin(p)]
    o2 = [p for p in s2 if expanded.is_origin(p)]
    return bool(o1) and bool(o2) and o1[0] == o2[0]


def _common_line(expanded, s1, s2):
    t1, t2 = _direction(expanded, s1), _direction(expanded, s2)
    d = math.fmod(abs(t1 - t2), math.pi)
    return min(d, math.pi - d) < 1e-9


def _origin_condition(ctx, a, b, pairs):
    """False when two segments on one labelled origin point straddle the gray zone."""
    ex = ctx.expanded
    segs_a, segs_b = ctx.arrays[a][0], ctx.arrays[b][0]
    for i, j in pairs:
        s1, s2 = segs_a[i], segs_b[j]
        if not _shared_origin(ex, s1, s2):
            continue
        if _common_line(ex, s1, s2):
            continue
        if ctx.gray.crosses(_direction(ex, s1), _direction(ex, s2)):
            return False
    return True


def cl1(a, b, ctx):
    """No segment of one diagram crosses, overlaps or coincides with one of the other."""
    rel = ctx.relations(a, b)
    return not np.isin(rel, (kernels.CROSS, kernels.OVERLAP, kernels.COINCIDE)).any()


def cl2(a, b, ctx):
    """As :func:`cl1`, but coinciding unlabelled segments are allowed."""
    rel = ctx.relations(a, b)
    return not np.isin(rel, (kernels.CROSS, kernels.OVERLAP)).any()


def cl3(a, b, ctx):
    """:func:`cl2` plus the gray-zone rule for segments sharing a labelled origin point."""
    if not cl2(a, b, ctx):
        return False
    n_a, n_b = len(ctx.arrays[a][0]), len(ctx.arrays[b][0])
    return _origin_condition(ctx, a, b, ((i, j) for i in range(n_a) for j in range(n_b)))


def active_segments(a, b, ctx):
    """Boolean masks of the active segments of the two diagrams.

    A segment is active when its outer ring is the outermost ring, or when
    it shares an endpoint (origin labels ignored) with an active segment
    whose outer ring is the next larger one.
    """
    ex = ctx.expanded
    segs = list(ctx.arrays[a][0]) + list(ctx.arrays[b][0])
    levels = np.concatenate([ctx.arrays[a][3], ctx.arrays[b][3]])
    active = levels == 0
    ends = [{ex.geometric(p) for p in s} for s in segs]
    for level in range(1, len(ctx.rings.radii)):
        points = set()
        for i in np.flatnonzero(active & (levels == level - 1)):
            points |= ends[i]
        for i in np.flatnonzero(levels == level):
            if ends[i] & points:
                active[i] = True
    n_a = len(ctx.arrays[a][0])
    return active[:n_a], active[n_a:]


def _annulus_violations(a, b, ctx, act_a, act_b, rel):
    ca, cb = ctx.arrays[a][1], ctx.arrays[b][1]
    la, lb = ctx.arrays[a][3], ctx.arrays[b][3]
    idx = np.argwhere(np.isin(rel, (kernels.CROSS, kernels.OVERLAP)) & act_a[:, None] & act_b[None, :])
    for i, j in idx:
        level = int(min(la[i], lb[j]))
        outer = ctx.rings.radius(level)
        inner = ctx.rings.radius(level + 1)
        p1, p2, q1, q2 = ca[i, :2], ca[i, 2:], cb[j, :2], cb[j, 2:]
        if rel[i, j] == kernels.CROSS:
            rho = float(np.hypot(*_crossing_point(p1, p2, q1, q2)))
            for bound in (outer, inner):
                if abs(rho - bound) < ANNULUS_TOL and bound > 0:
                    raise AnnulusBoundaryCrossing(f"crossing at radius {rho} on an annulus boundary")
            # with no smaller ring the region is the whole disk, centre included
            below = inner < rho if level + 1 < len(ctx.rings.radii) else True
            if below and rho < outer:
                return True
        else:
            # collinear overlap: the shared part is between the middle two parameters
            u = (p2 - p1) / np.hypot(*(p2 - p1))
            ts = sorted([0.0, float(np.hypot(*(p2 - p1))), float((q1 - p1) @ u), float((q2 - p1) @ u)])
            t_lo, t_hi = ts[1], ts[2]
            nearest = min(max(-float(p1 @ u), t_lo), t_hi)
            r_min = float(np.hypot(*(p1 + nearest * u)))
            r_max = max(float(np.hypot(*(p1 + t * u))) for t in (t_lo, t_hi))
            if min(r_max, outer) - max(r_min, inner) > ANNULUS_TOL:
                return True
    return False


def cl4(a, b, ctx):
    """No two active segments cross inside the annulus below the outer ring of the pair."""
    act_a, act_b = active_segments(a, b, ctx)
    rel = ctx.relations(a, b)
    return not _annulus_violations(a, b, ctx, act_a, act_b, rel)


def cl5(a, b, ctx):
    """:func:`cl4` plus the gray-zone rule for active segments from a shared origin point to the innermost ring."""
    act_a, act_b = active_segments(a, b, ctx)
    rel = ctx.relations(a, b)
    if _annulus_violations(a, b, ctx, act_a, act_b, rel):
        return False
    ex = ctx.expanded
    inner = ctx.rings.innermost_index
    segs_a, segs_b = ctx.arrays[a][0], ctx.arrays[b][0]

    def on_inner(seg):
        v = seg[1] if ex.is_origin(seg[0]) else seg[0]
        return ctx.level_of(v) == inner

    pairs = [
        (i, j)
        for i in np.flatnonzero(act_a)
        for j in np.flatnonzero(act_b)
        if on_inner(segs_a[i]) and on_inner(segs_b[j])
    ]
    return _origin_condition(ctx, a, b, pairs)


CRITERIA = {"cl1": cl1, "cl2": cl2, "cl3": cl3, "cl4": cl4, "cl5": cl5}


def verify_compat(system, criterion, ds=None, oracle=None):
    """Compare a compatibility criterion with the oracle on all pairs of distinct roots."""
    if criterion not in CRITERIA:
        raise ValueError(f"unknown compatibility criterion {criterion!r}")
    ds = ds or build_diagrams(system)
    oracle = oracle or CompatibilityOracle(ds.aps)
    ctx = CriteriaContext(ds)
    test = CRITERIA[criterion]
    mismatches = []
    total = 0
    for a, b, alg in oracle.pairs():
        total += 1
        geo = bool(test(a, b, ctx))
        if geo != alg:
            mismatches.append(
                {
                    "object": f"({ds.aps[a].label()}, {ds.aps[b].label()})",
                    "pair": [int(a), int(b)],
                    "geometric": geo,
                    "algebraic": alg,
                }
            )
    meta = {
        "roots": len(ds.aps),
        "rings": len(ds.expanded.rings),
        "origin_points": len(ds.expanded.origin_labels),
        "polygon": ds.expanded.size,
        "active_rule": "shared endpoint",
    }
    return ExactnessReport(system.label, criterion, total, mismatches, meta)
