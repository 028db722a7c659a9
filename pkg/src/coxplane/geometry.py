"""Planar convex-hull predicates used by the noncrossing criteria.

Hulls may be degenerate (a point or a segment).  Intersections are computed
by clipping one hull against the half-planes of the other with a small
slack, so that touching hulls register as intersecting.
"""
import numpy as np

SLACK = 1e-9
POINT_DIAMETER = 1e-6


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points, tol=1e-12):
    """Counterclockwise hull vertices (monotone chain).

    Returns one point for a point set of diameter zero and the two extreme
    points for a collinear set.
    """
    pts = sorted({(round(float(x), 12) + 0.0, round(float(y), 12) + 0.0) for x, y in points})
    if len(pts) <= 1:
        return np.array(pts, dtype=float).reshape(-1, 2)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 or len(hull) < 3:
        return np.array([pts[0], pts[-1]], dtype=float)
    return np.array(hull, dtype=float)


def halfplanes(hull):
    """Constraints ``n . x <= c`` (rows ``(nx, ny, c)``) cutting out ``hull``."""
    hull = np.asarray(hull, dtype=float)
    if len(hull) == 1:
        (x, y), = hull
        return np.array([[1, 0, x], [-1, 0, -x], [0, 1, y], [0, -1, -y]], dtype=float)
    if len(hull) == 2:
        p, q = hull
        d = q - p
        d = d / np.hypot(*d)
        nrm = np.array([-d[1], d[0]])
        return np.array(
            [
                [*nrm, nrm @ p],
                [*(-nrm), -(nrm @ p)],
                [*d, d @ q],
                [*(-d), -(d @ p)],
            ]
        )
    rows = []
    for i in range(len(hull)):
        p, q = hull[i], hull[(i + 1) % len(hull)]
        d = q - p
        d = d / np.hypot(*d)
        nrm = np.array([d[1], -d[0]])  # outward for a CCW polygon
        rows.append([*nrm, nrm @ p])
    return np.array(rows)


def clip(subject, constraints, slack=SLACK):
    """Sutherland-Hodgman clip of a (possibly degenerate) polygon by half-planes."""
    poly = [np.asarray(p, dtype=float) for p in subject]
    for nx, ny, c in constraints:
        if not poly:
            break
        nrm = np.array([nx, ny])
        vals = [nrm @ p - c - slack for p in poly]
        out = []
        for i in range(len(poly)):
            p, q = poly[i], poly[(i + 1) % len(poly)]
            vp, vq = vals[i], vals[(i + 1) % len(poly)]
            if vp <= 0:
                out.append(p)
            if (vp < 0 < vq) or (vq < 0 < vp):
                t = vp / (vp - vq)
                out.append(p + t * (q - p))
        poly = out
    return poly


def intersection(hull_a, hull_b, slack=SLACK):
    """Points spanning ``hull_a ∩ hull_b`` (empty list when disjoint)."""
    return clip(hull_a, halfplanes(hull_b), slack)


def on_boundary(point, hull, tol=1e-7):
    """Relative boundary: the endpoints of a segment, the point itself for a point."""
    hull = np.asarray(hull, dtype=float)
    if len(hull) < 3:
        return bool(np.abs(hull - point).max(axis=1).min() < tol)
    cons = halfplanes(hull)
    vals = cons[:, :2] @ point - cons[:, 2]
    return bool(np.abs(vals).min() < tol and vals.max() < tol)


def diameter(points):
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return 0.0
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff**2).sum(-1)).max())


def hulls_disjoint(hull_a, hull_b):
    return not intersection(hull_a, hull_b)


def hulls_touch_once(hull_a, hull_b):
    """True when the hulls meet in a single point lying on the boundary of both."""
    pts = intersection(hull_a, hull_b)
    if not pts:
        return False
    if diameter(pts) >= POINT_DIAMETER:
        return False
    p = np.mean(pts, axis=0)
    return on_boundary(p, hull_a) and on_boundary(p, hull_b)
