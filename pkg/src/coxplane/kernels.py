"""Segment-pair classification kernels.

``classify_pairs`` compares every segment of one collection with every
segment of another.  A numba implementation is used unless
``COXPLANE_DISABLE_JIT`` is set, in which case the numpy version runs.

Relation codes: 0 disjoint, 1 touch, 2 cross, 3 coincide, 4 collinear overlap.
"""
import numpy as np

from .config import EPS, jit_disabled

DISJOINT, TOUCH, CROSS, COINCIDE, OVERLAP = range(5)


def classify_pairs_numpy(A, B, keys_a, keys_b, eps=EPS):
    """Relation matrix between segments ``A`` (m, 4) and ``B`` (k, 4).

    Rows are ``(x1, y1, x2, y2)``; ``keys`` (m, 2) are sorted integer
    endpoint identities used to detect coinciding segments exactly.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    p1, p2 = A[:, None, 0:2], A[:, None, 2:4]
    q1, q2 = B[None, :, 0:2], B[None, :, 2:4]

    def orient(o, a, b):
        return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])

    d1 = orient(p1, p2, q1)
    d2 = orient(p1, p2, q2)
    d3 = orient(q1, q2, p1)
    d4 = orient(q1, q2, p2)
    z1, z2, z3, z4 = (np.abs(d) <= eps for d in (d1, d2, d3, d4))

    def on_segment(o, a, b, zero):
        # b collinear with o-a and inside its bounding box
        lo = np.minimum(o, a) - eps
        hi = np.maximum(o, a) + eps
        inside = ((b >= lo) & (b <= hi)).all(axis=-1)
        return zero & inside

    touch = (
        on_segment(p1, p2, q1, z1)
        | on_segment(p1, p2, q2, z2)
        | on_segment(q1, q2, p1, z3)
        | on_segment(q1, q2, p2, z4)
    )
    cross = (d1 * d2 < 0) & (d3 * d4 < 0) & ~(z1 | z2 | z3 | z4)

    collinear = z1 & z2
    d = p2 - p1
    length = np.sqrt((d**2).sum(-1))
    u = d / length[..., None]
    t1 = ((q1 - p1) * u).sum(-1)
    t2 = ((q2 - p1) * u).sum(-1)
    lo = np.maximum(0.0, np.minimum(t1, t2))
    hi = np.minimum(length, np.maximum(t1, t2))
    overlap = collinear & (hi - lo > eps)

    rel = np.full(d1.shape, DISJOINT, dtype=np.int8)
    rel[touch] = TOUCH
    rel[cross] = CROSS
    rel[overlap] = OVERLAP
    ka = np.asarray(keys_a)[:, None, :]
    kb = np.asarray(keys_b)[None, :, :]
    rel[(ka == kb).all(axis=-1)] = COINCIDE
    return rel


def _make_numba():
    from numba import njit

    @njit(cache=True)
    def _orient(ox, oy, ax, ay, bx, by):
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    @njit(cache=True)
    def _on_seg(ox, oy, ax, ay, bx, by, eps):
        return (
            min(ox, ax) - eps <= bx <= max(ox, ax) + eps
            and min(oy, ay) - eps <= by <= max(oy, ay) + eps
        )

    @njit(cache=True)
    def classify(A, B, keys_a, keys_b, eps):
        m, k = A.shape[0], B.shape[0]
        out = np.zeros((m, k), dtype=np.int8)
        for i in range(m):
            px, py, qx, qy = A[i, 0], A[i, 1], A[i, 2], A[i, 3]
            for j in range(k):
                if keys_a[i, 0] == keys_b[j, 0] and keys_a[i, 1] == keys_b[j, 1]:
                    out[i, j] = 3
                    continue
                rx, ry, sx, sy = B[j, 0], B[j, 1], B[j, 2], B[j, 3]
                d1 = _orient(px, py, qx, qy, rx, ry)
                d2 = _orient(px, py, qx, qy, sx, sy)
                d3 = _orient(rx, ry, sx, sy, px, py)
                d4 = _orient(rx, ry, sx, sy, qx, qy)
                z1, z2, z3, z4 = abs(d1) <= eps, abs(d2) <= eps, abs(d3) <= eps, abs(d4) <= eps
                if z1 and z2:
                    dx, dy = qx - px, qy - py
                    ln = np.sqrt(dx * dx + dy * dy)
                    ux, uy = dx / ln, dy / ln
                    t1 = (rx - px) * ux + (ry - py) * uy
                    t2 = (sx - px) * ux + (sy - py) * uy
                    lo = max(0.0, min(t1, t2))
                    hi = min(ln, max(t1, t2))
                    if hi - lo > eps:
                        out[i, j] = 4
                        continue
                if d1 * d2 < 0 and d3 * d4 < 0 and not (z1 or z2 or z3 or z4):
                    out[i, j] = 2
                    continue
                if (
                    (z1 and _on_seg(px, py, qx, qy, rx, ry, eps))
                    or (z2 and _on_seg(px, py, qx, qy, sx, sy, eps))
                    or (z3 and _on_seg(rx, ry, sx, sy, px, py, eps))
                    or (z4 and _on_seg(rx, ry, sx, sy, qx, qy, eps))
                ):
                    out[i, j] = 1
        return out

    return classify


_NUMBA = None


def classify_pairs_numba(A, B, keys_a, keys_b, eps=EPS):
    global _NUMBA
    if _NUMBA is None:
        _NUMBA = _make_numba()
    return _NUMBA(
        np.ascontiguousarray(A, dtype=np.float64),
        np.ascontiguousarray(B, dtype=np.float64),
        np.ascontiguousarray(keys_a, dtype=np.int64),
        np.ascontiguousarray(keys_b, dtype=np.int64),
        float(eps),
    )


def classify_pairs(A, B, keys_a, keys_b, eps=EPS):
    if len(A) == 0 or len(B) == 0:
        return np.zeros((len(A), len(B)), dtype=np.int8)
    if jit_disabled():
        return classify_pairs_numpy(A, B, keys_a, keys_b, eps)
    return classify_pairs_numba(A, B, keys_a, keys_b, eps)
