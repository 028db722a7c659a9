"""Bipartite Coxeter element, Coxeter plane, and projection of an orbit to it."""
import math
from dataclasses import dataclass, field

import numpy as np

from .config import EPS
from .core import CoxeterError, longest_element

TWO_PI = 2.0 * math.pi


class EigenbasisDegenerate(CoxeterError):
    pass


class SnapFailure(CoxeterError):
    pass


def wrap(angle, period=TWO_PI):
    """Reduce ``angle`` into ``[0, period)``, snapping values within 1e-9 of the top to 0."""
    a = math.fmod(angle, period)
    if a < 0:
        a += period
    if period - a < 1e-9:
        a = 0.0
    return a


def line_angle_distance(a, b):
    """Distance between two line directions (angles modulo pi)."""
    d = wrap(a - b, math.pi)
    return min(d, math.pi - d)


@dataclass(frozen=True, eq=False)
class Bipartition:
    s_plus: tuple
    s_minus: tuple
    c_plus: object
    c_minus: object
    c: object

    def part(self, sign):
        return self.s_plus if sign > 0 else self.s_minus

    def c_eps(self, sign):
        return self.c_plus if sign > 0 else self.c_minus

    def sign_of(self, simple):
        return 1 if simple in self.s_plus else -1


def bipartition(system, swap=False):
    """Two-colouring of the diagram with simple index 0 in ``S_+`` (or ``S_-`` if ``swap``)."""
    first, second = system.s_plus, system.s_minus
    if swap:
        first, second = second, first
    c_plus = system.element_from_simples(first)
    c_minus = system.element_from_simples(second)
    bip = Bipartition(first, second, c_plus, c_minus, c_minus * c_plus)
    if not (c_plus * c_plus).is_identity() or not (c_minus * c_minus).is_identity():
        raise CoxeterError("bipartite products are not involutions")
    if bip.c.order() != system.h:
        raise CoxeterError("bipartite Coxeter element does not have order h")
    return bip


@dataclass(frozen=True, eq=False)
class PlaneBasis:
    """Orthonormal basis ``(u, v)`` of the Coxeter plane.

    ``c`` rotates the plane counterclockwise by ``2 pi / h`` in these
    coordinates and ``L_-`` lies along the x-axis.
    """

    u: np.ndarray
    v: np.ndarray
    l_plus_angle: float
    l_minus_angle: float
    h: int

    def project(self, vectors):
        vectors = np.asarray(vectors, dtype=float)
        return np.stack([vectors @ self.u, vectors @ self.v], axis=-1)


def _line_of(system, basis, simples):
    """Common angle (mod pi) of the lines ``H_s`` cut on the plane, for ``s`` in ``simples``."""
    angles = []
    for s in simples:
        p = basis @ system.roots[s]
        if np.hypot(*p) < 1e-9:
            raise EigenbasisDegenerate(f"simple root {s} is orthogonal to the Coxeter plane")
        angles.append(wrap(math.atan2(p[1], p[0]) + math.pi / 2, math.pi))
    for a in angles[1:]:
        if line_angle_distance(a, angles[0]) > 1e-7:
            raise EigenbasisDegenerate("hyperplanes of one bipartition class meet the plane in different lines")
    return angles[0]


def coxeter_plane(system, bip):
    n = system.rank
    if n < 2:
        raise EigenbasisDegenerate("rank-1 systems have no Coxeter plane")
    h = system.h
    C = bip.c.matrix
    vals, vecs = np.linalg.eig(C)
    target = np.exp(2j * math.pi / h)
    dist = np.abs(vals - target)
    hits = np.flatnonzero(dist < 1e-6)
    if len(hits) != 1:
        raise EigenbasisDegenerate(f"{len(hits)} eigenvalues at angle 2pi/h")
    z = vecs[:, hits[0]]
    a, b = z.real.copy(), z.imag.copy()
    a /= np.linalg.norm(a)
    b -= (b @ a) * a
    b /= np.linalg.norm(b)
    u, v = a, -b
    # orientation: c must rotate by +2pi/h
    p = np.array([u @ C @ u, v @ C @ u])
    if abs(math.atan2(p[1], p[0]) - 2 * math.pi / h) > 1e-6:
        v = -v
        p = np.array([u @ C @ u, v @ C @ u])
        if abs(math.atan2(p[1], p[0]) - 2 * math.pi / h) > 1e-6:
            raise EigenbasisDegenerate("c does not rotate the plane by 2pi/h")
    basis = np.array([u, v])
    gamma = _line_of(system, basis, bip.s_minus) if bip.s_minus else 0.0
    cg, sg = math.cos(gamma), math.sin(gamma)
    u2, v2 = cg * u + sg * v, -sg * u + cg * v
    basis = np.array([u2, v2])
    l_minus = _line_of(system, basis, bip.s_minus) if bip.s_minus else 0.0
    l_plus = _line_of(system, basis, bip.s_plus)
    if l_minus > math.pi / 2:
        l_minus = 0.0
    return PlaneBasis(u2, v2, l_plus, l_minus, h)


@dataclass(frozen=True)
class Ring:
    radius: float
    count: int
    phase: float

    def angle(self, k):
        return self.phase + TWO_PI * k / self.count

    def point(self, k):
        a = self.angle(k)
        return np.array([self.radius * math.cos(a), self.radius * math.sin(a)])


@dataclass(eq=False)
class ProjectedConfiguration:
    """Projected orbit: regular ``h``-gons plus labelled points at the origin.

    Point ids number ring vertices first (``ring * h + k``) and then the
    origin points in label order.  Labels are orbit indices.
    """

    h: int
    rings: list
    ring_points: dict
    origin_points: tuple
    point_map: np.ndarray
    origin_c_plus: dict
    origin_c_minus: dict
    l_plus_angle: float
    l_minus_angle: float
    coords: np.ndarray = field(repr=False)

    @property
    def num_ring_vertices(self):
        return len(self.rings) * self.h

    def is_origin(self, pid):
        return pid >= self.num_ring_vertices

    def origin_label(self, pid):
        return self.origin_points[pid - self.num_ring_vertices]

    def ring_of(self, pid):
        return divmod(pid, self.h)

    def origin_action(self, sign):
        return self.origin_c_plus if sign > 0 else self.origin_c_minus

    def structure(self):
        """(number of rings, vertices per ring, origin multiplicity)."""
        return len(self.rings), self.h, len(self.origin_points)


def project_orbit(system, bip, pb, orbit):
    h = system.h
    proj = pb.project(orbit.points)
    radii = np.hypot(proj[:, 0], proj[:, 1])
    scale = max(1.0, float(radii.max()))
    at_origin = radii < EPS * scale
    c_perm = orbit.perm_of(bip.c)

    rings_raw = []
    seen = np.zeros(len(orbit), dtype=bool)
    seen[at_origin] = True
    for start in range(len(orbit)):
        if seen[start]:
            continue
        cyc = [start]
        x = int(c_perm[start])
        while x != start:
            cyc.append(x)
            x = int(c_perm[x])
        if len(cyc) != h:
            raise SnapFailure(f"a c-orbit off the origin has {len(cyc)} points, expected {h}")
        seen[cyc] = True
        angles = [wrap(math.atan2(proj[i, 1], proj[i, 0])) for i in cyc]
        j0 = int(np.argmin(angles))
        cyc = cyc[j0:] + cyc[:j0]
        rings_raw.append((float(radii[cyc].mean()), angles[j0], cyc))

    rings_raw.sort(key=lambda r: (-round(r[0], 9), round(r[1], 9)))
    rings, ring_points = [], {}
    origin_list = tuple(int(i) for i in np.flatnonzero(at_origin))
    point_map = np.empty(len(orbit), dtype=np.int64)
    for r, (radius, phase, cyc) in enumerate(rings_raw):
        ring = Ring(radius, h, phase)
        for k, x in enumerate(cyc):
            expect = ring.point(k)
            if np.abs(expect - proj[x]).max() > 1e3 * EPS * scale:
                raise SnapFailure(f"orbit point {x} is not at its regular-polygon position")
            ring_points[x] = (r, k)
            point_map[x] = r * h + k
        rings.append(ring)
    base = len(rings) * h
    for i, x in enumerate(origin_list):
        point_map[x] = base + i

    coords = np.zeros((base + len(origin_list), 2))
    for r, ring in enumerate(rings):
        for k in range(h):
            coords[r * h + k] = ring.point(k)

    def origin_perm(element):
        perm = orbit.perm_of(element)
        action = {}
        for x in origin_list:
            y = int(perm[x])
            if y not in origin_list:
                raise SnapFailure("the origin points are not stable under c_+ and c_-")
            action[x] = y
        return action

    return ProjectedConfiguration(
        h=h,
        rings=rings,
        ring_points=ring_points,
        origin_points=origin_list,
        point_map=point_map,
        origin_c_plus=origin_perm(bip.c_plus),
        origin_c_minus=origin_perm(bip.c_minus),
        l_plus_angle=pb.l_plus_angle,
        l_minus_angle=pb.l_minus_angle,
        coords=coords,
    )


@dataclass
class HyperplaneOrbitReport:
    """Decomposition of the reflecting hyperplanes into ``<c_+, c_->``-orbits."""

    orbits: list
    failures: list

    @property
    def ok(self):
        return not self.failures


def hyperplane_orbits(system, bip):
    N = system.num_positive
    maps = [bip.c_plus.perm[:N] % N, bip.c_minus.perm[:N] % N]
    seen = [False] * N
    orbits = []
    for t in range(N):
        if seen[t]:
            continue
        orb, stack = [], [t]
        seen[t] = True
        while stack:
            x = stack.pop()
            orb.append(x)
            for m in maps:
                y = int(m[x])
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        orbits.append(sorted(orb))
    return orbits


def hyperplane_orbit_check(system, bip):
    """Check the size/intersection dichotomy for hyperplane orbits, with the w_0 clauses."""
    h = system.h
    N = system.num_positive
    w0 = longest_element(system)
    orbits = hyperplane_orbits(system, bip)
    failures = []
    for orb in orbits:
        simples = [t for t in orb if t < system.rank]
        if len(orb) * 2 == h and len(simples) == 1:
            s = simples[0]
            if int(w0.perm[s]) % N != s:
                failures.append((orb, "w0 does not fix the simple hyperplane"))
        elif len(orb) == h and len(simples) == 2:
            s, s2 = simples
            if int(w0.perm[s]) % N != s2:
                failures.append((orb, "the two simple hyperplanes are not swapped by w0"))
        else:
            failures.append((orb, f"orbit of size {len(orb)} meets {len(simples)} simple hyperplanes"))
    covered = sorted(t for orb in orbits for t in orb)
    if covered != list(range(N)):
        failures.append(((), "orbits do not partition the hyperplanes"))
    return HyperplaneOrbitReport(orbits, failures)
