"""Finite Coxeter systems as real reflection groups.

Every system is realized in Euclidean coordinates: the simple roots are the
rows of a Cholesky factor of the bilinear form, so all roots have unit length
and the usual dot product is the invariant inner product.  Group elements are
stored as permutations of the root list, which makes all combinatorics exact
after a single tolerance-based identification of vectors.
"""
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from .config import EPS


class CoxeterError(Exception):
    """Base class for errors raised by this package."""


class UnknownType(CoxeterError, ValueError):
    pass


class NonFiniteSystem(CoxeterError):
    pass


class BudgetExceeded(CoxeterError):
    pass


class IndexOutOfRange(CoxeterError, IndexError):
    pass


class SnapError(CoxeterError):
    """A vector expected to belong to a registry was not found within tolerance."""


# ---------------------------------------------------------------------------
# point registry


class PointRegistry:
    """Canonical index for a fixed finite set of vectors.

    Vectors are identified when they agree within ``tol`` in max-norm.
    """

    def __init__(self, points, tol=EPS):
        self.points = np.asarray(points, dtype=float)
        self.tol = tol
        self._tree = cKDTree(self.points)
        if len(self.points) > 1:
            dist, _ = self._tree.query(self.points, k=2, p=np.inf)
            if dist[:, 1].min() <= 1e3 * tol:
                raise SnapError("registry points are not separated by the tolerance")

    def __len__(self):
        return len(self.points)

    def lookup(self, vectors):
        """Indices of ``vectors`` (shape ``(k, n)``); raise if any is missing."""
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
        dist, idx = self._tree.query(vectors, p=np.inf)
        bad = dist > self.tol * max(1.0, float(np.abs(vectors).max(initial=0.0)))
        if bad.any():
            raise SnapError(f"{int(bad.sum())} vector(s) not in registry (max dist {dist.max():.3g})")
        return idx.astype(np.int64)


def _closure(seeds, generators, bound, key_digits=8):
    """Orbit of ``seeds`` under the linear maps ``generators`` (BFS order)."""
    found = []
    seen = {}

    def key(v):
        return tuple(np.round(v, key_digits) + 0.0)

    queue = deque()
    for v in seeds:
        k = key(v)
        if k not in seen:
            seen[k] = len(found)
            found.append(v)
            queue.append(v)
    while queue:
        v = queue.popleft()
        for g in generators:
            w = g @ v
            k = key(w)
            if k not in seen:
                seen[k] = len(found)
                found.append(w)
                queue.append(w)
                if len(found) > bound:
                    raise NonFiniteSystem(f"orbit closure exceeded {bound} vectors")
    return np.array(found)


# ---------------------------------------------------------------------------
# type data

_TYPE_RE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*(?:[\(\[_,-]\s*(\d+)\s*[\)\]]?)?\s*$")


def parse_type(label):
    """Split a label such as ``"E6"``, ``"I2(5)"`` or ``"G2"`` into (family, rank, m)."""
    match = _TYPE_RE.match(str(label))
    if not match:
        raise UnknownType(f"cannot parse Coxeter type {label!r}")
    family = match.group(1).upper()
    rank = int(match.group(2))
    m = int(match.group(3)) if match.group(3) else None
    if family == "G" and rank == 2 and m is None:
        return "I", 2, 6
    if family == "I":
        if m is None:
            raise UnknownType("type I needs a parameter, e.g. I2(5)")
        return "I", rank, m
    if m is not None:
        raise UnknownType(f"type {family} takes no parameter")
    return family, rank, None


def format_type(family, rank, m=None):
    if family == "I":
        return f"I2({m})"
    return f"{family}{rank}"


def coxeter_matrix(family, rank, m=None):
    """Coxeter matrix for a finite irreducible type (Bourbaki node labels, 0-based)."""
    family = family.upper()

    def chain(n, orders):
        mat = np.full((n, n), 2, dtype=int)
        np.fill_diagonal(mat, 1)
        for i, order in enumerate(orders):
            mat[i, i + 1] = mat[i + 1, i] = order
        return mat

    if family == "A":
        if rank < 1:
            raise UnknownType("A_n needs n >= 1")
        return chain(rank, [3] * (rank - 1))
    if family in ("B", "C"):
        if rank < 2:
            raise UnknownType("B_n needs n >= 2")
        return chain(rank, [3] * (rank - 2) + [4])
    if family == "D":
        if rank < 4:
            raise UnknownType("D_n needs n >= 4")
        mat = chain(rank, [3] * (rank - 2))
        mat[rank - 2, rank - 1] = mat[rank - 1, rank - 2] = 2
        mat[rank - 3, rank - 1] = mat[rank - 1, rank - 3] = 3
        return mat
    if family == "E":
        if rank not in (6, 7, 8):
            raise UnknownType("E_n needs n in {6, 7, 8}")
        mat = np.full((rank, rank), 2, dtype=int)
        np.fill_diagonal(mat, 1)
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        for a, b in edges:
            mat[a, b] = mat[b, a] = 3
        return mat
    if family == "F":
        if rank != 4:
            raise UnknownType("F_n needs n = 4")
        return chain(4, [3, 4, 3])
    if family == "H":
        if rank not in (3, 4):
            raise UnknownType("H_n needs n in {3, 4}")
        return chain(rank, [3] * (rank - 2) + [5])
    if family == "I":
        if rank != 2 or m is None or m < 3:
            raise UnknownType("I2(m) needs m >= 3")
        return chain(2, [m])
    raise UnknownType(f"unknown Coxeter family {family!r}")


def two_coloring(matrix):
    """Colour classes of the Coxeter diagram, with node 0 in the first class."""
    n = len(matrix)
    color = [-1] * n
    color[0] = 0
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in range(n):
            if b != a and matrix[a][b] >= 3:
                if color[b] < 0:
                    color[b] = 1 - color[a]
                    queue.append(b)
                elif color[b] == color[a]:
                    raise CoxeterError("Coxeter diagram is not bipartite")
    if min(color) < 0:
        raise CoxeterError("Coxeter diagram is not connected")
    first = tuple(i for i in range(n) if color[i] == 0)
    second = tuple(i for i in range(n) if color[i] == 1)
    return first, second


def components(matrix):
    n = len(matrix)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(n):
                if not seen[b] and matrix[a][b] >= 3:
                    seen[b] = True
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def group_order(matrix):
    """Order of the Coxeter group with the given (finite-type) matrix.

    Irreducible components are built as reflection groups and contribute the
    product of their degrees ``e_i + 1``; no group elements are enumerated.
    """
    matrix = np.asarray(matrix, dtype=int)
    order = 1
    for comp in components(matrix):
        if len(comp) == 1:
            order *= 2
            continue
        sub = CoxeterSystem.from_matrix(matrix[np.ix_(comp, comp)])
        order *= math.prod(e + 1 for e in sub.exponents)
    return order


# ---------------------------------------------------------------------------
# the system


class CoxeterSystem:
    """A finite irreducible Coxeter system with its root system.

    Attributes
    ----------
    label : str
        Type label such as ``"E6"`` or ``"I2(5)"``.
    rank : int
    coxeter_matrix : ndarray of int
    form : ndarray
        Bilinear form ``-cos(pi / m)`` (1 on the diagonal).
    simple_roots : ndarray
        Rows are the simple roots in Euclidean coordinates.
    roots : ndarray
        ``2N`` unit vectors; row ``i < N`` is a positive root and row
        ``i + N`` is its negative.  Rows ``0..rank-1`` are the simple roots.
    coeffs : ndarray
        Simple-root coordinates of ``roots``.
    h : int
        Coxeter number.
    exponents : tuple of int
    """

    def __init__(self, matrix, label=None):
        matrix = np.asarray(matrix, dtype=int)
        n = len(matrix)
        self.rank = n
        self.coxeter_matrix = matrix
        self.label = label or f"W[{n}]"
        with np.errstate(divide="ignore"):
            form = -np.cos(np.pi / matrix.astype(float))
        np.fill_diagonal(form, 1.0)
        self.form = form
        try:
            self.simple_roots = np.linalg.cholesky(form)
        except np.linalg.LinAlgError as exc:
            raise NonFiniteSystem(f"bilinear form of {self.label} is not positive definite") from exc
        self._simple_inv = np.linalg.inv(self.simple_roots)
        self.simple_matrices = [self._reflection_matrix(a) for a in self.simple_roots]

        positives = self._positive_roots()
        self.num_positive = len(positives)
        self.roots = np.vstack([positives, -positives])
        self.coeffs = self.roots @ self._simple_inv
        self.coeffs[np.abs(self.coeffs) < 1e-12] = 0.0
        self.registry = PointRegistry(self.roots)
        self.simple_perms = np.array([self.registry.lookup(self.roots @ s.T) for s in self.simple_matrices])

        self.s_plus, self.s_minus = two_coloring(matrix)
        self.h = self._coxeter_number()
        self.exponents = self._exponents()
        self._check_invariants()

    # -- construction helpers ----------------------------------------------

    @classmethod
    def from_matrix(cls, matrix, label=None):
        return cls(matrix, label)

    @staticmethod
    def _reflection_matrix(root):
        root = np.asarray(root, dtype=float)
        return np.eye(len(root)) - 2.0 * np.outer(root, root) / (root @ root)

    def _positive_roots(self):
        n = self.rank
        # a finite irreducible rank-n system has at most n^2 + 120 positive roots
        bound = n * n + 120
        found = [r.copy() for r in self.simple_roots]
        seen = {tuple(np.round(r, 8) + 0.0): i for i, r in enumerate(found)}
        queue = deque(range(n))
        while queue:
            i = queue.popleft()
            beta = found[i]
            for j, s in enumerate(self.simple_matrices):
                if i == j:
                    continue
                gamma = s @ beta
                k = tuple(np.round(gamma, 8) + 0.0)
                if k in seen:
                    continue
                coeff = gamma @ self._simple_inv
                if coeff.min() < -1e-7:
                    raise NonFiniteSystem(f"{self.label}: simple reflection produced a non-positive root")
                seen[k] = len(found)
                found.append(gamma)
                queue.append(len(found) - 1)
                if len(found) > bound:
                    raise NonFiniteSystem(f"{self.label}: more than {bound} positive roots")
        return np.array(found)

    def _coxeter_number(self):
        c = self.element_from_simples(self.s_minus) * self.element_from_simples(self.s_plus)
        h = c.order()
        if 2 * self.num_positive != self.rank * h:
            raise CoxeterError(f"{self.label}: |T|={self.num_positive} but n*h/2={self.rank * h / 2}")
        return h

    def _exponents(self):
        c = self.element_from_simples(self.s_minus) * self.element_from_simples(self.s_plus)
        angles = np.angle(np.linalg.eigvals(c.matrix)) % (2 * np.pi)
        scaled = angles * self.h / (2 * np.pi)
        exps = np.rint(scaled)
        if np.abs(scaled - exps).max() > 1e-6:
            raise CoxeterError(f"{self.label}: Coxeter eigenvalues are not h-th roots of unity")
        return tuple(sorted(int(e) for e in exps))

    def _check_invariants(self):
        if sum(self.exponents) != self.num_positive:
            raise CoxeterError(f"{self.label}: exponents do not sum to |T|")
        signs = np.sign(np.where(np.abs(self.coeffs) < 1e-9, 0.0, self.coeffs))
        if ((signs > 0).any(axis=1) & (signs < 0).any(axis=1)).any():
            raise CoxeterError(f"{self.label}: a root has mixed-sign coefficients")

    # -- basic data ----------------------------------------------------------

    @property
    def n(self):
        return self.rank

    @property
    def num_reflections(self):
        return self.num_positive

    @cached_property
    def crystallographic(self):
        return bool(np.allclose(self.coeffs, np.rint(self.coeffs), atol=1e-9))

    @cached_property
    def order(self):
        return math.prod(e + 1 for e in self.exponents)

    @cached_property
    def catalan(self):
        """W-Catalan number, the product of (e + h + 1) / (e + 1)."""
        value = Fraction(1)
        for e in self.exponents:
            value *= Fraction(e + self.h + 1, e + 1)
        if value.denominator != 1:
            raise CoxeterError(f"{self.label}: non-integral Catalan number {value}")
        return int(value)

    def negate_index(self, i):
        N = self.num_positive
        return i + N if i < N else i - N

    def positive_index(self, i):
        return i % self.num_positive

    def is_positive(self, i):
        return i < self.num_positive

    @cached_property
    def reflection_perms(self):
        """Row ``t`` is the root permutation of the reflection in positive root ``t``."""
        N = self.num_positive
        perms = np.empty((N, 2 * N), dtype=np.int64)
        for t in range(N):
            beta = self.roots[t]
            images = self.roots - 2.0 * np.outer(self.roots @ beta, beta)
            perms[t] = self.registry.lookup(images)
        return perms

    @cached_property
    def conjugation_tables(self):
        """``tables[j][t]`` = index of ``s_j t s_j`` (reflections as positive root indices)."""
        N = self.num_positive
        return self.simple_perms[:, :N] % N

    # -- elements ------------------------------------------------------------

    def identity(self):
        return GroupElement(self, np.arange(2 * self.num_positive))

    def simple_reflection(self, i):
        if not 0 <= i < self.rank:
            raise IndexOutOfRange(f"simple index {i} out of range for rank {self.rank}")
        return GroupElement(self, self.simple_perms[i])

    def reflection(self, t):
        if not 0 <= t < self.num_positive:
            raise IndexOutOfRange(f"reflection index {t} out of range")
        return GroupElement(self, self.reflection_perms[t])

    def element_from_simples(self, word):
        """Product ``s_{w[0]} s_{w[1]} ...`` of simple reflections (0-based indices)."""
        perm = np.arange(2 * self.num_positive)
        for i in word:
            if not 0 <= i < self.rank:
                raise IndexOutOfRange(f"simple index {i} out of range for rank {self.rank}")
            perm = perm[self.simple_perms[i]]
        return GroupElement(self, perm)

    def element_from_matrix(self, matrix):
        images = self.roots @ np.asarray(matrix, dtype=float).T
        return GroupElement(self, self.registry.lookup(images))

    def __repr__(self):
        return f"CoxeterSystem({self.label})"


class GroupElement:
    """A group element stored as a permutation of the root indices."""

    __slots__ = ("system", "perm", "_matrix", "_key")

    def __init__(self, system, perm):
        self.system = system
        self.perm = np.asarray(perm, dtype=np.int64)
        self.perm.setflags(write=False)
        self._matrix = None
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = self.perm.tobytes()
        return self._key

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other):
        # (a b)(x) = a(b(x))
        return GroupElement(self.system, self.perm[other.perm])

    def inverse(self):
        return GroupElement(self.system, np.argsort(self.perm))

    def __pow__(self, k):
        result = self.system.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    @property
    def matrix(self):
        if self._matrix is None:
            sys = self.system
            images = sys.roots[self.perm[: sys.rank]]
            self._matrix = images.T @ sys._simple_inv.T
        return self._matrix

    def apply(self, vector):
        return np.asarray(vector, dtype=float) @ self.matrix.T

    def is_identity(self):
        return bool((self.perm == np.arange(len(self.perm))).all())

    def order(self):
        perm = self.perm
        current = perm.copy()
        k = 1
        ident = np.arange(len(perm))
        while not (current == ident).all():
            current = perm[current]
            k += 1
        return k

    def __repr__(self):
        return f"GroupElement({self.system.label}, len={reflection_length(self)})"


# ---------------------------------------------------------------------------
# element-level operations


def apply(element, vector):
    return element.apply(vector)


def multiply(a, b):
    return a * b


def element_from_simples(system, word):
    return system.element_from_simples(word)


def _orthonormal_rows(vectors, tol=1e-8):
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.size == 0:
        return np.zeros((0, vectors.shape[1] if vectors.ndim == 2 else 0))
    _, s, vt = np.linalg.svd(vectors)
    r = int((s > tol * max(1.0, s.max(initial=0.0))).sum())
    return vt[:r]


def _complement_rows(rows, n):
    if len(rows) == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(np.vstack([rows, np.zeros((max(0, n - len(rows)), n))]))
    r = len(rows)
    return vt[r:]


def moved_space(element):
    """Orthonormal basis (rows) of the image of ``w - 1``, the complement of Fix(w)."""
    m = element.matrix - np.eye(element.system.rank)
    return _orthonormal_rows(m.T)


def fixed_space(element):
    """Orthonormal basis (rows) of the fixed subspace of ``element``."""
    n = element.system.rank
    return _complement_rows(moved_space(element), n)


def reflection_length(element):
    """Absolute length, computed as the codimension of the fixed space."""
    return int(len(moved_space(element)))


def longest_element(system):
    """Greedy descent: right-multiply by any simple s with w(alpha_s) positive."""
    w = system.identity()
    N = system.num_positive
    while True:
        for s in range(system.rank):
            if w.perm[s] < N:
                w = w * system.simple_reflection(s)
                break
        else:
            return w


# ---------------------------------------------------------------------------
# orbits


@dataclass(frozen=True, eq=False)
class OrbitPoints:
    """A W-orbit of unit vectors.

    ``simple_perms[j]`` permutes point indices under simple reflection ``j``.
    """

    system: CoxeterSystem
    points: np.ndarray
    weight_index: int
    simple_perms: np.ndarray

    def __len__(self):
        return len(self.points)

    @cached_property
    def index(self):
        return PointRegistry(self.points)

    @cached_property
    def reflection_perms(self):
        """Row ``t``: permutation of the points under reflection ``t``."""
        sys = self.system
        perms = np.empty((sys.num_positive, len(self.points)), dtype=np.int64)
        for t in range(sys.num_positive):
            beta = sys.roots[t]
            perms[t] = self.index.lookup(self.points - 2.0 * np.outer(self.points @ beta, beta))
        return perms

    def perm_of(self, element):
        return self.index.lookup(self.points @ element.matrix.T)


def fundamental_weights(system):
    """Unit vectors orthogonal to all simple roots but one (rows)."""
    w = system._simple_inv.T.copy()  # row i pairs to delta_ij with the simple roots
    return w / np.linalg.norm(w, axis=1)[:, None]


def fundamental_orbit_sizes(system):
    """Size of each fundamental-weight orbit, ``|W| / |W_{S - i}|``."""
    sizes = []
    for i in range(system.rank):
        keep = [j for j in range(system.rank) if j != i]
        sub = system.coxeter_matrix[np.ix_(keep, keep)]
        stab = group_order(sub) if keep else 1
        sizes.append(system.order // stab)
    return sizes


def smallest_orbit(system):
    """Orbit of the fundamental weight with the fewest points (lowest index on ties)."""
    sizes = fundamental_orbit_sizes(system)
    i = min(range(system.rank), key=lambda j: (sizes[j], j))
    omega = fundamental_weights(system)[i]
    points = _closure([omega], system.simple_matrices, bound=sizes[i] + 1)
    if len(points) != sizes[i]:
        raise CoxeterError(f"orbit closure found {len(points)} points, expected {sizes[i]}")
    registry = PointRegistry(points)
    perms = np.array([registry.lookup(points @ s.T) for s in system.simple_matrices])
    orbit = OrbitPoints(system, points, i, perms)
    orbit.__dict__["index"] = registry
    return orbit


# ---------------------------------------------------------------------------
# parabolic subgroups


@dataclass(frozen=True, eq=False)
class Parabolic:
    """A parabolic subgroup, identified by its set of reflections.

    ``mask`` has bit ``t`` set for every reflection in the subgroup;
    ``fixed_basis`` rows span the subspace the subgroup fixes pointwise.
    """

    mask: int
    rank: int
    fixed_basis: np.ndarray
    span_basis: np.ndarray

    @property
    def reflset(self):
        return frozenset(t for t in range(self.mask.bit_length()) if self.mask >> t & 1)

    def __eq__(self, other):
        return isinstance(other, Parabolic) and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __repr__(self):
        return f"Parabolic(rank={self.rank}, reflections={sorted(self.reflset)})"


def mask_of(reflections):
    mask = 0
    for t in reflections:
        mask |= 1 << int(t)
    return mask


def _parabolic_from_span(system, span):
    N = system.num_positive
    pos = system.roots[:N]
    if len(span):
        residual = pos - (pos @ span.T) @ span
    else:
        residual = pos
    inside = np.flatnonzero(np.abs(residual).max(axis=1) < 1e-7)
    return Parabolic(
        mask=mask_of(inside),
        rank=len(span),
        fixed_basis=_complement_rows(span, system.rank),
        span_basis=span,
    )


def parabolic_from_reflections(system, seed):
    """Smallest parabolic containing the reflections ``seed`` (positive root indices)."""
    seed = sorted(int(t) for t in seed)
    for t in seed:
        if not 0 <= t < system.num_positive:
            raise IndexOutOfRange(f"reflection index {t} out of range")
    span = _orthonormal_rows(system.roots[seed]) if seed else np.zeros((0, system.rank))
    return _parabolic_from_span(system, span)


def parabolic_from_mask(system, mask):
    return parabolic_from_reflections(system, [t for t in range(system.num_positive) if mask >> t & 1])


def standard_parabolic(system, simples):
    return parabolic_from_reflections(system, list(simples))


def enumerate_parabolics(system, max_count=None):
    """All parabolic subgroups, by increasing rank, each exactly once."""
    N = system.num_positive
    trivial = _parabolic_from_span(system, np.zeros((0, system.rank)))
    levels = [[trivial]]
    seen = {trivial.mask}
    total = 1
    for _ in range(system.rank):
        nxt = []
        for par in levels[-1]:
            covered = par.mask
            for t in range(N):
                if covered >> t & 1:
                    continue
                span = _orthonormal_rows(np.vstack([par.span_basis, system.roots[t]]))
                new = _parabolic_from_span(system, span)
                covered |= new.mask
                if new.mask in seen:
                    continue
                seen.add(new.mask)
                nxt.append(new)
                total += 1
                if max_count is not None and total > max_count:
                    raise BudgetExceeded(f"more than {max_count} parabolic subgroups in {system.label}")
        nxt.sort(key=lambda p: p.mask)
        levels.append(nxt)
    return [p for level in levels for p in level]


def conjugate_mask(system, mask, simple):
    """Reflection mask of ``s W' s`` for a simple reflection ``s``."""
    table = system.conjugation_tables[simple]
    out = 0
    m, t = mask, 0
    while m:
        if m & 1:
            out |= 1 << int(table[t])
        m >>= 1
        t += 1
    return out


def conjugacy_class(system, par):
    """Masks of all W-conjugates of ``par``."""
    seen = {par.mask}
    queue = deque([par.mask])
    while queue:
        m = queue.popleft()
        for j in range(system.rank):
            c = conjugate_mask(system, m, j)
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def orbit_partition(par, orbit):
    """Blocks of the orbit under the reflections of ``par`` (sorted index tuples)."""
    m = len(orbit)
    parent = list(range(m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    perms = orbit.reflection_perms
    for t in par.reflset:
        for x, y in enumerate(perms[t]):
            ra, rb = find(x), find(int(y))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks = {}
    for x in range(m):
        blocks.setdefault(find(x), []).append(x)
    return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])


def fixed_space_from_partition(blocks, orbit):
    """Orthogonal complement of the span of ``x - y`` over same-block pairs."""
    diffs = [orbit.points[b[i]] - orbit.points[b[0]] for b in blocks for i in range(1, len(b))]
    n = orbit.points.shape[1]
    span = _orthonormal_rows(np.array(diffs)) if diffs else np.zeros((0, n))
    return _complement_rows(span, n)


def same_subspace(a, b, tol=1e-7):
    """True when the row spaces of two orthonormal bases coincide."""
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    return bool(np.abs(a.T @ a - b.T @ b).max() < tol)


# ---------------------------------------------------------------------------
# public constructor

_CACHE = {}


def build_coxeter_system(type_label, parameter=None):
    """Build a finite irreducible Coxeter system.

    ``build_coxeter_system("A", 3)``, ``build_coxeter_system("I", 6)`` (the
    dihedral group of order 12) and ``build_coxeter_system("E6")`` are all
    accepted.
    """
    if parameter is None:
        family, rank, m = parse_type(type_label)
    else:
        family = str(type_label).upper()
        if family == "I":
            rank, m = 2, int(parameter)
        else:
            rank, m = int(parameter), None
    if family == "C":
        family = "B"
    key = (family, rank, m)
    if key not in _CACHE:
        matrix = coxeter_matrix(family, rank, m)
        _CACHE[key] = CoxeterSystem(matrix, format_type(family, rank, m))
    return _CACHE[key]
