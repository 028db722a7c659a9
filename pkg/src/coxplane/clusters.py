"""Almost positive roots, the involutions tau_+ and tau_-, compatibility and clusters."""
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np

from .config import EPS
from .core import CoxeterError, longest_element
from .plane import bipartition


class RootEscaped(CoxeterError):
    pass


class NoNegativeSimpleReached(CoxeterError):
    pass


class TauOrbitViolation(CoxeterError):
    pass


@dataclass(frozen=True)
class AlmostPositiveRoot:
    """An element of the positive roots together with the negated simple roots.

    ``index`` is the position in the canonical order (negative simples
    first), ``root_index`` the position in ``system.roots``.
    """

    index: int
    root_index: int
    coeffs: tuple
    simple: int = -1

    @property
    def is_negative_simple(self):
        return self.simple >= 0

    def label(self):
        if self.is_negative_simple:
            return f"-a{self.simple + 1}"
        parts = []
        for j, c in enumerate(self.coeffs):
            if abs(c) < 1e-9:
                continue
            if abs(c - round(c)) < 1e-9:
                k = int(round(c))
                parts.append(f"a{j + 1}" if k == 1 else f"{k}a{j + 1}")
            else:
                parts.append(f"{c:.6g}a{j + 1}")
        return "+".join(parts)


class AlmostPositiveSystem:
    """Almost positive roots of ``system`` with the tau maps for bipartition ``bip``."""

    def __init__(self, system, bip=None):
        self.system = system
        self.bip = bip if bip is not None else bipartition(system)
        n, N = system.rank, system.num_positive
        roots = []
        for s in range(n):
            r = N + s
            roots.append(AlmostPositiveRoot(s, r, tuple(float(x) for x in system.coeffs[r]), s))
        for t in range(N):
            roots.append(AlmostPositiveRoot(n + t, t, tuple(float(x) for x in system.coeffs[t])))
        self.roots = roots
        self.apr_of_root = np.full(2 * N, -1, dtype=np.int64)
        for a in roots:
            self.apr_of_root[a.root_index] = a.index
        self.tau_plus = self._tau_table(+1)
        self.tau_minus = self._tau_table(-1)

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, a):
        return self.roots[a]

    def _tau_table(self, sign):
        opposite = set(self.bip.part(-sign))
        perm = self.bip.c_eps(sign).perm
        table = np.empty(len(self.roots), dtype=np.int64)
        for a in self.roots:
            if a.is_negative_simple and a.simple in opposite:
                table[a.index] = a.index
                continue
            image = int(self.apr_of_root[perm[a.root_index]])
            if image < 0:
                raise RootEscaped(f"tau({sign:+d}) sends {a.label()} outside the almost positive roots")
            table[a.index] = image
        if not (table[table] == np.arange(len(table))).all():
            raise CoxeterError("tau is not an involution")
        return table

    def tau_table(self, sign):
        return self.tau_plus if sign > 0 else self.tau_minus

    def index_of(self, root):
        """Canonical index of an almost positive root given by index, label object or coefficient vector."""
        if isinstance(root, AlmostPositiveRoot):
            return root.index
        if isinstance(root, (int, np.integer)):
            return int(root)
        vec = np.asarray(root, dtype=float)
        diff = np.abs(self.system.coeffs - vec).max(axis=1)
        hit = int(np.argmin(diff))
        if diff[hit] > 1e-7 or self.apr_of_root[hit] < 0:
            raise ValueError(f"{root!r} is not an almost positive root")
        return int(self.apr_of_root[hit])

    @cached_property
    def negative_simple_mask(self):
        return np.array([a.is_negative_simple for a in self.roots])

    @cached_property
    def coefficient_table(self):
        """``table[s, b]``: the coefficient of alpha_s in root ``b``."""
        return np.array([a.coeffs for a in self.roots]).T


def almost_positive_roots(system, bip=None):
    return AlmostPositiveSystem(system, bip).roots


def tau(aps, sign, root):
    """Image of an almost positive root under tau_sign (index in, index out)."""
    return int(aps.tau_table(sign)[aps.index_of(root)])


def tau_orbit(aps, root):
    """Orbit under <tau_+, tau_->, checked against the size/-w_0 dichotomy.

    Returns the sorted list of indices in the orbit.
    """
    start = aps.index_of(root)
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for table in (aps.tau_plus, aps.tau_minus):
            b = int(table[a])
            if b not in seen:
                seen.add(b)
                stack.append(b)
    orbit = sorted(seen)
    _check_tau_orbit(aps, orbit)
    return orbit


def _check_tau_orbit(aps, orbit):
    system = aps.system
    h = system.h
    w0 = longest_element(system)
    N = system.num_positive
    negs = [aps[a].simple for a in orbit if aps[a].is_negative_simple]
    if 2 * len(orbit) == h + 2 and len(negs) == 1:
        s = negs[0]
        # -w0(-alpha_s) = w0(alpha_s) must be -alpha_s
        if int(w0.perm[s]) != N + s:
            raise TauOrbitViolation(f"-w0 does not fix -alpha_{s + 1}")
    elif len(orbit) == h + 2 and len(negs) == 2:
        s, t = negs
        if int(w0.perm[s]) != N + t:
            raise TauOrbitViolation(f"-alpha_{s + 1} and -alpha_{t + 1} are not related by -w0")
    else:
        raise TauOrbitViolation(f"tau orbit of size {len(orbit)} meets {len(negs)} negative simples")


def tau_orbits(aps):
    done = set()
    orbits = []
    for a in range(len(aps)):
        if a in done:
            continue
        orb = tau_orbit(aps, a)
        done.update(orb)
        orbits.append(orb)
    return orbits


def _alternate(aps, A, B, first):
    """Vectorized base-rule verdicts for index arrays ``A``, ``B``."""
    h = aps.system.h
    neg = aps.negative_simple_mask
    coeff = aps.coefficient_table
    A, B = A.copy(), B.copy()
    verdict = np.zeros(len(A), dtype=bool)
    pending = np.ones(len(A), dtype=bool)
    sign = first
    for _ in range(h + 3):
        idx = np.flatnonzero(pending)
        if len(idx) == 0:
            break
        a, b = A[idx], B[idx]
        na, nb = neg[a], neg[b]
        both = na & nb
        if both.any():
            via_a = np.abs(coeff[np.array([aps[x].simple for x in a[both]]), b[both]]) < EPS
            via_b = np.abs(coeff[np.array([aps[x].simple for x in b[both]]), a[both]]) < EPS
            if (via_a != via_b).any():
                raise CoxeterError("base rule is not symmetric on two negative simples")
        for sel, x, y in ((na, a, b), (nb & ~na, b, a)):
            if not sel.any():
                continue
            simples = np.array([aps[v].simple for v in x[sel]])
            verdict[idx[sel]] = np.abs(coeff[simples, y[sel]]) < EPS
        pending[idx[na | nb]] = False
        rest = idx[~(na | nb)]
        table = aps.tau_table(sign)
        A[rest] = table[A[rest]]
        B[rest] = table[B[rest]]
        sign = -sign
    if pending.any():
        raise NoNegativeSimpleReached(f"{int(pending.sum())} pairs never reached a negative simple root")
    return verdict


class CompatibilityOracle:
    """Compatibility table over the almost positive roots.

    Each pair is carried along tau_-, tau_+, tau_-, ... until one member is a
    negative simple root, where the coefficient-zero rule decides.  The route
    starting with tau_+ is computed too and must agree.
    """

    def __init__(self, aps):
        self.aps = aps
        m = len(aps)
        A, B = np.divmod(np.arange(m * m), m)
        first = _alternate(aps, A, B, -1)
        second = _alternate(aps, A, B, +1)
        if (first != second).any():
            raise CoxeterError("the two tau alternation routes disagree")
        table = first.reshape(m, m)
        np.fill_diagonal(table, True)
        if not (table == table.T).all():
            raise CoxeterError("compatibility is not symmetric")
        self.table = table

    def compatible(self, a, b):
        return bool(self.table[self.aps.index_of(a), self.aps.index_of(b)])

    def pairs(self):
        """Unordered distinct pairs ``(a, b, compatible)`` in canonical order."""
        m = len(self.aps)
        for a in range(m):
            for b in range(a + 1, m):
                yield a, b, bool(self.table[a, b])


def compatible(oracle, a, b):
    return oracle.compatible(a, b)


def enumerate_clusters(oracle):
    """Maximal pairwise-compatible sets, as sorted index tuples in canonical order."""
    m = len(oracle.aps)
    g = nx.Graph()
    g.add_nodes_from(range(m))
    rows, cols = np.nonzero(np.triu(oracle.table, 1))
    g.add_edges_from(zip(rows.tolist(), cols.tolist()))
    clusters = sorted(tuple(sorted(c)) for c in nx.find_cliques(g))
    n = oracle.aps.system.rank
    bad = [c for c in clusters if len(c) != n]
    if bad:
        raise CoxeterError(f"{len(bad)} clusters do not have {n} elements")
    return clusters
