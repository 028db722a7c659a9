"""The interval [1, c] in absolute order, noncrossing parabolics and partition diagrams."""
import enum
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import geometry
from .core import (
    CoxeterError,
    _orthonormal_rows,
    _parabolic_from_span,
    conjugacy_class,
    enumerate_parabolics,
    orbit_partition,
    smallest_orbit,
    standard_parabolic,
)
from .plane import bipartition, coxeter_plane, project_orbit
from .report import ExactnessReport

DEFAULT_PARABOLIC_BUDGET = 200_000


class DegenerateSegment(CoxeterError):
    pass


class Verdict(enum.Enum):
    NONCROSSING = "noncrossing"
    CROSSING = "crossing"


def _abs_length(system, perm):
    images = system.roots[perm[: system.rank]]
    m = images.T @ system._simple_inv.T - np.eye(system.rank)
    return int(np.linalg.matrix_rank(m, tol=1e-8))


@dataclass(eq=False)
class NCInterval:
    """Elements of [1, c] by absolute length, with their parabolic subgroups.

    ``parabolic_of`` maps the permutation key of each element to the
    parabolic generated by any reduced reflection word for it.
    """

    system: object
    bip: object
    elements_by_rank: list
    parabolic_of: dict = field(default_factory=dict)

    @property
    def elements(self):
        return [x for level in self.elements_by_rank for x in level]

    def __len__(self):
        return sum(len(level) for level in self.elements_by_rank)

    @property
    def nc_parabolics(self):
        return set(self.parabolic_of.values())

    @property
    def nc_masks(self):
        return frozenset(p.mask for p in self.parabolic_of.values())


def enumerate_interval(system, bip):
    """Breadth-first construction of [1, c] by left multiplication with reflections.

    Examples
    --------
    >>> from coxplane.core import build_coxeter_system
    >>> from coxplane.plane import bipartition
    >>> A3 = build_coxeter_system("A3")
    >>> len(enumerate_interval(A3, bipartition(A3)))
    14
    """
    n = system.rank
    c = bip.c
    c_perm = c.perm
    refl = system.reflection_perms
    level = [system.identity()]
    levels = [level]
    for k in range(n):
        found = {}
        for w in level:
            for t in range(system.num_positive):
                u = refl[t][w.perm]
                key = u.tobytes()
                if key in found:
                    continue
                found[key] = None
                if _abs_length(system, u) != k + 1:
                    continue
                # u^{-1} c
                rest = np.argsort(u)[c_perm]
                if _abs_length(system, rest) != n - k - 1:
                    continue
                found[key] = u
        level = sorted((x for x in found.values() if x is not None), key=lambda p: p.tobytes())
        level = [type(c)(system, p) for p in level]
        levels.append(level)
    if len(levels[-1]) != 1 or levels[-1][0] != c:
        raise CoxeterError("top of the interval is not c")
    interval = NCInterval(system, bip, levels)
    for x in interval.elements:
        interval.parabolic_of[x.key] = parabolic_of_element(x)
    return interval


def parabolic_of_element(x):
    """Parabolic subgroup fixing ``Fix(x)`` pointwise."""
    system = x.system
    span = _orthonormal_rows(x.matrix.T - np.eye(system.rank))
    if len(span) == 0:
        span = np.zeros((0, system.rank))
    return _parabolic_from_span(system, span)


def noncrossing_parabolics(interval):
    return interval.nc_parabolics


def classify_parabolic(interval, par):
    return Verdict.NONCROSSING if par.mask in interval.nc_masks else Verdict.CROSSING


@dataclass(eq=False)
class PartitionDiagram:
    """Projection of the orbit partition of a parabolic subgroup.

    Blocks are tuples of point ids of ``config``; segments join the images
    of reflection-related orbit points.
    """

    config: object
    blocks: list
    segments: list
    parabolic: object = None

    def block_points(self, block):
        return self.config.coords[list(block)]

    def hulls(self):
        return [geometry.convex_hull(self.block_points(b)) for b in self.blocks]


def partition_diagram(par, config, orbit):
    pm = config.point_map
    blocks = [tuple(sorted(int(pm[x]) for x in b)) for b in orbit_partition(par, orbit)]
    blocks.sort()
    segs = set()
    perms = orbit.reflection_perms
    for t in sorted(par.reflset):
        for x, y in enumerate(perms[t]):
            if x == y:
                continue
            a, b = int(pm[x]), int(pm[y])
            if config.is_origin(a) and config.is_origin(b):
                raise DegenerateSegment(f"reflection {t} joins two points projecting to the origin")
            segs.add((min(a, b), max(a, b)))
    return PartitionDiagram(config, blocks, sorted(segs), par)


def nc_criterion_A(diag):
    """Block hulls pairwise disjoint."""
    hulls = diag.hulls()
    return all(geometry.hulls_disjoint(a, b) for a, b in combinations(hulls, 2))


def nc_criterion_D(diag):
    """Block hulls pairwise disjoint or meeting in one common boundary point."""
    hulls = diag.hulls()
    for a, b in combinations(hulls, 2):
        if geometry.hulls_disjoint(a, b):
            continue
        if not geometry.hulls_touch_once(a, b):
            return False
    return True


CRITERIA = {"A": nc_criterion_A, "D": nc_criterion_D}


@dataclass(eq=False)
class NCContext:
    """Everything needed to draw and classify parabolic subgroups of one system."""

    system: object
    bip: object
    plane: object
    orbit: object
    config: object
    interval: object

    def diagram(self, par):
        return partition_diagram(par, self.config, self.orbit)


def nc_context(system, swap=False):
    bip = bipartition(system, swap=swap)
    pb = coxeter_plane(system, bip)
    orbit = smallest_orbit(system)
    config = project_orbit(system, bip, pb, orbit)
    return NCContext(system, bip, pb, orbit, config, enumerate_interval(system, bip))


def _class_label(simples):
    return "<" + ",".join(f"s{j + 1}" for j in simples) + ">"


def parabolic_classes(system, parabolics):
    """Map parabolic mask -> label of a standard parabolic in its conjugacy class."""
    labels = {}
    for size in range(system.rank + 1):
        for J in combinations(range(system.rank), size):
            par = standard_parabolic(system, J)
            if par.mask in labels:
                continue
            lab = _class_label(J)
            for m in conjugacy_class(system, par):
                labels[m] = lab
    missing = [p for p in parabolics if p.mask not in labels]
    if missing:
        raise CoxeterError(f"{len(missing)} parabolics are not conjugate to a standard one")
    return labels


def verify_nc(system, criterion, ctx=None, budget=DEFAULT_PARABOLIC_BUDGET):
    """Compare a noncrossing criterion with the algebraic classification.

    Parameters
    ----------
    system : CoxeterSystem
    criterion : {"A", "D"}
    ctx : NCContext, optional
        Reused when several criteria are checked on the same system.
    budget : int
        Maximum number of parabolic subgroups to enumerate.

    Returns
    -------
    ExactnessReport
        ``metadata["classes"]`` holds, per conjugacy class of parabolics,
        the numbers of noncrossing and crossing members.
    """
    if criterion not in CRITERIA:
        raise ValueError(f"unknown noncrossing criterion {criterion!r}")
    test = CRITERIA[criterion]
    ctx = ctx or nc_context(system)
    pars = enumerate_parabolics(system, max_count=budget)
    labels = parabolic_classes(system, pars)
    nc = ctx.interval.nc_masks
    classes = {}
    mismatches = []
    for par in pars:
        alg = par.mask in nc
        geo = bool(test(ctx.diagram(par)))
        entry = classes.setdefault(labels[par.mask], {"noncrossing": 0, "crossing": 0})
        entry["noncrossing" if alg else "crossing"] += 1
        if alg != geo:
            mismatches.append(
                {
                    "object": f"rank-{par.rank} parabolic {sorted(t + 1 for t in par.reflset)}",
                    "rank": par.rank,
                    "class": labels[par.mask],
                    "geometric": geo,
                    "algebraic": alg,
                }
            )
    meta = {
        "classes": classes,
        "parabolics": len(pars),
        "noncrossing": len(nc),
        "ring_structure": list(ctx.config.structure()),
    }
    return ExactnessReport(system.label, f"noncrossing-{criterion}", len(pars), mismatches, meta)
