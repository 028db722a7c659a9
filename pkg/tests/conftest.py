from functools import lru_cache

import pytest

from coxplane.clusters import AlmostPositiveSystem, CompatibilityOracle
from coxplane.core import build_coxeter_system
from coxplane.diagrams import build_diagrams
from coxplane.noncrossing import nc_context


@lru_cache(maxsize=None)
def system(label):
    return build_coxeter_system(label)


@lru_cache(maxsize=None)
def diagrams(label, swap=False):
    return build_diagrams(system(label), swap=swap)


@lru_cache(maxsize=None)
def oracle(label):
    return CompatibilityOracle(aps(label))


@lru_cache(maxsize=None)
def aps(label):
    return AlmostPositiveSystem(system(label))


@lru_cache(maxsize=None)
def nc(label, swap=False):
    return nc_context(system(label), swap=swap)


class Cache:
    system = staticmethod(system)
    diagrams = staticmethod(diagrams)
    oracle = staticmethod(oracle)
    aps = staticmethod(aps)
    nc = staticmethod(nc)


@pytest.fixture(scope="session")
def cache():
    return Cache
