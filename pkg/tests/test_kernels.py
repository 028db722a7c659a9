import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxplane import kernels
from coxplane.kernels import classify_pairs, classify_pairs_numba, classify_pairs_numpy

# points on a small lattice so that touching and collinear cases occur often
lattice = st.integers(min_value=0, max_value=6)
point_id = st.integers(min_value=0, max_value=48)


def coords_of(pid):
    return [float(pid % 7), float(pid // 7)]


segments = st.lists(
    st.tuples(point_id, point_id).filter(lambda t: t[0] != t[1]).map(lambda t: tuple(sorted(t))),
    min_size=1,
    max_size=8,
)


def arrays(segs):
    rows = np.array([coords_of(a) + coords_of(b) for a, b in segs])
    return rows, np.array(segs, dtype=np.int64)


@settings(max_examples=300, deadline=None)
@given(segments, segments)
def test_numba_matches_numpy(s1, s2):
    A, ka = arrays(s1)
    B, kb = arrays(s2)
    assert (classify_pairs_numpy(A, B, ka, kb) == classify_pairs_numba(A, B, ka, kb)).all()


@settings(max_examples=200, deadline=None)
@given(segments, segments)
def test_relation_matrix_is_symmetric(s1, s2):
    A, ka = arrays(s1)
    B, kb = arrays(s2)
    assert (classify_pairs_numpy(A, B, ka, kb) == classify_pairs_numpy(B, A, kb, ka).T).all()


@pytest.mark.parametrize(
    "s1,s2,code",
    [
        ((0, 8), (1, 7), kernels.CROSS),
        ((0, 1), (1, 2), kernels.TOUCH),
        ((0, 2), (1, 8), kernels.TOUCH),
        ((0, 2), (1, 3), kernels.OVERLAP),
        ((0, 1), (2, 3), kernels.DISJOINT),
        ((0, 1), (7, 8), kernels.DISJOINT),
        ((0, 16), (0, 16), kernels.COINCIDE),
    ],
)
def test_examples(s1, s2, code):
    A, ka = arrays([s1])
    B, kb = arrays([s2])
    for f in (classify_pairs_numpy, classify_pairs_numba):
        assert f(A, B, ka, kb)[0, 0] == code


def test_env_flag_selects_numpy(monkeypatch):
    calls = []
    monkeypatch.setenv("COXPLANE_DISABLE_JIT", "1")
    monkeypatch.setattr(kernels, "classify_pairs_numpy", lambda *a: calls.append(1) or np.zeros((1, 1), np.int8))
    A, ka = arrays([(0, 1)])
    classify_pairs(A, A, ka, ka)
    assert calls


def test_empty_inputs():
    A, ka = arrays([(0, 1)])
    assert classify_pairs(A[:0], A, ka[:0], ka).shape == (0, 1)
