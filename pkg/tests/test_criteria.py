import pytest

from coxplane.criteria import (
    CRITERIA,
    CriteriaContext,
    RingContext,
    SegmentRelation,
    active_segments,
    segment_relation,
    verify_compat,
)
from coxplane.diagrams import LabeledSegment as S

EXACT = [
    ("A3", "cl1"), ("A4", "cl1"), ("B3", "cl1"), ("B4", "cl1"), ("I2(5)", "cl1"),
    ("H3", "cl2"), ("D4", "cl3"), ("D5", "cl3"), ("H3", "cl3"),
    ("F4", "cl4"), ("E6", "cl4"), ("E6", "cl5"), ("B3", "cl4"),
]

# (false negatives, false positives), frozen from the implementation
FROZEN = {
    ("D4", "cl1"): (4, 12),
    ("D4", "cl2"): (0, 12),
    ("D4", "cl4"): (0, 12),
    ("H3", "cl1"): (6, 0),
    ("F4", "cl1"): (91, 0),
    ("F4", "cl3"): (91, 0),
    ("E6", "cl1"): (273, 0),
    ("E6", "cl2"): (259, 0),
    ("E6", "cl3"): (289, 0),
}


@pytest.fixture(scope="module")
def ctxs(cache):
    store = {}

    def get(label):
        if label not in store:
            store[label] = CriteriaContext(cache.diagrams(label))
        return store[label]

    return get


def test_segment_relations_on_a_hexagon(cache):
    ex = cache.diagrams("A3").expanded
    assert segment_relation(S(0, 2), S(1, 3), ex) is SegmentRelation.CROSS
    assert segment_relation(S(0, 2), S(2, 4), ex) is SegmentRelation.TOUCH
    assert segment_relation(S(0, 2), S(3, 5), ex) is SegmentRelation.DISJOINT
    assert segment_relation(S(0, 3), S(0, 3), ex) is SegmentRelation.COINCIDE
    assert segment_relation(S(0, 3), S(1, 4), ex) is SegmentRelation.CROSS


def test_segment_relations_through_the_origin(cache):
    ex = cache.diagrams("D4").expanded
    o1, o2 = ex.num_ring_vertices, ex.num_ring_vertices + 1
    # two labels of the origin joined to one vertex coincide geometrically
    assert segment_relation(S(0, o1), S(0, o2), ex) is SegmentRelation.COINCIDE
    assert segment_relation(S(0, 4), S(0, o1), ex) is SegmentRelation.OVERLAP
    assert segment_relation(S(0, o1), S(4, o2), ex) is SegmentRelation.TOUCH
    assert segment_relation(S(1, 5), S(0, o1), ex) is SegmentRelation.TOUCH
    assert segment_relation(S(1, 3), S(0, o1), ex) is SegmentRelation.DISJOINT


def test_ring_context_levels(cache):
    rc = RingContext.from_expanded(cache.diagrams("E7").expanded)
    assert len(rc.radii) == 3
    assert rc.radii == sorted(rc.radii, reverse=True)
    assert rc.radius(3) == 0.0
    assert sorted(set(rc.ring_level)) == [0, 1, 2]


@pytest.mark.parametrize("label,criterion", EXACT)
def test_exact(label, criterion, cache):
    report = verify_compat(cache.system(label), criterion, cache.diagrams(label), cache.oracle(label))
    assert report.exact, report.to_text(limit=5)
    n = len(cache.aps(label))
    assert report.total == n * (n - 1) // 2


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_mismatch_counts(key, cache):
    label, criterion = key
    report = verify_compat(cache.system(label), criterion, cache.diagrams(label), cache.oracle(label))
    assert (len(report.false_negatives), len(report.false_positives)) == FROZEN[key]


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "H3", "F4"])
def test_criteria_are_nested(label, cache, ctxs):
    ctx = ctxs(label)
    for a, b, _ in cache.oracle(label).pairs():
        v = {name: f(a, b, ctx) for name, f in CRITERIA.items()}
        assert v["cl1"] <= v["cl2"]
        assert v["cl3"] <= v["cl2"]
        assert v["cl5"] <= v["cl4"]


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "H3", "F4", "E6"])
@pytest.mark.parametrize("criterion", ["cl1", "cl2", "cl4", "cl5"])
def test_verdicts_are_tau_invariant(label, criterion, cache, ctxs):
    ctx = ctxs(label)
    f = CRITERIA[criterion]
    aps = cache.aps(label)
    for sign in (+1, -1):
        t = aps.tau_table(sign)
        for a, b, _ in cache.oracle(label).pairs():
            assert f(a, b, ctx) == f(int(t[a]), int(t[b]), ctx)


@pytest.mark.parametrize("label", ["A3", "D4", "H3"])
def test_verdicts_are_symmetric(label, cache, ctxs):
    ctx = ctxs(label)
    for a, b, _ in cache.oracle(label).pairs():
        for f in CRITERIA.values():
            assert f(a, b, ctx) == f(b, a, ctx)


@pytest.mark.parametrize("label,criterion", [("D4", "cl3"), ("H3", "cl2"), ("E6", "cl5")])
def test_swapped_bipartition_stays_exact(label, criterion, cache):
    ds = cache.diagrams(label, swap=True)
    assert verify_compat(cache.system(label), criterion, ds).exact


def test_outer_ring_segments_are_active(cache, ctxs):
    ctx = ctxs("E7")
    for a in (0, 1, 2):
        act, _ = active_segments(a, a, ctx)
        levels = ctx.arrays[a][3]
        assert act[levels == 0].all()


def test_e7_cl5_witness(cache):
    report = verify_compat(cache.system("E7"), "cl5", cache.diagrams("E7"), cache.oracle("E7"))
    assert not report.exact
    assert "(-a3, a3)" in {m["object"] for m in report.mismatches}
    assert report.metadata["active_rule"] == "shared endpoint"


def test_unknown_criterion(cache):
    with pytest.raises(ValueError):
        verify_compat(cache.system("A3"), "cl9", cache.diagrams("A3"))
