import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosswalks.errors import SizeLimitError
from crosswalks.oracles import bell, catalan
from crosswalks.partitions import (
    ArcDiagram,
    SetPartition,
    arcs_of,
    count_partitions,
    enumerate_bisymmetric,
    enumerate_matchings,
    enumerate_partitions,
    has_k_crossing,
    is_bisymmetric,
    reflect,
)
from crosswalks.walks import EndSet, sequence


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_count_and_uniqueness(n):
    parts = list(enumerate_partitions(n))
    assert len(parts) == bell(n)
    assert len(set(parts)) == len(parts)


def test_set_partition_rejects_bad_blocks():
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        SetPartition(3, ((1,), (2,)))


def test_arcs_join_consecutive_block_elements():
    p = SetPartition(5, ((1, 3, 5), (2,), (4,)))
    assert arcs_of(p).arcs == ((1, 3), (3, 5))
    assert arcs_of(p, enhanced=True).arcs == ((1, 3), (2, 2), (3, 5), (4, 4))


def test_enhanced_crossing_allows_shared_touching_point():
    # arcs (1,3) and (3,5) share 3 = i_2 = j_1: an enhanced 2-crossing only
    d = ArcDiagram(5, ((1, 3), (3, 5)))
    assert not has_k_crossing(d, 2)
    assert has_k_crossing(ArcDiagram(5, ((1, 3), (2, 2), (3, 5), (4, 4)), True), 2)


def test_loops_do_not_cross():
    p = SetPartition(3, ((1, 3), (2,)))
    assert not has_k_crossing(arcs_of(p, enhanced=True), 2)


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("enhanced", [False, True])
def test_chain_search_matches_scan(n, k, enhanced):
    for p in enumerate_partitions(n):
        d = arcs_of(p, enhanced)
        assert has_k_crossing(d, k) == has_k_crossing(d, k, method="scan")


@pytest.mark.parametrize("n", range(1, 10))
def test_direct_bisymmetric_generator_matches_filter(n):
    direct = set(enumerate_bisymmetric(n))
    filtered = {p for p in enumerate_partitions(n) if is_bisymmetric(p)}
    assert direct == filtered


@given(st.lists(st.integers(0, 4), min_size=1, max_size=9))
def test_reflection_is_an_involution(labels):
    rgs, seen = [], {}
    for v in labels:
        rgs.append(seen.setdefault(v, len(seen)))
    p = SetPartition.from_rgs(rgs)
    assert reflect(reflect(p)) == p


def test_counts_against_walks():
    # 3-noncrossing partitions of [n] and their enhanced version
    plain = sequence("vacillating", EndSet.parse("A1"), 10)
    enhanced = sequence("hesitating", EndSet.parse("A1"), 10)
    assert [count_partitions(n, 3) for n in range(1, 10)] == plain[1:]
    assert [count_partitions(n, 3, enhanced=True) for n in range(1, 10)] == enhanced[1:]


def test_bisymmetric_counts():
    assert [count_partitions(n, 3, bisymmetric=True) for n in range(1, 9)] == [1, 2, 3, 7, 12, 30, 57, 148]
    assert [count_partitions(n, 3, True, True) for n in range(1, 9)] == [1, 2, 3, 7, 11, 29, 48, 136]


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("flags", [(3, False, False), (3, True, True), (2, False, True), (None, False, True)])
def test_fast_and_filter_agree(n, flags):
    k, enh, bis = flags
    assert count_partitions(n, k, enh, bis) == count_partitions(n, k, enh, bis, method="filter")


def test_noncrossing_partitions_are_catalan():
    assert [count_partitions(n, 2) for n in range(1, 10)] == [catalan(n) for n in range(1, 10)]


def test_matchings():
    assert sum(1 for _ in enumerate_matchings(8)) == 105
    assert sum(1 for _ in enumerate_matchings(10, noncross_k=2)) == catalan(5)
    assert list(enumerate_matchings(3)) == []


def test_size_guard():
    with pytest.raises(SizeLimitError):
        next(enumerate_partitions(20))
    with pytest.raises(SizeLimitError):
        count_partitions(30, 3)


def test_guard_env_override(monkeypatch):
    monkeypatch.setenv("CROSSWALKS_GUARD", "partitions=3")
    with pytest.raises(SizeLimitError):
        count_partitions(4)
    assert count_partitions(3) == 5
