import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosswalks.errors import SizeLimitError
from crosswalks.walks import (
    A1,
    A2,
    A2P,
    A2PP,
    A3,
    A4,
    ODD_REDUCTIONS,
    EndSet,
    WalkSpec,
    count_to_endset,
    count_walks,
    odd_reduction_check,
    pair_moves,
    reflection_count,
    sequence,
    step_targets,
)


def brute_force(spec, end):
    """Count walks by explicit recursion over steps."""

    def rec(p, step):
        if step > spec.length:
            return int(tuple(p) == tuple(end))
        return sum(rec(q, step + 1) for q in step_targets(p, spec, step))

    def rec_pairs(p, pairs):
        if pairs == 0:
            return int(tuple(p) == tuple(end))
        return sum(rec_pairs(q, pairs - 1) for _, q in pair_moves(p, spec))

    if spec.flavor == "hesitating":
        return rec_pairs(spec.start, spec.length // 2)
    return rec(spec.start, 1)


def test_spec_validation():
    with pytest.raises(ValueError):
        WalkSpec("hesitating", "W", 2, (1, 0), 3)
    with pytest.raises(ValueError):
        WalkSpec("vacillating", "W", 2, (0, 0), 2)
    with pytest.raises(ValueError):
        WalkSpec("sideways", "W", 2, (1, 0), 2)


def test_vacillating_steps_alternate():
    spec = WalkSpec("vacillating", "W", 2, (1, 0), 4)
    assert step_targets((1, 0), spec, 1) == {(1, 0)}
    assert step_targets((1, 0), spec, 2) == {(1, 0), (2, 0)}
    assert step_targets((2, 0), spec, 1) == {(2, 0), (1, 0)}


def test_hesitating_pairs_from_base_point():
    spec = WalkSpec("hesitating", "W", 2, (1, 0), 2)
    # stay then +e1, or +e1 then -e1 back; nothing passes through (1,1) or (0,0)
    assert sorted(pair_moves((1, 0), spec)) == [((1, 0), (2, 0)), ((2, 0), (1, 0))]


@pytest.mark.parametrize("flavor", ["vacillating", "hesitating"])
@pytest.mark.parametrize("length", [0, 2, 4, 6])
def test_dp_matches_brute_force(flavor, length):
    spec = WalkSpec(flavor, "W", 2, (1, 0), length)
    table = count_walks(spec)
    for end in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (4, 2)]:
        assert table[end] == brute_force(spec, end)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 3, 5, 6])
def test_reflection_principle(k, n):
    a = tuple(range(k - 1, -1, -1))
    table = count_walks(WalkSpec("vacillating", "W", k, a, n))
    for b, value in table.counts.items():
        assert reflection_count(a, b, n) == value


def test_quadrant_counts_exceed_chamber_counts():
    w = count_walks(WalkSpec("vacillating", "W", 2, (1, 0), 6)).total()
    q = count_walks(WalkSpec("vacillating", "Q", 2, (1, 0), 6)).total()
    assert q > w


def test_endset_parse_and_print():
    e = EndSet.parse("A1 + 2*A2p + 3*A2pp")
    assert e == A1 + 2 * A2P + 3 * A2PP
    assert str(e) == "A1 + 2*A2p + 3*A2pp"
    assert EndSet.parse("A3 + x*A3 + x*y*A3") == A3 + A3.shifted(1, 0) + A3.shifted(1, 1)
    assert EndSet.parse("2*A2 - A4") == 2 * A2 - A4
    with pytest.raises(ValueError):
        EndSet.parse("A9")


def test_endset_membership():
    assert (1, 0) in A1 and (2, 0) not in A1
    assert (5, 3) in A2 and (1, 1) not in A2
    assert (2, 0) in A2P and (3, 2) in A2P and (3, 1) not in A2P
    assert (3, 1) in A2PP and (3, 2) not in A2PP
    assert (4, 0) in A3 and (4, 1) not in A3
    assert (3, 2) in A4 and (3, 1) not in A4
    assert (2 * A2 - A4).weight((3, 2)) == 1
    assert (2 * A2 - A4).weight((3, 1)) == 2


@given(st.integers(1, 8), st.integers(0, 7))
def test_a2_is_disjoint_union_of_pieces(i, j):
    if j >= i:
        return
    assert A2.weight((i, j)) == (A1 + A2P + A2PP).weight((i, j))


@pytest.mark.parametrize("start", [(1, 0), (2, 0), (2, 1), (3, 1)])
@pytest.mark.parametrize("n", range(5))
def test_odd_length_reductions(start, n):
    assert odd_reduction_check(start, n)


def test_odd_reduction_sets():
    assert set(ODD_REDUCTIONS) == {"A2", "A3", "A4"}


def test_count_to_endset():
    spec = WalkSpec("vacillating", "W", 2, (1, 0), 6)
    assert count_to_endset(spec, A2) == 30
    assert count_to_endset(spec, A4) == 11


def test_sequence_parities():
    assert sequence("vacillating", A2, 4) == [1, 2, 7, 30]
    assert sequence("vacillating", A2, 4, parity="odd") == [1, 3, 12, 57]
    assert sequence("vacillating", A2, 6, parity="all") == [1, 1, 2, 3, 7, 12]
    with pytest.raises(ValueError):
        sequence("hesitating", A2, 4, parity="odd")


def test_a4_odd_row():
    assert sequence("vacillating", A4, 6, parity="odd") == [1, 2, 6, 23, 103, 513]


def test_walk_length_guard():
    with pytest.raises(SizeLimitError):
        sequence("vacillating", A2, 500)
