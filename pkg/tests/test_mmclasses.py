from itertools import product

import pytest
from hypothesis import given, strategies as st

from replab import mmclasses as mm


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def set_partition_oracle(d):
    """All set partitions by labelling each element with a block and canonicalizing."""
    seen = set()
    for labels in product(range(d), repeat=d):
        blocks = {}
        for x, l in enumerate(labels, start=1):
            blocks.setdefault(l, []).append(x)
        seen.add(tuple(sorted(tuple(b) for b in blocks.values())))
    return seen


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@pytest.mark.parametrize("d", range(0, 7))
def test_set_partitions_match_bell_and_oracle(d):
    got = list(mm.set_partitions(d))
    assert len(got) == bell(d)
    assert len(set(got)) == len(got)
    if d:
        assert set(tuple(sorted(p)) for p in got) == set_partition_oracle(d)


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_weight_zero_partitions_are_perfect_matchings(d):
    parts = mm.enumerate_weighted(d, 0)
    assert len(parts) == double_factorial(d - 1)
    assert all(len(b) == 2 and w == 0 for p in parts for b, w in zip(p.blocks, p.weights))


def test_counts():
    assert [len(mm.enumerate_weighted(d, 0)) for d in range(1, 7)] == [0, 1, 0, 3, 0, 15]
    assert [len(mm.enumerate_weighted(d, 2)) for d in range(1, 7)] == [0, 2, 0, 17, 0, 175]
    assert [mm.kawazumi_h2_dim(d) for d in range(1, 7)] == [0, 3, 0, 20, 0, 190]


@given(st.integers(1, 5), st.integers(0, 5))
def test_every_enumerated_partition_has_the_requested_k(d, k):
    for p in mm.enumerate_weighted(d, k):
        assert mm.k_of(p) == k


@given(st.integers(1, 5), st.integers(0, 5))
def test_enumeration_has_no_duplicates(d, k):
    parts = mm.enumerate_weighted(d, k)
    assert len(set(parts)) == len(parts)


@given(st.permutations(range(3)))
def test_block_order_does_not_matter(perm):
    blocks = [(1, 4), (2,), (3, 5)]
    weights = [0, 1, 2]
    p = mm.WeightedPartition(tuple(blocks), tuple(weights))
    q = mm.WeightedPartition(tuple(blocks[i] for i in perm), tuple(weights[i] for i in perm))
    assert p == q
    assert mm.k_of(p) == mm.k_of(q)


def test_validation():
    with pytest.raises(ValueError):
        mm.WeightedPartition(((1,), (2,)), (0, 1))
    with pytest.raises(ValueError):
        mm.WeightedPartition(((1, 3),), (0,))
    with pytest.raises(ValueError):
        mm.enumerate_weighted(0, 0)


def test_comparison_table():
    rows = mm.comparison_table(12, 6)
    assert [r.as_tuple() for r in rows] == [
        (1, 0, 0, 0, 0),
        (2, 1, 2, 3, 3),
        (3, 0, 0, 0, 0),
        (4, 3, 17, 20, 20),
        (5, 0, 0, 0, 0),
        (6, 15, 175, 190, 190),
    ]
    with pytest.raises(ValueError):
        mm.comparison_table(4, 6)


def test_surrogate_rank_matches_direct_computation():
    assert mm.boundary_cup_image(7).same_terms(mm.boundary_cup_image(7, surrogate=7))


@pytest.mark.parametrize("g", [6, 7])
def test_bookkeeping(g):
    b = mm.bookkeeping_identities(g)
    assert b.ok
    assert b.h_tensor_quotient == mm.h_tensor_quotient_decomposition(g).dimension


def test_h_tensor_quotient_decomposition():
    assert mm.h_tensor_quotient_decomposition(6).as_dict() == {(1, 1): 1, (1, 1, 1, 1): 1, (2, 1, 1): 1}
