from collections import Counter
from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from replab import char_ring as cr
from replab.rep_core import SL, Partition, Sp, partitions_of, weyl_dim


def std_weights(group):
    """Weights of the standard representation listed one by one."""
    return [w for w, m in cr.std_char(group).table.items() for _ in range(m)]


def add(ws):
    return tuple(map(sum, zip(*ws)))


def wedge_oracle(group, k):
    ws = std_weights(group)
    return Counter(add(c) if c else (0,) * group.rank for c in combinations(ws, k))


def sym_oracle(group, k):
    ws = std_weights(group)
    return Counter(add(c) if c else (0,) * group.rank for c in combinations_with_replacement(ws, k))


groups = st.one_of(st.integers(1, 4).map(Sp), st.integers(2, 5).map(SL))


@given(groups, st.integers(0, 4))
def test_wedge_power_matches_subsets(G, k):
    assert dict(cr.wedge_power(cr.std_char(G), k).table) == dict(wedge_oracle(G, k))


@given(groups, st.integers(0, 3))
def test_sym_power_matches_multisets(G, k):
    assert dict(cr.sym_power(cr.std_char(G), k).table) == dict(sym_oracle(G, k))


@given(groups, st.integers(1, 4))
def test_tensor_power_dimension(G, d):
    assert cr.tensor_power(cr.std_char(G), d).dimension == G.std_dim ** d


@given(groups, st.integers(1, 4))
def test_peel_round_trip(G, d):
    ch = cr.tensor_power(cr.std_char(G), d)
    dec = cr.decompose(ch)
    assert dec.character() == ch
    assert dec.dimension == ch.dimension


@given(st.integers(1, 3), st.integers(0, 4))
def test_irreducible_decomposes_to_itself(g, d):
    G = Sp(g)
    for lam in partitions_of(d, max_parts=g):
        dec = cr.decompose(cr.irreducible_char(G, lam))
        assert dec.as_dict() == {lam: 1}


def test_trivial_multiplicity_is_double_factorial():
    assert [cr.trivial_multiplicity(d, d) for d in (2, 4, 6)] == [1, 3, 15]
    assert cr.trivial_multiplicity(3, 3) == 0


def test_unstable_rank_warns():
    with pytest.warns(cr.UnstableRange):
        cr.trivial_multiplicity(4, 2)


def test_hom_dim_is_schur():
    G = Sp(4)
    w2 = cr.wedge_power(cr.std_char(G), 2)
    # wedge^2 H = V_{1^2} + V_0, so End has dimension 1 + 1
    assert cr.hom_dim(w2, w2) == 2


def test_hom_dim_sl_counts_invariants():
    G = SL(3)
    h = cr.std_char(G)
    # Hom(k^3, k^3) = 1, but k^3 (x) k^3 has no invariants
    assert cr.hom_dim(cr.decompose(h), cr.dual(h)) == 1
    assert cr.hom_dim(cr.decompose(h), h) == 0


def test_group_mismatch():
    with pytest.raises(cr.GroupMismatch):
        cr.std_char(Sp(2)) + cr.std_char(Sp(3))


def test_negative_character_rejected():
    G = Sp(2)
    with pytest.raises(cr.NotARepresentation):
        cr.decompose(cr.FormalCharacter.zero(G) - cr.std_char(G))


def test_adams_doubles_weights():
    G = Sp(2)
    assert dict(cr.std_char(G).adams(2).table) == {(2, 0): 1, (-2, 0): 1, (0, 2): 1, (0, -2): 1}


@pytest.mark.parametrize("g", range(3, 7))
def test_branching_dimension_and_interval_rule(g):
    for d in range(0, 4):
        for lam in partitions_of(d, max_parts=g):
            dec = cr.branch_sp(lam, g)
            assert dec.dimension == weyl_dim(Sp(g), lam)
            assert set(dec.partitions) == set(cr.interval_rule(lam, g))


def test_json_schema_and_numbers():
    dec = cr.decompose(cr.wedge_power(cr.std_char(Sp(3)), 2))
    obj = dec.to_json_obj()
    assert obj["schema"] == "replab/1"
    assert obj["total_dim"] == "15"
    assert [(t["partition"], t["mult"]) for t in obj["terms"]] == [([], 1), ([1, 1], 1)]


def test_decomposition_difference_requires_containment():
    a = cr.Decomposition.from_mapping(Sp(3), {(1,): 1})
    b = cr.Decomposition.from_mapping(Sp(3), {(2,): 1})
    with pytest.raises(cr.NotARepresentation):
        a - b
    assert (a + b - b).same_terms(a)
