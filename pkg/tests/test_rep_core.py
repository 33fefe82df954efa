from fractions import Fraction
from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from replab.rep_core import (
    SL,
    Partition,
    PartitionTooLong,
    Sp,
    as_partition,
    dominant_multiplicities,
    orbit_size,
    partitions_of,
    weyl_dim,
    weyl_orbit,
)


def hook_content_dim(lam, n):
    """dim of the GL_n irreducible with highest weight lam (hook-content formula)."""
    num, den = 1, 1
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = sum(1 for r in lam[i + 1:] if r > j)
            num *= n + j - i
            den *= arm + leg + 1
    return num // den


def sp_dim_by_product(lam, g):
    """Weyl's product over positive roots of C_g, with rho = (g, g-1, ..., 1)."""
    lam = list(lam) + [0] * (g - len(lam))
    rho = [g - i for i in range(g)]
    x = [l + r for l, r in zip(lam, rho)]
    out = Fraction(1)
    for i in range(g):
        out *= Fraction(x[i], rho[i])
        for j in range(i + 1, g):
            out *= Fraction((x[i] - x[j]) * (x[i] + x[j]), (rho[i] - rho[j]) * (rho[i] + rho[j]))
    return int(out)


def test_partition_normalizes_trailing_zeros():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert Partition(()).degree == 0


def test_partition_rejects_increasing():
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_too_many_parts():
    with pytest.raises(PartitionTooLong):
        as_partition(Sp(2), (1, 1, 1))


@pytest.mark.parametrize(
    "g, lam, dim",
    [(1, (1,), 2), (2, (1, 1), 5), (2, (2,), 10), (3, (2, 1), 64), (3, (1, 1, 1), 14), (6, (1, 1), 65)],
)
def test_known_sp_dimensions(g, lam, dim):
    assert weyl_dim(Sp(g), lam) == dim


@pytest.mark.parametrize("g", range(1, 7))
def test_sp_wedge_dimensions(g):
    for k in range(0, g + 1):
        want = comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)
        assert weyl_dim(Sp(g), (1,) * k) == want


@given(st.integers(2, 6), st.integers(0, 7))
def test_sl_dims_match_hook_content(n, d):
    for lam in partitions_of(d, max_parts=n - 1):
        assert weyl_dim(SL(n), lam) == hook_content_dim(lam, n)


@given(st.integers(1, 6), st.integers(0, 6))
def test_sp_dims_match_root_product(g, d):
    for lam in partitions_of(d, max_parts=g):
        assert weyl_dim(Sp(g), lam) == sp_dim_by_product(lam, g)


@given(st.integers(1, 5), st.integers(0, 5))
def test_freudenthal_total_equals_weyl(g, d):
    for G in (Sp(g), SL(g + 1)):
        for lam in partitions_of(d, max_parts=G.max_parts):
            m = dominant_multiplicities(G, lam)
            assert sum(orbit_size(G, w) * k for w, k in m.items()) == weyl_dim(G, lam)


def test_orbit_size_matches_orbit():
    for G in (Sp(3), SL(4)):
        for w in [(2, 1, 0), (1, 1, 0), (0, 0, 0), (2, 0, 0)] if G.is_sp else [(2, 1, 0, 0), (1, 1, 0, 0)]:
            assert orbit_size(G, w) == len(set(weyl_orbit(G, w)))


def test_partitions_count():
    # p(6) = 11, partitions of 6 into at most 2 parts = 4
    assert len(list(partitions_of(6))) == 11
    assert len(list(partitions_of(6, max_parts=2))) == 4
