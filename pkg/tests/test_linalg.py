from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from replab import linalg

matrices = st.integers(1, 5).flatmap(
    lambda r: st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), min_size=1, max_size=6)
)


def as_vectors(rows):
    return [{j: c for j, c in enumerate(row) if c} for row in rows]


@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(as_vectors(rows)) == sympy.Matrix(rows).rank()


@given(matrices)
def test_kernel_matches_sympy(rows):
    # rows are taken as the columns of the map
    cols = as_vectors(rows)
    ker = linalg.kernel(cols, len(cols))
    M = sympy.Matrix(rows).T
    assert len(ker) == len(M.nullspace())
    for v in ker:
        image = {}
        for j, c in v.items():
            for i, a in cols[j].items():
                image[i] = image.get(i, 0) + a * c
        assert not any(image.values())


@given(matrices)
def test_rref_rows_have_unit_pivots(rows):
    out = linalg.rref(as_vectors(rows))
    pivots = [min(r) for r in out]
    assert len(set(pivots)) == len(pivots)
    for r in out:
        assert r[min(r)] == 1
        for p in pivots:
            if p != min(r):
                assert p not in r


@given(matrices, st.lists(st.integers(-2, 2), min_size=6, max_size=6))
def test_membership_of_combinations(rows, coeffs):
    vecs = as_vectors(rows)
    eb = linalg.EchelonBasis(vecs)
    combo = {}
    for v, c in zip(vecs, coeffs):
        for k, x in v.items():
            combo[k] = combo.get(k, 0) + c * x
    assert eb.contains({k: x for k, x in combo.items() if x})


def test_fraction_input_is_scaled():
    assert linalg.integral({0: Fraction(1, 2), 1: Fraction(-1, 3)}) == {0: 3, 1: -2}
    assert linalg.integral({0: -4, 2: 6}) == {0: 2, 2: -3}
