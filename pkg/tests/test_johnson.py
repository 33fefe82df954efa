import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from replab import johnson as jh
from replab import symp_linalg as sl
from replab.rep_core import Sp


def bp(g=4):
    # x = a_3, U spanned by the first two handles
    return jh.BoundingPair(sl.av(3, g), ((sl.av(1, g), sl.bv(1, g)), (sl.av(2, g), sl.bv(2, g))))


def test_bounding_pair_value():
    g = 4
    want = sl.ext(sl.av(3, g), sl.omega_of([(sl.av(1, g), sl.bv(1, g)), (sl.av(2, g), sl.bv(2, g))], g))
    assert jh.tau1(bp(g)).value == want


def test_sip_value_is_the_triple_wedge():
    g = 3
    spec = jh.SIP(sl.av(1, g), sl.av(2, g), sl.av(3, g))
    assert jh.tau1(spec).value == sl.hvec_ext((sl.a(1), sl.a(2), sl.a(3)), g)


def test_separating_twist_has_zero_tau1():
    assert jh.tau1(jh.SepTwistGenus(2, 4)).value.is_zero()


@pytest.mark.parametrize(
    "make",
    [
        lambda g: jh.BoundingPair(sl.av(1, g), ((sl.av(1, g), sl.bv(1, g)),)),
        lambda g: jh.BoundingPair(sl.av(1, g) * 0, ((sl.av(2, g), sl.bv(2, g)),)),
        lambda g: jh.BoundingPair(sl.av(1, g), ()),
        lambda g: jh.SIP(sl.av(1, g), sl.bv(1, g), sl.av(2, g)),
        lambda g: jh.SepTwistGenus(5, g),
        lambda g: jh.SepTwist((), 0),
    ],
)
def test_invalid_specs(make):
    with pytest.raises(jh.InvalidSpec):
        make(3)


@given(st.integers(0, 10**6))
def test_tau1_is_equivariant(seed):
    rng = random.Random(seed)
    g = 4
    gens = sl.all_generators(g)
    spec = bp(g)
    for _ in range(rng.randint(1, 4)):
        gen = rng.choice(gens)
        assert jh.tau1(spec.transform(gen)).value == sl.apply_generator(gen, jh.tau1(spec).value)
        spec = spec.transform(gen)


def test_bounding_pair_map_rules():
    g = 4
    spec = bp(g)
    checks = jh.taubp_map_checks(spec, sl.bv(3, g) * -1, [sl.av(4, g), sl.bv(4, g)])
    assert checks == {"U": True, "U'": True, "dual": True}
    with pytest.raises(jh.InvalidSpec):
        jh.taubp_map_checks(spec, sl.bv(3, g))


def test_bracket_vanishes_on_values():
    g = 4
    assert jh.check_bracket(jh.tau1(bp(g)))
    assert jh.check_bracket(jh.tau1(jh.SIP(sl.av(1, g), sl.av(2, g), sl.bv(3, g))))
    for h in range(0, g + 1):
        assert jh.check_bracket(jh.tau2_septwist(jh.SepTwistGenus(h, g)))


def test_bracket_detects_non_values():
    g = 3
    bad = sl.tensor_vec(sl.av(1, g), sl.hvec_ext((sl.a(1), sl.a(2)), g))
    assert not jh.check_bracket(bad)


def test_random_values_bracket_to_zero_and_are_reproducible():
    vals = jh.random_johnson_values(7, 30)
    assert all(jh.check_bracket(v) for _, v in vals)
    again = jh.random_johnson_values(7, 30)
    assert [v.value for _, v in vals] == [v.value for _, v in again]


@pytest.mark.parametrize("g", [3, 4, 5])
def test_tau1_span(g):
    assert jh.tau1_image_span(g) == comb(2 * g, 3)


def test_tau2_span():
    assert jh.tau2_image_span(4) == 336
    with pytest.raises(jh.GenusTooSmall):
        jh.tau2_image_span(3)
    with pytest.raises(jh.GenusTooSmall):
        jh.tau1_image_span(2)


def test_tau2_span_closure_methods_agree():
    seeds = jh.tau2_seeds(4)
    assert sl.sp_span_closure(seeds, method="generators").dimension == 336
    assert sl.sp_span_closure(jh.tau1_seeds(4), method="generators").dimension == 56


def test_cup_image_and_complement():
    g = 6
    boundary = jh.cup_image_boundary(g)
    closed = jh.cup_image_closed(g)
    assert boundary.dimension == 22373
    assert (jh.wedge2_wedge3(g) - boundary).as_dict() == {(): 2, (1, 1): 1, (2, 2): 1}
    assert (boundary - closed).as_dict() == jh.cup_image_closed_kernel(g).as_dict()
    with pytest.raises(jh.GenusTooSmall):
        jh.cup_image(5)


def test_cup_seed_count():
    claims = jh.cup_claims(6)
    assert len(claims) == 5
    assert len(jh.cup_seeds(6)) == 7


def test_cup_seeds_are_abelian_cycles_of_commuting_values():
    # every seed lies in wedge^2 wedge^3 H
    for v in jh.cup_seeds(6):
        assert v.shape == sl.Wedge(2, sl.WEDGE3)


def test_morita_core():
    assert [jh.morita_core(h) for h in range(4)] == [0, 0, 8, 24]
