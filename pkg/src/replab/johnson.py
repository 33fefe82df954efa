"""Johnson homomorphism values, abelian cycles and the cup-product image.

Homology classes are vectors of H (MultiVectors of shape H).  Free Lie
algebra letters are 1..2g with letter i+1 standing for basis index i, so
a_k is letter 2k-1 and b_k is letter 2k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .char_ring import Decomposition, FormalCharacter, decompose, wedge_power, std_char
from .free_lie import apply_bracket, commutator, to_lyndon
from .linalg import EchelonBasis
from .rep_core import Sp
from .symp_linalg import (
    H,
    WEDGE2,
    WEDGE3,
    GroupGenerator,
    all_generators,
    MultiVector,
    NotSymplecticSet,
    Quot,
    SpanResult,
    Tensor,
    Wedge,
    a,
    apply_generator,
    b,
    check_symplectic_set,
    ext,
    form,
    hvec,
    hvec_ext,
    omega,
    sp_span_closure,
    tensor_vec,
    to_quotient,
    wedge2_p,
    wedge2_to_tensor,
    wedge3_to_tensor,
    wedge_pair,
)

TAU2_SHAPE = Quot(Tensor((H, H, WEDGE2)), "HxWedge3-in-HHxWedge2")


class InvalidSpec(ValueError):
    pass


class GenusTooSmall(ValueError):
    pass


# ------------------------------------------------------------------ specs


def _vec(x: MultiVector) -> MultiVector:
    if not isinstance(x, MultiVector) or x.shape != H:
        raise InvalidSpec("homology classes must be vectors of H")
    return x


def _omega_pairs(pairs) -> MultiVector:
    g = pairs[0][0].g
    out = MultiVector(WEDGE2, g)
    for u, v in pairs:
        out = out + ext(u, v)
    return out


@dataclass(frozen=True)
class BoundingPair:
    """Bounding pair map T_x T_y^{-1}; pairs is a symplectic basis of the bounded subspace U."""

    x: MultiVector
    pairs: Tuple[Tuple[MultiVector, MultiVector], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((_vec(u), _vec(v)) for u, v in self.pairs))
        _vec(self.x)
        if self.x.is_zero():
            raise InvalidSpec("[x] must be nonzero")
        if not self.pairs:
            raise InvalidSpec("a bounding pair needs a nonempty bounded subspace")
        try:
            check_symplectic_set(self.pairs)
        except NotSymplecticSet as e:
            raise InvalidSpec(str(e)) from None
        for u, v in self.pairs:
            if form(self.x, u) or form(self.x, v):
                raise InvalidSpec("[x] must be orthogonal to the bounded subspace")

    @property
    def g(self) -> int:
        return self.x.g

    def transform(self, gen: GroupGenerator) -> "BoundingPair":
        return BoundingPair(
            apply_generator(gen, self.x),
            tuple((apply_generator(gen, u), apply_generator(gen, v)) for u, v in self.pairs),
        )


@dataclass(frozen=True)
class SIP:
    """Simply intersecting pair map with boundary classes d1, d2, d3."""

    d1: MultiVector
    d2: MultiVector
    d3: MultiVector

    def __post_init__(self):
        ds = [_vec(d) for d in (self.d1, self.d2, self.d3)]
        for i in range(3):
            for j in range(i + 1, 3):
                if form(ds[i], ds[j]):
                    raise InvalidSpec("boundary classes of disjoint curves pair to zero")

    @property
    def g(self) -> int:
        return self.d1.g

    def transform(self, gen: GroupGenerator) -> "SIP":
        return SIP(*(apply_generator(gen, d) for d in (self.d1, self.d2, self.d3)))


@dataclass(frozen=True)
class SepTwist:
    """Twist about a separating curve cutting off a subsurface with homology V."""

    pairs: Tuple[Tuple[MultiVector, MultiVector], ...]
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((_vec(u), _vec(v)) for u, v in self.pairs))
        if self.pairs:
            check_symplectic_set(self.pairs)
        elif self.genus < 1:
            raise InvalidSpec("an empty separating twist needs its ambient genus")

    @property
    def g(self) -> int:
        return self.pairs[0][0].g if self.pairs else self.genus

    def omega_v(self) -> MultiVector:
        if not self.pairs:
            return MultiVector(WEDGE2, self.g)
        return _omega_pairs(self.pairs)

    def transform(self, gen: GroupGenerator) -> "SepTwist":
        return SepTwist(
            tuple((apply_generator(gen, u), apply_generator(gen, v)) for u, v in self.pairs), self.g
        )


def SepTwistGenus(h: int, g: int) -> SepTwist:
    """Separating twist about the curve cutting off the first h handles."""
    if not 0 <= h <= g:
        raise InvalidSpec(f"subsurface genus must lie in 0..{g}")
    return SepTwist(tuple((hvec(g, {a(i): 1}), hvec(g, {b(i): 1})) for i in range(1, h + 1)), g)


GeneratorSpec = Union[BoundingPair, SIP, SepTwist]


@dataclass(frozen=True)
class JohnsonValue:
    level: int
    value: MultiVector


# --------------------------------------------------------------- tau maps


def tau1(spec: GeneratorSpec) -> JohnsonValue:
    if isinstance(spec, BoundingPair):
        return JohnsonValue(1, ext(spec.x, _omega_pairs(spec.pairs)))
    if isinstance(spec, SIP):
        return JohnsonValue(1, ext(spec.d1, spec.d2, spec.d3))
    if isinstance(spec, SepTwist):
        return JohnsonValue(1, MultiVector(WEDGE3, spec.g))
    raise InvalidSpec(f"unsupported spec {spec!r}")


class HomToWedge2:
    """A linear map H -> wedge^2 H given by an element of H (x) wedge^2 H.

    x (x) kappa acts as h -> omega(x, h) kappa.
    """

    def __init__(self, element: MultiVector):
        if element.shape != Tensor((H, WEDGE2)):
            raise InvalidSpec("expected an element of H (x) wedge^2 H")
        self.element = element
        self.g = element.g

    def __call__(self, h: MultiVector) -> MultiVector:
        out: Dict = {}
        for (x, k), c in self.element.coeffs.items():
            w = form(hvec(self.g, {x: 1}), h)
            if w:
                out[k] = out.get(k, 0) + w * c
        return MultiVector(WEDGE2, self.g, out)


def tau1_as_map(spec: BoundingPair) -> HomToWedge2:
    if not isinstance(spec, BoundingPair):
        raise InvalidSpec("tau1_as_map takes a bounding pair")
    return HomToWedge2(wedge3_to_tensor(tau1(spec).value))


def taubp_map_checks(spec: BoundingPair, dual: MultiVector, complement: Sequence[MultiVector] = ()) -> Dict[str, bool]:
    """Check the three evaluation rules of a bounding pair map.

    u in U goes to -[x]^u, vectors of U' go to 0, and an integral dual h
    with omega(h, [x]) = 1 goes to -omega_V, where V is the part of U
    orthogonal to [x] and h.
    """
    if form(dual, spec.x) != 1:
        raise InvalidSpec("the dual h must satisfy omega(h, [x]) = 1")
    f = tau1_as_map(spec)
    basis_u = [w for p in spec.pairs for w in p]
    rule_u = all(f(u) == -ext(spec.x, u) for u in basis_u)
    rule_uprime = all(f(u).is_zero() for u in complement)
    v_pairs = [(u, v) for u, v in spec.pairs if not (form(u, dual) or form(v, dual))]
    omega_v = _omega_pairs(v_pairs) if v_pairs else MultiVector(WEDGE2, spec.g)
    rule_dual = f(dual) == -omega_v
    return {"U": rule_u, "U'": rule_uprime, "dual": rule_dual}


def tau2_septwist(spec: Union[SepTwist, Sequence]) -> JohnsonValue:
    """Class of -omega_V (x) omega_V in (H (x) H (x) wedge^2 H)/(H (x) wedge^3 H)."""
    if not isinstance(spec, SepTwist):
        spec = SepTwist(tuple(spec))
    w = spec.omega_v()
    rep = tensor_vec(wedge2_to_tensor(w), w) * -1
    if rep.is_zero():
        return JohnsonValue(2, MultiVector(TAU2_SHAPE, spec.g))
    return JohnsonValue(2, to_quotient(rep, TAU2_SHAPE.embed))


# ---------------------------------------------------------------- brackets


def _letter(i: int) -> int:
    return i + 1


@lru_cache(maxsize=None)
def _lie2(p: int, q: int) -> Tuple:
    x = commutator({(_letter(p),): 1}, {(_letter(q),): 1})
    return tuple(to_lyndon(x).items())


def bracket_image(v: Union[JohnsonValue, MultiVector]) -> Dict:
    """Image in FLie_{d+2} (Lyndon coordinates) under the iterated bracket."""
    if isinstance(v, JohnsonValue):
        v = v.value
    shape = v.shape
    if shape == WEDGE3:
        v = wedge3_to_tensor(v)
        shape = v.shape
    if isinstance(shape, Quot) and shape == TAU2_SHAPE:
        shape = shape.inner
    if shape == Tensor((H, WEDGE2)):
        elem: Dict = {}
        for (x, (p, q)), c in v.coeffs.items():
            for w, d in _lie2(p, q):
                key = (_letter(x), w)
                elem[key] = elem.get(key, 0) + c * d
        return apply_bracket(elem)
    if shape == Tensor((H, H, WEDGE2)):
        inner: Dict = {}
        for (x, y, (p, q)), c in v.coeffs.items():
            for w, d in _lie2(p, q):
                key = (x, _letter(y), w)
                inner[key] = inner.get(key, 0) + c * d
        # [y, [p, q]] for each outer letter x, then [x, -]
        outer: Dict = {}
        by_x: Dict[int, Dict] = {}
        for (x, y, w), c in inner.items():
            by_x.setdefault(x, {})[(y, w)] = c
        for x, part in by_x.items():
            for w, c in apply_bracket(part).items():
                key = (_letter(x), w)
                outer[key] = outer.get(key, 0) + c
        return apply_bracket(outer)
    raise InvalidSpec(f"no bracket map for shape {shape.text()}")


def check_bracket(v: Union[JohnsonValue, MultiVector]) -> bool:
    return not any(bracket_image(v).values())


# ---------------------------------------------------------- image spans


def tau1_seeds(g: int) -> List[MultiVector]:
    return [ext(hvec(g, {a(1): 1}), omega(g)), hvec_ext((a(1), a(2), a(3)), g)]


@lru_cache(maxsize=None)
def tau1_image(g: int) -> SpanResult:
    if g < 3:
        raise GenusTooSmall("the tau_1 image span needs g >= 3")
    return sp_span_closure(tau1_seeds(g))


def tau1_image_span(g: int) -> int:
    return tau1_image(g).dimension


def tau2_seeds(g: int) -> List[MultiVector]:
    return [tau2_septwist(SepTwistGenus(h, g)).value for h in range(1, g + 1)]


@lru_cache(maxsize=None)
def tau2_image(g: int) -> SpanResult:
    if g < 4:
        raise GenusTooSmall("the tau_2 image span needs g >= 4")
    return sp_span_closure(tau2_seeds(g))


def tau2_image_span(g: int) -> int:
    return tau2_image(g).dimension


# ----------------------------------------------------------- abelian cycles


def abelian_cycle(f: GeneratorSpec, h: GeneratorSpec) -> MultiVector:
    return wedge_pair(tau1(f).value, tau1(h).value)


def _sip(g, i, j, k) -> SIP:
    return SIP(hvec(g, {a(i): 1}), hvec(g, {a(j): 1}), hvec(g, {a(k): 1}))


def _bp(g, x: int, handles: Sequence[int]) -> BoundingPair:
    return BoundingPair(
        hvec(g, {a(x): 1}), tuple((hvec(g, {a(i): 1}), hvec(g, {b(i): 1})) for i in handles)
    )


def cup_claims(g: int) -> List[Tuple[str, List[MultiVector]]]:
    """Abelian cycles realizing each irreducible factor, with the factor they realize."""
    rest = lambda *skip: [i for i in range(1, g + 1) if i not in skip]
    return [
        ("2^2,1^2", [abelian_cycle(_sip(g, 1, 2, 3), _sip(g, 1, 2, 4))]),
        ("2,1^2", [abelian_cycle(_sip(g, 1, 2, 3), _bp(g, 1, rest(1)))]),
        ("1^6", [abelian_cycle(_sip(g, 1, 2, 3), _sip(g, 4, 5, 6))]),
        (
            "1^4",
            [
                abelian_cycle(_sip(g, 1, 2, 3), _bp(g, 4, rest(4))),
                abelian_cycle(_sip(g, 1, 2, 3), _bp(g, 4, [5])),
            ],
        ),
        (
            "1^2",
            [
                abelian_cycle(_bp(g, 1, rest(1)), _bp(g, 2, [3])),
                abelian_cycle(_bp(g, 1, [4]), _bp(g, 2, [3])),
            ],
        ),
    ]


def cup_seeds(g: int) -> List[MultiVector]:
    return [v for _, vs in cup_claims(g) for v in vs]


@lru_cache(maxsize=None)
def cup_image(g: int) -> SpanResult:
    if g < 6:
        raise GenusTooSmall("the cup-product image computation needs g >= 6")
    return sp_span_closure(cup_seeds(g))


def cup_image_boundary(g: int) -> Decomposition:
    return cup_image(g).decomposition()


@lru_cache(maxsize=None)
def _closed_dims(g: int) -> Tuple[Dict, Dict]:
    """Dominant weight dimensions of p(image) and of the kernel of p on the image."""
    span = cup_image(g)
    image, kern = {}, {}
    for mu, eb in span.spaces.items():
        rows = EchelonBasis()
        for r in eb.rows.values():
            rows.add(wedge2_p(MultiVector(span.shape, g, r)).coeffs)
        if rows.rank:
            image[mu] = rows.rank
        if eb.rank - rows.rank:
            kern[mu] = eb.rank - rows.rank
    return image, kern


def cup_image_closed(g: int) -> Decomposition:
    """Image of the boundary cup-product image in wedge^2((wedge^3 H)/H)."""
    image, _ = _closed_dims(g)
    return decompose(FormalCharacter.from_dominant(Sp(g), image))


def cup_image_closed_kernel(g: int) -> Decomposition:
    _, kern = _closed_dims(g)
    return decompose(FormalCharacter.from_dominant(Sp(g), kern))


def wedge2_wedge3(g: int) -> Decomposition:
    return decompose(wedge_power(wedge_power(std_char(Sp(g)), 3), 2))


def morita_core(h: int) -> int:
    if h < 0:
        raise ValueError("genus must be nonnegative")
    return 4 * h * (h - 1)


def random_spec(rng, g: int) -> GeneratorSpec:
    """A standard bounding pair, SIP or separating twist moved by a random word in the generators."""
    kind = rng.choice(("bp", "sip", "sep"))
    if kind == "bp":
        x = rng.randint(1, g)
        others = [i for i in range(1, g + 1) if i != x]
        handles = rng.sample(others, rng.randint(1, len(others)))
        spec = _bp(g, x, sorted(handles))
    elif kind == "sip":
        spec = _sip(g, *rng.sample(range(1, g + 1), 3))
    else:
        spec = SepTwistGenus(rng.randint(1, g), g)
    gens = all_generators(g)
    for _ in range(rng.randint(0, 6)):
        spec = spec.transform(rng.choice(gens))
    return spec


def random_johnson_values(seed: int, count: int = 100, genera: Sequence[int] = (3, 4, 5)) -> List[Tuple[GeneratorSpec, JohnsonValue]]:
    """tau_1 values of bounding pairs and SIPs, tau_2 values of separating twists."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = rng.choice(list(genera))
        spec = random_spec(rng, g)
        value = tau2_septwist(spec) if isinstance(spec, SepTwist) else tau1(spec)
        out.append((spec, value))
    return out
