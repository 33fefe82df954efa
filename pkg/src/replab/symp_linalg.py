"""Exact multilinear algebra on spaces built from H = Q^{2g}.

H has the symplectic basis a_1, b_1, ..., a_g, b_g, stored as integer
indices in the order a_1 < b_1 < a_2 < b_2 < ...  (a_k is 2k-2, b_k is
2k-1).  The same machinery serves SL_n with the basis e_1..e_n.

A MultiVector is a finitely supported rational vector in a tensor shape:
H, wedge^k, Sym^k, tensor products, and quotients by three named
subspaces.  Linear operators on H (group elements or Lie algebra elements)
act functorially on every shape.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .char_ring import Decomposition, FormalCharacter, decompose
from .linalg import EchelonBasis
from .rep_core import SL, Sp, GroupFamily, Weight, all_roots, orbit_size, weyl_orbit

Index = Hashable
Coeffs = Dict[Index, Fraction]

SP = "Sp"
SLF = "SL"


class ShapeMismatch(ValueError):
    pass


class NotSymplecticSet(ValueError):
    pass


class ZeroVector(ValueError):
    pass


# ------------------------------------------------------------------ basis


def a(i: int) -> int:
    """Index of a_i (1-based)."""
    return 2 * (i - 1)


def b(i: int) -> int:
    """Index of b_i (1-based)."""
    return 2 * (i - 1) + 1


def basis_label(idx: int, family: str = SP) -> str:
    if family == SLF:
        return f"e{idx + 1}"
    return ("a" if idx % 2 == 0 else "b") + str(idx // 2 + 1)


def omega_basis(i: int, j: int) -> int:
    """omega(e_i, e_j) on basis indices."""
    if i // 2 != j // 2 or i == j:
        return 0
    return 1 if i % 2 == 0 else -1


def std_weight(idx: int, n: int, family: str = SP) -> Weight:
    if family == SLF:
        return tuple(1 if k == idx else 0 for k in range(n))
    k = idx // 2
    s = 1 if idx % 2 == 0 else -1
    return tuple(s if j == k else 0 for j in range(n))


def _std_dim(g: int, family: str) -> int:
    return 2 * g if family == SP else g


# ----------------------------------------------------------------- shapes


class Shape:
    """Base class for tensor shapes over H."""

    def text(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.text()


@dataclass(frozen=True)
class Std(Shape):
    def text(self):
        return "H"


@dataclass(frozen=True)
class Wedge(Shape):
    k: int
    inner: Shape

    def text(self):
        return f"wedge({self.k}, {self.inner.text()})"


@dataclass(frozen=True)
class Sym(Shape):
    k: int
    inner: Shape

    def text(self):
        return f"sym({self.k}, {self.inner.text()})"


@dataclass(frozen=True)
class Tensor(Shape):
    factors: Tuple[Shape, ...]

    def __post_init__(self):
        flat: List[Shape] = []
        for f in self.factors:
            if isinstance(f, Tensor):
                flat.extend(f.factors)
            else:
                flat.append(f)
        object.__setattr__(self, "factors", tuple(flat))

    def text(self):
        out = self.factors[-1].text()
        for f in reversed(self.factors[:-1]):
            out = f"tensor({f.text()}, {out})"
        return out


EMBEDDINGS = ("H-in-wedge3", "wedge4-in-sym2wedge2", "HxWedge3-in-HHxWedge2")


@dataclass(frozen=True)
class Quot(Shape):
    inner: Shape
    embed: str

    def __post_init__(self):
        if self.embed not in EMBEDDINGS:
            raise ShapeMismatch(f"unknown embedding {self.embed!r}")
        if self.inner != _EMBED_AMBIENT[self.embed]:
            raise ShapeMismatch(
                f"{self.embed} embeds into {_EMBED_AMBIENT[self.embed].text()}, not {self.inner.text()}"
            )

    def text(self):
        return f"quot({self.inner.text()}, {self.embed})"


H = Std()
WEDGE2 = Wedge(2, H)
WEDGE3 = Wedge(3, H)

_EMBED_AMBIENT = {
    "H-in-wedge3": WEDGE3,
    "wedge4-in-sym2wedge2": Sym(2, WEDGE2),
    "HxWedge3-in-HHxWedge2": Tensor((H, H, WEDGE2)),
}


def ext_shape(k: int) -> Shape:
    return H if k == 1 else Wedge(k, H)


def ext_degree(shape: Shape) -> int:
    if shape == H:
        return 1
    if isinstance(shape, Wedge) and shape.inner == H:
        return shape.k
    raise ShapeMismatch(f"{shape.text()} is not an exterior power of H")


def _ext_tuple(shape: Shape, idx) -> Tuple[int, ...]:
    return (idx,) if shape == H else idx


def shape_degree(shape: Shape) -> int:
    if isinstance(shape, Std):
        return 1
    if isinstance(shape, (Wedge, Sym)):
        return shape.k * shape_degree(shape.inner)
    if isinstance(shape, Tensor):
        return sum(shape_degree(f) for f in shape.factors)
    if isinstance(shape, Quot):
        return shape_degree(shape.inner)
    raise TypeError(shape)


@lru_cache(maxsize=None)
def basis(shape: Shape, g: int, family: str = SP) -> Tuple[Index, ...]:
    """Sorted basis indices of the shape."""
    if isinstance(shape, Std):
        return tuple(range(_std_dim(g, family)))
    if isinstance(shape, Wedge):
        return tuple(itertools.combinations(basis(shape.inner, g, family), shape.k))
    if isinstance(shape, Sym):
        return tuple(itertools.combinations_with_replacement(basis(shape.inner, g, family), shape.k))
    if isinstance(shape, Tensor):
        return tuple(itertools.product(*(basis(f, g, family) for f in shape.factors)))
    if isinstance(shape, Quot):
        piv = quotient_rows(shape, g, family)
        return tuple(i for i in basis(shape.inner, g, family) if i not in piv)
    raise TypeError(shape)


def dimension(shape: Shape, g: int, family: str = SP) -> int:
    return len(basis(shape, g, family))


_WEIGHT_CACHE: Dict[Tuple, Weight] = {}


def index_weight(shape: Shape, idx: Index, g: int, family: str = SP) -> Weight:
    key = (shape, idx, g, family)
    w = _WEIGHT_CACHE.get(key)
    if w is not None:
        return w
    if isinstance(shape, Std):
        w = std_weight(idx, g, family)
    elif isinstance(shape, (Wedge, Sym)):
        w = _sum_weights(index_weight(shape.inner, i, g, family) for i in idx)
        if not idx:
            w = (0,) * g
    elif isinstance(shape, Tensor):
        w = _sum_weights(index_weight(f, i, g, family) for f, i in zip(shape.factors, idx))
    elif isinstance(shape, Quot):
        w = index_weight(shape.inner, idx, g, family)
    else:
        raise TypeError(shape)
    _WEIGHT_CACHE[key] = w
    return w


def _sum_weights(ws: Iterable[Weight]) -> Weight:
    out = None
    for w in ws:
        out = w if out is None else tuple(x + y for x, y in zip(out, w))
    return out


def _sort_sign(items: Sequence) -> Tuple[Optional[Tuple], int]:
    """Sorted tuple and sign of the sorting permutation; None on a repeat."""
    lst = list(items)
    sign = 1
    n = len(lst)
    for i in range(1, n):
        x = lst[i]
        j = i - 1
        while j >= 0 and lst[j] > x:
            lst[j + 1] = lst[j]
            j -= 1
            sign = -sign
        if j >= 0 and lst[j] == x:
            return None, 0
        lst[j + 1] = x
    return tuple(lst), sign


def _add_into(out: Dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


# ------------------------------------------------------------- operators


class LinearOp:
    """A linear endomorphism of H, acting on shapes as a group element or a derivation.

    images maps a basis index to its image {index: coeff}.  For group
    elements a missing index is fixed; for derivations it is sent to zero.
    """

    def __init__(self, name: str, images: Mapping[int, Mapping[int, int]], derivation: bool = False):
        self.name = name
        self.images = {i: dict(v) for i, v in images.items()}
        self.derivation = derivation
        self._cache: Dict[Tuple, Dict] = {}

    def on_std(self, i: int) -> Dict[int, int]:
        img = self.images.get(i)
        if img is None:
            return {} if self.derivation else {i: 1}
        return img

    def __repr__(self):
        kind = "derivation" if self.derivation else "group"
        return f"LinearOp({self.name}, {kind})"

    def act(self, shape: Shape, idx: Index, g: int, family: str) -> Dict:
        key = (shape, idx)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = self._act(shape, idx, g, family)
        self._cache[key] = out
        return out

    def _act(self, shape: Shape, idx: Index, g: int, family: str) -> Dict:
        if isinstance(shape, Std):
            return dict(self.on_std(idx))
        if isinstance(shape, Quot):
            v = self.act(shape.inner, idx, g, family)
            return quotient_reduce(shape, v, g, family)
        if isinstance(shape, Tensor):
            parts = [self.act(f, i, g, family) for f, i in zip(shape.factors, idx)]
            if self.derivation:
                out: Dict = {}
                for pos, img in enumerate(parts):
                    for j, c in img.items():
                        _add_into(out, idx[:pos] + (j,) + idx[pos + 1:], c)
                return out
            return _product_expand(parts, lambda t: (t, 1))
        if isinstance(shape, (Wedge, Sym)):
            alternating = isinstance(shape, Wedge)
            parts = [self.act(shape.inner, i, g, family) for i in idx]

            def canon(t):
                if alternating:
                    return _sort_sign(t)
                return tuple(sorted(t)), 1

            if self.derivation:
                out = {}
                for pos, img in enumerate(parts):
                    for j, c in img.items():
                        key, s = canon(idx[:pos] + (j,) + idx[pos + 1:])
                        if key is not None:
                            _add_into(out, key, s * c)
                return out
            return _product_expand(parts, canon)
        raise TypeError(shape)


def _product_expand(parts: List[Dict], canon: Callable) -> Dict:
    out: Dict = {}
    for combo in itertools.product(*(list(p.items()) for p in parts)):
        key, s = canon(tuple(j for j, _ in combo))
        if key is None:
            continue
        c = s
        for _, x in combo:
            c *= x
        _add_into(out, key, c)
    return out


def compose_images(first: Mapping[int, Mapping[int, int]], second: Mapping[int, Mapping[int, int]], n: int):
    """Images of (second after first) for group-type operators on H."""
    out = {}
    for i in range(n):
        img = first.get(i, {i: 1})
        res: Dict[int, int] = {}
        for j, c in img.items():
            for k, d in second.get(j, {j: 1}).items():
                _add_into(res, k, c * d)
        if res != {i: 1}:
            out[i] = res
    return out


# ------------------------------------------------------------ MultiVector


class MultiVector:
    """Exact rational vector in a shape over H (or k^n for SL)."""

    __slots__ = ("shape", "g", "family", "coeffs")

    def __init__(self, shape: Shape, g: int, coeffs: Mapping[Index, object] = (), family: str = SP):
        self.shape = shape
        self.g = g
        self.family = family
        self.coeffs: Coeffs = {}
        for k, c in dict(coeffs).items():
            c = Fraction(c)
            if c:
                self.coeffs[k] = self.coeffs.get(k, 0) + c
        self.coeffs = {k: c for k, c in self.coeffs.items() if c}

    @classmethod
    def _raw(cls, shape, g, coeffs, family=SP) -> "MultiVector":
        obj = cls.__new__(cls)
        obj.shape = shape
        obj.g = g
        obj.family = family
        obj.coeffs = {k: Fraction(c) for k, c in coeffs.items() if c}
        return obj

    def _same_space(self, other: "MultiVector"):
        if (self.shape, self.g, self.family) != (other.shape, other.g, other.family):
            raise ShapeMismatch(f"{self.shape.text()} (g={self.g}) vs {other.shape.text()} (g={other.g})")

    def __add__(self, other: "MultiVector") -> "MultiVector":
        self._same_space(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _add_into(out, k, c)
        return MultiVector._raw(self.shape, self.g, out, self.family)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return MultiVector._raw(self.shape, self.g, {k: c * x for k, x in self.coeffs.items()}, self.family)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.shape, self.g, self.family, self.coeffs) == (other.shape, other.g, other.family, other.coeffs)

    def __hash__(self):
        return hash((self.shape, self.g, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def weight_components(self) -> Dict[Weight, "MultiVector"]:
        parts: Dict[Weight, Dict] = {}
        for k, c in self.coeffs.items():
            parts.setdefault(index_weight(self.shape, k, self.g, self.family), {})[k] = c
        return {w: MultiVector._raw(self.shape, self.g, v, self.family) for w, v in parts.items()}

    def weight(self) -> Optional[Weight]:
        """The common weight of all terms, or None if the vector is not a weight vector."""
        ws = {index_weight(self.shape, k, self.g, self.family) for k in self.coeffs}
        return ws.pop() if len(ws) == 1 else None

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            terms.append(f"{c}*{index_text(self.shape, k, self.family)}")
        return " + ".join(terms)

    def __repr__(self):
        return f"MultiVector({self.shape.text()}, g={self.g}: {self.text()})"

    def to_json_obj(self) -> dict:
        def jsonable(i):
            return [jsonable(x) for x in i] if isinstance(i, tuple) else i

        return {
            "schema": "replab/1",
            "shape": self.shape.text(),
            "g": self.g,
            "entries": [
                {"index": jsonable(k), "coeff": f"{c.numerator}/{c.denominator}"}
                for k, c in sorted(self.coeffs.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def index_text(shape: Shape, idx, family: str = SP) -> str:
    if isinstance(shape, Std):
        return basis_label(idx, family)
    if isinstance(shape, Wedge):
        inner = [index_text(shape.inner, i, family) for i in idx]
        if shape.inner == H:
            return "^".join(inner) if inner else "1"
        return "(" + ")^(".join(inner) + ")"
    if isinstance(shape, Sym):
        return ".".join("(" + index_text(shape.inner, i, family) + ")" for i in idx)
    if isinstance(shape, Tensor):
        return "(x)".join(
            index_text(f, i, family) if isinstance(f, Std) else "(" + index_text(f, i, family) + ")"
            for f, i in zip(shape.factors, idx)
        )
    if isinstance(shape, Quot):
        return "[" + index_text(shape.inner, idx, family) + "]"
    raise TypeError(shape)


# ------------------------------------------------------------ constructors


def hvec(g: int, terms: Mapping[int, object], family: str = SP) -> MultiVector:
    return MultiVector(H, g, terms, family)


def av(i: int, g: int) -> MultiVector:
    return hvec(g, {a(i): 1})


def bv(i: int, g: int) -> MultiVector:
    return hvec(g, {b(i): 1})


def parse_basis_name(name: str, g: int) -> MultiVector:
    name = name.strip()
    if name[0] in "ab" and name[1:].isdigit():
        i = int(name[1:])
        if not 1 <= i <= g:
            raise ValueError(f"{name} out of range for g={g}")
        return av(i, g) if name[0] == "a" else bv(i, g)
    raise ValueError(f"cannot parse basis vector {name!r}")


def ext(*vs: MultiVector) -> MultiVector:
    """Exterior product inside the exterior algebra of H."""
    if not vs:
        raise ValueError("need at least one factor")
    g = vs[0].g
    family = vs[0].family
    degrees = [ext_degree(v.shape) for v in vs]
    total = sum(degrees)
    out: Dict = {}
    acc = {(): Fraction(1)}
    for v in vs:
        nxt: Dict = {}
        for left, c in acc.items():
            for k, d in v.coeffs.items():
                key, s = _sort_sign(left + _ext_tuple(v.shape, k))
                if key is not None:
                    _add_into(nxt, key, s * c * d)
        acc = nxt
    shape = ext_shape(total)
    for key, c in acc.items():
        out[key[0] if total == 1 else key] = c
    return MultiVector._raw(shape, g, out, family)


def wedge_pair(x: MultiVector, y: MultiVector) -> MultiVector:
    """x ^ y in wedge^2 of the common shape of x and y."""
    x._same_space(y)
    out: Dict = {}
    for i, c in x.coeffs.items():
        for j, d in y.coeffs.items():
            if i == j:
                continue
            if i < j:
                _add_into(out, (i, j), c * d)
            else:
                _add_into(out, (j, i), -c * d)
    return MultiVector._raw(Wedge(2, x.shape), x.g, out, x.family)


def sym_pair(x: MultiVector, y: MultiVector) -> MultiVector:
    x._same_space(y)
    out: Dict = {}
    for i, c in x.coeffs.items():
        for j, d in y.coeffs.items():
            _add_into(out, (i, j) if i <= j else (j, i), c * d)
    return MultiVector._raw(Sym(2, x.shape), x.g, out, x.family)


def tensor_vec(*vs: MultiVector) -> MultiVector:
    g = vs[0].g
    shape = Tensor(tuple(v.shape for v in vs))
    out: Dict = {}
    for combo in itertools.product(*(list(v.coeffs.items()) for v in vs)):
        key = []
        c = Fraction(1)
        for v, (k, x) in zip(vs, combo):
            if isinstance(v.shape, Tensor):
                key.extend(k)
            else:
                key.append(k)
            c *= x
        _add_into(out, tuple(key), c)
    return MultiVector._raw(shape, g, out, vs[0].family)


def omega(g: int) -> MultiVector:
    return omega_of([(a(i), b(i)) for i in range(1, g + 1)], g)


def _as_hvec(x, g: int) -> MultiVector:
    if isinstance(x, MultiVector):
        if x.shape != H:
            raise ShapeMismatch("expected a vector of H")
        return x
    if isinstance(x, str):
        return parse_basis_name(x, g)
    return hvec(g, {x: 1})


def form(x: MultiVector, y: MultiVector) -> Fraction:
    """omega(x, y) for x, y in H."""
    total = Fraction(0)
    for i, c in x.coeffs.items():
        for j, d in y.coeffs.items():
            w = omega_basis(i, j)
            if w:
                total += w * c * d
    return total


def check_symplectic_set(pairs: Sequence[Tuple[MultiVector, MultiVector]]):
    vecs = [v for p in pairs for v in p]
    for s, (u, v) in enumerate(pairs):
        if form(u, v) != 1:
            raise NotSymplecticSet(f"omega(u_{s + 1}, v_{s + 1}) = {form(u, v)}, expected 1")
        for t, (u2, v2) in enumerate(pairs):
            if t == s:
                continue
            for x in (u, v):
                for y in (u2, v2):
                    if form(x, y) != 0:
                        raise NotSymplecticSet("vectors from different pairs must be orthogonal")
    return vecs


def omega_of(pairs: Sequence, g: int) -> MultiVector:
    """omega_V = u_1 ^ v_1 + ... for a symplectic list of pairs."""
    vpairs = [(_as_hvec(u, g), _as_hvec(v, g)) for u, v in pairs]
    check_symplectic_set(vpairs)
    out = MultiVector(WEDGE2, g)
    for u, v in vpairs:
        out = out + ext(u, v)
    return out


# -------------------------------------------------------------- quotients


_QUOT_CACHE: Dict[Tuple, Dict] = {}


def embedding_images(embed: str, g: int, family: str = SP) -> List[MultiVector]:
    """Images of the basis of the embedded subspace."""
    if family != SP:
        raise ShapeMismatch("the named embeddings use the symplectic form")
    if embed == "H-in-wedge3":
        w = omega(g)
        return [ext(hvec(g, {i: 1}), w) for i in range(2 * g)]
    if embed == "wedge4-in-sym2wedge2":
        out = []
        for h1, h2, h3, h4 in itertools.combinations(range(2 * g), 4):
            e = [hvec(g, {i: 1}) for i in (h1, h2, h3, h4)]
            v = (
                sym_pair(ext(e[0], e[1]), ext(e[2], e[3]))
                - sym_pair(ext(e[0], e[2]), ext(e[1], e[3]))
                + sym_pair(ext(e[0], e[3]), ext(e[1], e[2]))
            )
            out.append(v)
        return out
    if embed == "HxWedge3-in-HHxWedge2":
        out = []
        for x in range(2 * g):
            xv = hvec(g, {x: 1})
            for trip in itertools.combinations(range(2 * g), 3):
                out.append(tensor_vec(xv, wedge3_to_tensor(hvec_ext(trip, g))))
        return out
    raise ShapeMismatch(f"unknown embedding {embed!r}")


def hvec_ext(idx: Tuple[int, ...], g: int) -> MultiVector:
    return MultiVector._raw(ext_shape(len(idx)), g, {idx if len(idx) > 1 else idx[0]: 1})


def quotient_rows(shape: Quot, g: int, family: str = SP) -> Dict[Index, Dict]:
    """Reduced echelon rows (pivot coefficient 1) spanning the embedded subspace."""
    key = (shape, g, family)
    rows = _QUOT_CACHE.get(key)
    if rows is None:
        eb = EchelonBasis(v.coeffs for v in embedding_images(shape.embed, g, family))
        rows = {}
        for r in eb.canonical_rows():
            rows[min(r)] = r
        _QUOT_CACHE[key] = rows
    return rows


def quotient_reduce(shape: Quot, v: Mapping, g: int, family: str = SP) -> Dict:
    rows = quotient_rows(shape, g, family)
    out = dict(v)
    for p in [k for k in v if k in rows]:
        c = out.pop(p, 0)
        if not c:
            continue
        for k, x in rows[p].items():
            if k != p:
                _add_into(out, k, -c * x)
    return out


def to_quotient(v: MultiVector, embed: str) -> MultiVector:
    shape = Quot(v.shape, embed)
    return MultiVector._raw(shape, v.g, quotient_reduce(shape, v.coeffs, v.g, v.family), v.family)


def lift(v: MultiVector) -> MultiVector:
    """Canonical representative of a quotient class in the ambient shape."""
    if not isinstance(v.shape, Quot):
        raise ShapeMismatch("lift needs a quotient shape")
    return MultiVector._raw(v.shape.inner, v.g, v.coeffs, v.family)


def wedge3_to_tensor(v: MultiVector) -> MultiVector:
    """wedge^3 H -> H (x) wedge^2 H, h1^h2^h3 -> h1(x)(h2^h3) - h2(x)(h1^h3) + h3(x)(h1^h2)."""
    if v.shape != WEDGE3:
        raise ShapeMismatch("expected wedge^3 H")
    out: Dict = {}
    for (i, j, k), c in v.coeffs.items():
        _add_into(out, (i, (j, k)), c)
        _add_into(out, (j, (i, k)), -c)
        _add_into(out, (k, (i, j)), c)
    return MultiVector._raw(Tensor((H, WEDGE2)), v.g, out, v.family)


def wedge2_to_tensor(v: MultiVector) -> MultiVector:
    """wedge^2 H -> H (x) H, u^v -> u(x)v - v(x)u."""
    if v.shape != WEDGE2:
        raise ShapeMismatch("expected wedge^2 H")
    out: Dict = {}
    for (i, j), c in v.coeffs.items():
        _add_into(out, (i, j), c)
        _add_into(out, (j, i), -c)
    return MultiVector._raw(Tensor((H, H)), v.g, out, v.family)


# ------------------------------------------------------ contractions, maps


def q_k(v: MultiVector) -> MultiVector:
    """Signed double contraction wedge^{k+2} H -> wedge^k H.

    h_1^...^h_{k+2} -> sum_{i<j} (-1)^{i+j+1} omega(h_i, h_j) h_1^..^h_{k+2}
    with h_i and h_j removed (positions counted from 1).
    """
    m = ext_degree(v.shape)
    if m < 2:
        raise ShapeMismatch("q_k needs wedge^{k+2} H with k >= 0")
    k = m - 2
    out: Dict = {}
    for idx, c in v.coeffs.items():
        for i in range(m):
            for j in range(i + 1, m):
                w = omega_basis(idx[i], idx[j])
                if not w:
                    continue
                sign = 1 if (i + j) % 2 == 0 else -1  # (-1)^{(i+1)+(j+1)+1}
                sign = -sign
                rest = idx[:i] + idx[i + 1:j] + idx[j + 1:]
                key = rest[0] if k == 1 else rest
                _add_into(out, key, sign * w * c)
    return MultiVector._raw(ext_shape(k) if k else Wedge(0, H), v.g, out, v.family)


def omega_power_wedge(k: int, d: int, g: int) -> MultiVector:
    """a_1 ^ ... ^ a_{k-2d} ^ omega ^ ... ^ omega (d copies of omega) in wedge^k H."""
    m = k - 2 * d
    if d < 0 or m < 0 or m > g:
        raise ValueError("need 0 <= 2d <= k and k - 2d <= g")
    factors = [av(i, g) for i in range(1, m + 1)] + [omega(g)] * d
    if not factors:
        return MultiVector(Wedge(0, H), g, {(): 1})
    return ext(*factors)


def contraction_scalar(k: int, d: int, g: int) -> int:
    """c with q_k(omega_power_wedge(k+2, d+1, g)) = c * omega_power_wedge(k, d, g).

    Contracting one omega out of omega^(d+1) leaves d+1 terms; each sees the
    g - (k - 2d) - d handles not already used by an a_i or by another omega.
    """
    return (d + 1) * (g - k + d)


def iota(h: MultiVector) -> MultiVector:
    return ext(h, omega(h.g))


def proj_p(v: MultiVector) -> MultiVector:
    if v.shape != WEDGE3:
        raise ShapeMismatch("expected wedge^3 H")
    return to_quotient(v, "H-in-wedge3")


def section_sigma(kappa: MultiVector) -> MultiVector:
    """The element of ker(q_1) projecting to kappa."""
    g = kappa.g
    if g < 2:
        raise ValueError("the section needs g >= 2")
    if kappa.shape != Quot(WEDGE3, "H-in-wedge3"):
        raise ShapeMismatch("expected (wedge^3 H)/H")
    rep = lift(kappa)
    return rep - ext(q_k(rep), omega(g)) * Fraction(1, g - 1)


def induced_wedge2(f: Callable[[MultiVector], MultiVector], v: MultiVector, source: Shape) -> MultiVector:
    """wedge^2 f applied to v in wedge^2(source)."""
    if v.shape != Wedge(2, source):
        raise ShapeMismatch(f"expected wedge(2, {source.text()})")
    cache: Dict = {}

    def img(i):
        if i not in cache:
            cache[i] = f(MultiVector._raw(source, v.g, {i: 1}, v.family))
        return cache[i]

    out = None
    for (i, j), c in v.coeffs.items():
        term = wedge_pair(img(i), img(j)) * c
        out = term if out is None else out + term
    if out is None:
        probe = f(MultiVector._raw(source, v.g, {basis(source, v.g)[0]: 1}, v.family))
        return MultiVector(Wedge(2, probe.shape), v.g, {}, v.family)
    return out


def phi(v: MultiVector) -> MultiVector:
    """wedge^2 wedge^3 H -> wedge^6 H, (x)^(y) -> x^y."""
    if v.shape != Wedge(2, WEDGE3):
        raise ShapeMismatch("expected wedge(2, wedge(3, H))")
    out: Dict = {}
    for (i, j), c in v.coeffs.items():
        key, s = _sort_sign(i + j)
        if key is not None:
            _add_into(out, key, s * c)
    return MultiVector._raw(Wedge(6, H), v.g, out, v.family)


def q3(v: MultiVector) -> MultiVector:
    """wedge^3 H -> H, h1^h2^h3 -> w(h1,h2)h3 - w(h1,h3)h2 + w(h2,h3)h1."""
    if v.shape != WEDGE3:
        raise ShapeMismatch("expected wedge^3 H")
    out: Dict = {}
    for (i, j, k), c in v.coeffs.items():
        for x, y, z, s in ((i, j, k, 1), (i, k, j, -1), (j, k, i, 1)):
            w = omega_basis(x, y)
            if w:
                _add_into(out, z, s * w * c)
    return MultiVector._raw(H, v.g, out, v.family)


def psi(v: MultiVector) -> MultiVector:
    """wedge^2 of q3: wedge^2 wedge^3 H -> wedge^2 H."""
    return induced_wedge2(q3, v, WEDGE3)


def wedge2_sigma(v: MultiVector) -> MultiVector:
    return induced_wedge2(section_sigma, v, Quot(WEDGE3, "H-in-wedge3"))


def wedge2_p(v: MultiVector) -> MultiVector:
    return induced_wedge2(proj_p, v, WEDGE3)


def _certify_input(pair1: Sequence[int], pair2: Sequence[int], g: int) -> MultiVector:
    x = proj_p(hvec_ext(tuple(pair1), g))
    y = proj_p(hvec_ext(tuple(pair2), g))
    return wedge_pair(x, y)


def certify1(g: int) -> MultiVector:
    """q_4 . phi . wedge^2(sigma) on (1-g)[(a1^a2^a3)^(a4^a5^b5)]."""
    if g < 6:
        raise ValueError("certify1 needs g >= 6")
    cls = _certify_input((a(1), a(2), a(3)), (a(4), a(5), b(5)), g) * (1 - g)
    return q_k(phi(wedge2_sigma(cls)))


def certify2(g: int) -> MultiVector:
    """q_2 . q_4 . phi . wedge^2(sigma) on (1-g)^2[(a1^a4^b4)^(a2^a3^b3)]."""
    if g < 6:
        raise ValueError("certify2 needs g >= 6")
    cls = _certify_input((a(1), a(4), b(4)), (a(2), a(3), b(3)), g) * ((1 - g) ** 2)
    return q_k(q_k(phi(wedge2_sigma(cls))))


# ------------------------------------------------------ group generators


_GEN_KINDS = ("X", "Y", "Z", "lower_X", "lower_Y", "lower_Z", "E", "lower_E")


@dataclass(frozen=True)
class GroupGenerator:
    kind: str
    i: int
    j: int
    g: int

    def __post_init__(self):
        if self.kind not in _GEN_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        base = self.kind.replace("lower_", "")
        if base == "Y":
            if not 1 <= self.i <= self.g:
                raise ValueError("index out of range")
        elif base == "E":
            if not (1 <= self.i <= self.g and 1 <= self.j <= self.g and self.i != self.j):
                raise ValueError("SL generator indices out of range")
        else:
            if not 1 <= self.i < self.j <= self.g:
                raise ValueError("generator needs 1 <= i < j <= g")

    @property
    def family(self) -> str:
        return SLF if self.kind.endswith("E") else SP

    @property
    def name(self) -> str:
        if self.kind.endswith("Y"):
            return f"{self.kind}_{self.i}"
        return f"{self.kind}_{self.i}{self.j}"

    def images(self) -> Dict[int, Dict[int, int]]:
        return _generator_images(self.kind, self.i, self.j, self.g)

    def op(self) -> LinearOp:
        return _generator_op(self)

    def matrix(self) -> List[List[int]]:
        n = _std_dim(self.g, self.family)
        imgs = self.images()
        m = [[0] * n for _ in range(n)]
        for col in range(n):
            for row, c in imgs.get(col, {col: 1}).items():
                m[row][col] = c
        return m

    def is_symplectic(self) -> bool:
        return is_symplectic_matrix(self.matrix())


@lru_cache(maxsize=None)
def _generator_op(gen: GroupGenerator) -> LinearOp:
    return LinearOp(gen.name, gen.images())


def _swap_images(g: int):
    """a_i -> -b_i, b_i -> a_i, and its inverse."""
    s, sinv = {}, {}
    for i in range(1, g + 1):
        s[a(i)] = {b(i): -1}
        s[b(i)] = {a(i): 1}
        sinv[a(i)] = {b(i): 1}
        sinv[b(i)] = {a(i): -1}
    return s, sinv


def _generator_images(kind: str, i: int, j: int, g: int) -> Dict[int, Dict[int, int]]:
    if kind == "X":
        return {a(j): {a(j): 1, a(i): 1}, b(i): {b(i): 1, b(j): -1}}
    if kind == "Y":
        return {b(i): {b(i): 1, a(i): 1}}
    if kind == "Z":
        return {b(i): {b(i): 1, a(j): 1}, b(j): {b(j): 1, a(i): 1}}
    if kind == "E":
        return {j - 1: {j - 1: 1, i - 1: 1}}
    if kind == "lower_E":
        return {i - 1: {i - 1: 1, j - 1: 1}}
    base = _generator_images(kind.replace("lower_", ""), i, j, g)
    s, sinv = _swap_images(g)
    n = 2 * g
    return compose_images(compose_images(sinv, base, n), s, n)


def upper_generators(g: int, family: str = SP) -> List[GroupGenerator]:
    if family == SLF:
        return [GroupGenerator("E", i, j, g) for i in range(1, g + 1) for j in range(i + 1, g + 1)]
    gens = []
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            gens.append(GroupGenerator("X", i, j, g))
            gens.append(GroupGenerator("Z", i, j, g))
        gens.append(GroupGenerator("Y", i, 0, g))
    return gens


def all_generators(g: int, family: str = SP) -> List[GroupGenerator]:
    ups = upper_generators(g, family)
    return ups + [GroupGenerator("lower_" + x.kind, x.i, x.j, x.g) for x in ups]


def symplectic_form_matrix(g: int) -> List[List[int]]:
    n = 2 * g
    return [[omega_basis(r, c) for c in range(n)] for r in range(n)]


def is_symplectic_matrix(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    J = symplectic_form_matrix(n // 2)
    # (M^t J M)_{rc} = sum_{p,q} M_{pr} J_{pq} M_{qc}
    for r in range(n):
        for c in range(n):
            s = 0
            for p in range(n):
                if not m[p][r]:
                    continue
                for q in range(n):
                    if J[p][q] and m[q][c]:
                        s += m[p][r] * J[p][q] * m[q][c]
            if s != J[r][c]:
                return False
    return True


def apply_op(op: LinearOp, v: MultiVector) -> MultiVector:
    out: Dict = {}
    for k, c in v.coeffs.items():
        for j, d in op.act(v.shape, k, v.g, v.family).items():
            _add_into(out, j, c * d)
    return MultiVector._raw(v.shape, v.g, out, v.family)


def apply_generator(gen: GroupGenerator, v: MultiVector) -> MultiVector:
    if gen.g != v.g or gen.family != v.family:
        raise ShapeMismatch("generator and vector live over different groups")
    return apply_op(gen.op(), v)


@dataclass(frozen=True)
class HighestWeightCheck:
    yes: bool
    weight: Optional[Weight] = None

    def __bool__(self):
        return self.yes


def is_highest_weight_vector(v: MultiVector) -> HighestWeightCheck:
    if v.is_zero():
        raise ZeroVector("the zero vector has no weight")
    w = v.weight()
    if w is None:
        return HighestWeightCheck(False)
    for gen in upper_generators(v.g, v.family):
        if apply_generator(gen, v) != v:
            return HighestWeightCheck(False)
    if v.family == SLF:
        last = w[-1]
        w = tuple(c - last for c in w)
    return HighestWeightCheck(True, w)


# ----------------------------------------------- Lie algebra and Weyl group


@lru_cache(maxsize=None)
def root_operator(beta: Weight, g: int) -> LinearOp:
    """A nonzero element of the root space of beta in sp_2g, as a derivation."""
    nz = [(k, c) for k, c in enumerate(beta) if c]
    imgs: Dict[int, Dict[int, int]] = {}
    if len(nz) == 1:
        k, c = nz[0]
        i = k + 1
        if c == 2:
            imgs[b(i)] = {a(i): 1}
        else:
            imgs[a(i)] = {b(i): 1}
    else:
        (k1, c1), (k2, c2) = nz
        i, j = k1 + 1, k2 + 1
        if c1 == 1 and c2 == -1:
            imgs[a(j)] = {a(i): 1}
            imgs[b(i)] = {b(j): -1}
        elif c1 == -1 and c2 == 1:
            imgs[a(i)] = {a(j): 1}
            imgs[b(j)] = {b(i): -1}
        elif c1 == 1 and c2 == 1:
            imgs[b(i)] = {a(j): 1}
            imgs[b(j)] = {a(i): 1}
        else:
            imgs[a(i)] = {b(j): 1}
            imgs[a(j)] = {b(i): 1}
    return LinearOp(f"root{beta}", imgs, derivation=True)


def _pair_perm_images(perm: Sequence[int], flips: Sequence[int], g: int):
    """Signed permutation: pair k goes to pair perm[k]; flipped pairs swap a/b with a sign."""
    imgs = {}
    for k in range(g):
        t = perm[k]
        if flips[k]:
            imgs[a(k + 1)] = {b(t + 1): 1}
            imgs[b(k + 1)] = {a(t + 1): -1}
        else:
            imgs[a(k + 1)] = {a(t + 1): 1}
            imgs[b(k + 1)] = {b(t + 1): 1}
    return {i: v for i, v in imgs.items() if v != {i: 1}}


@lru_cache(maxsize=None)
def fold_to_dominant(w: Weight) -> Tuple[Weight, LinearOp]:
    """A signed permutation in Sp_2g(Z) carrying weight w to its dominant form."""
    g = len(w)
    flips = [1 if c < 0 else 0 for c in w]
    absw = [abs(c) for c in w]
    order = sorted(range(g), key=lambda k: (-absw[k], k))
    perm = [0] * g
    for pos, k in enumerate(order):
        perm[k] = pos
    dom = tuple(absw[k] for k in order)
    return dom, LinearOp(f"fold{w}", _pair_perm_images(perm, flips, g))


@lru_cache(maxsize=None)
def stabilizer_generators(mu: Weight) -> Tuple[LinearOp, ...]:
    """Lifts of the simple reflections fixing a dominant weight."""
    g = len(mu)
    ops = []
    for k in range(g - 1):
        if mu[k] == mu[k + 1]:
            perm = list(range(g))
            perm[k], perm[k + 1] = k + 1, k
            ops.append(LinearOp(f"s{k + 1}", _pair_perm_images(perm, [0] * g, g)))
    if mu[-1] == 0:
        flips = [0] * (g - 1) + [1]
        ops.append(LinearOp(f"s{g}", _pair_perm_images(list(range(g)), flips, g)))
    return tuple(ops)


@lru_cache(maxsize=None)
def root_orbit_representatives(mu: Weight) -> Tuple[Weight, ...]:
    """One root from each orbit of the stabilizer of mu on the roots of C_g."""
    g = len(mu)
    reflections = []
    for k in range(g - 1):
        if mu[k] == mu[k + 1]:
            reflections.append(lambda r, k=k: r[:k] + (r[k + 1], r[k]) + r[k + 2:])
    if mu[-1] == 0:
        reflections.append(lambda r: r[:-1] + (-r[-1],))
    seen = set()
    reps = []
    for root in sorted(all_roots(Sp(g)), reverse=True):
        if root in seen:
            continue
        reps.append(root)
        stack = [root]
        seen.add(root)
        while stack:
            r = stack.pop()
            for s in reflections:
                t = s(r)
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return tuple(reps)


# ------------------------------------------------------------ span closure


@dataclass
class SpanResult:
    """A subrepresentation given by its dominant weight spaces."""

    shape: Shape
    g: int
    spaces: Dict[Weight, EchelonBasis]
    method: str = "folded"
    _full: Optional[EchelonBasis] = field(default=None, repr=False)

    @property
    def dominant_dims(self) -> Dict[Weight, int]:
        return {mu: eb.rank for mu, eb in sorted(self.spaces.items(), reverse=True) if eb.rank}

    @property
    def dimension(self) -> int:
        if self._full is not None:
            return self._full.rank
        return sum(orbit_size(Sp(self.g), mu) * r for mu, r in self.dominant_dims.items())

    def character(self) -> FormalCharacter:
        return FormalCharacter.from_dominant(Sp(self.g), self.dominant_dims)

    def decomposition(self) -> Decomposition:
        return decompose(self.character())

    def contains(self, v: MultiVector) -> bool:
        if self._full is not None:
            return self._full.contains(v.coeffs)
        for w, comp in v.weight_components().items():
            dom, op = fold_to_dominant(w)
            eb = self.spaces.get(dom)
            folded = apply_op(op, comp)
            if eb is None or not eb.contains(folded.coeffs):
                return False
        return True

    def basis_vectors(self) -> List[MultiVector]:
        """Reduced echelon basis of the whole subspace (pivot entries 1)."""
        eb = self.full_echelon()
        return [MultiVector._raw(self.shape, self.g, r) for r in eb.canonical_rows()]

    def full_echelon(self) -> EchelonBasis:
        if self._full is not None:
            return self._full
        eb = EchelonBasis()
        group = Sp(self.g)
        for mu, space in self.spaces.items():
            rows = [MultiVector._raw(self.shape, self.g, r) for r in space.canonical_rows()]
            for w in weyl_orbit(group, mu):
                _, op = fold_to_dominant(w)
                inv = _inverse_signed_perm(op, self.g)
                for r in rows:
                    eb.add(apply_op(inv, r).coeffs)
        return eb


@lru_cache(maxsize=None)
def _inverse_signed_perm_cached(name: str, items: Tuple, g: int) -> LinearOp:
    imgs = {i: dict(v) for i, v in items}
    inv: Dict[int, Dict[int, int]] = {}
    for i in range(2 * g):
        for j, c in imgs.get(i, {i: 1}).items():
            inv[j] = {i: c}  # inverse of a signed permutation: transpose
    return LinearOp(f"inv-{name}", {i: v for i, v in inv.items() if v != {i: 1}})


def _inverse_signed_perm(op: LinearOp, g: int) -> LinearOp:
    items = tuple(sorted((i, tuple(sorted(v.items()))) for i, v in op.images.items()))
    return _inverse_signed_perm_cached(op.name, items, g)


def sp_span_closure(seeds: Sequence[MultiVector], method: str = "folded") -> SpanResult:
    """Smallest Sp_2g-stable subspace containing the seeds.

    method="folded" closes under the root operators of sp_2g while storing
    only dominant weight spaces (every weight space of a subrepresentation
    is a signed-permutation image of a dominant one).  method="generators"
    applies the elementary symplectic matrices and their lower
    counterparts literally until the span stops growing.
    """
    if not seeds:
        raise ValueError("need at least one seed")
    shape, g, family = seeds[0].shape, seeds[0].g, seeds[0].family
    for s in seeds:
        if (s.shape, s.g, s.family) != (shape, g, family):
            raise ShapeMismatch("seeds must share a shape")
    if family != SP:
        raise ShapeMismatch("span closure is implemented for Sp_2g")
    if method == "generators":
        return _generator_closure(seeds)
    if method != "folded":
        raise ValueError(f"unknown closure method {method!r}")

    spaces: Dict[Weight, EchelonBasis] = {}
    queue: deque = deque()

    def push(v: MultiVector):
        for w, comp in v.weight_components().items():
            dom, op = fold_to_dominant(w)
            folded = apply_op(op, comp)
            eb = spaces.setdefault(dom, EchelonBasis())
            row = eb.add(folded.coeffs)
            if row is not None:
                queue.append((dom, MultiVector._raw(shape, g, row)))

    for s in seeds:
        push(s)
    while queue:
        mu, f = queue.popleft()
        for s in stabilizer_generators(mu):
            push(apply_op(s, f))
        for beta in root_orbit_representatives(mu):
            v = apply_op(root_operator(beta, g), f)
            if v:
                push(v)
    return SpanResult(shape, g, spaces, "folded")


def _generator_closure(seeds: Sequence[MultiVector]) -> SpanResult:
    shape, g = seeds[0].shape, seeds[0].g
    gens = [x.op() for x in all_generators(g)]
    eb = EchelonBasis()
    queue: deque = deque()
    for s in seeds:
        row = eb.add(s.coeffs)
        if row is not None:
            queue.append(MultiVector._raw(shape, g, row))
    while queue:
        f = queue.popleft()
        for op in gens:
            row = eb.add(apply_op(op, f).coeffs)
            if row is not None:
                queue.append(MultiVector._raw(shape, g, row))
    # per-weight bookkeeping for the dominant chamber
    spaces: Dict[Weight, EchelonBasis] = {}
    for r in eb.rows.values():
        for w, comp in MultiVector._raw(shape, g, r).weight_components().items():
            if w == tuple(sorted((abs(c) for c in w), reverse=True)) and all(c >= 0 for c in w):
                spaces.setdefault(w, EchelonBasis()).add(comp.coeffs)
    return SpanResult(shape, g, spaces, "generators", _full=eb)
