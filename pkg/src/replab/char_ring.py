"""Formal characters: tensor, exterior and symmetric powers, peeling, branching."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from . import kernels
from .rep_core import (
    GroupFamily,
    Partition,
    PartitionTooLong,
    Sp,
    Weight,
    as_partition,
    dominant_multiplicities,
    is_dominant,
    normalize,
    unit,
    weyl_dim,
    weyl_orbit,
)

SCHEMA = "replab/1"


class GroupMismatch(ValueError):
    pass


class NonGenuineCharacter(ValueError):
    pass


class NotARepresentation(ValueError):
    """Peeling met a negative multiplicity: the character is only virtual."""


class UnstableRange(UserWarning):
    pass


class FormalCharacter:
    """Finite map weight -> nonzero integer multiplicity, for one group."""

    __slots__ = ("group", "_table")

    def __init__(self, group: GroupFamily, table: Mapping[Weight, int], _clean: bool = False):
        self.group = group
        if _clean:
            self._table = dict(table)
        else:
            t: Dict[Weight, int] = {}
            for w, m in table.items():
                w = normalize(group, w)
                if len(w) != group.rank:
                    raise ValueError(f"weight {w} has wrong length for {group}")
                t[w] = t.get(w, 0) + int(m)
            self._table = {w: m for w, m in t.items() if m}

    @property
    def table(self) -> Mapping[Weight, int]:
        return MappingProxyType(self._table)

    @classmethod
    def from_dominant(cls, group: GroupFamily, dom: Mapping[Weight, int]) -> "FormalCharacter":
        t: Dict[Weight, int] = {}
        for mu, m in dom.items():
            if not m:
                continue
            for w in weyl_orbit(group, tuple(mu)):
                t[w] = t.get(w, 0) + m
        return cls(group, {w: m for w, m in t.items() if m}, _clean=True)

    @classmethod
    def trivial(cls, group: GroupFamily) -> "FormalCharacter":
        return cls(group, {(0,) * group.rank: 1}, _clean=True)

    @classmethod
    def zero(cls, group: GroupFamily) -> "FormalCharacter":
        return cls(group, {}, _clean=True)

    @property
    def dimension(self) -> int:
        return sum(self._table.values())

    @property
    def is_genuine(self) -> bool:
        return all(m > 0 for m in self._table.values())

    def dominant_part(self) -> Dict[Weight, int]:
        return {w: m for w, m in self._table.items() if is_dominant(self.group, w)}

    def __len__(self):
        return len(self._table)

    def __eq__(self, other):
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self.group == other.group and self._table == other._table

    def __hash__(self):
        return hash((self.group, frozenset(self._table.items())))

    def _check(self, other: "FormalCharacter"):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        self._check(other)
        t = dict(self._table)
        for w, m in other._table.items():
            t[w] = t.get(w, 0) + m
        return FormalCharacter(self.group, {w: m for w, m in t.items() if m}, _clean=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def scale(self, k: int) -> "FormalCharacter":
        if k == 0:
            return FormalCharacter.zero(self.group)
        return FormalCharacter(self.group, {w: k * m for w, m in self._table.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return tensor(self, other)

    __rmul__ = __mul__

    def adams(self, k: int) -> "FormalCharacter":
        t: Dict[Weight, int] = {}
        for w, m in self._table.items():
            kw = tuple(k * c for c in w)
            t[kw] = t.get(kw, 0) + m
        return FormalCharacter(self.group, t, _clean=True)

    def __repr__(self):
        return f"FormalCharacter({self.group}, dim={self.dimension}, weights={len(self._table)})"


def std_char(group: GroupFamily) -> FormalCharacter:
    n = group.rank
    t: Dict[Weight, int] = {}
    if group.is_sp:
        for i in range(n):
            t[unit(n, i, 1)] = 1
            t[unit(n, i, -1)] = 1
    else:
        for i in range(n):
            w = normalize(group, unit(n, i, 1))
            t[w] = t.get(w, 0) + 1
    return FormalCharacter(group, t, _clean=True)


def tensor(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    a._check(b)
    table = kernels.convolve(a._table, b._table)
    if not a.group.is_sp:
        table = FormalCharacter(a.group, table)._table
    return FormalCharacter(a.group, table, _clean=True)


def tensor_power(a: FormalCharacter, d: int) -> FormalCharacter:
    out = FormalCharacter.trivial(a.group)
    for _ in range(d):
        out = tensor(out, a)
    return out


def _require_genuine(a: FormalCharacter):
    if not a.is_genuine:
        raise NonGenuineCharacter("power operations need a genuine character")


def _newton(a: FormalCharacter, k: int, alternating: bool) -> FormalCharacter:
    _require_genuine(a)
    powers = [FormalCharacter.trivial(a.group)]
    adams = [None] + [a.adams(i) for i in range(1, k + 1)]
    for j in range(1, k + 1):
        acc = FormalCharacter.zero(a.group)
        for i in range(1, j + 1):
            term = tensor(adams[i], powers[j - i])
            if alternating and i % 2 == 0:
                term = -term
            acc = acc + term
        t = {}
        for w, m in acc._table.items():
            q, r = divmod(m, j)
            if r:
                raise ArithmeticError(f"Newton identity division by {j} not exact at {w}")
            t[w] = q
        powers.append(FormalCharacter(a.group, t, _clean=True))
    return powers[k]


def wedge_power(a: FormalCharacter, k: int) -> FormalCharacter:
    return _newton(a, k, alternating=True)


def sym_power(a: FormalCharacter, k: int) -> FormalCharacter:
    return _newton(a, k, alternating=False)


def dual(a: FormalCharacter) -> FormalCharacter:
    if a.group.is_sp:
        return a
    return FormalCharacter(a.group, {tuple(-c for c in w): m for w, m in a._table.items()})


# ------------------------------------------------------------ decompositions


@dataclass(frozen=True)
class Decomposition:
    group: GroupFamily
    terms: Tuple[Tuple[Partition, int], ...]
    stable: bool = True
    advisories: Tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_mapping(cls, group: GroupFamily, mults: Mapping, stable: bool = True) -> "Decomposition":
        terms = []
        for lam, m in mults.items():
            if m < 0:
                raise NotARepresentation(f"negative multiplicity for {lam}")
            if m:
                terms.append((as_partition(group, lam), int(m)))
        terms.sort()
        return cls(group, tuple(terms), stable)

    def as_dict(self) -> Dict[Partition, int]:
        return dict(self.terms)

    def multiplicity(self, lam) -> int:
        return self.as_dict().get(Partition(lam), 0)

    @property
    def partitions(self) -> Tuple[Partition, ...]:
        return tuple(p for p, _ in self.terms)

    @property
    def dimension(self) -> int:
        return sum(m * weyl_dim(self.group, lam) for lam, m in self.terms)

    def same_terms(self, other: "Decomposition") -> bool:
        return self.terms == other.terms

    def with_rank(self, rank: int) -> "Decomposition":
        group = GroupFamily(self.group.family, rank)
        return Decomposition.from_mapping(group, self.as_dict(), stable=self.stable)

    def __add__(self, other: "Decomposition") -> "Decomposition":
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")
        d = self.as_dict()
        for lam, m in other.terms:
            d[lam] = d.get(lam, 0) + m
        return Decomposition.from_mapping(self.group, d, self.stable and other.stable)

    def __sub__(self, other: "Decomposition") -> "Decomposition":
        """Multiset difference; raises NotARepresentation if other is not contained."""
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")
        d = self.as_dict()
        for lam, m in other.terms:
            d[lam] = d.get(lam, 0) - m
        return Decomposition.from_mapping(self.group, d, self.stable and other.stable)

    def character(self) -> FormalCharacter:
        out = FormalCharacter.zero(self.group)
        dom: Dict[Weight, int] = {}
        for lam, m in self.terms:
            for w, k in dominant_multiplicities(self.group, lam).items():
                dom[w] = dom.get(w, 0) + m * k
        return out + FormalCharacter.from_dominant(self.group, dom)

    def text(self) -> str:
        letter = "V" if self.group.is_sp else "W"
        if not self.terms:
            return "0"
        parts = []
        for lam, m in self.terms:
            s = f"{letter}_{{{lam.label()}}}"
            if m > 1:
                s += f"^{m}"
            parts.append(s)
        return " + ".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "group": self.group.family.value,
            "rank": self.group.rank,
            "terms": [
                {"partition": list(lam), "mult": m, "dim": str(weyl_dim(self.group, lam))}
                for lam, m in self.terms
            ],
            "total_dim": str(self.dimension),
            "stable": self.stable,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def _stable_rank_needed(group: GroupFamily, degree: int) -> int:
    return degree if group.is_sp else degree + 1


def decompose(a: FormalCharacter, degree: int | None = None) -> Decomposition:
    """Split a character into irreducibles by peeling off lex-maximal weights.

    Only the dominant chamber is consulted while peeling; the full table is
    used to reject inputs whose lex-maximal weight is not dominant and to
    check that the recorded pieces account for the whole dimension.
    """
    group = a.group
    if a._table:
        top = max(a._table)
        if not is_dominant(group, top) or a._table[top] < 0:
            raise NotARepresentation(f"lex-maximal weight {top} cannot start a peel")
    dom = a.dominant_part()
    found: Dict[Partition, int] = {}
    while dom:
        mu = max(dom)
        m = dom[mu]
        if m < 0:
            raise NotARepresentation(f"negative multiplicity {m} at lex-maximal weight {mu}")
        lam = Partition(mu)
        found[lam] = m
        for w, k in dominant_multiplicities(group, lam).items():
            v = dom.get(w, 0) - m * k
            if v:
                dom[w] = v
            else:
                dom.pop(w, None)
    result_dim = sum(m * weyl_dim(group, lam) for lam, m in found.items())
    if result_dim != a.dimension:
        raise NotARepresentation(
            f"peeled pieces have dimension {result_dim}, character has {a.dimension}"
        )
    top_degree = max((lam.degree for lam in found), default=0)
    if degree is None:
        degree = top_degree
    stable = group.rank >= _stable_rank_needed(group, degree)
    advisories = ()
    if not stable:
        advisories = (f"UnstableRange: rank {group.rank} is below the stable range for degree {degree}",)
    dec = Decomposition.from_mapping(group, found, stable)
    return Decomposition(dec.group, dec.terms, dec.stable, advisories)


def _as_decomposition(x) -> Decomposition:
    if isinstance(x, Decomposition):
        return x
    if isinstance(x, FormalCharacter):
        return decompose(x)
    raise TypeError(f"expected a character or decomposition, got {type(x).__name__}")


def hom_dim(a, b) -> int:
    """Sum over lam of mult_a(lam) * mult_{dual b}(lam).

    For Sp this is dim Hom(a, b), since every representation is self-dual.
    For SL it counts invariants of a (x) b.
    """
    da = _as_decomposition(a)
    if isinstance(b, FormalCharacter):
        if da.group != b.group:
            raise GroupMismatch(f"{da.group} vs {b.group}")
        db = decompose(dual(b))
    else:
        db = _as_decomposition(b)
        if db.group != da.group:
            raise GroupMismatch(f"{da.group} vs {db.group}")
        if not db.group.is_sp:
            db = decompose(dual(db.character()))
    mb = db.as_dict()
    return sum(m * mb.get(lam, 0) for lam, m in da.terms)


def trivial_multiplicity(d: int, g: int) -> int:
    if g < d:
        warnings.warn(f"g={g} is below the stable range for degree {d}", UnstableRange, stacklevel=2)
    group = Sp(g)
    return decompose(tensor_power(std_char(group), d)).multiplicity(())


def irreducible_char(group: GroupFamily, lam) -> FormalCharacter:
    lam = as_partition(group, lam)
    return FormalCharacter.from_dominant(group, dominant_multiplicities(group, lam))


# ---------------------------------------------------------------- branching


def restrict_to_smaller_sp(a: FormalCharacter) -> FormalCharacter:
    """Delete the last coordinate of every weight (Sp_2g -> Sp_2(g-1))."""
    if not a.group.is_sp or a.group.rank < 2:
        raise ValueError("restriction needs Sp_2g with g >= 2")
    small = Sp(a.group.rank - 1)
    t: Dict[Weight, int] = {}
    for w, m in a._table.items():
        v = w[:-1]
        t[v] = t.get(v, 0) + m
    return FormalCharacter(small, t, _clean=True)


def branch_sp(lam, g: int) -> Decomposition:
    if g < 2:
        raise ValueError("branching needs g >= 2")
    group = Sp(g)
    lam = as_partition(group, lam)
    return decompose(restrict_to_smaller_sp(irreducible_char(group, lam)))


def interval_rule(lam, g: int) -> List[Partition]:
    """Partitions k' with at most g-1 parts and k_{i+2} <= k'_i <= k_i."""
    lam = Partition(lam)
    if len(lam) > g:
        raise PartitionTooLong(f"{lam.label()} has more than {g} parts")
    k = list(lam.padded(g + 2))
    ranges = [range(k[i + 2], k[i] + 1) for i in range(g - 1)]
    out: List[Partition] = []

    def rec(i, prev, acc):
        if i == g - 1:
            out.append(Partition(acc))
            return
        for v in ranges[i]:
            if v <= prev:
                rec(i + 1, v, acc + [v])

    rec(0, k[0], [])
    return sorted(out)
