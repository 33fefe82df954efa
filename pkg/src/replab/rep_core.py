"""Root data, partitions, Weyl dimensions and Freudenthal multiplicities.

Two families are supported: SL_n (root system A_{n-1}) and Sp_2g (root
system C_g).  Weights are integer tuples in e-coordinates.  SL weights are
stored with their last coordinate shifted to zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

Weight = Tuple[int, ...]


class Family(str, enum.Enum):
    SL = "SL"
    SP = "Sp"


class PartitionTooLong(ValueError):
    """A partition has more parts than the group rank allows."""


@dataclass(frozen=True)
class GroupFamily:
    family: Family
    rank: int

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")
        if fam is Family.SL and self.rank < 2:
            raise ValueError("SL_n needs n >= 2")

    @property
    def is_sp(self) -> bool:
        return self.family is Family.SP

    @property
    def max_parts(self) -> int:
        """Longest partition that is a dominant weight."""
        return self.rank if self.is_sp else self.rank - 1

    @property
    def std_dim(self) -> int:
        return 2 * self.rank if self.is_sp else self.rank

    def __str__(self):
        return f"Sp_{2 * self.rank}" if self.is_sp else f"SL_{self.rank}"


def Sp(g: int) -> GroupFamily:
    return GroupFamily(Family.SP, g)


def SL(n: int) -> GroupFamily:
    return GroupFamily(Family.SL, n)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def padded(self, length: int) -> Weight:
        if len(self) > length:
            raise PartitionTooLong(f"{self.label()} has more than {length} parts")
        return tuple(self) + (0,) * (length - len(self))

    def label(self) -> str:
        """Compact exponent notation, e.g. (2,2,1,1) -> '2^2,1^2'."""
        if not self:
            return "0"
        out = []
        i = 0
        while i < len(self):
            j = i
            while j < len(self) and self[j] == self[i]:
                j += 1
            out.append(str(self[i]) if j - i == 1 else f"{self[i]}^{j - i}")
            i = j
        return ",".join(out)

    def __repr__(self):
        return f"Partition({list(self)})"


def partitions_of(d: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of d in reverse lex order, optionally bounded."""
    if max_part is None:
        max_part = d
    if max_parts is None:
        max_parts = d

    def rec(rest, bound, slots):
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, bound), 0, -1):
            for tail in rec(rest - first, first, slots - 1):
                yield (first,) + tail

    for p in rec(d, max_part, max_parts):
        yield Partition(p)


def as_partition(group: GroupFamily, lam) -> Partition:
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    if len(lam) > group.max_parts:
        raise PartitionTooLong(
            f"partition {lam.label()} has {len(lam)} parts; {group} allows at most {group.max_parts}"
        )
    return lam


# ---------------------------------------------------------------- weights


def normalize(group: GroupFamily, w: Sequence[int]) -> Weight:
    w = tuple(w)
    if group.is_sp:
        return w
    last = w[-1]
    return tuple(c - last for c in w) if last else w


def unit(n: int, i: int, c: int = 1) -> Weight:
    return tuple(c if k == i else 0 for k in range(n))


def dominant_form(group: GroupFamily, w: Weight) -> Weight:
    """Dominant representative of the Weyl orbit of w."""
    if group.is_sp:
        return tuple(sorted((abs(c) for c in w), reverse=True))
    return normalize(group, sorted(w, reverse=True))


def is_dominant(group: GroupFamily, w: Weight) -> bool:
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        return False
    return w[-1] >= 0 if group.is_sp else True


def weight_to_partition(group: GroupFamily, w: Weight) -> Partition:
    return Partition(normalize(group, w))


def _distinct_permutations(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    items = sorted(items)
    n = len(items)
    yield tuple(items)
    while True:
        i = n - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])
        yield tuple(items)


@lru_cache(maxsize=4096)
def weyl_orbit(group: GroupFamily, w: Weight) -> Tuple[Weight, ...]:
    """All distinct images of w under the Weyl group, in lex order."""
    if group.is_sp:
        absvals = [abs(c) for c in w]
        out = set()
        for perm in _distinct_permutations(absvals):
            idx = [i for i, c in enumerate(perm) if c]
            for mask in range(1 << len(idx)):
                v = list(perm)
                for b, i in enumerate(idx):
                    if mask >> b & 1:
                        v[i] = -v[i]
                out.add(tuple(v))
        return tuple(sorted(out))
    return tuple(sorted({normalize(group, p) for p in _distinct_permutations(w)}))


def orbit_size(group: GroupFamily, w: Weight) -> int:
    from math import factorial
    counts: Dict[int, int] = {}
    if group.is_sp:
        vals = [abs(c) for c in w]
    else:
        vals = list(w)
    for c in vals:
        counts[c] = counts.get(c, 0) + 1
    size = factorial(len(vals))
    for m in counts.values():
        size //= factorial(m)
    if group.is_sp:
        size <<= sum(1 for c in vals if c)
    return size


# ------------------------------------------------------------- root data


@dataclass(frozen=True)
class RootDatum:
    group: GroupFamily
    positive_roots: Tuple[Weight, ...]
    rho: Weight

    def pairing(self, x: Sequence[int], y: Sequence[int]):
        return sum(a * b for a, b in zip(x, y))


@lru_cache(maxsize=64)
def root_datum(group: GroupFamily) -> RootDatum:
    n = group.rank
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(tuple(1 if k == i else -1 if k == j else 0 for k in range(n)))
            if group.is_sp:
                roots.append(tuple(1 if k in (i, j) else 0 for k in range(n)))
        if group.is_sp:
            roots.append(unit(n, i, 2))
    roots.sort(reverse=True)
    if group.is_sp:
        rho = tuple(n - i for i in range(n))
    else:
        # half-sum is ((n-1)/2, ..., -(n-1)/2); shifting by a multiple of
        # (1,...,1) gives the normalized integral form
        rho = tuple(n - 1 - i for i in range(n))
    return RootDatum(group, tuple(roots), rho)


def all_roots(group: GroupFamily) -> Tuple[Weight, ...]:
    pos = root_datum(group).positive_roots
    return pos + tuple(tuple(-c for c in r) for r in pos)


def weyl_dim(group: GroupFamily, lam) -> int:
    lam = as_partition(group, lam)
    rd = root_datum(group)
    shifted = tuple(a + b for a, b in zip(lam.padded(group.rank), rd.rho))
    num = 1
    den = 1
    for alpha in rd.positive_roots:
        num *= rd.pairing(shifted, alpha)
        den *= rd.pairing(rd.rho, alpha)
    q = Fraction(num, den)
    assert q.denominator == 1 and q > 0, (group, lam, q)
    return int(q)


# ----------------------------------------------------------- Freudenthal


def _scaled_form(group: GroupFamily, x: Sequence[int], y: Sequence[int]) -> int:
    # SL weights live modulo (1,...,1); n*<x,y> - sum(x)sum(y) is n times the
    # pairing of the projections onto the sum-zero hyperplane.
    dot = sum(a * b for a, b in zip(x, y))
    if group.is_sp:
        return dot
    return group.rank * dot - sum(x) * sum(y)


def dominant_weights_below(group: GroupFamily, lam: Partition) -> List[Weight]:
    """Dominant weights of the irreducible with highest weight lam, lex-descending."""
    n = group.rank
    if group.is_sp:
        top = lam.padded(n)
        out = []
        for size in range(lam.degree, -1, -2):
            for mu in partitions_of(size, max_parts=n):
                w = mu.padded(n)
                if _dominated(w, top):
                    out.append(w)
    else:
        d = lam.degree
        top = lam.padded(n)
        out = []
        for mu in partitions_of(d, max_parts=n):
            w = mu.padded(n)
            if _dominated(w, top):
                out.append(normalize(group, w))
        out = sorted(set(out))
    out.sort(reverse=True)
    return out


def _dominated(w: Sequence[int], top: Sequence[int]) -> bool:
    s = 0
    for a, b in zip(w, top):
        s += b - a
        if s < 0:
            return False
    return True


@lru_cache(maxsize=2048)
def dominant_multiplicities(group: GroupFamily, lam: Partition) -> Dict[Weight, int]:
    """Freudenthal multiplicities on the dominant weights of V(lam)."""
    lam = as_partition(group, lam)
    rd = root_datum(group)
    n = group.rank
    top = normalize(group, lam.padded(n))
    rho = rd.rho
    mult: Dict[Weight, int] = {}

    def lookup(w: Weight) -> int:
        return mult.get(dominant_form(group, w), 0)

    lr = tuple(a + b for a, b in zip(top, rho))
    lam_norm = _scaled_form(group, lr, lr)
    for mu in dominant_weights_below(group, lam):
        if mu == top:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = lam_norm - _scaled_form(group, mr, mr)
        total = 0
        for alpha in rd.positive_roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                m = lookup(nu)
                if not m:
                    break
                total += m * _scaled_form(group, nu, alpha)
                k += 1
        total *= 2
        if total == 0:
            continue
        q, r = divmod(total, denom)
        assert r == 0 and denom > 0, (group, lam, mu, total, denom)
        if q:
            mult[mu] = q
    return mult


def freudenthal_char(group: GroupFamily, lam):
    """Full formal character of the irreducible with highest weight lam."""
    from .char_ring import FormalCharacter

    lam = as_partition(group, lam)
    return FormalCharacter.from_dominant(group, dominant_multiplicities(group, lam))
