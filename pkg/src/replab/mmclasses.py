"""Weighted partitions, the twisted cohomology count, and the final dimension tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Tuple

from .char_ring import Decomposition, decompose, hom_dim, std_char, tensor_power
from .rep_core import Sp, weyl_dim


class TableMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class WeightedPartition:
    """A set partition of {1..d} with a nonnegative weight on each block.

    Blocks are stored sorted internally and ordered by their minimum, so
    equal partitions compare equal whatever order they were given in.
    """

    blocks: Tuple[Tuple[int, ...], ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.weights):
            raise ValueError("one weight per block")
        pairs = sorted((tuple(sorted(bl)), w) for bl, w in zip(self.blocks, self.weights))
        if any(not bl for bl, _ in pairs):
            raise ValueError("blocks must be nonempty")
        elems = [x for bl, _ in pairs for x in bl]
        if sorted(elems) != list(range(1, len(elems) + 1)):
            raise ValueError("blocks must partition {1..d}")
        for bl, w in pairs:
            if w < 0:
                raise ValueError("weights are nonnegative")
            if len(bl) == 1 and w < 1:
                raise ValueError("a singleton block needs weight >= 1")
        object.__setattr__(self, "blocks", tuple(bl for bl, _ in pairs))
        object.__setattr__(self, "weights", tuple(w for _, w in pairs))

    @property
    def d(self) -> int:
        return sum(len(bl) for bl in self.blocks)

    def text(self) -> str:
        return " ".join("{" + ",".join(map(str, bl)) + f"}}^{w}" for bl, w in zip(self.blocks, self.weights))


def k_of(p: WeightedPartition) -> int:
    return p.d + 2 * sum(w - 1 for w in p.weights)


def set_partitions(d: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Set partitions of {1..d} via restricted growth strings, blocks ordered by minimum."""
    if d == 0:
        yield ()
        return
    rgs = [0] * d

    def rec(i, nblocks):
        if i == d:
            blocks = [[] for _ in range(nblocks)]
            for x, bl in enumerate(rgs):
                blocks[bl].append(x + 1)
            yield tuple(tuple(bl) for bl in blocks)
            return
        for bl in range(nblocks + 1):
            rgs[i] = bl
            yield from rec(i + 1, max(nblocks, bl + 1))

    yield from rec(0, 0)


def _distribute(total: int, lows: List[int]) -> Iterator[Tuple[int, ...]]:
    """Tuples w with w_i >= lows[i] and sum w = total."""
    n = len(lows)
    spare = total - sum(lows)
    if spare < 0:
        return

    def rec(i, left):
        if i == n - 1:
            yield (lows[i] + left,)
            return
        for x in range(left + 1):
            for tail in rec(i + 1, left - x):
                yield (lows[i] + x,) + tail

    if n == 0:
        if spare == 0:
            yield ()
        return
    yield from rec(0, spare)


def enumerate_weighted(d: int, k: int) -> List[WeightedPartition]:
    """All weighted partitions of {1..d} with k(P) = k, in a fixed order."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    if (k - d) % 2:
        return []
    out = []
    for blocks in set_partitions(d):
        n = len(blocks)
        total = n + (k - d) // 2
        lows = [1 if len(bl) == 1 else 0 for bl in blocks]
        for ws in _distribute(total, lows):
            out.append(WeightedPartition(blocks, ws))
    return out


def kawazumi_h2_dim(d: int) -> int:
    return len(enumerate_weighted(d, 0)) + len(enumerate_weighted(d, 2))


# ---------------------------------------------------------------- tables


@lru_cache(maxsize=None)
def tensor_power_decomposition(g: int, d: int) -> Decomposition:
    return decompose(tensor_power(std_char(Sp(g)), d))


@lru_cache(maxsize=None)
def boundary_cup_image(g: int, surrogate: int = 6) -> Decomposition:
    """Boundary cup-product image at rank g.

    The span closure is run at the smallest rank where the decomposition is
    stable and the partition list is carried over to rank g.
    """
    from .johnson import cup_image_boundary

    base = cup_image_boundary(min(g, surrogate))
    return base.with_rank(g)


@dataclass(frozen=True)
class TableRow:
    d: int
    t_d: int
    hom: int
    total: int
    kawazumi: int

    def as_tuple(self):
        return (self.d, self.t_d, self.hom, self.total, self.kawazumi)


def comparison_table(g: int = 12, d_max: int = 6, check: bool = True) -> List[TableRow]:
    if g < d_max:
        raise ValueError("the tensor powers must be in the stable range (g >= d_max)")
    vcp = boundary_cup_image(g)
    rows = []
    for d in range(1, d_max + 1):
        dec = tensor_power_decomposition(g, d)
        t = dec.multiplicity(())
        h = hom_dim(vcp, dec)
        rows.append(TableRow(d, t, h, t + h, kawazumi_h2_dim(d)))
    if check:
        bad = [r.d for r in rows if r.total != r.kawazumi]
        if bad:
            raise TableMismatch(f"columns disagree for d in {bad}")
    return rows


def table_text(rows: List[TableRow]) -> str:
    head = ("d", "t_d", "hom", "t_d+hom", "kawazumi")
    lines = [" ".join(f"{h:>9}" for h in head)]
    for r in rows:
        lines.append(" ".join(f"{x:>9}" for x in r.as_tuple()))
    return "\n".join(lines)


# ------------------------------------------------------------ bookkeeping


@dataclass(frozen=True)
class Bookkeeping:
    g: int
    boundary: int
    punctured: int
    closed: int
    h_tensor_quotient: int
    punctured_is_boundary_plus_one: bool
    closed_identity: bool
    extra_matches_h_tensor_quotient: bool

    @property
    def ok(self) -> bool:
        return (
            self.punctured_is_boundary_plus_one
            and self.closed_identity
            and self.extra_matches_h_tensor_quotient
            and min(self.boundary, self.punctured, self.closed) > 0
        )


def bookkeeping_identities(g: int) -> Bookkeeping:
    from .johnson import cup_image_boundary, cup_image_closed

    group = Sp(g)
    boundary = cup_image_boundary(g)
    closed = cup_image_closed(g)
    trivial = Decomposition.from_mapping(group, {(): 1})
    punctured = boundary + trivial
    # H (x) ((wedge^3 H)/H): dimension 2g * (C(2g,3) - 2g)
    hq = 2 * g * (comb(2 * g, 3) - 2 * g)
    extra = punctured - closed
    return Bookkeeping(
        g=g,
        boundary=boundary.dimension,
        punctured=punctured.dimension,
        closed=closed.dimension,
        h_tensor_quotient=hq,
        punctured_is_boundary_plus_one=punctured.dimension == boundary.dimension + 1,
        closed_identity=closed.dimension + 1 + hq == punctured.dimension,
        extra_matches_h_tensor_quotient=extra.dimension == 1 + hq,
    )


def h_tensor_quotient_decomposition(g: int) -> Decomposition:
    """H (x) ((wedge^3 H)/H) as a sum of irreducibles, from characters."""
    from .char_ring import tensor, wedge_power

    h = std_char(Sp(g))
    return decompose(tensor(h, wedge_power(h, 3) - h))
