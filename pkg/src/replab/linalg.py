"""Exact sparse linear algebra over Q.

Vectors are dicts {index: coefficient}; indices only need a total order.
Rows inside an EchelonBasis are kept as primitive integer vectors, fully
reduced against each other, which keeps the arithmetic in plain ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

Vector = Dict[Hashable, object]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integral(v: Mapping) -> Dict:
    """Scale v to a primitive integer vector with positive leading entry."""
    if not v:
        return {}
    den = 1
    for c in v.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        out = {k: int(c) for k, c in v.items() if c}
    else:
        out = {k: int(c * den) for k, c in v.items() if c}
    return primitive(out)


def primitive(v: Dict) -> Dict:
    if not v:
        return v
    lead = v[min(v)]
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            break
    if lead < 0:
        g = -g
    if g != 1:
        v = {k: c // g for k, c in v.items()}
    return v


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace."""

    __slots__ = ("rows", "_order")

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: Dict[Hashable, Dict] = {}
        self._order: List[Hashable] = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def _reduce_int(self, v: Dict) -> Dict:
        rows = self.rows
        hits = [k for k in v if k in rows]
        for p in hits:
            c = v.get(p)
            if not c:
                continue
            row = rows[p]
            rp = row[p]
            if rp != 1 and rp != -1:
                g = gcd(rp, c)
                mv, mr = rp // g, c // g
                if mv < 0:
                    mv, mr = -mv, -mr
                v = {k: x * mv for k, x in v.items()}
            else:
                mr = c * rp
            for k, x in row.items():
                y = v.get(k, 0) - mr * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def reduce(self, v: Mapping) -> Dict:
        """Integer multiple of v reduced modulo the span (zero iff v is inside)."""
        return primitive(self._reduce_int(integral(v)))

    def contains(self, v: Mapping) -> bool:
        return not self._reduce_int(integral(v))

    def add(self, v: Mapping) -> Dict | None:
        """Insert v; returns the new reduced row, or None if v was already in the span."""
        r = self._reduce_int(integral(v))
        if not r:
            return None
        r = primitive(r)
        p = min(r)
        rp = r[p]
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c:
                g = gcd(rp, c)
                mr, mn = rp // g, c // g
                if mr < 0:
                    mr, mn = -mr, -mn
                new = {k: x * mr for k, x in row.items()}
                for k, x in r.items():
                    y = new.get(k, 0) - mn * x
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                self.rows[q] = primitive(new)
        self.rows[p] = r
        self._order.append(p)
        return r

    def canonical_rows(self) -> List[Dict]:
        """Reduced echelon rows with pivot entries 1, ordered by pivot."""
        out = []
        for p in sorted(self.rows):
            row = self.rows[p]
            lead = row[p]
            out.append({k: Fraction(x, lead) for k, x in sorted(row.items())})
        return out

    def insertion_rows(self) -> List[Dict]:
        return [self.rows[p] for p in self._order if p in self.rows]


def rank(vectors: Iterable[Mapping]) -> int:
    return EchelonBasis(vectors).rank


def rref(vectors: Iterable[Mapping]) -> List[Dict]:
    return EchelonBasis(vectors).canonical_rows()


def kernel(columns: Sequence[Mapping], ncols: int | None = None) -> List[Dict[int, Fraction]]:
    """Basis of {x : sum_j x_j columns[j] = 0}, in reduced echelon form.

    columns[j] is the image of the j-th domain basis vector.  Returned
    vectors are indexed by domain position j.
    """
    n = len(columns) if ncols is None else ncols
    # row reduce the transpose augmented with an identity block; rows that
    # reduce to zero on the image part give kernel vectors
    tagged = []
    for j in range(n):
        v = {(0, k): c for k, c in columns[j].items() if c}
        v[(1, j)] = 1
        tagged.append(v)
    eb = EchelonBasis(tagged)
    kern = [
        {k[1]: c for k, c in row.items()}
        for p, row in eb.rows.items()
        if p[0] == 1
    ]
    return EchelonBasis(kern).canonical_rows()


def apply_matrix(columns: Sequence[Mapping], x: Mapping[int, object]) -> Dict:
    out: Dict = {}
    for j, c in x.items():
        if not c:
            continue
        for k, a in columns[j].items():
            y = out.get(k, 0) + c * a
            if y:
                out[k] = y
            else:
                out.pop(k, None)
    return out
