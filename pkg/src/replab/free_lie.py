"""The free Lie algebra on n letters inside the tensor algebra.

Letters are 1..n.  Lie elements are stored either as tensors (dicts from
words to exact coefficients) or in the Lyndon basis, where every Lyndon word
carries its standard bracketing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from .char_ring import FormalCharacter, std_char, tensor, tensor_power
from .linalg import EchelonBasis, kernel
from .rep_core import GroupFamily

Word = Tuple[int, ...]
Tree = Union[int, Tuple["Tree", "Tree"]]
TensorVector = Dict[Word, object]


def mobius(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_dim(n: int, d: int) -> int:
    total = sum(mobius(d // e) * n ** e for e in range(1, d + 1) if d % e == 0)
    assert total % d == 0
    return total // d


def is_lyndon(word: Sequence[int]) -> bool:
    w = tuple(word)
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(n: int, d: int) -> List[Word]:
    """Lyndon words of length exactly d over 1..n, lexicographically (Duval)."""
    out = []
    w = [0]
    while w:
        w[-1] += 1
        if len(w) == d:
            out.append(tuple(w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()
    return out


def standard_factorization(word: Word) -> Tuple[Word, Word]:
    """word = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


@lru_cache(maxsize=None)
def bracketing(word: Word) -> Tree:
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


@dataclass(frozen=True)
class LyndonBracket:
    word: Word
    tree: Tree

    def __str__(self):
        return tree_text(self.tree)


def tree_text(tree: Tree) -> str:
    if isinstance(tree, int):
        return str(tree)
    return f"[{tree_text(tree[0])},{tree_text(tree[1])}]"


def lyndon_basis(n: int, d: int) -> List[LyndonBracket]:
    return [LyndonBracket(w, bracketing(w)) for w in lyndon_words(n, d)]


def _tensor_mul(x: TensorVector, y: TensorVector) -> TensorVector:
    out: TensorVector = {}
    for u, a in x.items():
        for v, b in y.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def commutator(x: TensorVector, y: TensorVector) -> TensorVector:
    out = _tensor_mul(x, y)
    for w, c in _tensor_mul(y, x).items():
        v = out.get(w, 0) - c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


@lru_cache(maxsize=None)
def _expand_tree(tree: Tree) -> Tuple[Tuple[Word, int], ...]:
    if isinstance(tree, int):
        return (((tree,), 1),)
    left = dict(_expand_tree(tree[0]))
    right = dict(_expand_tree(tree[1]))
    return tuple(sorted(commutator(left, right).items()))


def expand_bracket(b: Union[LyndonBracket, Tree]) -> TensorVector:
    tree = b.tree if isinstance(b, LyndonBracket) else b
    return dict(_expand_tree(tree))


def to_lyndon(x: TensorVector) -> Dict[Word, object]:
    """Coordinates of a Lie element in the Lyndon basis.

    Uses triangularity: the smallest word in the expansion of the standard
    bracketing of a Lyndon word w is w itself, with coefficient 1.
    """
    x = {w: c for w, c in x.items() if c}
    out: Dict[Word, object] = {}
    while x:
        w = min(x)
        if not is_lyndon(w):
            raise ValueError(f"not a Lie element: leading word {w} is not Lyndon")
        c = x[w]
        out[w] = c
        for u, a in _expand_tree(bracketing(w)):
            v = x.get(u, 0) - c * a
            if v:
                x[u] = v
            else:
                x.pop(u, None)
    return out


def from_lyndon(coords: Dict[Word, object]) -> TensorVector:
    out: TensorVector = {}
    for w, c in coords.items():
        for u, a in _expand_tree(bracketing(w)):
            v = out.get(u, 0) + c * a
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


@lru_cache(maxsize=None)
def bracket_column(letter: int, word: Word) -> Tuple[Tuple[Word, int], ...]:
    """[e_letter, P_word] in the Lyndon basis of degree len(word)+1."""
    x = commutator({(letter,): 1}, dict(_expand_tree(bracketing(word))))
    return tuple(sorted(to_lyndon(x).items()))


@dataclass
class BracketMap:
    n: int
    d: int
    domain: List[Tuple[int, Word]]
    codomain: List[Word]
    columns: List[Dict[int, int]]

    @property
    def rank(self) -> int:
        return EchelonBasis(self.columns).rank

    def kernel_basis(self) -> List[Dict[Tuple[int, Word], Fraction]]:
        ker = kernel(self.columns, len(self.domain))
        return [{self.domain[j]: c for j, c in v.items()} for v in ker]


def bracket_map(n: int, d: int) -> BracketMap:
    """Matrix of k^n (x) FLie_d -> FLie_{d+1} in Lyndon bases."""
    domain = [(i, w) for i in range(1, n + 1) for w in lyndon_words(n, d)]
    codomain = lyndon_words(n, d + 1)
    pos = {w: k for k, w in enumerate(codomain)}
    columns = [{pos[w]: c for w, c in bracket_column(i, word)} for i, word in domain]
    return BracketMap(n, d, domain, codomain, columns)


def apply_bracket(x: Dict[Tuple[int, Word], object]) -> Dict[Word, object]:
    """Image of an element of k^n (x) FLie_d (Lyndon coordinates) under the bracket."""
    out: Dict[Word, object] = {}
    for (i, w), c in x.items():
        for u, a in bracket_column(i, w):
            v = out.get(u, 0) + c * a
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


def lie_character(group: GroupFamily, d: int) -> FormalCharacter:
    """Character of FLie_d of the standard representation.

    Uses ch FLie_d = (1/d) sum_{k | d} mu(k) psi^k(V)^{d/k}, the character
    form of the necklace count behind witt_dim.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    v = std_char(group)
    acc = FormalCharacter.zero(group)
    for k in range(1, d + 1):
        if d % k == 0 and mobius(k):
            acc = acc + tensor_power(v.adams(k), d // k).scale(mobius(k))
    t = {}
    for w, m in acc.table.items():
        q, r = divmod(m, d)
        assert r == 0
        t[w] = q
    return FormalCharacter(group, t, _clean=True)


def lyndon_character(group: GroupFamily, d: int) -> FormalCharacter:
    """Character of FLie_d read off the Lyndon basis (weights of leading words).

    Letters 1..N stand for the weight basis of std_char(group): for Sp,
    letter 2k-1 is a_k (weight e_k) and 2k is b_k (weight -e_k).
    """
    n = group.rank
    if group.is_sp:
        letters = []
        for k in range(n):
            letters.append(tuple(1 if j == k else 0 for j in range(n)))
            letters.append(tuple(-1 if j == k else 0 for j in range(n)))
    else:
        letters = [tuple(1 if j == k else 0 for j in range(n)) for k in range(n)]
    t: Dict[Tuple[int, ...], int] = {}
    for w in lyndon_words(len(letters), d):
        wt = tuple(sum(letters[i - 1][j] for i in w) for j in range(n))
        t[wt] = t.get(wt, 0) + 1
    return FormalCharacter(group, t)
