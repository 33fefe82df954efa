"""Representation expressions: parser, printer and evaluation.

Grammar:
    expr := "H" | "V[" partition "]" | "lie(" int ")"
          | "wedge(" int "," expr ")" | "sym(" int "," expr ")"
          | "tensor(" expr "," expr ")" | "quot(" expr "," embed-name ")"
Whitespace between tokens is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import FrozenSet, Tuple, Union

from .char_ring import FormalCharacter, irreducible_char, std_char, sym_power, tensor, wedge_power
from .free_lie import lie_character, witt_dim
from .rep_core import GroupFamily, Partition, as_partition, weyl_dim
from . import symp_linalg as sl

EMBED_NAMES = sl.EMBEDDINGS


class ExprSyntaxError(SyntaxError):
    """Parse failure at a byte offset, with the set of tokens that would have been accepted."""

    def __init__(self, text: str, offset: int, expected: FrozenSet[str]):
        self.text_in = text
        self.byte_offset = offset
        self.expected = frozenset(expected)
        want = ", ".join(repr(e) for e in sorted(self.expected))
        super().__init__(f"syntax error at offset {offset}: expected one of {want}")


class ExprError(ValueError):
    """A well-formed expression that cannot be evaluated for the chosen group."""


# -------------------------------------------------------------------- AST


@dataclass(frozen=True)
class HExpr:
    def text(self):
        return "H"


@dataclass(frozen=True)
class Irrep:
    partition: Tuple[int, ...]

    def text(self):
        return "V[" + (",".join(map(str, self.partition)) or "0") + "]"


@dataclass(frozen=True)
class LieExpr:
    degree: int

    def text(self):
        return f"lie({self.degree})"


@dataclass(frozen=True)
class WedgeExpr:
    k: int
    arg: "Expr"

    def text(self):
        return f"wedge({self.k}, {self.arg.text()})"


@dataclass(frozen=True)
class SymExpr:
    k: int
    arg: "Expr"

    def text(self):
        return f"sym({self.k}, {self.arg.text()})"


@dataclass(frozen=True)
class TensorExpr:
    left: "Expr"
    right: "Expr"

    def text(self):
        return f"tensor({self.left.text()}, {self.right.text()})"


@dataclass(frozen=True)
class QuotExpr:
    arg: "Expr"
    embed: str

    def text(self):
        return f"quot({self.arg.text()}, {self.embed})"


Expr = Union[HExpr, Irrep, LieExpr, WedgeExpr, SymExpr, TensorExpr, QuotExpr]


def to_text(e: Expr) -> str:
    return e.text()


# ----------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise ExprSyntaxError(self.text, offset, frozenset(expected))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_word(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def expect(self, tok: str):
        self.skip()
        if not self.text.startswith(tok, self.pos):
            self.error({tok})
        self.pos += len(tok)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error({"<integer>"})
        return int(self.text[start:self.pos])

    def embed_name(self) -> str:
        self.skip()
        for name in sorted(EMBED_NAMES, key=len, reverse=True):
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return name
        self.error(set(EMBED_NAMES))

    def expr(self) -> Expr:
        self.skip()
        heads = ("wedge(", "sym(", "tensor(", "quot(", "lie(", "V[", "H")
        if self.peek_word("wedge"):
            self.pos += 5
            self.expect("(")
            k = self.integer()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return WedgeExpr(k, arg)
        if self.peek_word("sym"):
            self.pos += 3
            self.expect("(")
            k = self.integer()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return SymExpr(k, arg)
        if self.peek_word("tensor"):
            self.pos += 6
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return TensorExpr(left, right)
        if self.peek_word("quot"):
            self.pos += 4
            self.expect("(")
            arg = self.expr()
            self.expect(",")
            name = self.embed_name()
            self.expect(")")
            return QuotExpr(arg, name)
        if self.peek_word("lie"):
            self.pos += 3
            self.expect("(")
            d = self.integer()
            self.expect(")")
            return LieExpr(d)
        if self.peek_word("V"):
            self.pos += 1
            self.expect("[")
            parts = [self.integer()]
            while True:
                self.skip()
                if self.text.startswith(",", self.pos):
                    self.pos += 1
                    parts.append(self.integer())
                    continue
                if self.text.startswith("]", self.pos):
                    self.pos += 1
                    break
                self.error({",", "]"})
            if parts == [0]:
                parts = []
            if 0 in parts:
                raise ExprError("partition parts must be positive")
            try:
                part = Partition(parts)
            except ValueError as exc:
                raise ExprError(str(exc)) from None
            return Irrep(tuple(part))
        if self.peek_word("H"):
            self.pos += 1
            return HExpr()
        self.error(set(heads))

    def parse(self) -> Expr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error({"<end of input>"})
        return e


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ------------------------------------------------------------- evaluation


def to_shape(e: Expr) -> sl.Shape:
    """The tensor shape over H named by e (irreducibles and lie(d) have none)."""
    if isinstance(e, HExpr):
        return sl.H
    if isinstance(e, WedgeExpr):
        return sl.Wedge(e.k, to_shape(e.arg))
    if isinstance(e, SymExpr):
        return sl.Sym(e.k, to_shape(e.arg))
    if isinstance(e, TensorExpr):
        return sl.Tensor((to_shape(e.left), to_shape(e.right)))
    if isinstance(e, QuotExpr):
        try:
            return sl.Quot(to_shape(e.arg), e.embed)
        except sl.ShapeMismatch as exc:
            raise ExprError(str(exc)) from None
    raise ExprError(f"{e.text()} is not a tensor shape over H")


_SUB_EXPR = {
    "H-in-wedge3": HExpr(),
    "wedge4-in-sym2wedge2": WedgeExpr(4, HExpr()),
    "HxWedge3-in-HHxWedge2": TensorExpr(HExpr(), WedgeExpr(3, HExpr())),
}


def _check_quot(e: QuotExpr, group: GroupFamily):
    if not group.is_sp:
        raise ExprError("quotients use the symplectic form; use --group sp")
    to_shape(e)  # validates the ambient


def character(e: Expr, group: GroupFamily) -> FormalCharacter:
    if isinstance(e, HExpr):
        return std_char(group)
    if isinstance(e, Irrep):
        try:
            return irreducible_char(group, e.partition)
        except ValueError as exc:
            raise ExprError(str(exc)) from None
    if isinstance(e, LieExpr):
        if e.degree < 1:
            raise ExprError("lie(d) needs d >= 1")
        return lie_character(group, e.degree)
    if isinstance(e, WedgeExpr):
        return wedge_power(character(e.arg, group), e.k)
    if isinstance(e, SymExpr):
        return sym_power(character(e.arg, group), e.k)
    if isinstance(e, TensorExpr):
        return tensor(character(e.left, group), character(e.right, group))
    if isinstance(e, QuotExpr):
        _check_quot(e, group)
        return character(e.arg, group) - character(_SUB_EXPR[e.embed], group)
    raise TypeError(e)


def dimension(e: Expr, group: GroupFamily) -> int:
    """Dimension by direct counting, independent of characters."""
    if isinstance(e, HExpr):
        return group.std_dim
    if isinstance(e, Irrep):
        try:
            return weyl_dim(group, as_partition(group, e.partition))
        except ValueError as exc:
            raise ExprError(str(exc)) from None
    if isinstance(e, LieExpr):
        if e.degree < 1:
            raise ExprError("lie(d) needs d >= 1")
        return witt_dim(group.std_dim, e.degree)
    if isinstance(e, WedgeExpr):
        return comb(dimension(e.arg, group), e.k)
    if isinstance(e, SymExpr):
        return comb(dimension(e.arg, group) + e.k - 1, e.k)
    if isinstance(e, TensorExpr):
        return dimension(e.left, group) * dimension(e.right, group)
    if isinstance(e, QuotExpr):
        _check_quot(e, group)
        return dimension(e.arg, group) - dimension(_SUB_EXPR[e.embed], group)
    raise TypeError(e)
