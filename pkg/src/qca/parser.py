"""Expression language for the CLI.

Precedence from loosest to tightest: ``+ -``, ``&v``, ``&r``, ``&c``,
``^`` and ``.``, ``*``, unary minus.  All binary operators are
left-associative.  Literals are ``Id``, blades such as ``e1we2`` and
rationals ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .scalars import Scalar, fmt_scalar, norm


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Num:
    value: Scalar


@dataclass(frozen=True)
class Blade:
    indices: tuple[int, ...]  # as written, e.g. (2, 1) for e2we1


@dataclass(frozen=True)
class Neg:
    operand: Node


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Node, ...]


Node = Union[Num, Blade, Neg, BinOp, Call]

# name -> allowed arities (None: one or more)
FUNCTIONS: dict[str, tuple[int, ...] | None] = {
    "gco": (1,),
    "cco": (1,),
    "antipode": (1,),
    "rev": (1,),
    "grinv": (1,),
    "erg": (1,),
    "counit": (1,),
    "bracket": None,
    "meet": (2,),
    "vee": (2,),
    "lc": (2,),
    "rc": (2,),
    "grade": (2,),
}

# loosest first
LEVELS: tuple[tuple[str, ...], ...] = (("+", "-"), ("&v",), ("&r",), ("&c",), ("^", "."), ("*",))

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:/\d+)?)"
    r"|(?P<blade>e\d+(?:we\d+)*)(?![A-Za-z0-9_])"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>&[vrc]|[-+^.*(),])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {src[i]!r}", i)
        kind = m.lastgroup
        assert kind is not None
        out.append(Token(kind, m.group(kind), m.start(kind)))
        i = m.end()
    out.append(Token("end", "", n))
    return out


class _Parser:
    def __init__(self, src: str, dim: int | None):
        self.toks = tokenize(src)
        self.i = 0
        self.dim = dim

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.kind != "op" or self.tok.text != text:
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        return self.take()

    def parse(self) -> Node:
        node = self.level(0)
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def level(self, k: int) -> Node:
        if k == len(LEVELS):
            return self.unary()
        node = self.level(k + 1)
        while self.tok.kind == "op" and self.tok.text in LEVELS[k]:
            op = self.take().text
            node = BinOp(op, node, self.level(k + 1))
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text in ("+", "-"):
            sign = self.take().text
            inner = self.unary()
            return Neg(inner) if sign == "-" else inner
        return self.primary()

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.take()
            p, _, q = t.text.partition("/")
            if q and int(q) == 0:
                raise ParseError("division by zero in literal", t.pos)
            return Num(norm(Fraction(int(p), int(q)) if q else int(p)))
        if t.kind == "blade":
            self.take()
            idx = tuple(int(x) for x in t.text[1:].split("we"))
            for i in idx:
                if i < 1 or (self.dim is not None and i > self.dim):
                    raise ParseError(f"generator index {i} out of range 1..{self.dim}", t.pos)
            return Blade(idx)
        if t.kind == "name":
            self.take()
            if t.text == "Id":
                return Blade(())
            if t.text not in FUNCTIONS:
                raise ParseError(f"unknown identifier {t.text!r}", t.pos)
            self.expect("(")
            args = [self.level(0)]
            while self.tok.kind == "op" and self.tok.text == ",":
                self.take()
                args.append(self.level(0))
            self.expect(")")
            arity = FUNCTIONS[t.text]
            if arity is not None and len(args) not in arity:
                raise ParseError(f"{t.text} takes {arity[0]} argument(s), got {len(args)}", t.pos)
            return Call(t.text, tuple(args))
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.level(0)
            self.expect(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse(src: str, dim: int | None = None) -> Node:
    """Parse ``src``; with ``dim`` given, generator indices above it are rejected."""
    return _Parser(src, dim).parse()


def format_expr(node: Node) -> str:
    """Fully parenthesized text that parses back to an equal tree."""
    if isinstance(node, Num):
        s = fmt_scalar(node.value)
        return f"(-{s[1:]})" if s.startswith("-") else s
    if isinstance(node, Blade):
        return "e" + "we".join(str(i) for i in node.indices) if node.indices else "Id"
    if isinstance(node, Neg):
        return f"-{format_expr(node.operand)}"
    if isinstance(node, BinOp):
        return f"({format_expr(node.left)} {node.op} {format_expr(node.right)})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(format_expr(a) for a in node.args)})"
    raise TypeError(f"not an expression node: {node!r}")
