"""Expression language for forms.

    expr    := term (("perp" | "+") term)*
    term    := factor (("tensor" | "*") factor)*
    factor  := INT "x" factor | literal | func | "(" expr ")"
    literal := "<" entry ("," entry)* ">" | "H" | "0form"
    entry   := ["-"] atom ("*" atom)*        atom: identifier or integer
    func    := ("S" | "L") "^" INT "(" expr ")"
             | ("TS" | "qS") "(" INT ["," IDENT "," IDENT] ")"

Integer atoms inside ``<...>`` denote their rational square class, so
``<4>`` is ``<1>`` and ``<-8>`` is ``<-2>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..closed_forms import TraceParams, q_form, trace_form
from ..forms import ZERO, DiagonalForm, diag, hyperbolic, perp, tensor
from ..power_engine import lambda_power, sym_power
from ..squareclass import NEG_ONE, ONE, SquareClass, class_mul, rational_class, sq

__all__ = [
    "ParseError",
    "Lit", "Hyp", "Zero", "Repeat", "Perp", "Tensor", "Sym", "Ext", "Trace", "QPart",
    "parse", "to_text", "evaluate",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{loc}{message}")


@dataclass(frozen=True)
class Lit:
    entries: tuple[SquareClass, ...]


@dataclass(frozen=True)
class Hyp:
    pass


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Repeat:
    count: int
    body: "Expr"


@dataclass(frozen=True)
class Perp:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sym:
    k: int
    body: "Expr"


@dataclass(frozen=True)
class Ext:
    k: int
    body: "Expr"


@dataclass(frozen=True)
class Trace:
    n: int
    a: str | None = None
    b: str | None = None


@dataclass(frozen=True)
class QPart:
    n: int
    a: str | None = None
    b: str | None = None


Expr = Union[Lit, Hyp, Zero, Repeat, Perp, Tensor, Sym, Ext, Trace, QPart]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<zero>0form\b)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[<>,()+*^-])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # int, ident, sym, zero, end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = mt.lastgroup
        if kind == "ws":
            chunk = mt.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append(_Tok(kind, mt.group(), line, pos - line_start + 1))
        pos = mt.end()
    toks.append(_Tok("end", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, ahead: int = 1) -> _Tok:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def take(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def at(self, text: str, kind: str | None = None) -> bool:
        return self.tok.text == text and (kind is None or self.tok.kind == kind)

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.take()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        return int(self.take().text)

    def expect_ident(self) -> str:
        if self.tok.kind != "ident":
            raise self.error(f"expected an identifier, found {self.tok.text or 'end of input'!r}")
        return self.take().text

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("perp", "ident"):
            self.take()
            node = Perp(node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*") or self.at("tensor", "ident"):
            self.take()
            node = Tensor(node, self.factor())
        return node

    def factor(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            if not (self.peek().kind == "ident" and self.peek().text == "x"):
                raise self.error("expected 'x' after repetition count", self.peek())
            self.take()
            self.take()
            return Repeat(int(tok.text), self.factor())
        if tok.text == "-" and self.peek().kind == "int":
            raise self.error("repetition count must be non-negative")
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.text == "<":
            return self.literal()
        if tok.kind == "zero":
            self.take()
            return Zero()
        if tok.kind == "ident":
            return self.func()
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def literal(self) -> Lit:
        self.expect("<")
        entries = [self.entry()]
        while self.at(","):
            self.take()
            entries.append(self.entry())
        self.expect(">")
        return Lit(tuple(entries))

    def entry(self) -> SquareClass:
        cls = ONE
        if self.at("-"):
            self.take()
            cls = NEG_ONE
        cls = class_mul(cls, self.atom())
        while self.at("*"):
            self.take()
            cls = class_mul(cls, self.atom())
        return cls

    def atom(self) -> SquareClass:
        tok = self.tok
        if tok.kind == "int":
            self.take()
            if int(tok.text) == 0:
                raise self.error("diagonal entries must be nonzero", tok)
            return rational_class(int(tok.text))
        if tok.kind == "ident":
            self.take()
            return sq(tok.text)
        raise self.error(f"expected a diagonal entry, found {tok.text or 'end of input'!r}")

    def func(self) -> Expr:
        tok = self.take()
        name = tok.text
        if name == "H":
            return Hyp()
        if name in ("S", "L"):
            self.expect("^")
            k = self.expect_int()
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Sym(k, body) if name == "S" else Ext(k, body)
        if name in ("TS", "qS"):
            self.expect("(")
            n = self.expect_int()
            a = b = None
            if self.at(","):
                self.take()
                a = self.expect_ident()
                self.expect(",")
                b = self.expect_ident()
            self.expect(")")
            return Trace(n, a, b) if name == "TS" else QPart(n, a, b)
        raise ParseError(f"unknown function or literal {name!r}", tok.line, tok.col)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def to_text(node: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e``."""
    if isinstance(node, Lit):
        return "<" + ", ".join(str(c) for c in node.entries) + ">"
    if isinstance(node, Hyp):
        return "H"
    if isinstance(node, Zero):
        return "0form"
    if isinstance(node, Repeat):
        return f"{node.count} x {_as_factor(node.body)}"
    if isinstance(node, Perp):
        right = to_text(node.right)
        if isinstance(node.right, Perp):
            right = f"({right})"
        return f"{to_text(node.left)} + {right}"
    if isinstance(node, Tensor):
        left = _as_factor(node.left) if isinstance(node.left, Perp) else to_text(node.left)
        return f"{left} * {_as_factor(node.right)}"
    if isinstance(node, (Sym, Ext)):
        name = "S" if isinstance(node, Sym) else "L"
        return f"{name}^{node.k}({to_text(node.body)})"
    if isinstance(node, (Trace, QPart)):
        name = "TS" if isinstance(node, Trace) else "qS"
        extra = f", {node.a}, {node.b}" if node.a is not None else ""
        return f"{name}({node.n}{extra})"
    raise TypeError(f"not an expression node: {node!r}")


def _as_factor(node: Expr) -> str:
    text = to_text(node)
    return f"({text})" if isinstance(node, (Perp, Tensor)) else text


def _params(node: Trace | QPart) -> TraceParams:
    return TraceParams(node.n, node.a or "a", node.b or "b", concrete=True)


def evaluate(node: Expr) -> DiagonalForm:
    if isinstance(node, Lit):
        return diag(*node.entries)
    if isinstance(node, Hyp):
        return hyperbolic(1)
    if isinstance(node, Zero):
        return ZERO
    if isinstance(node, Repeat):
        return evaluate(node.body).times(node.count)
    if isinstance(node, Perp):
        return perp(evaluate(node.left), evaluate(node.right))
    if isinstance(node, Tensor):
        return tensor(evaluate(node.left), evaluate(node.right))
    if isinstance(node, Sym):
        return sym_power(evaluate(node.body), node.k)
    if isinstance(node, Ext):
        return lambda_power(evaluate(node.body), node.k)
    if isinstance(node, Trace):
        return trace_form(_params(node))
    if isinstance(node, QPart):
        if node.n % 2:
            raise ValueError("qS needs even n")
        return q_form(_params(node))
    raise TypeError(f"not an expression node: {node!r}")
