"""Recursive-descent parser for the concrete term syntax.

Grammar (``README.md`` has the user-facing version)::

    term    ::= lam | sum
    lam     ::= ("λ" | "\\" | "fun") IDENT ":" type "." term
    sum     ::= prod (("+" | "-") prod)*
    prod    ::= app ("*" app)*
    app     ::= head atom*
    head    ::= "rec" atom atom atom | ("fst" | "snd") atom | atom
    atom    ::= IDENT | NUM | "S" | RAT | ORACLE ["(" term ("," term)* ")"]
              | ("μ" | "mu") ["[" IDENT "]"] atom
              | "<" term "," term ">" | "|" sum "|" | "(" term ")"
    type    ::= tprod ["->" type]
    tprod   ::= tatom ("*" tatom)*
    tatom   ::= NUM | "N" | "Nat" | "(" type ")"

``NUM`` in type position is the pure type of that level.  ``RAT`` is
``#p`` or ``#p/q`` with optional minus sign.  ``|a - b|`` is absolute
difference; any other ``|e|`` is ``e`` itself.  Comments run from ``--``
to end of line.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .syntax import (App, BinOp, Fst, Lam, Mu, Num, Oracle, Pair, RatLit, Rec,
                     Snd, Succ, Term, Var)
from .types import NAT, Arrow, Prod, Ty, pure

_TOKEN = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<rat>\#-?\d+(?:/\d+)?)
  | (?P<oracle>\?[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>->|→|[λ\\.:()<>,|+\-−*\[\]μ])
""", re.VERBOSE)

KEYWORDS = {"rec", "fst", "snd", "mu", "fun", "S"}


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.pos}"


def tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "sym":
                tok = {"→": "->", "−": "-", "\\": "λ"}.get(tok, tok)
            out.append(_Tok(kind, tok, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, free):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.scope: list[str] = []
        self.free = set(free) if free is not None else None
        self.bars = 0

    # token helpers

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def at(self, *texts) -> bool:
        t = self.tok
        return t.kind in ("sym", "ident") and t.text in texts

    def expect(self, text) -> _Tok:
        if not (self.tok.kind in ("sym", "ident") and self.tok.text == text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")
        tok = self.tok
        self.i += 1
        return tok

    def nested(self, fn):
        saved, self.bars = self.bars, 0
        try:
            return fn()
        finally:
            self.bars = saved

    # types

    def parse_type(self) -> Ty:
        left = self.parse_tprod()
        if self.at("->"):
            self.i += 1
            return Arrow(left, self.parse_type())
        return left

    def parse_tprod(self) -> Ty:
        t = self.parse_tatom()
        while self.at("*"):
            self.i += 1
            t = Prod(t, self.parse_tatom())
        return t

    def parse_tatom(self) -> Ty:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return pure(int(tok.text))
        if tok.kind == "ident" and tok.text in ("N", "Nat"):
            self.i += 1
            return NAT
        if self.at("("):
            self.i += 1
            t = self.parse_type()
            self.expect(")")
            return t
        raise self.error(f"expected a type, got {tok.text or 'end of input'!r}")

    # terms

    def parse_term(self) -> Term:
        if self.at("λ", "fun"):
            self.i += 1
            name_tok = self.tok
            if name_tok.kind != "ident" or name_tok.text in KEYWORDS:
                raise self.error("expected a variable name after λ")
            self.i += 1
            self.expect(":")
            ty = self.parse_type()
            self.expect(".")
            self.scope.append(name_tok.text)
            try:
                body = self.parse_term()
            finally:
                self.scope.pop()
            return Lam(name_tok.text, ty, body)
        return self.parse_sum()

    def parse_sum(self) -> Term:
        t = self.parse_prod()
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            t = BinOp(op, t, self.parse_prod())
        return t

    def parse_prod(self) -> Term:
        t = self.parse_app()
        while self.at("*"):
            self.i += 1
            t = BinOp("*", t, self.parse_app())
        return t

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("num", "rat", "oracle"):
            return True
        if t.kind == "ident":
            return t.text not in ("rec", "fst", "snd", "fun")
        if t.kind == "sym":
            if t.text == "|":
                return self.bars == 0
            return t.text in ("(", "<", "μ")
        return False

    def parse_app(self) -> Term:
        if self.at("rec"):
            self.i += 1
            base = self.parse_atom()
            step = self.parse_atom()
            arg = self.parse_atom()
            t: Term = Rec(base, step, arg)
        elif self.at("fst", "snd"):
            kw = self.tok.text
            self.i += 1
            a = self.parse_atom()
            t = Fst(a) if kw == "fst" else Snd(a)
        elif self.at("λ", "fun"):
            return self.parse_term()
        else:
            t = self.parse_atom()
        while self.starts_atom() or self.at("λ", "fun"):
            if self.at("λ", "fun"):
                # trailing lambda extends as far right as possible
                t = App(t, self.parse_term())
                break
            t = App(t, self.parse_atom())
        return t

    def parse_atom(self) -> Term:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text))
        if tok.kind == "rat":
            self.i += 1
            return RatLit(Fraction(tok.text[1:]))
        if tok.kind == "oracle":
            self.i += 1
            args = []
            if self.at("("):
                self.i += 1

                def _args():
                    args.append(self.parse_term())
                    while self.at(","):
                        self.i += 1
                        args.append(self.parse_term())

                self.nested(_args)
                self.expect(")")
            return Oracle(tok.text[1:], tuple(args))
        if tok.kind == "ident":
            if tok.text == "S":
                self.i += 1
                return Succ()
            if tok.text == "mu":
                return self.parse_mu()
            if tok.text in KEYWORDS:
                raise self.error(f"keyword {tok.text!r} cannot start an argument; add parentheses")
            self.i += 1
            if tok.text not in self.scope and (self.free is None or tok.text not in self.free):
                raise self.error(f"unknown identifier {tok.text!r}", tok)
            return Var(tok.text)
        if self.at("μ"):
            return self.parse_mu()
        if self.at("("):
            self.i += 1
            t = self.nested(self.parse_term)
            self.expect(")")
            return t
        if self.at("<"):
            self.i += 1
            a = self.nested(self.parse_term)
            self.expect(",")
            b = self.nested(self.parse_term)
            self.expect(">")
            return Pair(a, b)
        if self.at("|") and self.bars == 0:
            self.i += 1
            self.bars += 1
            try:
                inner = self.parse_sum()
            finally:
                self.bars -= 1
            self.expect("|")
            if isinstance(inner, BinOp) and inner.op == "-":
                return BinOp("absdiff", inner.left, inner.right)
            return inner
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def parse_mu(self) -> Term:
        self.i += 1
        label = None
        if self.at("["):
            self.i += 1
            if self.tok.kind != "ident":
                raise self.error("expected a witness label")
            label = self.tok.text
            self.i += 1
            self.expect("]")
        return Mu(self.parse_atom(), label)


def parse_term(text: str, free=None) -> Term:
    """Parse ``text`` into a Term.

    ``free`` lists identifiers that may occur unbound (environment
    parameters such as ``Y`` or ``Z``).  Any other unbound identifier is
    an error.
    """
    p = _Parser(text, free if free is not None else ())
    t = p.parse_term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after end of term")
    return t


def parse_type(text: str) -> Ty:
    p = _Parser(text, ())
    t = p.parse_type()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r} after end of type")
    return t
