"""Abstract syntax of the term language and its pretty printer.

The printer emits the concrete syntax accepted by ``parse_term``, so
``parse_term(str(t)) == t`` for every term built from these nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .types import Ty


class Term:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    param: str
    ty: Ty
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Num(Term):
    value: int


@dataclass(frozen=True)
class Succ(Term):
    pass


@dataclass(frozen=True)
class Rec(Term):
    """Primitive recursion: rec z s 0 = z, rec z s (n+1) = s n (rec z s n)."""

    base: Term
    step: Term
    arg: Term


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class RatLit(Term):
    """A rational constant; evaluates to its natural-number code."""

    value: Fraction


@dataclass(frozen=True)
class Mu(Term):
    """Least-zero search over a type-1 argument.

    ``label`` names an optional totality witness in the oracle table.
    """

    fn: Term
    label: str | None = None


@dataclass(frozen=True)
class Oracle(Term):
    name: str
    args: tuple = field(default=())


@dataclass(frozen=True)
class BinOp(Term):
    """Arithmetic sugar: '+', '-' (truncated), '*', 'absdiff'."""

    op: str
    left: Term
    right: Term


def num(n: int) -> Term:
    return Num(n)


def apply(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


# precedence levels: 0 lambda, 1 additive, 2 multiplicative, 3 application, 4 atom


def show(t: Term, level: int = 0, bars: bool = False) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Succ):
        return "S"
    if isinstance(t, RatLit):
        v = Fraction(t.value)
        return f"#{v.numerator}" if v.denominator == 1 else f"#{v.numerator}/{v.denominator}"
    if isinstance(t, Mu):
        lbl = f"[{t.label}]" if t.label else ""
        return f"μ{lbl}({show(t.fn)})"
    if isinstance(t, Oracle):
        if not t.args:
            return f"?{t.name}"
        return f"?{t.name}(" + ", ".join(show(a) for a in t.args) + ")"
    if isinstance(t, Pair):
        return f"<{show(t.left)}, {show(t.right)}>"
    if isinstance(t, BinOp) and t.op == "absdiff":
        s = f"|{show(t.left, 1, True)} - {show(t.right, 2, True)}|"
        return f"({s})" if bars else s
    if isinstance(t, Lam):
        s = f"λ{t.param}:{t.ty}. {show(t.body, 0)}"
        return s if level <= 0 else f"({s})"
    if isinstance(t, BinOp):
        if t.op in ("+", "-"):
            s = f"{show(t.left, 1, bars)} {t.op} {show(t.right, 2, bars)}"
            return s if level <= 1 else f"({s})"
        s = f"{show(t.left, 2, bars)} * {show(t.right, 3, bars)}"
        return s if level <= 2 else f"({s})"
    if isinstance(t, App):
        s = f"{show(t.fn, 3, bars)} {show(t.arg, 4, bars)}"
        return s if level <= 3 else f"({s})"
    if isinstance(t, Rec):
        s = f"rec {show(t.base, 4, bars)} {show(t.step, 4, bars)} {show(t.arg, 4, bars)}"
        return s if level <= 3 else f"({s})"
    if isinstance(t, (Fst, Snd)):
        kw = "fst" if isinstance(t, Fst) else "snd"
        s = f"{kw} {show(t.arg, 4, bars)}"
        return s if level <= 3 else f"({s})"
    raise TypeError(f"not a term: {t!r}")


def free_vars(t: Term, bound=frozenset()) -> set[str]:
    if isinstance(t, Var):
        return set() if t.name in bound else {t.name}
    if isinstance(t, Lam):
        return free_vars(t.body, bound | {t.param})
    out: set[str] = set()
    for child in children(t):
        out |= free_vars(child, bound)
    return out


def children(t: Term) -> tuple:
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, Lam):
        return (t.body,)
    if isinstance(t, Rec):
        return (t.base, t.step, t.arg)
    if isinstance(t, (Pair, BinOp)):
        return (t.left, t.right)
    if isinstance(t, (Fst, Snd)):
        return (t.arg,)
    if isinstance(t, Mu):
        return (t.fn,)
    if isinstance(t, Oracle):
        return tuple(t.args)
    return ()


def oracle_names(t: Term) -> set[str]:
    out = {t.name} if isinstance(t, Oracle) else set()
    for c in children(t):
        out |= oracle_names(c)
    return out
