"""Type-1 objects: Baire points, Cantor points, characteristic functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..budget import Meter, as_meter
from ..errors import WorkbenchError


class BairePoint:
    """A total function N -> N.

    ``query`` optionally charges a meter; ``__call__`` uses the point's
    own default budget.
    """

    def query(self, n: int, meter: Meter | None = None) -> int:
        raise NotImplementedError

    def __call__(self, n: int) -> int:
        return self.query(n)

    def prefix(self, n: int, meter: Meter | None = None) -> tuple:
        return tuple(self.query(i, meter) for i in range(n))


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass(frozen=True)
class TablePoint(BairePoint):
    """Finite table followed by a periodic tail word.

    f(n) = prefix[n] for n < len(prefix), else
    tail[(n - len(prefix)) % len(tail)].  A constant tail c is ``(c,)``.
    The representation is canonicalised on construction, so equal
    functions have equal tables.
    """

    prefix: tuple = ()
    tail: tuple = (0,)

    def __post_init__(self):
        prefix = tuple(int(v) for v in self.prefix)
        tail = tuple(int(v) for v in self.tail)
        if not tail:
            raise ValueError("tail word must be non-empty")
        if any(v < 0 for v in prefix + tail):
            raise ValueError("Baire points take natural values")
        tail = _primitive_root(tail)
        while prefix and prefix[-1] == tail[-1]:
            prefix = prefix[:-1]
            tail = (tail[-1],) + tail[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    def query(self, n, meter=None):
        if meter is not None:
            meter.tick()
        if n < 0:
            raise ValueError("negative argument")
        if n < len(self.prefix):
            return self.prefix[n]
        return self.tail[(n - len(self.prefix)) % len(self.tail)]

    @property
    def support(self) -> int:
        return len(self.prefix)

    def horizon(self) -> int:
        """Every value pattern of the point shows up below this index."""
        return len(self.prefix) + len(self.tail)

    def first_zero(self) -> int | None:
        for i in range(self.horizon()):
            if self.query(i) == 0:
                return i
        return None

    def is_binary(self) -> bool:
        return all(v in (0, 1) for v in self.prefix + self.tail)

    def map(self, fn) -> "TablePoint":
        return TablePoint(tuple(fn(v) for v in self.prefix), tuple(fn(v) for v in self.tail))

    def __str__(self):
        head = ",".join(map(str, self.prefix))
        tail = "".join(map(str, self.tail)) if all(v < 10 for v in self.tail) else ",".join(map(str, self.tail))
        return f"{head}{'|' if head else ''}({tail})^ω"


@dataclass(frozen=True)
class HostPoint(BairePoint):
    fn: Callable = field(compare=False)
    name: str = "host"

    def query(self, n, meter=None):
        if meter is not None:
            meter.tick()
        return self.fn(n)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TermPoint(BairePoint):
    """A closed type-1 term, evaluated per query under a fuel budget."""

    term: object
    env: tuple = ()
    oracles: object = field(default=None, compare=False)
    fuel: int = 100_000

    def __post_init__(self):
        from ..tcore import TYPE1, typecheck

        ctx = {k: ty for k, (ty, _v) in dict(self.env).items()}
        ty = typecheck(self.term, ctx, self.oracles)
        if ty != TYPE1:
            raise WorkbenchError(f"a Baire point needs a term of type 1, got {ty}")

    @classmethod
    def parse(cls, text: str, env=None, oracles=None, fuel: int = 100_000) -> "TermPoint":
        from ..tcore import parse_term

        env = dict(env or {})
        return cls(parse_term(text, free=env.keys()), tuple(env.items()), oracles, fuel)

    def query(self, n, meter=None):
        from ..tcore import Evaluator

        m = meter if meter is not None else as_meter(self.fuel)
        ev = Evaluator(self.oracles, m)
        f = ev.ev(self.term, {k: v for k, (_ty, v) in dict(self.env).items()})
        return ev.apply(f, n)

    def __str__(self):
        return str(self.term)


def const_point(c: int) -> TablePoint:
    return TablePoint((), (c,))


def point(prefix=(), tail=0) -> TablePoint:
    """Table point from a prefix and a constant tail (int) or tail word."""
    word = (tail,) if isinstance(tail, int) else tuple(tail)
    return TablePoint(tuple(prefix), word)


def b_map(f: BairePoint) -> BairePoint:
    """b(f)(n) = 0 if f(n) = 0 else 1."""
    if isinstance(f, TablePoint):
        return f.map(lambda v: 0 if v == 0 else 1)
    return HostPoint(lambda n: 0 if f(n) == 0 else 1, f"b({f})")


def lex_compare(f: TablePoint, g: TablePoint) -> int:
    """Lexicographic comparison of table points: -1, 0 or 1.

    Two eventually periodic points agree everywhere iff they agree below
    max(support) + lcm(periods), so the comparison is exact.
    """
    from math import lcm

    bound = max(f.support, g.support) + lcm(len(f.tail), len(g.tail))
    for i in range(bound):
        a, b = f(i), g(i)
        if a != b:
            return -1 if a < b else 1
    return 0


def lex_compare_prefix(f: BairePoint, g: BairePoint, depth: int) -> int:
    """Lexicographic comparison of the first ``depth`` values."""
    for i in range(depth):
        a, b = f(i), g(i)
        if a != b:
            return -1 if a < b else 1
    return 0


@dataclass(frozen=True)
class CharSet:
    """A set given by a total 0/1-valued characteristic function."""

    member: Callable = field(compare=False)
    carrier: str = "nat"
    name: str = "X"

    def __call__(self, x) -> int:
        v = self.member(x)
        if v not in (0, 1):
            raise WorkbenchError(f"characteristic function of {self.name} returned {v!r}")
        return int(v)

    def __contains__(self, x) -> bool:
        return self(x) == 1

    def as_point(self) -> HostPoint:
        if self.carrier != "nat":
            raise WorkbenchError("only subsets of N are type-1 objects")
        return HostPoint(self, f"χ({self.name})")
