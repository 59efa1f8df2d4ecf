"""Phalanxes: nets indexed by finite sets of points under inclusion."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable

from .budget import DEFAULT_PRECISION
from .coding import bincode
from .encode.points import BairePoint, HostPoint, TablePoint, lex_compare, lex_compare_prefix
from .encode.reals import Real, as_real, compare, dyadic
from .errors import OutOfFuel, WorkbenchError
from .funct import InJ, NotInJ


def _key(p):
    if isinstance(p, Fraction):
        return (0, p, "")
    if isinstance(p, TablePoint):
        return (1, 0, str(p))
    return (2, 0, repr(p))


@dataclass(frozen=True)
class DirectedIndex:
    """A finite set of points; the order is inclusion, joins are unions."""

    elements: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))

    @classmethod
    def of(cls, *points) -> "DirectedIndex":
        return cls(frozenset(points))

    def __le__(self, other: "DirectedIndex") -> bool:
        return self.elements <= other.elements

    def join(self, other: "DirectedIndex") -> "DirectedIndex":
        return DirectedIndex(self.elements | other.elements)

    __or__ = join

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements, key=_key))

    def __str__(self):
        return "{" + ", ".join(map(str, self)) + "}"


EMPTY = DirectedIndex()


@dataclass
class Net:
    """w ↦ x_w, into Cantor space (``sort='cantor'``) or [0,1] (``'unit'``).

    ``points`` is an optional finite pool; a net is *finitely generated*
    by it when x_w only depends on w ∩ points, so that for increasing nets
    the whole pool is the top index.
    """

    sort: str
    value: Callable = field(repr=False)
    points: tuple | None = None
    name: str = "net"
    generated: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sort not in ("cantor", "unit"):
            raise WorkbenchError(f"unknown net sort {self.sort!r}")

    def __call__(self, w: DirectedIndex):
        if not isinstance(w, DirectedIndex):
            w = DirectedIndex(frozenset(w))
        return self.value(w)

    def top(self) -> DirectedIndex:
        if self.points is None:
            raise WorkbenchError(f"net {self.name} has no point pool")
        return DirectedIndex(frozenset(self.points))


def cantor_le(f: BairePoint, g: BairePoint, depth: int = 64) -> bool:
    """f ≤lex g; exact for tables, prefix-wise up to ``depth`` otherwise."""
    if isinstance(f, TablePoint) and isinstance(g, TablePoint):
        return lex_compare(f, g) <= 0
    return lex_compare_prefix(f, g, depth) <= 0


def comparable_pairs(samples: Iterable[DirectedIndex]):
    samples = list(samples)
    for a in samples:
        for b in samples:
            if a is not b and a <= b:
                yield a, b


def check_increasing(net: Net, samples, precision: int = DEFAULT_PRECISION, depth: int = 64) -> bool:
    """Monotone on every comparable sampled pair.

    For the unit sort a pair fails only when x_a > x_b is certified at
    ``precision``.
    """
    cache = {}

    def val(w):
        if w not in cache:
            cache[w] = net(w)
        return cache[w]

    for a, b in comparable_pairs(samples):
        if net.sort == "cantor":
            if not cantor_le(val(a), val(b), depth):
                return False
        elif compare(val(a), val(b), precision) == 1:
            return False
    return True


def limit_monotone_cantor(net: Net | None, J: Callable, depth: int, samples=(), sample_depth: int = 64):
    """f̄depth of the lex-limit of an increasing Cantor net, bit by bit via J.

    ``J(code)`` answers membership of σ-codes in J(Y) for the functional
    Y(g, σ) = 0 ⟺ f_{index(g)} ≥lex σ*0^ω; bit n is 1 iff the code of
    f̄n*⟨1⟩ is in J.  The net itself is touched only to check
    monotonicity on ``samples``.
    """
    if samples and net is not None and not check_increasing(net, samples, depth=sample_depth):
        raise WorkbenchError("net is not increasing on the samples")
    bits = []
    for _ in range(depth):
        code = bincode(bits + [1])
        ans = J(code)
        if isinstance(ans, InJ):
            bits.append(1)
        elif isinstance(ans, NotInJ):
            bits.append(0)
        else:
            raise OutOfFuel(f"J undecided on bit {len(bits)}: {ans.reason}")
    return tuple(bits)


def lex_supremum_prefix(values: Iterable[BairePoint], depth: int) -> tuple:
    best = None
    for v in values:
        p = tuple(v(i) for i in range(depth))
        if best is None or p > best:
            best = p
    return best if best is not None else tuple([0] * depth)


# ---------------------------------------------------------------- index codes


def encode_index(w: DirectedIndex) -> TablePoint:
    """g(0) = k, g(1 + i + k·m) = p_i(m) for the k points of w in order."""
    pts = list(w)
    if not all(isinstance(p, TablePoint) for p in pts):
        raise WorkbenchError("only table points have index codes")
    k = len(pts)
    if k == 0:
        return TablePoint((0,), (0,))
    M = max(p.support for p in pts)
    P = lcm(*(len(p.tail) for p in pts))
    prefix = [k] + [pts[i](m) for m in range(M) for i in range(k)]
    tail = [pts[i](m) for m in range(M, M + P) for i in range(k)]
    return TablePoint(tuple(prefix), tuple(tail))


def decode_index(g: BairePoint) -> DirectedIndex:
    k = g(0)
    if isinstance(g, TablePoint):
        p = len(g.tail)
        m0 = g.support // max(k, 1) + 1
        pts = []
        for i in range(k):
            vals = [g(1 + i + k * m) for m in range(m0 + p)]
            pts.append(TablePoint(tuple(vals[:m0]), tuple(vals[m0:])))
        return DirectedIndex(frozenset(pts))
    return DirectedIndex(frozenset(
        HostPoint(lambda m, i=i: g(1 + i + k * m), f"idx{i}") for i in range(k)))


# ---------------------------------------------------------------- moduli


def check_modulus(net: Net, limit, mod: Callable, k_max: int, samples_per_k: int = 4,
                  extra_points=(), precision: int = DEFAULT_PRECISION, seed: int = 0) -> bool:
    """For k ≤ k_max and sampled d ⊇ mod(k): |x_d - limit| < 2^-k.

    mod(k) itself is always sampled.  An inequality that cannot be
    certified at ``precision`` counts as a failure.
    """
    if net.sort != "unit":
        raise WorkbenchError("moduli are checked on unit-interval nets")
    rng = random.Random(seed)
    pool = list(extra_points) + list(net.points or ())
    limit = as_real(limit)
    for k in range(k_max + 1):
        base = mod(k)
        if not isinstance(base, DirectedIndex):
            base = DirectedIndex(frozenset(base))
        tests = [base]
        for _ in range(samples_per_k if pool else 0):
            extra = rng.sample(pool, rng.randint(1, min(len(pool), 4)))
            tests.append(base | DirectedIndex(frozenset(extra)))
        for d in tests:
            gap = abs(as_real(net(d)) - limit)
            if compare(gap, Real.const(dyadic(k)), max(precision, k + 2)) != -1:
                return False
    return True
