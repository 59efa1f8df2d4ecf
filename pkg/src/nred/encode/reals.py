"""Exact reals as fast-converging Cauchy sequences of rationals.

A Real answers ``approx(m)`` with a rational q such that
|x - q| <= 2^-(m+1).  There is no equality test: reals are compared only
through approximations (``compare``) or by the apartness search
(``real_apart``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..budget import DEFAULT_FUEL, Meter
from ..coding import rational_code, rational_decode
from ..errors import OutOfFuel
from .points import BairePoint, HostPoint, b_map


def dyadic(m: int) -> Fraction:
    return Fraction(1, 2 ** m)


class Real:
    __slots__ = ("_fn", "normalized", "exact", "label", "_cache")

    def __init__(self, fn: Callable, normalized: bool = False, exact=None, label: str | None = None):
        # fn(m, meter) -> Fraction within 2^-(m+1) of the value
        self._fn = fn
        self.normalized = normalized
        self.exact = Fraction(exact) if exact is not None else None
        self.label = label
        self._cache: dict = {}

    @classmethod
    def const(cls, q, label=None) -> "Real":
        q = Fraction(q)
        return cls(lambda m, meter: q, exact=q, label=label or str(q))

    def approx(self, m: int, meter: Meter | None = None) -> Fraction:
        if m < 0:
            raise ValueError("precision must be non-negative")
        hit = self._cache.get(m)
        if hit is not None:
            q, cost = hit
            if meter is not None and cost:
                meter.tick(cost)
            return q
        sub = Meter(meter.left if meter is not None else DEFAULT_FUEL)
        try:
            q = Fraction(self._fn(m, sub))
        except OutOfFuel:
            if meter is not None:
                meter.tick(meter.left + 1)
            raise
        if meter is not None and sub.spent:
            meter.tick(sub.spent)
        self._cache[m] = (q, sub.spent)
        return q

    # arithmetic

    def __add__(self, other):
        other = as_real(other)
        ex = self.exact + other.exact if self.exact is not None and other.exact is not None else None
        return Real(lambda m, mt: self.approx(m + 1, mt) + other.approx(m + 1, mt), exact=ex)

    __radd__ = __add__

    def __neg__(self):
        ex = -self.exact if self.exact is not None else None
        return Real(lambda m, mt: -self.approx(m, mt), exact=ex)

    def __sub__(self, other):
        return self + (-as_real(other))

    def __rsub__(self, other):
        return as_real(other) - self

    def __mul__(self, other):
        other = as_real(other)
        ex = self.exact * other.exact if self.exact is not None and other.exact is not None else None
        if other.exact is not None:
            c = other.exact
            if c == 0:
                return Real.const(0)
            shift = max(0, int(abs(c)).bit_length())
            return Real(lambda m, mt: c * self.approx(m + shift, mt), exact=ex)
        if self.exact is not None:
            return other * self

        def fn(m, mt):
            bound = abs(self.approx(0, mt)) + abs(other.approx(0, mt)) + 2
            k = m + int(bound).bit_length()
            return self.approx(k, mt) * other.approx(k, mt)

        return Real(fn, exact=ex)

    __rmul__ = __mul__

    def __abs__(self):
        ex = abs(self.exact) if self.exact is not None else None
        return Real(lambda m, mt: abs(self.approx(m, mt)), exact=ex)

    def __repr__(self):
        if self.exact is not None:
            return f"Real({self.exact})"
        return f"Real(≈{float(self.approx(30)):.9g})"

    __str__ = __repr__


def as_real(x) -> Real:
    return x if isinstance(x, Real) else Real.const(x)


def rmin(x, y) -> Real:
    x, y = as_real(x), as_real(y)
    ex = min(x.exact, y.exact) if x.exact is not None and y.exact is not None else None
    return Real(lambda m, mt: min(x.approx(m, mt), y.approx(m, mt)), exact=ex)


def rmax(x, y) -> Real:
    x, y = as_real(x), as_real(y)
    ex = max(x.exact, y.exact) if x.exact is not None and y.exact is not None else None
    return Real(lambda m, mt: max(x.approx(m, mt), y.approx(m, mt)), exact=ex)


def approx(x: Real, m: int, meter: Meter | None = None) -> Fraction:
    """Rational within 2^-(m+1) of x."""
    return as_real(x).approx(m, meter)


def compare(x, y, m: int, meter: Meter | None = None) -> int | None:
    """-1 if x < y is certified at precision m, 1 if x > y, else None."""
    d = approx(as_real(x), m + 1, meter) - approx(as_real(y), m + 1, meter)
    eps = dyadic(m + 1)
    if d > eps:
        return 1
    if d < -eps:
        return -1
    return None


@dataclass(frozen=True)
class Separated:
    """Certificate that |x - y| > 2^-(k+1)."""

    k: int


def real_apart(x: Real, y: Real, fuel=None) -> Separated:
    """Search k with [|x - y|](k) > 2^-k.

    Raises OutOfFuel when no separation shows up within the budget, which
    is all one can say about reals that may be equal.
    """
    from ..budget import as_meter

    meter = as_meter(fuel)
    diff = abs(as_real(x) - as_real(y))
    k = 0
    while True:
        meter.tick()
        if diff.approx(k, meter) > dyadic(k):
            return Separated(k)
        k += 1


def hat_normalize(f: BairePoint) -> Real:
    """Read f(m) as rational codes and repair them into a Real.

    The raw values q_m are scanned in order; at the first m with
    |q_m - q_j| > 2^-(m+1) + 2^-(j+1) for some j < m, the sequence is
    frozen at q_{m-1}.  Approximations are read one index ahead, which is
    what makes the frozen sequence meet the 2^-(m+1) error bound.  Inputs
    that never violate the condition keep their value.
    """
    state = {"qs": [], "frozen": False}

    def raw(n, meter):
        qs = state["qs"]
        while len(qs) <= n and not state["frozen"]:
            m = len(qs)
            q = rational_decode(f.query(m, meter))
            ok = all(abs(q - qj) <= dyadic(m + 1) + dyadic(j + 1) for j, qj in enumerate(qs))
            if ok:
                qs.append(q)
            else:
                state["frozen"] = True
        return qs[n] if n < len(qs) else qs[-1]

    return Real(lambda m, meter: raw(m + 1, meter), normalized=True, label=f"hat({f})")


def tilde_clamp(x: Real) -> Real:
    """Clamp into [0,1]; a 1-Lipschitz map that fixes [0,1]."""
    x = as_real(x)
    ex = min(Fraction(1), max(Fraction(0), x.exact)) if x.exact is not None else None
    return Real(lambda m, mt: min(Fraction(1), max(Fraction(0), x.approx(m, mt))),
                normalized=True, exact=ex, label=x.label)


def cantor_real(f: BairePoint) -> Real:
    """The real sum_n b(f)(n) 2^-(n+1) in [0,1]."""
    from .points import TablePoint

    bf = b_map(f)
    ex = None
    if isinstance(bf, TablePoint):
        ex = _eventually_periodic_value(bf)

    def fn(m, meter):
        s = Fraction(0)
        for n in range(m + 1):
            if bf.query(n, meter):
                s += dyadic(n + 1)
        return s

    return Real(fn, normalized=True, exact=ex, label=f"r({f})")


def _eventually_periodic_value(bits) -> Fraction:
    p, t = bits.prefix, bits.tail
    head = sum((Fraction(b, 2 ** (i + 1)) for i, b in enumerate(p)), Fraction(0))
    period = sum((Fraction(b, 2 ** (i + 1)) for i, b in enumerate(t)), Fraction(0))
    # tail repeats every len(t) bits starting at position len(p)
    tail_val = period / (1 - Fraction(1, 2 ** len(t)))
    return head + tail_val / 2 ** len(p)


def to_point(x: Real) -> BairePoint:
    """Baire representation m -> code(approx(x, m))."""
    return HostPoint(lambda m: rational_code(x.approx(m)), f"code({x})")


def dyadic_approx(x: Real, m: int, meter: Meter | None = None) -> int:
    """Integer a with |a / 2^(m+2) - (x + 1)| < 2^-(m+1).

    Shifting by one keeps the integer non-negative for x >= -1; this is the
    form in which reals are handed to oracle machines.
    """
    q = approx(x, m + 1, meter) + 1
    a = round(q * 2 ** (m + 2))
    return max(0, a)
