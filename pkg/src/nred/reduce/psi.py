"""Positive functions on [0,1] and finite covers by their balls.

Ψ is only ever queried at rational points; a Real argument must carry
an exact value.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..encode.reals import Real, as_real, tilde_clamp
from ..errors import WorkbenchError

ONE = Fraction(1)
ZERO = Fraction(0)


def rat(x) -> Fraction:
    if isinstance(x, Real):
        if x.exact is None:
            raise WorkbenchError(f"Ψ is queried at rational points only, got {x}")
        return x.exact
    return Fraction(x)


class Psi:
    name = "Ψ"

    def value(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def __call__(self, x) -> Fraction:
        v = Fraction(self.value(rat(x)))
        if v <= 0:
            raise WorkbenchError(f"{self.name} is not positive at {x}: {v}")
        return v

    def pieces(self):
        """[(a, b, v)] with Ψ = v on [a, b) (the last piece closed), or None."""
        return None

    def min_on(self, lo: Fraction, hi: Fraction, samples: int = 256) -> Fraction:
        ps = self.pieces()
        if ps is not None:
            return min(v for a, b, v in ps if a <= hi and (lo < b or b == ONE))
        pts = [lo + (hi - lo) * Fraction(i, samples) for i in range(samples + 1)]
        return min(self(p) for p in pts)

    def breakpoints(self) -> tuple:
        ps = self.pieces()
        return tuple(a for a, _b, _v in ps[1:]) if ps else ()

    def __repr__(self):
        return self.name


class PiecewisePsi(Psi):
    """Ψ = values[i] on [breaks[i-1], breaks[i]) with breaks[-1] = 0, breaks[n] = 1."""

    def __init__(self, breaks=(), values=(Fraction(1, 2),), name=None):
        self.breaks = tuple(Fraction(b) for b in breaks)
        self.values = tuple(Fraction(v) for v in values)
        if len(self.values) != len(self.breaks) + 1:
            raise WorkbenchError("need one more value than breakpoints")
        if any(v <= 0 for v in self.values):
            raise WorkbenchError("Ψ must be positive")
        if list(self.breaks) != sorted(set(self.breaks)) or any(not 0 < b < 1 for b in self.breaks):
            raise WorkbenchError("breakpoints must increase strictly inside (0, 1)")
        self.name = name or ("Ψ≡" + str(self.values[0]) if not self.breaks else
                             "Ψ[" + ";".join(f"{v}" for v in self.values) + "]")

    def value(self, x):
        return self.values[bisect_right(self.breaks, x)]

    def pieces(self):
        ends = (ZERO,) + self.breaks + (ONE,)
        return [(ends[i], ends[i + 1], v) for i, v in enumerate(self.values)]


def const_psi(v) -> PiecewisePsi:
    return PiecewisePsi((), (Fraction(v),))


class HostPsi(Psi):
    def __init__(self, fn: Callable, name="Ψ"):
        self.fn = fn
        self.name = name

    def value(self, x):
        return self.fn(x)


class NinPsi(Psi):
    """t(Z)(x) = 2^-(Z(x)+1)."""

    def __init__(self, Z: Callable, name=None):
        self.Z = Z
        self.name = name or f"t({getattr(Z, '__name__', 'Z')})"

    def value(self, x):
        return Fraction(1, 2 ** (self.Z(x) + 1))


class CantorPsi(Psi):
    """t(Y, A)(x) = 1/8 off A and 2^-(Y(x)+5) on A."""

    def __init__(self, Y: Callable, A, name=None):
        self.Y, self.A = Y, A
        self.name = name or "t(Y,A)"

    def value(self, x):
        if self.A(x) == 1:
            return Fraction(1, 2 ** (self.Y(x) + 5))
        return Fraction(1, 8)


class TermPsi(Psi):
    """A closed term of type 0 -> 0 acting on rational codes."""

    def __init__(self, text: str, fuel: int = 100_000, oracles=None):
        from ..tcore import Arrow, NAT, parse_term, typecheck

        self.term = parse_term(text)
        if typecheck(self.term, {}, oracles) != Arrow(NAT, NAT):
            raise WorkbenchError("a term-backed Ψ needs type 0 -> 0 on rational codes")
        self.fuel = fuel
        self.oracles = oracles
        self.name = str(self.term)

    def value(self, x):
        from ..coding import rational_code, rational_decode
        from ..tcore import eval_term, App, Num

        return rational_decode(eval_term(App(self.term, Num(rational_code(x))), {}, self.oracles, self.fuel))


# ---------------------------------------------------------------- covers


@dataclass(frozen=True)
class Cover:
    """Finitely many open balls B(c, r) with rational data, centers in [0,1]."""

    centers: tuple
    radii: tuple

    def __post_init__(self):
        cs = tuple(tilde_clamp(as_real(c)).exact if not isinstance(c, Fraction) else min(ONE, max(ZERO, c))
                   for c in self.centers)
        rs = tuple(Fraction(r) for r in self.radii)
        if len(cs) != len(rs):
            raise WorkbenchError("centers and radii differ in length")
        if any(c is None for c in cs):
            raise WorkbenchError("cover centers need exact values")
        if any(r <= 0 for r in rs):
            raise WorkbenchError("radii must be positive")
        object.__setattr__(self, "centers", cs)
        object.__setattr__(self, "radii", rs)

    @classmethod
    def canonical(cls, psi: Psi, centers) -> "Cover":
        cs = [min(ONE, max(ZERO, rat(c))) for c in centers]
        return cls(tuple(cs), tuple(psi(c) for c in cs))

    def __len__(self):
        return len(self.centers)

    def intervals(self):
        return [(c - r, c + r) for c, r in zip(self.centers, self.radii)]

    def reals(self):
        return [Real.const(c) for c in self.centers]

    def to_json(self):
        return {"centers": [str(c) for c in self.centers], "radii": [str(r) for r in self.radii]}
