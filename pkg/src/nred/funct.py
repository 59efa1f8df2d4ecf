"""Type-2 functionals: associates, ∃², the J operator, fan bounds, providers."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable

from .budget import Meter, as_meter
from .coding import seq_decode
from .encode.points import BairePoint, HostPoint, TablePoint, point
from .encode.reals import Real, approx, as_real, dyadic, real_apart
from .errors import OutOfFuel, ProviderInvalid, WorkbenchError


# ---------------------------------------------------------------- associates


class Associate:
    """A neighbourhood function α, stored as a host function on tuples.

    ``alpha(code)`` answers on finite-sequence codes, so an associate is
    also a Baire point and can serve as a machine oracle.
    """

    def __init__(self, fn: Callable[[tuple], int], name: str = "α"):
        self._fn = fn
        self.name = name

    def at(self, sigma) -> int:
        v = self._fn(tuple(sigma))
        if not isinstance(v, int) or v < 0:
            raise WorkbenchError(f"associate {self.name} returned {v!r} on {tuple(sigma)}")
        return v

    def __call__(self, code: int) -> int:
        return self.at(seq_decode(code))

    def as_point(self) -> HostPoint:
        return HostPoint(self, self.name)

    @classmethod
    def constant(cls, c: int) -> "Associate":
        return cls(lambda s: c + 1, f"const{c}")

    @classmethod
    def of_prefix_function(cls, length: int, fn: Callable[[tuple], int], name="α") -> "Associate":
        """Associate of Y(β) = fn(β̄length): secured exactly at that length."""
        return cls(lambda s: fn(s[:length]) + 1 if len(s) >= length else 0, name)

    def __repr__(self):
        return f"Associate({self.name})"


def check_neighbourhood(alpha: Associate, depth: int, alphabet=range(2), probes=(), fuel=None) -> bool:
    """Check the neighbourhood-function clauses up to ``depth``.

    Stability α(σ) > 0 ⟹ α(σ*τ) = α(σ) is checked one letter at a time for
    every σ over ``alphabet`` with |σ| < depth (which implies it for all
    |σ| + |τ| ≤ depth).  Each probe β must reach a secured node within
    ``fuel`` queries.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    alphabet = tuple(alphabet)
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            v = alpha.at(s)
            for a in alphabet:
                w = alpha.at(s + (a,))
                if v > 0 and w != v:
                    return False
                nxt.append(s + (a,))
        frontier = nxt
    for beta in probes:
        try:
            eval_associate(alpha, beta, fuel)
        except OutOfFuel:
            return False
    return True


def eval_associate(alpha: Associate, beta: BairePoint, fuel=None) -> int:
    """α(β̄n) - 1 for the least n with α(β̄n) > 0."""
    meter = as_meter(fuel)
    prefix = ()
    while True:
        meter.tick()
        v = alpha.at(prefix)
        if v > 0:
            return v - 1
        prefix = prefix + (beta(len(prefix)),)


def fan_bound(alpha: Associate, fuel=None) -> int:
    """Maximum of the coded functional on Cantor space.

    Walks the binary tree until every branch meets a secured node; the
    walk terminates exactly when α is a neighbourhood function on 2^N
    (fan theorem), otherwise fuel runs out.
    """
    meter = as_meter(fuel)
    best = None
    stack = [()]
    while stack:
        s = stack.pop()
        meter.tick()
        v = alpha.at(s)
        if v > 0:
            best = v - 1 if best is None else max(best, v - 1)
        else:
            stack.append(s + (1,))
            stack.append(s + (0,))
    return best


# ---------------------------------------------------------------- ∃²


def exists2(f: BairePoint, fuel=None) -> int:
    """0 if f has a zero, 1 if f certifiably has none.

    Table points carry their own certificate (a zero must show up below
    the horizon).  Anything else is searched, and a missing zero ends in
    OutOfFuel rather than a guess.
    """
    meter = as_meter(fuel)
    if isinstance(f, TablePoint):
        meter.tick(f.horizon())
        return 0 if f.first_zero() is not None else 1
    n = 0
    while True:
        meter.tick()
        if f.query(n, meter) == 0:
            return 0
        n += 1


# ---------------------------------------------------------------- functionals


class Functional2:
    """A type-2 functional, continuous (by associate) or native."""

    def __init__(self, fn=None, associate: Associate | None = None, name="Y", witness=None):
        if (fn is None) == (associate is None):
            raise ValueError("give exactly one of fn / associate")
        self.fn = fn
        self.associate = associate
        self.name = name
        self.witness = witness

    @property
    def continuous(self) -> bool:
        return self.associate is not None

    def __call__(self, beta: BairePoint, fuel=None) -> int:
        if self.associate is not None:
            return eval_associate(self.associate, beta, fuel)
        return self.fn(beta)

    @classmethod
    def from_term(cls, text: str, env=None, oracles=None, fuel=100_000, name=None):
        from .tcore import TYPE2, Evaluator, parse_term, typecheck

        env = dict(env or {})
        t = parse_term(text, free=env.keys())
        ty = typecheck(t, {k: ty for k, (ty, _v) in env.items()}, oracles)
        if ty != TYPE2:
            raise WorkbenchError(f"a type-2 functional needs type 2, got {ty}")

        def run(beta):
            ev = Evaluator(oracles, as_meter(fuel))
            return ev.apply(ev.ev(t, {k: v for k, (_ty, v) in env.items()}), beta)

        return cls(fn=run, name=name or str(t))

    def __repr__(self):
        return f"Functional2({self.name})"


@dataclass
class PairFunctional:
    """Y(g, n) on Baire space × N.

    ``dependence(n)`` may return (length, cap): Y(·, n) reads only the
    first ``length`` values of g, and values at or above ``cap`` act like
    ``cap``.  ``candidates`` is an alternative witness pool; with
    ``exhaustive_candidates`` the pool is known to contain a witness
    whenever one exists.
    """

    fn: Callable
    name: str = "Y"
    dependence: Callable | None = None
    candidates: tuple | None = None
    exhaustive_candidates: bool = False

    def __call__(self, g: BairePoint, n: int) -> int:
        v = self.fn(g, n)
        if not isinstance(v, int) or v < 0:
            raise WorkbenchError(f"{self.name} returned {v!r}")
        return v


@dataclass(frozen=True)
class SupportClass:
    """Finite-support points with prefix length ``length``, values < ``values``, tail 0."""

    length: int
    values: int

    def __iter__(self):
        seen = set()
        for pre in itertools.product(range(self.values), repeat=self.length):
            p = point(pre, 0)
            if p not in seen:
                seen.add(p)
                yield p

    def covers(self, length: int, cap: int) -> bool:
        return length <= self.length and cap < self.values


@dataclass(frozen=True)
class InJ:
    witness: BairePoint


@dataclass(frozen=True)
class NotInJ:
    certificate: str


@dataclass(frozen=True)
class Unknown:
    reason: str


def _as_class(bound) -> SupportClass:
    if isinstance(bound, SupportClass):
        return bound
    length, values = bound
    return SupportClass(int(length), int(values))


def jump_J(Y: PairFunctional, n: int, bound=(2, 4)):
    """Tri-valued membership of n in J(Y) = {n : ∃g Y(g, n) = 0}.

    InJ always carries a witness; NotInJ only comes with a certificate
    that the search was exhaustive.
    """
    if Y.candidates is not None:
        for g in Y.candidates:
            if Y(g, n) == 0:
                return InJ(g)
        if Y.exhaustive_candidates:
            return NotInJ("the candidate pool contains every possible witness")
        return Unknown("candidate pool exhausted without a witness")
    cls = _as_class(bound)
    failed = False
    for g in cls:
        try:
            if Y(g, n) == 0:
                return InJ(g)
        except OutOfFuel:
            failed = True
    if failed:
        return Unknown("some evaluations ran out of fuel")
    if Y.dependence is not None:
        length, cap = Y.dependence(n)
        if cls.covers(length, cap):
            return NotInJ(f"Y(·,{n}) depends on {length} values capped at {cap}; class exhausted")
    return Unknown("the class is not known to be exhaustive")


def brute_force_J(Y: PairFunctional, n: int, bound) -> bool:
    return any(Y(g, n) == 0 for g in _as_class(bound))


# ---------------------------------------------------------------- functionals on reals


class RealFunctional:
    """F : R -> R, possibly discontinuous; evaluation may run out of fuel."""

    def __init__(self, fn: Callable, name: str = "F"):
        self.fn = fn
        self.name = name

    def __call__(self, x: Real, fuel=None) -> Real:
        return as_real(self.fn(as_real(x), as_meter(fuel)))

    def __repr__(self):
        return f"RealFunctional({self.name})"


def sign(x: Real, meter: Meter) -> int:
    """-1, 0 or 1; 0 needs an exact certificate, else apartness decides."""
    x = as_real(x)
    if x.exact is not None:
        return (x.exact > 0) - (x.exact < 0)
    k = real_apart(x, Real.const(0), meter).k
    return 1 if approx(x, k + 1, meter) > 0 else -1


def threshold_at_zero() -> RealFunctional:
    """F(x) = 1 if x > 0 else 0."""
    return RealFunctional(lambda x, m: Real.const(1 if sign(x, m) > 0 else 0), "threshold0")


@dataclass
class DiscontinuityWitness:
    """x_n -> x with |x_n - x| <= 2^-n and |F(x_n) - F(x)| >= 2^-k0."""

    x: Real
    seq: Callable
    k0: int

    def verify(self, F: RealFunctional, upto: int = 6, fuel=None) -> bool:
        meter = as_meter(fuel)
        fx = F(self.x, meter)
        for n in range(upto + 1):
            xn = as_real(self.seq(n))
            d = abs(xn - self.x)
            if d.exact is not None:
                if d.exact > dyadic(n):
                    return False
            elif approx(d, n + 2, meter) > dyadic(n) + dyadic(n + 3):
                return False
            gap = abs(F(xn, meter) - fx)
            if gap.exact is not None:
                if gap.exact < dyadic(self.k0):
                    return False
            elif approx(gap, self.k0 + 2, meter) < dyadic(self.k0) - dyadic(self.k0 + 3):
                return False
        return True


# ---------------------------------------------------------------- providers


class ProviderKind(enum.Enum):
    CoverOracle = "CoverOracle"
    NetLimitOracle = "NetLimitOracle"
    ModulusOracle = "ModulusOracle"
    NFPRealizer = "NFPRealizer"
    ChoiceOracle = "ChoiceOracle"


@dataclass
class Provider:
    """An oracle for a non-computable existence claim.

    Consumers never trust the answer: each reduction re-checks it.
    """

    kind: ProviderKind
    answer: Callable = field(repr=False)
    instance_class: str = ""
    name: str = "provider"

    def __call__(self, *args, **kw):
        return self.answer(*args, **kw)

    def expect(self, kind: ProviderKind) -> "Provider":
        if self.kind is not kind:
            raise ProviderInvalid(f"expected a {kind.value}, got {self.kind.value} ({self.name})")
        return self


__all__ = [
    "Associate", "DiscontinuityWitness", "Functional2", "InJ",
    "NotInJ", "PairFunctional", "Provider", "ProviderKind", "RealFunctional",
    "SupportClass", "Unknown", "brute_force_J", "check_neighbourhood",
    "eval_associate", "exists2", "fan_bound", "jump_J", "sign",
    "threshold_at_zero",
]
