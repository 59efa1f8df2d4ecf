"""∃² from discontinuity, from maximizers, and maximizers from ∃²."""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction

from ..budget import as_meter
from ..encode.points import BairePoint, HostPoint, TablePoint
from ..encode.reals import Real, approx, as_real, compare, dyadic
from ..errors import OutOfFuel, ProviderInvalid, ValidationFailed
from ..funct import DiscontinuityWitness, RealFunctional, sign
from ..omachine import run
from .programs import ZERO_SEARCH
from .report import ReductionReport, fail
from .validate import grid


def q_real(f: BairePoint, w: DiscontinuityWitness) -> Real:
    """x_N for the least zero N of f, and x when f has no zero.

    approx(m) scans f(0..m+1): with a zero N there it reads x_N at m,
    otherwise x at m+1.  Either way the error stays below 2^-(m+1) since
    |x_n - x| <= 2^-n.  The scan state is shared between precisions.
    """
    state = {"scanned": 0, "zero": None}

    def fn(m, meter):
        while state["zero"] is None and state["scanned"] <= m + 1:
            if f.query(state["scanned"], meter) == 0:
                state["zero"] = state["scanned"]
            else:
                state["scanned"] += 1
        z = state["zero"]
        if z is not None and z <= m + 1:
            return as_real(w.seq(z)).approx(m, meter)
        return w.x.approx(m + 1, meter)

    exact = None
    if isinstance(f, TablePoint):
        z = f.first_zero()
        exact = as_real(w.seq(z)).exact if z is not None else w.x.exact
    return Real(fn, exact=exact, label=f"q[{f}]")


def grilliot_exists2(F: RealFunctional, w: DiscontinuityWitness, f: BairePoint, fuel=None,
                     verify_upto: int = 6) -> int:
    """0 iff f has a zero, decided through one evaluation of F at q_f."""
    meter = as_meter(fuel)
    if not w.verify(F, verify_upto, meter):
        raise ProviderInvalid("the discontinuity witness does not check out for F")
    fx = F(w.x, meter)
    fq = F(q_real(f, w), meter)
    gap = approx(abs(fq - fx), w.k0 + 3, meter)
    return 0 if gap >= dyadic(w.k0 + 1) else 1


# ---------------------------------------------------------------- maximizers


@dataclass(frozen=True)
class LinearFn:
    """g(x) = slope·x + intercept on [0,1]; slope may be a Real."""

    slope: object
    intercept: Fraction = Fraction(0)

    def __call__(self, x):
        s = self.slope
        if isinstance(s, Real):
            return s * Fraction(x) + self.intercept if s.exact is None else s.exact * Fraction(x) + self.intercept
        return Fraction(s) * Fraction(x) + self.intercept

    def __str__(self):
        s = self.slope.exact if isinstance(self.slope, Real) and self.slope.exact is not None else self.slope
        return f"λx.{s}·x{'+' + str(self.intercept) if self.intercept else ''}"


def probe_family(denominator: int = 8):
    """-qx (q = 1 first), then qx - q, for q on a finite rational grid."""
    qs = [Fraction(k, denominator) for k in range(denominator, -1, -1)]
    return [LinearFn(-q) for q in qs] + [LinearFn(q, -q) for q in qs]


def _value(v, prec=20):
    if isinstance(v, Real):
        return v.exact if v.exact is not None else approx(v, prec)
    return Fraction(v)


def refute_maximizer(eps, g, exp: int = 12, slack=Fraction(0)):
    """A grid point q with g(q) > g(eps(g)) + slack, or None."""
    e = eps(g)
    ge = _value(g(_value(e)))
    tol = slack + (dyadic(19) if isinstance(e, Real) and e.exact is None else 0)
    for q in grid(exp):
        if _value(g(q)) > ge + tol:
            return q
    return None


_validated = weakref.WeakKeyDictionary()


def validate_eps(eps, exp: int = 12):
    """Check eps on the probe family; raises ProviderInvalid on a refutation."""
    try:
        if _validated.get(eps):
            return
    except TypeError:
        pass
    for g in probe_family():
        q = refute_maximizer(eps, g, exp)
        if q is not None:
            raise ProviderInvalid(f"eps({g}) is not a maximizer: g({q}) is larger", witness=g)
    try:
        _validated[eps] = True
    except TypeError:
        pass


def exists2_from_maximizer(eps, f: BairePoint, fuel=None, report: ReductionReport | None = None) -> int:
    """∃² from a maximizer functional via Grilliot's trick.

    c = eps(0·x) picks the branch: if c < 3/4, Φ(y) = eps(λx. y·x) jumps
    from c to 1; otherwise Φ(y) = eps(λx. -y·x) jumps from c to 0.  Either
    way y_n = 2^-n → 0 witnesses a gap of 1/4.
    """
    meter = as_meter(fuel)
    validate_eps(eps)
    c = as_real(eps(LinearFn(Fraction(0))))
    branch = "A" if approx(c, 3, meter) < Fraction(11, 16) else "B"
    s = 1 if branch == "A" else -1

    def phi(y, mt):
        y = as_real(y)
        slope = y if s == 1 else -y
        return as_real(eps(LinearFn(slope)))

    F = RealFunctional(phi, f"eps-branch{branch}")
    w = DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), 2)
    if report is not None:
        report.notes["branch"] = branch
    return grilliot_exists2(F, w, f, meter, verify_upto=3)


# ---------------------------------------------------------------- interval halving


def _gt(a, b, prec):
    if not isinstance(a, Real) and not isinstance(b, Real):
        return Fraction(a) > Fraction(b)
    return compare(as_real(a), as_real(b), prec) == 1


class _Memo:
    def __init__(self, g):
        self.g, self.cache = g, {}

    def __call__(self, q):
        v = self.cache.get(q)
        if v is None:
            v = self.cache[q] = self.g(q)
        return v


def stage_predicate(g, a: Fraction, m: int, grid_gap: int = 12) -> HostPoint:
    """f with a zero iff some rational of the right half beats the left half.

    Left half [a, a + 2^-(m+1)] is sampled with spacing h = 2^-(m+grid_gap);
    f(s) = 0 iff a point r of the right half on the 2^-(m+1+s) grid has
    g(r) > max(left samples) + h/2, certified at precision m+s+4.
    """
    half = dyadic(m + 1)
    h = dyadic(m + grid_gap)
    n_left = int(half / h)
    left_max = None
    for i in range(n_left + 1):
        v = g(a + i * h)
        left_max = v if left_max is None else _max(left_max, v)
    target = left_max + h / 2 if not isinstance(left_max, Real) else left_max + Real.const(h / 2)
    mid = a + half

    def at(s):
        step = dyadic(m + 1 + s)
        for i in range(2 ** s + 1):
            if _gt(g(mid + i * step), target, m + s + 4):
                return 0
        return 1

    return HostPoint(at, f"stage{m}@{a}")


def _max(a, b):
    if isinstance(a, Real) or isinstance(b, Real):
        from ..encode.reals import rmax
        return rmax(a, b)
    return max(a, b)


def maximizer_from_exists2(E, g, fuel=None, stages: int = 12, grid_gap: int = 12,
                           check_exp: int = 12, tolerance_exp: int = 10,
                           counter_fuel: int = 200_000) -> ReductionReport:
    """Interval halving driven by an ∃²-like decider E.

    At each stage E is asked whether the right half holds a strictly
    better point; ties keep the left half.  A dishonest E is caught by
    the post-check, and a zero of some f that E declared zero-free is
    then searched for on the machine.
    """
    rep = ReductionReport("maximizer_from_exists2", inputs={"g": getattr(g, "name", str(g))})
    gm = _Memo(g)
    a = Fraction(0)
    asked = []
    for m in range(stages):
        fm = stage_predicate(gm, a, m, grid_gap)
        ans = E(fm)
        if ans not in (0, 1):
            raise fail(ProviderInvalid(f"decider answered {ans!r}"), rep)
        asked.append((m, a, fm, ans))
        if ans == 0:
            a = a + dyadic(m + 1)
    x = a + dyadic(stages + 1)
    rep.output = x
    rep.provider_answers["decisions"] = [ans for _m, _a, _f, ans in asked]
    gx = _value(gm(x))
    worst = None
    for q in grid(check_exp):
        if _value(gm(q)) > gx + dyadic(tolerance_exp):
            worst = q
            break
    rep.checks["grid_max"] = worst is None
    if worst is not None:
        rep.notes["beaten_by"] = worst
        ce = _counterexample(asked, fuel if fuel is not None else counter_fuel, rep)
        rep.notes["counterexample"] = ce
        raise fail(ValidationFailed(f"g({worst}) exceeds g(x*) by more than 2^-{tolerance_exp}",
                                    counterexample=ce), rep)
    return rep


def _counterexample(asked, fuel, rep):
    """Find f with E(f) = 1 but a visible zero: E's wrong answer."""
    for m, a, fm, ans in asked:
        if ans != 1:
            continue
        try:
            halted = run(ZERO_SEARCH, fm, (0,), fuel)
        except OutOfFuel:
            continue
        rep.trace(f"counterexample_stage{m}", halted.trace)
        return {"stage": m, "left_end": a, "zero_at": halted.value, "E_answer": 1}
    return None


# ---------------------------------------------------------------- deciders and maximizers


def honest_eps(g):
    """argmax on [0,1]: exact for linear g, grid search otherwise."""
    if isinstance(g, LinearFn):
        return Real.const(1 if sign(as_real(g.slope), as_meter(None)) > 0 else 0)
    best, arg = None, Fraction(0)
    for q in grid(12):
        v = _value(g(q))
        if best is None or v > best:
            best, arg = v, q
    return Real.const(arg)


def constant_eps(c):
    c = Fraction(c)
    return lambda g: Real.const(c)


def horizon_E(horizon: int = 13):
    """Searches f(0..horizon-1) for a zero; 1 when none shows up."""

    def E(f):
        for n in range(horizon):
            if f(n) == 0:
                return 0
        return 1

    return E


def always_E(v: int):
    return lambda f: v

