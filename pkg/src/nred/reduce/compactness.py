"""Covers and Lebesgue numbers from nets, moduli and NFP realizers."""

from __future__ import annotations

import random
from fractions import Fraction

from ..encode.points import HostPoint, point
from ..encode.reals import Real, approx, cantor_real, dyadic, dyadic_approx
from ..errors import OutOfFuel, ProviderInvalid, ValidationFailed, WorkbenchError
from ..funct import ProviderKind, check_neighbourhood, eval_associate, fan_bound
from ..nets import DirectedIndex, Net
from ..omachine import run
from .programs import LEBESGUE_RECOVERY
from .psi import ONE, ZERO, Cover, Psi, rat
from .report import ReductionReport, fail
from .validate import grid_covered, lebesgue_grid_check, realizes_ball

MAX_N = 64


# ---------------------------------------------------------------- finite covers (construction side)


def leftmost_uncovered(intervals):
    """Least point of [0,1] outside the union of open intervals, or None.

    The answer is 0 or a right end-point, so the sweep is exact.
    """
    ivs = sorted(intervals)
    f, i, best = ZERO, 0, None
    while f <= ONE:
        while i < len(ivs) and ivs[i][0] < f:
            best = ivs[i][1] if best is None else max(best, ivs[i][1])
            i += 1
        if best is None or best <= f:
            return f
        f = best
    return None


def adjoin_endpoints(psi: Psi, centers):
    """w together with the clamped points w(i) ± Ψ(w(i))."""
    out = set()
    for c in centers:
        c = rat(c)
        r = psi(c)
        out.update({c, min(ONE, max(ZERO, c - r)), min(ONE, max(ZERO, c + r))})
    return sorted(out)


def _balls(psi: Psi, centers):
    return [(c - psi(c), c + psi(c)) for c in centers]


def is_lebesgue(intervals, delta: Fraction) -> bool:
    """Does every [x, x+δ) ∩ [0,1] lie in one of the open intervals?

    Let R(x) be the largest right end among intervals starting left of x.
    Between consecutive end-points R is constant and the condition only
    gets harder as x grows, so checking each critical point and its left
    limit is exact.
    """
    ivs = sorted(intervals)
    crit = {ZERO, ONE, max(ZERO, ONE - delta)}
    for lo, hi in ivs:
        for e in (lo, hi):
            if ZERO <= e <= ONE:
                crit.add(e)
    i, reach = 0, None
    for p in sorted(crit):
        while i < len(ivs) and ivs[i][0] < p:
            reach = ivs[i][1] if reach is None else max(reach, ivs[i][1])
            i += 1
        if reach is None:
            return False
        # x = p itself: some interval contains p and reaches far enough
        need = ONE if p + delta > ONE else p + delta
        if not (reach > p and (reach > need if p + delta > ONE else reach >= need)):
            return False
        # x -> p from the left (same intervals, end-point p allowed)
        if p > ZERO:
            if p > ONE - delta:
                if not reach > ONE:
                    return False
            elif not (reach >= p and reach >= p + delta):
                return False
    return True


def least_lebesgue_exponent(intervals) -> int:
    for n in range(MAX_N + 1):
        if is_lebesgue(intervals, dyadic(n)):
            return n
    raise WorkbenchError(f"no Lebesgue number 2^-n with n <= {MAX_N}")


def hbu_net(psi: Psi) -> Net:
    """x_w = 1 if the balls of w cover [0,1], else B(w)/2."""

    def value(w: DirectedIndex):
        b = leftmost_uncovered(_balls(psi, list(w)))
        return Real.const(1) if b is None else Real.const(b / 2)

    return Net("unit", value, name=f"hbu({psi.name})", meta={"psi": psi, "form": "hbu"})


def lebesgue_net(psi: Psi) -> Net:
    """As ``hbu_net`` but a covering index w takes 3/4 + 2^-(N_w+3)."""

    def value(w: DirectedIndex):
        balls = _balls(psi, list(w))
        b = leftmost_uncovered(balls)
        if b is not None:
            return Real.const(b / 2)
        n = least_lebesgue_exponent(_balls(psi, adjoin_endpoints(psi, w)))
        return Real.const(Fraction(3, 4) + dyadic(n + 3))

    return Net("unit", value, name=f"lebesgue({psi.name})", meta={"psi": psi, "form": "lebesgue"})


# ---------------------------------------------------------------- reductions


def hbu_from_modulus(psi: Psi, mod, budget=None, grid_exp: int = 12) -> ReductionReport:
    """A finite sub-cover from a modulus of convergence of x_w."""
    rep = ReductionReport("hbu_from_modulus", inputs={"psi": psi.name})
    mod.expect(ProviderKind.ModulusOracle)
    net = hbu_net(psi)
    w2 = mod(net, 2)
    if not isinstance(w2, DirectedIndex):
        w2 = DirectedIndex(frozenset(Fraction(c) for c in w2))
    rep.provider_answers["w2"] = [str(c) for c in w2]
    x = net(w2)
    rep.notes["x_w2"] = x.exact
    if x.exact != 1:
        raise fail(ProviderInvalid(f"modulus refuted: x at mod(2) is {x.exact}, not 1", witness=w2), rep)
    cover = Cover.canonical(psi, adjoin_endpoints(psi, list(w2)))
    rep.output = cover
    hole = grid_covered(cover, grid_exp)
    rep.checks["grid_covered"] = hole is None
    if hole is not None:
        raise fail(ValidationFailed(f"grid point {hole} is uncovered", counterexample=hole), rep)
    return rep


def recover_lebesgue(y: Real, fuel=None):
    """Strong post-processing: N from the cluster point y, on the machine.

    Receives only y; Ψ is out of reach here.
    """
    oracle = HostPoint(lambda m: dyadic_approx(y, m), "approx(y)")
    return run(LEBESGUE_RECOVERY, oracle, (), fuel)


def lebesgue_from_netlimit(psi: Psi, lim, fuel=None, grid_exp: int = 12) -> ReductionReport:
    rep = ReductionReport("lebesgue_from_netlimit", inputs={"psi": psi.name})
    lim.expect(ProviderKind.NetLimitOracle)
    net = lebesgue_net(psi)
    y = lim(net)
    rep.provider_answers["limit"] = str(y.exact) if y.exact is not None else str(approx(y, 30))
    try:
        halted = recover_lebesgue(y, fuel)
    except OutOfFuel as e:
        raise fail(e, rep)
    rep.trace("lebesgue_recovery", halted.trace)
    status, n = halted.value
    if status != 1:
        raise fail(ProviderInvalid("the limit is not of the form 3/4 + 2^-(N+3)", witness=y), rep)
    delta = dyadic(n)
    rep.output = delta
    rep.notes["N"] = n
    bad = lebesgue_grid_check(psi, delta, grid_exp)
    rep.checks["lebesgue_grid"] = bad is None
    if bad is not None:
        raise fail(ValidationFailed(f"[{bad}, {bad}+{delta}) lies in no ball", counterexample=bad), rep)
    return rep


def _binary_samples(count: int, seed: int, length: int = 10):
    rng = random.Random(seed)
    out = [point((), 0), point((), 1), point((1,), 0), point((0,), 1)]
    while len(out) < count:
        pre = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, length)))
        out.append(point(pre, rng.randint(0, 1)))
    return out


def lebesgue_from_nfp(psi: Psi, nfp, fuel=None, depth: int = 8, samples: int = 32, seed: int = 0,
                      grid_exp: int = 12) -> ReductionReport:
    rep = ReductionReport("lebesgue_from_nfp", inputs={"psi": psi.name, "depth": depth})
    nfp.expect(ProviderKind.NFPRealizer)
    gamma = nfp(psi)
    rep.provider_answers["gamma"] = gamma.name
    if not check_neighbourhood(gamma, depth):
        raise fail(ProviderInvalid("γ is not a neighbourhood function", witness=gamma.name), rep)
    for f in _binary_samples(samples, seed):
        try:
            n = eval_associate(gamma, f, fuel)
        except OutOfFuel as e:
            raise fail(ProviderInvalid(f"γ never secures {f}", witness=str(f)), rep) from e
        x = cantor_real(f).exact
        if not realizes_ball(psi, x, n):
            raise fail(ProviderInvalid(f"B({x}, 2^-{n}) lies in no Ψ-ball", witness=str(f)), rep)
    rep.checks["gamma_spot_checks"] = True
    k0 = _strong_bound(gamma, fuel)
    rep.notes["fan_bound"] = k0
    delta = dyadic(k0)
    rep.output = delta
    bad = lebesgue_grid_check(psi, delta, grid_exp)
    rep.checks["lebesgue_grid"] = bad is None
    if bad is not None:
        raise fail(ValidationFailed(f"[{bad}, {bad}+{delta}) lies in no ball", counterexample=bad), rep)
    return rep


def _strong_bound(gamma, fuel):
    # the bound is computed from γ alone
    return fan_bound(gamma, fuel)
