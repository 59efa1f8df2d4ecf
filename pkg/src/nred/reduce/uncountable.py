"""Uncountability of [0,1] from finite sub-covers."""

from __future__ import annotations

from fractions import Fraction

from ..coding import rational_code
from ..encode.points import HostPoint
from ..encode.reals import Real, dyadic, dyadic_approx
from ..errors import NoWitness, OutOfFuel, ProviderInvalid, ValidationFailed
from ..funct import ProviderKind
from ..omachine import run
from .programs import CANTOR_SCAN, NIN_DOVETAIL
from .psi import ONE, ZERO, CantorPsi, Cover, NinPsi, rat
from .report import ReductionReport, fail
from .validate import grid_covered


def _centers(answer):
    return [min(ONE, max(ZERO, rat(c))) for c in answer]


def nin_oracle(xs, radii) -> HostPoint:
    """s(Z, x_0..x_k) laid out for the machine (see ``NIN_DOVETAIL``)."""
    K = len(xs)
    codes = [rational_code(r) for r in radii]
    reals = [Real.const(x) for x in xs]

    def at(n):
        if n == 0:
            return K
        if n <= K:
            return codes[n - 1]
        m, i = divmod(n - 1 - K, K)
        return dyadic_approx(reals[i], m)

    return HostPoint(at, "s(Z,x)")


def nin_from_hbu(Z, cover, fuel=None, grid_exp: int = 12) -> ReductionReport:
    """Two distinct points of a cover of t(Z) with the same Z-value.

    The machine gets the flattened sequence x_i, t(Z)(x_i) only.  Running
    out of fuel is blamed on the provider when its cover misses a grid
    point.
    """
    psi = NinPsi(Z)
    rep = ReductionReport("nin_from_hbu", inputs={"Z": getattr(Z, "__name__", "Z")})
    cover.expect(ProviderKind.CoverOracle)
    xs = _centers(cover(psi))
    radii = [psi(x) for x in xs]
    rep.provider_answers["centers"] = [str(x) for x in xs]
    try:
        halted = run(NIN_DOVETAIL, nin_oracle(xs, radii), (), fuel)
    except OutOfFuel as e:
        hole = grid_covered(Cover(tuple(xs), tuple(radii)), grid_exp) if xs else ZERO
        rep.notes["uncovered_grid_point"] = hole
        if hole is not None:
            raise fail(ProviderInvalid(f"dovetail exhausted; the cover misses {hole}", witness=hole), rep) from e
        raise fail(e, rep)
    rep.trace("nin_dovetail", halted.trace)
    i, j, k = halted.value
    rep.output = {"i": i, "j": j, "k": k, "x_i": xs[i], "x_j": xs[j]}
    zi, zj = Z(xs[i]), Z(xs[j])
    rep.checks["collision"] = zi == zj
    rep.checks["apart"] = abs(xs[i] - xs[j]) > dyadic(k)
    if not rep.ok:
        raise fail(ValidationFailed(f"pair ({i}, {j}) does not refute injectivity"), rep)
    return rep


def cantor_oracle(radii) -> HostPoint:
    K = len(radii)
    approxs = [dyadic_approx(Real.const(r), 5) for r in radii]
    return HostPoint(lambda n: K if n == 0 else approxs[n - 1], "s(Y,A,x)")


def cantor_from_hbu(Y, A, cover, fuel=None) -> ReductionReport:
    """A point outside A, read off a cover of t(Y, A)."""
    psi = CantorPsi(Y, A)
    rep = ReductionReport("cantor_from_hbu", inputs={"A": getattr(A, "name", "A")})
    cover.expect(ProviderKind.CoverOracle)
    xs = _centers(cover(psi))
    rep.provider_answers["centers"] = [str(x) for x in xs]
    radii = [psi(x) for x in xs]
    halted = run(CANTOR_SCAN, cantor_oracle(radii), (), fuel)
    rep.trace("cantor_scan", halted.trace)
    i = halted.value
    if i >= len(xs):
        raise fail(NoWitness("every center has a small radius; the cover cannot be valid"), rep)
    x = xs[i]
    rep.output = {"index": i, "x": x}
    rep.checks["outside_A"] = A(x) == 0
    if not rep.ok:
        raise fail(ValidationFailed(f"{x} lies in A"), rep)
    return rep


# --------------------------------------------------------------- Z families


def first_bits_numeral(k: int):
    """Z(x) = the first k binary digits of x read as a numeral."""

    def Z(x):
        return min(int(Fraction(x) * 2 ** k), 2 ** k - 1)

    Z.__name__ = f"bits{k}"
    return Z


def first_bits_weight(k: int):
    """Z(x) = how many of the first k binary digits of x are 1."""

    def Z(x):
        return bin(min(int(Fraction(x) * 2 ** k), 2 ** k - 1)).count("1")

    Z.__name__ = f"weight{k}"
    return Z


def zero_Z(x):
    return 0
