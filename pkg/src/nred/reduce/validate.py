"""Post-checks on a rational grid.

Kept apart from the constructions on purpose: nothing here is shared
with the code that builds covers, nets or Lebesgue numbers.
"""

from __future__ import annotations

from fractions import Fraction

from .psi import ONE, ZERO, Cover, Psi

GRID_EXP = 12


def grid(exp: int = GRID_EXP):
    n = 2 ** exp
    return [Fraction(i, n) for i in range(n + 1)]


def grid_covered(cover: Cover, exp: int = GRID_EXP):
    """First grid point outside every ball, or None."""
    ivs = sorted(cover.intervals())
    for q in grid(exp):
        if not any(lo < q < hi for lo, hi in ivs):
            return q
    return None


def _nonempty(lo, lo_open, hi, hi_open) -> bool:
    if lo < hi:
        return True
    return lo == hi and not lo_open and not hi_open


def ball_around(psi: Psi, lo: Fraction, hi: Fraction, lo_in: bool = True, hi_in: bool = False,
                candidates=None):
    """A center y with the interval (lo, hi) inside B(y, Ψ(y)), or None.

    ``lo_in``/``hi_in`` say whether the endpoints belong to the interval.
    Exact for piecewise-constant Ψ; otherwise ``candidates`` (default: a
    2^-12 grid) are tried.
    """
    ps = psi.pieces()
    if ps is None:
        for y in candidates if candidates is not None else grid():
            v = psi(y)
            left_ok = y - v < lo if lo_in else y - v <= lo
            right_ok = hi < y + v if hi_in else hi <= y + v
            if left_ok and right_ok:
                return y
        return None
    for a, b, v in ps:
        last = b == ONE
        # y - v < lo (or <=) and hi < y + v (or <=), with y in [a, b)
        up, up_open = lo + v, lo_in
        low, low_open = hi - v, hi_in
        if a > low or (a == low and not low_open):
            low, low_open = a, False
        elif a == low:
            low_open = True
        bb, bb_open = b, not last
        if bb < up or (bb == up and bb_open):
            up, up_open = bb, bb_open
        if _nonempty(low, low_open, up, up_open):
            y = low if not low_open else (up if not up_open and low == up else (low + up) / 2)
            return y
    return None


def lebesgue_grid_check(psi: Psi, delta: Fraction, exp: int = GRID_EXP, candidates=None):
    """First grid point g such that [g, g+δ) ∩ [0,1] lies in no ball, or None."""
    for g in grid(exp):
        hi = g + delta
        if hi > ONE:
            y = ball_around(psi, g, ONE, True, True, candidates)
        else:
            y = ball_around(psi, g, hi, True, False, candidates)
        if y is None:
            return g
    return None


def realizes_ball(psi: Psi, x: Fraction, n: int, candidates=None) -> bool:
    """Is B(x, 2^-n) inside some B(y, Ψ(y))?  (The NFP consequent.)"""
    r = Fraction(1, 2 ** n)
    return ball_around(psi, max(ZERO, x - r), min(ONE, x + r), x - r < ZERO, x + r > ONE,
                       candidates) is not None
