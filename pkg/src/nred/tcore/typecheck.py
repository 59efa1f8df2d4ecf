"""Simple-type checker with recursor and search rules."""

from __future__ import annotations

from ..errors import TypeCheckError
from .syntax import (App, BinOp, Fst, Lam, Mu, Num, Oracle, Pair, RatLit, Rec,
                     Snd, Succ, Term, Var)
from .types import NAT, TYPE1, Arrow, Prod, Ty


def typecheck(t: Term, ctx=None, oracles=None) -> Ty:
    """Return the type of ``t``.

    ``ctx`` maps free variable names to types; ``oracles`` maps oracle
    names to their declared (curried) types, or is an ``OracleTable``.
    """
    ctx = dict(ctx or {})
    if oracles is not None and hasattr(oracles, "types"):
        oracles = oracles.types()
    return _infer(t, ctx, dict(oracles or {}))


def _infer(t: Term, ctx: dict, oracles: dict) -> Ty:
    if isinstance(t, Var):
        if t.name not in ctx:
            raise TypeCheckError(f"unbound variable {t.name!r}", t)
        return ctx[t.name]
    if isinstance(t, (Num, RatLit)):
        return NAT
    if isinstance(t, Succ):
        return Arrow(NAT, NAT)
    if isinstance(t, Lam):
        inner = dict(ctx)
        inner[t.param] = t.ty
        return Arrow(t.ty, _infer(t.body, inner, oracles))
    if isinstance(t, App):
        fty = _infer(t.fn, ctx, oracles)
        aty = _infer(t.arg, ctx, oracles)
        if not isinstance(fty, Arrow):
            raise TypeCheckError(f"cannot apply a value of type {fty}", t)
        if fty.arg != aty:
            raise TypeCheckError(f"argument has type {aty}, expected {fty.arg}", t)
        return fty.res
    if isinstance(t, Rec):
        sigma = _infer(t.base, ctx, oracles)
        want = Arrow(NAT, Arrow(sigma, sigma))
        sty = _infer(t.step, ctx, oracles)
        if sty != want:
            raise TypeCheckError(f"ill-typed recursor: step has type {sty}, expected {want}", t)
        aty = _infer(t.arg, ctx, oracles)
        if aty != NAT:
            raise TypeCheckError(f"ill-typed recursor: counter has type {aty}", t)
        return sigma
    if isinstance(t, Pair):
        return Prod(_infer(t.left, ctx, oracles), _infer(t.right, ctx, oracles))
    if isinstance(t, (Fst, Snd)):
        pty = _infer(t.arg, ctx, oracles)
        if not isinstance(pty, Prod):
            raise TypeCheckError(f"projection from non-pair type {pty}", t)
        return pty.left if isinstance(t, Fst) else pty.right
    if isinstance(t, Mu):
        fty = _infer(t.fn, ctx, oracles)
        if fty != TYPE1:
            raise TypeCheckError(f"μ expects a type-1 argument, got {fty}", t)
        return NAT
    if isinstance(t, BinOp):
        for side in (t.left, t.right):
            sty = _infer(side, ctx, oracles)
            if sty != NAT:
                raise TypeCheckError(f"arithmetic on type {sty}", side)
        return NAT
    if isinstance(t, Oracle):
        if t.name not in oracles:
            raise TypeCheckError(f"unknown oracle {t.name!r}", t)
        ty = oracles[t.name]
        for a in t.args:
            aty = _infer(a, ctx, oracles)
            if not isinstance(ty, Arrow) or ty.arg != aty:
                raise TypeCheckError(f"oracle {t.name!r} applied to argument of type {aty}", t)
            ty = ty.res
        return ty
    raise TypeCheckError(f"not a term: {t!r}")
