"""Call-by-value evaluator with fuel and oracle tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..budget import EvalBudget, Meter, as_meter
from ..coding import rational_code
from ..errors import ProviderInvalid, WorkbenchError
from .syntax import (App, BinOp, Fst, Lam, Mu, Num, Oracle, Pair, RatLit, Rec,
                     Snd, Succ, Term, Var)
from .types import NAT, Arrow, Prod, Ty


@dataclass(frozen=True)
class MuWitness:
    """Totality certificate for a labelled μ node.

    ``bound``: a zero is promised below this number, so the search may
    stop there (and a missing zero refutes the witness).
    ``no_zero``: the argument has no zero; μ returns the default 0.
    """

    bound: int | None = None
    no_zero: bool = False

    def __post_init__(self):
        if (self.bound is None) == (not self.no_zero):
            raise ValueError("give exactly one of bound / no_zero")


@dataclass
class OracleTable:
    entries: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def add(self, name: str, ty: Ty, value) -> "OracleTable":
        self.entries[name] = (ty, value)
        return self

    def witness(self, label: str, w: MuWitness) -> "OracleTable":
        self.witnesses[label] = w
        return self

    def types(self) -> dict:
        return {k: v[0] for k, v in self.entries.items()}

    def value(self, name: str):
        if name not in self.entries:
            raise WorkbenchError(f"oracle {name!r} is not bound")
        return self.entries[name][1]


class Closure:
    __slots__ = ("lam", "env", "machine")

    def __init__(self, lam: Lam, env: dict, machine: "Evaluator"):
        self.lam, self.env, self.machine = lam, env, machine

    def __call__(self, arg):
        return self.machine.apply(self, arg)

    @property
    def param_type(self) -> Ty:
        return self.lam.ty

    def __repr__(self):
        return f"<closure {self.lam}>"


def _succ(n: int) -> int:
    return n + 1


class Evaluator:
    def __init__(self, oracles: OracleTable | None = None, meter: Meter | None = None):
        self.oracles = oracles or OracleTable()
        self.meter = meter if meter is not None else as_meter(None)

    def apply(self, f, a):
        self.meter.tick()
        if isinstance(f, Closure):
            env = dict(f.env)
            env[f.lam.param] = a
            return self.ev(f.lam.body, env)
        return f(a)

    def ev(self, t: Term, env: dict):
        self.meter.tick()
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Num):
            return t.value
        if isinstance(t, App):
            f = self.ev(t.fn, env)
            return self.apply(f, self.ev(t.arg, env))
        if isinstance(t, Lam):
            return Closure(t, env, self)
        if isinstance(t, Succ):
            return _succ
        if isinstance(t, BinOp):
            a = self.ev(t.left, env)
            b = self.ev(t.right, env)
            if t.op == "+":
                return a + b
            if t.op == "-":
                return a - b if a > b else 0
            if t.op == "*":
                return a * b
            return abs(a - b)
        if isinstance(t, Rec):
            acc = self.ev(t.base, env)
            step = self.ev(t.step, env)
            n = self.ev(t.arg, env)
            for i in range(n):
                acc = self.apply(self.apply(step, i), acc)
            return acc
        if isinstance(t, Mu):
            return self.mu(self.ev(t.fn, env), t.label)
        if isinstance(t, Pair):
            return (self.ev(t.left, env), self.ev(t.right, env))
        if isinstance(t, Fst):
            return self.ev(t.arg, env)[0]
        if isinstance(t, Snd):
            return self.ev(t.arg, env)[1]
        if isinstance(t, RatLit):
            return rational_code(t.value)
        if isinstance(t, Oracle):
            v = self.oracles.value(t.name)
            for a in t.args:
                v = self.apply(v, self.ev(a, env))
            return v
        raise TypeError(f"not a term: {t!r}")

    def mu(self, f, label: str | None = None) -> int:
        w = self.oracles.witnesses.get(label) if label else None
        if w is not None and w.no_zero:
            return 0
        n = 0
        while True:
            if w is not None and n >= w.bound:
                raise ProviderInvalid(f"μ witness {label!r} promised a zero below {w.bound}")
            if self.apply(f, n) == 0:
                return n
            n += 1


def eval_term(t: Term, env=None, oracles: OracleTable | None = None, budget=None):
    """Evaluate a closed-up-to-env term.

    ``budget`` is an int, EvalBudget, or Meter.  Raises OutOfFuel when the
    step count is exhausted.
    """
    meter = as_meter(budget)
    return Evaluator(oracles, meter).ev(t, dict(env or {}))


def conforms(v, ty: Ty, probes: int = 3) -> bool:
    """Check that a value inhabits ``ty``.

    Function values are probed on small arguments when the argument type
    is Nat; closures must also carry the declared parameter type.
    """
    if ty == NAT:
        return isinstance(v, int) and not isinstance(v, bool) and v >= 0
    if isinstance(ty, Prod):
        return isinstance(v, tuple) and len(v) == 2 and conforms(v[0], ty.left) and conforms(v[1], ty.right)
    if isinstance(ty, Arrow):
        if not callable(v):
            return False
        if isinstance(v, Closure) and v.param_type != ty.arg:
            return False
        if ty.arg == NAT:
            return all(conforms(v(i), ty.res, probes) for i in range(probes))
        return True
    return False
