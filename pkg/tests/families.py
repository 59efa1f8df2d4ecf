"""Generated test families shared by module tests and the acceptance suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from nred.encode.points import point
from nred.funct import Associate, PairFunctional


class _Short(Exception):
    pass


@dataclass(frozen=True)
class Expr:
    """Sequential functional of β: constants, reads, β at a computed index, +, *, if-zero."""

    op: str
    args: tuple = ()
    c: int = 0

    def ev(self, read):
        if self.op == "const":
            return self.c
        if self.op == "read":
            return read(self.c)
        if self.op == "at":
            return read(self.args[0].ev(read) % 6)
        a = [e.ev(read) for e in self.args[:1]]
        if self.op == "add":
            return a[0] + self.args[1].ev(read)
        if self.op == "mul":
            return a[0] * self.args[1].ev(read)
        return self.args[1].ev(read) if a[0] == 0 else self.args[2].ev(read)

    def __str__(self):
        if self.op == "const":
            return str(self.c)
        if self.op == "read":
            return f"β{self.c}"
        return f"{self.op}({', '.join(map(str, self.args))})"


def random_expr(rng: random.Random, depth: int) -> Expr:
    if depth == 0 or rng.random() < 0.25:
        return Expr("const", c=rng.randrange(4)) if rng.random() < 0.3 else Expr("read", c=rng.randrange(6))
    op = rng.choice(["at", "add", "mul", "if0"])
    n = {"at": 1, "add": 2, "mul": 2, "if0": 3}[op]
    return Expr(op, tuple(random_expr(rng, depth - 1) for _ in range(n)))


def associate_of(e: Expr) -> Associate:
    """α(σ) = Y(β)+1 once σ answers every read, else 0."""

    def alpha(sigma):
        def read(i):
            if i >= len(sigma):
                raise _Short
            return sigma[i]

        try:
            return e.ev(read) + 1
        except _Short:
            return 0

    return Associate(alpha, str(e))


def functional_family(count=50, seed=1):
    rng = random.Random(seed)
    return [random_expr(rng, 3) for _ in range(count)]


def finite_points(count=100, seed=2, values=5, length=8):
    rng = random.Random(seed)
    return [point(tuple(rng.randrange(values) for _ in range(rng.randrange(length + 1))), rng.randrange(values))
            for _ in range(count)]


# ---------------------------------------------------------------- pair functionals


def pair_family():
    """Ten Y(g, n) whose witnesses, when they exist, live in support <= 3, values < 4."""
    specs = [
        ("one", lambda g, k: 1),
        ("g0=k", lambda g, k: 0 if g(0) == k else 1),
        ("k=2,g0=0", lambda g, k: 0 if g(0) == 0 and k == 2 else 1),
        ("g0+g1=k", lambda g, k: 0 if g(0) + g(1) == k else 1),
        ("g0*g1+g2=k", lambda g, k: 0 if g(0) * g(1) + g(2) == k else 1),
        ("even k", lambda g, k: 0 if k % 2 == 0 and g(1) == 3 else 1),
        ("g2=k mod 4", lambda g, k: 0 if g(2) == k % 4 and k < 12 else 1),
        ("sum squares", lambda g, k: 0 if g(0) ** 2 + g(1) ** 2 == k else 1),
        ("k<5", lambda g, k: 0 if k < 5 and g(0) == 1 else 1),
        ("prime-ish", lambda g, k: 0 if k in (2, 3, 5, 7, 11, 13) and g(0) + g(1) + g(2) >= 0 else 1),
    ]
    return [PairFunctional(fn, name) for name, fn in specs]


# ---------------------------------------------------------------- Ψ family


def psi_family():
    from nred.reduce import PiecewisePsi, const_psi

    F = Fraction
    return [
        const_psi(F(1, 2)),
        const_psi(F(1, 8)),
        const_psi(F(3, 16)),
        PiecewisePsi([F(1, 2)], [F(1, 4), F(1, 8)]),
        PiecewisePsi([F(1, 3)], [F(1, 16), F(1, 5)]),
        PiecewisePsi([F(1, 4), F(3, 4)], [F(1, 8), F(1, 32), F(1, 8)]),
        PiecewisePsi([F(1, 2)], [F(1, 2), F(1, 64)]),
        PiecewisePsi([F(1, 10), F(1, 2), F(9, 10)], [F(1, 20), F(1, 6), F(1, 12), F(1, 40)]),
        PiecewisePsi([F(2, 3)], [F(1, 3), F(1, 7)]),
        PiecewisePsi([F(1, 8), F(5, 8)], [F(1, 100), F(1, 4), F(1, 9)]),
    ]


# ---------------------------------------------------------------- Lipschitz-1 family


def lipschitz_family():
    """Twenty functions with a unique argmax and slope 1 around it."""
    F = Fraction
    out = []
    for i in range(10):
        a = F(2 * i + 1, 21)
        out.append((f"tent@{a}", lambda x, a=a: -abs(F(x) - a)))
    for i, a in enumerate([F(0), F(1), F(1, 7), F(5, 9), F(2, 3), F(1, 3), F(7, 8), F(1, 64), F(63, 64), F(1, 2)]):
        b = F(i, 10)
        out.append((f"skew@{a}", lambda x, a=a, b=b: -abs(F(x) - a) + b if F(x) >= a else -abs(F(x) - a) / 2 + b))
    return out
