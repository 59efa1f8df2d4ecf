"""NFP from comprehension, and finite comprehension by bounded search."""

from __future__ import annotations

import random

from ..coding import seq_code
from ..encode.points import CharSet, const_point, point
from ..errors import AntecedentRefuted, ValidationFailed
from ..funct import Associate, check_neighbourhood, eval_associate
from .report import ReductionReport, fail


def least_secured(A: CharSet, sigma: tuple):
    """Length of the shortest prefix τ of σ with code(τ) in A, or None."""
    for n in range(len(sigma) + 1):
        if A(seq_code(sigma[:n])) == 1:
            return n
    return None


def sample_points(count: int, seed: int, values: int = 4, length: int = 6):
    out = [const_point(v) for v in range(values)]
    rng = random.Random(seed)
    while len(out) < count:
        pre = tuple(rng.randrange(values) for _ in range(rng.randint(1, length)))
        out.append(point(pre, rng.randrange(values)))
    return out[:count]


def nfp_from_comprehension(A: CharSet, depth: int = 10, samples: int = 100, seed: int = 0,
                           alphabet=range(2)) -> ReductionReport:
    """γ(σ) = |τ|+1 for the shortest prefix τ of σ in A, else 0.

    Taking the shortest prefix makes γ stable under extension, so it is
    a neighbourhood function as soon as every f meets A.  That hypothesis
    is spot-checked on sampled points up to ``depth``.
    """
    rep = ReductionReport("nfp_from_comprehension", inputs={"A": A.name, "depth": depth})
    pts = sample_points(samples, seed)
    for f in pts:
        pre = tuple(f(i) for i in range(depth + 1))
        if least_secured(A, pre) is None:
            raise fail(AntecedentRefuted(f"{f} has no prefix in {A.name} up to length {depth}", point=f),
                       rep)

    def gamma(sigma):
        n = least_secured(A, sigma)
        return 0 if n is None else n + 1

    alpha = Associate(gamma, f"γ[{A.name}]")
    rep.output = alpha
    rep.checks["neighbourhood"] = check_neighbourhood(alpha, depth, alphabet)
    ok = True
    for f in pts:
        n = eval_associate(alpha, f, 10 * (depth + 2))
        ok = ok and A(seq_code(tuple(f(i) for i in range(n)))) == 1
    rep.checks["consequent"] = ok
    if not rep.ok:
        raise fail(ValidationFailed("γ fails the neighbourhood check or the consequent"), rep)
    return rep


def finite_comprehension(A, k: int) -> CharSet:
    """X ⊆ {0..k} with n ∈ X ⟺ A(n), built by a bounded loop."""
    table = tuple(1 if A(n) else 0 for n in range(k + 1))

    def member(n):
        if not 0 <= n <= k:
            raise ValueError(f"{n} is outside {{0..{k}}}")
        return table[n]

    return CharSet(member, "nat", f"{{n<={k} : A(n)}}")
