"""Desk-scale providers for the non-computable existence claims.

They work on instances where the claim is decidable (finitely many Ψ
values, finitely generated nets).  Some are deliberately wrong, to
exercise the consumers' checks.
"""

from __future__ import annotations

from fractions import Fraction

from ..encode.reals import Real
from ..errors import WorkbenchError
from ..funct import Associate, Provider, ProviderKind
from ..nets import DirectedIndex
from .psi import ONE, Psi
from .validate import grid

MAX_BALLS = 200_000


def greedy_cover(psi: Psi, limit: int = MAX_BALLS):
    """Centers at the running frontier: 0, then a + Ψ(a), until 1 is inside."""
    a, out = Fraction(0), []
    while True:
        r = psi(a)
        out.append(a)
        if a + r > ONE:
            return out
        a = a + r
        if len(out) >= limit:
            raise WorkbenchError(f"greedy cover of {psi.name} needs more than {limit} balls")


def cover_oracle() -> Provider:
    return Provider(ProviderKind.CoverOracle, greedy_cover, "finitely-valued Ψ", "greedy")


def fixed_cover(points, name="fixed") -> Provider:
    pts = [Fraction(p) for p in points]
    return Provider(ProviderKind.CoverOracle, lambda psi: list(pts), "any", name)


def honest_modulus() -> Provider:
    """Every k gets the greedy cover: past it the net is constantly 1."""

    def mod(net, k):
        return DirectedIndex(frozenset(greedy_cover(net.meta["psi"])))

    return Provider(ProviderKind.ModulusOracle, mod, "finitely-valued Ψ", "greedy-modulus")


def empty_modulus() -> Provider:
    return Provider(ProviderKind.ModulusOracle, lambda net, k: DirectedIndex(), "any", "empty-modulus")


def truncated_modulus() -> Provider:
    """The greedy cover minus its last ball: no longer a cover."""

    def mod(net, k):
        pts = greedy_cover(net.meta["psi"])
        return DirectedIndex(frozenset(pts[:-1]))

    return Provider(ProviderKind.ModulusOracle, mod, "finitely-valued Ψ", "truncated-modulus")


def netlimit_oracle(grid_exp: int = 8) -> Provider:
    """Value at a large finite index, which the net has reached already.

    Cantor nets with a point pool are evaluated at the pool; unit nets
    built from Ψ at the greedy cover plus a dyadic grid.
    """

    def limit(net):
        if net.sort == "cantor":
            return net(net.top())
        psi = net.meta["psi"]
        pts = set(greedy_cover(psi)) | set(grid(grid_exp))
        return net(DirectedIndex(frozenset(pts)))

    return Provider(ProviderKind.NetLimitOracle, limit, "finitely generated nets", "large-index")


def constant_limit(y) -> Provider:
    return Provider(ProviderKind.NetLimitOracle, lambda net: Real.const(y), "any", f"const{y}")


def exponent_for(v: Fraction) -> int:
    """Least n with 2^-n <= v."""
    n = 0
    while Fraction(1, 2 ** n) > v:
        n += 1
    return n


def nfp_realizer(resolution: int = 6) -> Provider:
    """γ secured at length ``resolution`` from min Ψ on the dyadic interval.

    A prefix σ pins 𝔯(f) to [s, s + 2^-r]; any n with 2^-n <= min Ψ there
    works with g = f.
    """

    def realize(psi: Psi):
        r = resolution
        cache = {}

        def gamma(sigma):
            if len(sigma) < r:
                return 0
            bits = tuple(0 if v == 0 else 1 for v in sigma[:r])
            if bits not in cache:
                s = sum(Fraction(b, 2 ** (i + 1)) for i, b in enumerate(bits))
                cache[bits] = exponent_for(psi.min_on(s, s + Fraction(1, 2 ** r))) + 1
            return cache[bits]

        return Associate(gamma, f"γ[{psi.name}]")

    return Provider(ProviderKind.NFPRealizer, realize, "piecewise-constant Ψ", "min-on-interval")


def constant_nfp(n: int) -> Provider:
    return Provider(ProviderKind.NFPRealizer, lambda psi: Associate.constant(n), "any", f"const{n}")


def unstable_nfp() -> Provider:
    """Secured at the root with 3, but changes its mind below."""
    return Provider(ProviderKind.NFPRealizer,
                    lambda psi: Associate(lambda s: 3 if len(s) < 2 else 5, "unstable"),
                    "any", "unstable")
