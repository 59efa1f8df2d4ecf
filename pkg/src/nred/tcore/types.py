"""Simple types over the naturals."""

from __future__ import annotations

from dataclasses import dataclass


class Ty:
    __slots__ = ()

    def __rshift__(self, other: "Ty") -> "Arrow":
        return Arrow(self, other)


@dataclass(frozen=True)
class Nat(Ty):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Arrow(Ty):
    arg: Ty
    res: Ty

    def __str__(self):
        if self == TYPE1:
            return "1"
        if self == TYPE2:
            return "2"
        left = str(self.arg)
        if isinstance(self.arg, Arrow) and left not in ("1", "2"):
            left = f"({left})"
        elif isinstance(self.arg, Prod):
            left = f"({left})"
        return f"{left} -> {self.res}"


@dataclass(frozen=True)
class Prod(Ty):
    left: Ty
    right: Ty

    def __str__(self):
        def part(t):
            s = str(t)
            return f"({s})" if isinstance(t, (Arrow, Prod)) and s not in ("1", "2") else s

        return f"{part(self.left)} * {part(self.right)}"


NAT = Nat()
TYPE1 = Arrow(NAT, NAT)
TYPE2 = Arrow(TYPE1, NAT)


def pure(n: int) -> Ty:
    """Pure type n: 0 = Nat, n+1 = n -> Nat."""
    t: Ty = NAT
    for _ in range(n):
        t = Arrow(t, NAT)
    return t


def arrows(*tys: Ty) -> Ty:
    """arrows(a, b, c) == a -> b -> c."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


def type_size(t: Ty) -> int:
    if isinstance(t, Nat):
        return 1
    if isinstance(t, Arrow):
        return 1 + type_size(t.arg) + type_size(t.res)
    return 1 + type_size(t.left) + type_size(t.right)
