"""Natural-number codings used throughout.

* ``pair``/``unpair``: Cantor pairing, a bijection N x N -> N.
* rationals: p/q in lowest terms (q >= 1) is coded as
  ``pair(zigzag(p), q - 1)``.  Every natural decodes to some rational,
  and codes of equal rationals produced by ``rational_code`` coincide.
* finite sequences: the code of (a0, ..., a_{n-1}) is
  ``int('1' + gamma(a0 + 1) + ... + gamma(a_{n-1} + 1), 2) - 1``
  where ``gamma`` is the Elias gamma word.  The empty sequence is 0.
  Code size is linear in the total bit size of the entries.
* binary words: ``bincode(bits) = int('1' + bits, 2)``, so the empty
  word is 1 and appending bit b maps c to 2c + b.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def pair(a: int, b: int) -> int:
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def zigzag(z: int) -> int:
    return 2 * z if z >= 0 else -2 * z - 1


def unzigzag(n: int) -> int:
    return n // 2 if n % 2 == 0 else -(n + 1) // 2


def rational_code(q) -> int:
    q = Fraction(q)
    return pair(zigzag(q.numerator), q.denominator - 1)


def rational_decode(n: int) -> Fraction:
    a, b = unpair(n)
    return Fraction(unzigzag(a), b + 1)


def _gamma(x: int) -> str:
    bits = bin(x)[2:]
    return "0" * (len(bits) - 1) + bits


def seq_code(entries) -> int:
    parts = ["1"]
    for a in entries:
        if a < 0:
            raise ValueError("sequence entries must be natural numbers")
        parts.append(_gamma(a + 1))
    return int("".join(parts), 2) - 1


def seq_decode(code: int) -> tuple[int, ...]:
    if code < 0:
        raise ValueError("codes are natural numbers")
    bits = bin(code + 1)[3:]
    out = []
    i = 0
    while i < len(bits):
        z = 0
        while i < len(bits) and bits[i] == "0":
            z += 1
            i += 1
        if i + z + 1 > len(bits):
            raise ValueError(f"{code} is not a sequence code")
        out.append(int(bits[i:i + z + 1], 2) - 1)
        i += z + 1
    return tuple(out)


def is_seq_code(code: int) -> bool:
    try:
        seq_decode(code)
    except ValueError:
        return False
    return True


def bincode(bits) -> int:
    c = 1
    for b in bits:
        if b not in (0, 1):
            raise ValueError("binary words hold 0/1 entries")
        c = 2 * c + b
    return c


def bindecode(code: int) -> tuple[int, ...]:
    if code < 1:
        raise ValueError("binary word codes start at 1")
    return tuple(int(ch) for ch in bin(code)[3:])
