"""The J operator versus limits of increasing Cantor nets (both directions)."""

from __future__ import annotations

from dataclasses import dataclass

from ..coding import bindecode
from ..encode.points import HostPoint
from ..errors import OutOfFuel, WorkbenchError
from ..funct import InJ, NotInJ, PairFunctional, SupportClass, brute_force_J, jump_J
from ..nets import DirectedIndex, Net, check_increasing, decode_index, encode_index, limit_monotone_cantor
from ..omachine import run
from .programs import LIMIT_FROM_J
from .report import ReductionReport


def jump_to_netlimit(Y: PairFunctional, pool) -> Net:
    """The phalanx f_w(k) = 1 iff Y(w(i), k) = 0 for some i < |w|.

    ``pool`` is the witness class the net is generated by; growing w can
    only add witnesses, so the net is increasing.
    """
    pool = tuple(pool)

    def value(w: DirectedIndex):
        pts = tuple(w)
        memo = {}

        def bit(k):
            if k not in memo:
                memo[k] = 1 if any(Y(p, k) == 0 for p in pts) else 0
            return memo[k]

        return HostPoint(bit, f"F_{Y.name}[{len(pts)}]")

    return Net("cantor", value, points=pool, name=f"phalanx({Y.name})", generated=True)


@dataclass
class LimitFromJ:
    """Post-processing: rebuilds the limit bit by bit from J alone.

    It holds no reference to the net, which is what makes the reduction
    strong.
    """

    program: object = LIMIT_FROM_J

    def __call__(self, J, depth: int, fuel=None):
        def oracle(code):
            ans = J(code)
            if isinstance(ans, InJ):
                return 1
            if isinstance(ans, NotInJ):
                return 0
            raise OutOfFuel(f"J undecided at code {code}: {ans.reason}")

        halted = run(self.program, HostPoint(oracle, "J"), (depth,), fuel)
        return tuple(bindecode(halted.value)), halted


def netlimit_to_jump(net: Net):
    """(Y', post) with Y'(g, σ) = 0 iff f_{index(g)} ≥lex σ*0^ω.

    J(Y') answers "is there an index whose value is ≥lex σ*0^ω"; ``post``
    turns those answers into the limit.  For a finitely generated net the
    top index is the only candidate worth trying, and it is exhaustive.
    """
    if net.sort != "cantor":
        raise WorkbenchError("netlimit_to_jump needs a Cantor-space net")

    def fn(g, code):
        if code < 1:
            return 1
        sigma = bindecode(code)
        fd = net(decode_index(g))
        return 0 if tuple(fd(i) for i in range(len(sigma))) >= tuple(sigma) else 1

    candidates = None
    if net.points is not None:
        candidates = (encode_index(net.top()),)
    Yp = PairFunctional(fn, name=f"ge({net.name})", candidates=candidates,
                        exhaustive_candidates=bool(net.generated and candidates))
    return Yp, LimitFromJ()


def run_theorem3(Y: PairFunctional, bound=(3, 4), depth: int = 8, fuel=None) -> ReductionReport:
    """Both directions on one functional, checked against brute force."""
    cls = bound if isinstance(bound, SupportClass) else SupportClass(*bound)
    rep = ReductionReport("jump_netlimit", inputs={"Y": Y.name, "class": [cls.length, cls.values],
                                                     "depth": depth})
    pool = tuple(cls)
    net = jump_to_netlimit(Y, pool)
    samples = [DirectedIndex(), DirectedIndex(frozenset(pool[: len(pool) // 2])), net.top()]
    rep.checks["increasing"] = check_increasing(net, samples, depth=depth + 1)
    Yp, post = netlimit_to_jump(net)
    J = lambda code: jump_J(Yp, code)
    bits = limit_monotone_cantor(net, J, depth)
    machine_bits, halted = post(J, depth, fuel)
    rep.trace("limit_from_j", halted.trace)
    brute = tuple(1 if brute_force_J(Y, n, cls) else 0 for n in range(depth))
    rep.output = {"limit_prefix": list(bits), "machine_prefix": list(machine_bits)}
    rep.checks["bits_match_brute_force"] = bits == brute
    rep.checks["machine_matches"] = machine_bits == bits
    return rep
