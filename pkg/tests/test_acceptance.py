"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from families import associate_of, finite_points, functional_family, lipschitz_family, pair_family, psi_family  # noqa: E402
from oracles import exists_witness, grid_argmax, grid_is_covered, lebesgue_ok, least_zero  # noqa: E402

from nred.coding import seq_code, seq_decode  # noqa: E402
from nred.encode.points import CharSet, HostPoint, TermPoint, point  # noqa: E402
from nred.encode.reals import Real, dyadic  # noqa: E402
from nred.errors import OutOfFuel, ProviderInvalid, WorkbenchError  # noqa: E402
from nred.funct import (DiscontinuityWitness, NotInJ, PairFunctional, SupportClass, check_neighbourhood,  # noqa: E402
                        eval_associate, exists2, fan_bound, jump_J, threshold_at_zero)
from nred.nets import limit_monotone_cantor  # noqa: E402
from nred.omachine import run  # noqa: E402
from nred.reduce import (NinPsi, cantor_from_hbu, exists2_from_maximizer, finite_comprehension,  # noqa: E402
                         first_bits_numeral, first_bits_weight, grilliot_exists2, hbu_from_modulus, honest_eps,
                         horizon_E, always_E, jump_to_netlimit, lebesgue_from_netlimit, lebesgue_from_nfp,
                         maximizer_from_exists2, netlimit_to_jump, nfp_from_comprehension, nin_from_hbu,
                         recover_lebesgue, zero_Z)
from nred.reduce import providers as pv  # noqa: E402
from nred.reduce.comprehension import sample_points  # noqa: E402
from nred.reduce.grilliot import stage_predicate  # noqa: E402
from nred.reduce.programs import ZERO_SEARCH  # noqa: E402
from nred.reduce.validate import grid_covered, lebesgue_grid_check  # noqa: E402
from nred.tcore import eval_term, parse_term  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    prev = RESULTS.get(n)
    if prev is not None:
        ok, detail = prev[0] and ok, f"{prev[1]}; {detail}"
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def summary_lines():
    return [f"criterion {n:2}: {'PASS' if ok else 'FAIL'} - {d}" for n, (ok, d) in sorted(RESULTS.items())]


# ------------------------------------------------------------------ 1


def test_criterion_1_associates():
    t = time.perf_counter()
    exprs = functional_family(50, seed=1)
    pts = finite_points(100, seed=2)
    bad = sum(eval_associate(associate_of(e), f) != e.ev(f) for e in exprs for f in pts)
    dt = time.perf_counter() - t
    ok = bad == 0 and dt < 5
    record(1, ok, f"50 functionals x 100 points, {bad} mismatches, {dt:.2f}s")
    assert ok


# ------------------------------------------------------------------ 2, 3


def _limit_via_J(Y, depth):
    net = jump_to_netlimit(Y, list(SupportClass(3, 4)))
    Yp, post = netlimit_to_jump(net)
    J = lambda code: jump_J(Yp, code)
    return net, J, post


def test_criterion_2_jump_equivalence():
    t = time.perf_counter()
    agree = total = 0
    for Y in pair_family():
        net, J, _ = _limit_via_J(Y, 17)
        bits = limit_monotone_cantor(net, J, 17)
        brute = tuple(1 if exists_witness(Y, n, 3, 4, lambda p: point(p, 0)) else 0 for n in range(17))
        agree += sum(a == b for a, b in zip(bits, brute))
        total += 17
    dt = time.perf_counter() - t
    ok = agree == total and dt < 10
    record(2, ok, f"10 functionals, bits n<=16, {agree}/{total} agree, {dt:.2f}s")
    assert ok


def test_criterion_3_round_trip():
    good = 0
    for Y in pair_family():
        net, J, post = _limit_via_J(Y, 8)
        top = net(net.top())
        bits, halted = post(J, 8)
        good += list(bits) == [top(i) for i in range(8)]
    ok = good == 10
    record(3, ok, f"{good}/10 limit prefixes reconstructed at depth 8 by the machine post-processing")
    assert ok


# ------------------------------------------------------------------ 4


def _nin_ok(Z):
    rep = nin_from_hbu(Z, pv.cover_oracle())
    o = rep.output
    return (Z(o["x_i"]) == Z(o["x_j"]) and o["x_i"] != o["x_j"] and abs(o["x_i"] - o["x_j"]) > dyadic(o["k"])
            and o["k"] <= 20)


def _invalid_covers():
    rng = random.Random(4)
    out = [[Fraction(1, 2)], [Fraction(0)], [Fraction(1, 4), Fraction(3, 4)]]
    for _ in range(12):
        out.append([Fraction(rng.randrange(33), 32) for _ in range(rng.randint(1, 5))])
    return out


def test_criterion_4_nin_feasible_part():
    t = time.perf_counter()
    fams = [zero_Z] + [first_bits_numeral(k) for k in range(1, 5)] + [first_bits_weight(k) for k in range(1, 9)]
    good = sum(_nin_ok(Z) for Z in fams)
    false_pairs = 0
    terminated = 0
    for pts in _invalid_covers():
        for Z in (zero_Z, first_bits_numeral(2), first_bits_weight(3)):
            psi = NinPsi(Z)
            if grid_is_covered(pts, [psi(p) for p in pts], 10):
                continue
            try:
                rep = nin_from_hbu(Z, pv.fixed_cover(pts), fuel=20_000)
            except (ProviderInvalid, OutOfFuel):
                terminated += 1
                continue
            o = rep.output
            false_pairs += not (Z(o["x_i"]) == Z(o["x_j"]) and o["x_i"] != o["x_j"])
    dt = time.perf_counter() - t
    ok = good == len(fams) and false_pairs == 0 and dt < 10
    record(4, ok, f"numeral k<=4 and popcount k<=8: {good}/{len(fams)} pairs verified; "
                  f"{terminated} invalid covers rejected, {false_pairs} false pairs; {dt:.2f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="a valid cover of t(Z) for the k-bit numeral Z needs about "
                                       "2^(2^k-k-1) balls; infeasible for k >= 5")
def test_criterion_4_nin_numeral_k5_to_8():
    failed = []
    for k in range(5, 9):
        try:
            pv.greedy_cover(NinPsi(first_bits_numeral(k)), limit=50_000)
        except WorkbenchError:
            failed.append(k)
    record(4, not failed, f"numeral k=5..8: greedy cover exceeded 50000 balls for k={failed} (see ledger)")
    assert not failed


# ------------------------------------------------------------------ 5


def test_criterion_5_cantor():
    rng = random.Random(5)
    insts = []
    for bits in range(5):
        insts.append([Fraction(i, 2 ** bits) for i in range(2 ** bits + 1)])
    for _ in range(5):
        insts.append(sorted({Fraction(n, d) for d in rng.sample(range(1, 50), 12) for n in [rng.randrange(d + 1)]}
                            | {Fraction(rng.randrange(0, 17), 16) for _ in range(10)}))
    good = 0
    for pts in insts:
        index = {p: i for i, p in enumerate(pts)}
        A = CharSet(lambda x, index=index: 1 if Fraction(x) in index else 0, "real", "A")
        rep = cantor_from_hbu(lambda x, index=index: index[Fraction(x)], A, pv.cover_oracle())
        good += Fraction(rep.output["x"]) not in index
    ok = good == len(insts) == 10
    record(5, ok, f"{good}/{len(insts)} returned points re-checked outside A")
    assert ok


# ------------------------------------------------------------------ 6, 7


def test_criterion_6_lebesgue():
    good_net = good_nfp = exact = 0
    for psi in psi_family():
        d1 = lebesgue_from_netlimit(psi, pv.netlimit_oracle()).output
        good_net += lebesgue_grid_check(psi, d1, 12) is None and lebesgue_ok(psi, d1)
        prov = pv.nfp_realizer(7)
        rep = lebesgue_from_nfp(psi, prov)
        d2 = rep.output
        good_nfp += lebesgue_grid_check(psi, d2, 12) is None and lebesgue_ok(psi, d2)
        exact += d2 == Fraction(1, 2 ** fan_bound(prov(psi)))
    ok = good_net == good_nfp == exact == 10
    record(6, ok, f"net-limit {good_net}/10, NFP {good_nfp}/10 grid-valid; delta = 2^-fan_bound in {exact}/10")
    assert ok


def test_criterion_7_hbu():
    good = rejected = 0
    for psi in psi_family():
        rep = hbu_from_modulus(psi, pv.honest_modulus())
        c = rep.output
        good += grid_covered(c, 12) is None and grid_is_covered(c.centers, c.radii, 12)
        for bad in (pv.empty_modulus(), pv.truncated_modulus()):
            try:
                hbu_from_modulus(psi, bad)
            except ProviderInvalid:
                rejected += 1
    ok = good == 10 and rejected == 20
    record(7, ok, f"{good}/10 covers valid on the 2^-12 grid; {rejected}/20 corrupted moduli rejected")
    assert ok


# ------------------------------------------------------------------ 8


def test_criterion_8_grilliot():
    t = time.perf_counter()
    F = threshold_at_zero()
    w = DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), 1)
    agree = total = 0
    for bits in itertools.product((0, 1), repeat=12):
        for tail in (0, 1):
            f = point(bits, tail)
            want = 0 if least_zero(f, 13) is not None else 1
            agree += grilliot_exists2(F, w, f) == want
            agree += exists2_from_maximizer(honest_eps, f) == want
            total += 2
    dt = time.perf_counter() - t
    ok = agree == total and dt < 60
    record(8, ok, f"{agree}/{total} answers agree over 2^12 prefixes x 2 tails, {dt:.1f}s")
    assert ok


# ------------------------------------------------------------------ 9


def test_criterion_9_maximizer():
    good = 0
    for name, g in lipschitz_family():
        rep = maximizer_from_exists2(horizon_E(), g)
        good += abs(rep.output - grid_argmax(g)) <= dyadic(10)
    refuted = False
    g = lambda x: Fraction(x)
    try:
        maximizer_from_exists2(always_E(1), g)
    except WorkbenchError as e:
        ce = getattr(e, "counterexample", None)
        if ce is not None:
            f = stage_predicate(g, ce["left_end"], ce["stage"])
            refuted = f(ce["zero_at"]) == 0 and ce["E_answer"] == 1
    ok = good == 20 and refuted
    record(9, ok, f"{good}/20 within 2^-10 of the grid argmax; dishonest decider refuted: {refuted}")
    assert ok


# ------------------------------------------------------------------ 10


def _seqsets():
    def mk(pred, name):
        return CharSet(lambda c: 1 if pred(seq_decode(c)) else 0, "nat", name)

    return [
        mk(lambda s: len(s) >= 2, "|s|>=2"),
        mk(lambda s: (len(s) > 0 and s[0] == 3) or len(s) >= 5, "s0=3 or |s|>=5"),
        mk(lambda s: sum(s) >= 4 or len(s) >= 6, "sum>=4"),
        mk(lambda s: len(s) >= 1 + (s[0] if s else 0), "|s|>s0"),
    ]


def test_criterion_10_comprehension():
    good = 0
    sets = _seqsets()
    for A in sets:
        rep = nfp_from_comprehension(A, depth=10, samples=100, alphabet=(0, 1, 3))
        g = rep.output
        nb = check_neighbourhood(g, 10, alphabet=(0, 1)) and check_neighbourhood(g, 6, alphabet=(0, 1, 2, 3))
        cons = all(A(seq_code(tuple(f(i) for i in range(eval_associate(g, f))))) == 1
                   for f in sample_points(100, 0))
        good += nb and cons
    fc = all(
        all(finite_comprehension(p, k)(n) == (1 if p(n) else 0) for n in range(k + 1))
        for k in range(65)
        for p in (lambda n: n % 3 == 0, lambda n: n * n < 200, lambda n: bin(n).count("1") == 2, lambda n: False))
    ok = good == len(sets) and fc
    record(10, ok, f"{good}/{len(sets)} realizers pass depth-10 checks and 100 samples; finite comprehension k<=64: {fc}")
    assert ok


# ------------------------------------------------------------------ 11


def _stable(fn, fuels):
    seen = None
    for fu in fuels:
        try:
            v = fn(fu)
        except OutOfFuel:
            if seen is not None:
                return False
            continue
        if seen is not None and v != seen:
            return False
        seen = v
    return True


def test_criterion_11_fuel_and_certificates():
    fuels = [10, 30, 100, 300, 1000, 3000, 10_000, 100_000]
    checks = []
    term = parse_term("μ(λn:0. |n - 40|)")
    checks.append(_stable(lambda fu: eval_term(term, {}, None, fu), fuels))
    f = point((1,) * 50 + (0,), 1)
    checks.append(_stable(lambda fu: run(ZERO_SEARCH, f, (0,), fu).value, fuels))
    tp = TermPoint.parse("λn:0. |n - 60|")
    checks.append(_stable(lambda fu: exists2(tp, fu), fuels))
    alpha = associate_of(functional_family(1, seed=3)[0])
    checks.append(_stable(lambda fu: eval_associate(alpha, point((2, 1, 0), 1), fu), fuels))
    checks.append(_stable(lambda fu: fan_bound(alpha, fu), fuels))
    F = threshold_at_zero()
    w = DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), 1)
    checks.append(_stable(lambda fu: grilliot_exists2(F, w, TermPoint.parse("λn:0. |n - 30|"), fu), fuels))
    y = Real.const(Fraction(3, 4) + dyadic(20))
    checks.append(_stable(lambda fu: recover_lebesgue(y, fu).value, fuels))
    checks.append(_stable(lambda fu: nin_from_hbu(first_bits_numeral(2), pv.cover_oracle(), fu).output["k"], fuels))
    mono = all(checks)

    # mutation: plant a zero anywhere below 2^12; no "no zero" answer may survive
    rng = random.Random(11)
    wrong_one = 0
    for _ in range(300):
        pos = rng.randrange(4096)
        vals = [rng.randrange(1, 4) for _ in range(pos)] + [0]
        host = HostPoint(lambda n, vals=vals: vals[n] if n < len(vals) else 1, "host")
        table = point(tuple(vals), 1)
        for fn in (lambda: exists2(host, 20_000), lambda: exists2(table),
                   lambda: grilliot_exists2(F, w, table), lambda: grilliot_exists2(F, w, host, 50_000)):
            try:
                wrong_one += fn() == 1
            except OutOfFuel:
                pass
    # NotInJ only with a certificate: Y without dependence info or candidates
    no_cert = 0
    for Y in pair_family():
        bare = PairFunctional(Y.fn, Y.name)
        no_cert += sum(isinstance(jump_J(bare, n, (2, 3)), NotInJ) for n in range(10))
    sound = wrong_one == 0 and no_cert == 0
    ok = mono and sound
    record(11, ok, f"{sum(checks)}/{len(checks)} operations fuel-monotone; {wrong_one} uncertified 'no zero' "
                   f"answers under 1200 mutations; {no_cert} uncertified NotInJ")
    assert ok


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(summary_lines()))
    raise SystemExit(code)
