import itertools
from fractions import Fraction as F

import pytest

from nred.encode.points import TermPoint, point
from nred.encode.reals import Real, approx, dyadic
from nred.errors import OutOfFuel, ProviderInvalid, ValidationFailed
from nred.funct import DiscontinuityWitness, RealFunctional, exists2, threshold_at_zero
from nred.reduce import (LinearFn, always_E, constant_eps, exists2_from_maximizer, grilliot_exists2, honest_eps,
                         horizon_E, maximizer_from_exists2, q_real)
from nred.omachine import run
from nred.reduce.programs import ZERO_SEARCH

from families import lipschitz_family
from oracles import grid_argmax

W = DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), 1)
F0 = threshold_at_zero()


class TestGrilliot:
    def test_zero_at_five(self):
        assert grilliot_exists2(F0, W, point((1,) * 5 + (0,), 1)) == 0

    def test_certified_nonzero(self):
        f = point((1, 2, 3), 1)
        assert q_real(f, W).exact == 0
        assert grilliot_exists2(F0, W, f) == 1

    def test_fuel_staircase(self):
        f = TermPoint.parse("λn:0. |n - 512|")
        with pytest.raises(OutOfFuel):
            grilliot_exists2(F0, W, f, 2_000)
        assert grilliot_exists2(F0, W, f, 10 ** 7) == 0

    def test_invalid_witness(self):
        bad = DiscontinuityWitness(Real.const(0), lambda n: Real.const(-dyadic(n)), 1)
        with pytest.raises(ProviderInvalid):
            grilliot_exists2(F0, bad, point((0,), 1))

    def test_q_is_fast_cauchy(self):
        f = TermPoint.parse("λn:0. |n - 7|")
        q = q_real(f, W)
        qs = [approx(q, m) for m in range(16)]
        assert all(abs(qs[a] - qs[b]) <= dyadic(a + 1) + dyadic(b + 1) for a in range(16) for b in range(16))

    def test_other_discontinuity(self):
        # F(x) = 1 for x < 1/2 certified, 0 otherwise; approached from below
        def fn(x, m):
            return Real.const(1 if x.exact is not None and x.exact < F(1, 2) else 0)

        w = DiscontinuityWitness(Real.const(F(1, 2)), lambda n: Real.const(F(1, 2) - dyadic(n + 1)), 1)
        G = RealFunctional(fn, "step")
        for bits in itertools.product((0, 1), repeat=5):
            f = point(bits, 1)
            assert grilliot_exists2(G, w, f) == exists2(f)


class TestMaximizer:
    def test_honest_eps(self):
        assert exists2_from_maximizer(honest_eps, point((1, 1, 0), 1)) == 0
        assert exists2_from_maximizer(honest_eps, point((1, 1), 1)) == 1

    def test_constant_eps_refuted(self):
        with pytest.raises(ProviderInvalid) as e:
            exists2_from_maximizer(constant_eps(F(1, 2)), point((), 1))
        assert str(e.value.witness) == str(LinearFn(-1))

    def test_branch_b(self):
        # a maximizer that prefers 1 on the constant function takes branch B
        def eps(g):
            s = g.slope.exact if isinstance(g.slope, Real) else g.slope
            return Real.const(1) if s == 0 else honest_eps(g)

        from nred.reduce import ReductionReport
        rep = ReductionReport("x")
        assert exists2_from_maximizer(eps, point((1, 0), 1), report=rep) == 0
        assert rep.notes["branch"] == "B"
        assert exists2_from_maximizer(eps, point((1,), 1)) == 1


class TestHalving:
    def test_identity(self):
        rep = maximizer_from_exists2(horizon_E(), lambda x: F(x))
        assert abs(rep.output - 1) <= dyadic(10)

    def test_tent_at_third(self):
        rep = maximizer_from_exists2(horizon_E(), lambda x: -abs(F(x) - F(1, 3)))
        assert abs(rep.output - F(1, 3)) <= dyadic(10)

    @pytest.mark.parametrize("name,g", lipschitz_family()[:6])
    def test_family_against_grid_argmax(self, name, g):
        rep = maximizer_from_exists2(horizon_E(), g)
        assert abs(rep.output - grid_argmax(g)) <= dyadic(10), name

    def test_dishonest_decider(self):
        with pytest.raises(ValidationFailed) as e:
            maximizer_from_exists2(always_E(1), lambda x: F(x))
        ce = e.value.counterexample
        assert ce is not None and ce["E_answer"] == 1
        rep = e.value.report
        label, trace = rep.traces[-1]
        assert label.startswith("counterexample") and trace.value == ce["zero_at"]
