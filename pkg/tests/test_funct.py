import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nred.encode.points import HostPoint, TermPoint, point
from nred.encode.reals import Real, dyadic
from nred.errors import OutOfFuel, ProviderInvalid
from nred.funct import (Associate, DiscontinuityWitness, Functional2, InJ, NotInJ, PairFunctional, Provider,
                        ProviderKind, SupportClass, Unknown, brute_force_J, check_neighbourhood, eval_associate,
                        exists2, fan_bound, jump_J, threshold_at_zero)

from families import associate_of, finite_points, functional_family


def first_read():
    return Associate(lambda s: s[0] + 1 if s else 0, "β0")


def sum_two():
    return Associate.of_prefix_function(2, lambda s: s[0] + s[1], "β0+β1")


class TestNeighbourhood:
    def test_constant(self):
        assert check_neighbourhood(Associate.constant(0), 6)

    def test_secured_at_two(self):
        assert check_neighbourhood(Associate(lambda s: 1 if len(s) >= 2 else 0), 6)

    def test_unstable(self):
        bad = Associate(lambda s: 1 if len(s) == 2 else (2 if len(s) > 2 else 0))
        assert not check_neighbourhood(bad, 4)

    def test_probe_without_secured_prefix(self):
        never = Associate(lambda s: 0)
        assert not check_neighbourhood(never, 3, probes=[point()], fuel=100)

    def test_generated_family_is_stable(self):
        for e in functional_family(10):
            assert check_neighbourhood(associate_of(e), 4, alphabet=range(3))


class TestEvalAssociate:
    def test_first_value(self):
        assert eval_associate(first_read(), point((4,), 0)) == 4

    def test_constant(self):
        assert all(eval_associate(Associate.constant(7), f) == 7 for f in finite_points(10))

    def test_sum(self):
        assert eval_associate(sum_two(), point((2, 3), 0)) == 5

    def test_out_of_fuel(self):
        with pytest.raises(OutOfFuel):
            eval_associate(Associate(lambda s: 0), point(), 50)

    def test_family_matches_direct_evaluation(self):
        for e in functional_family(15, seed=7):
            alpha = associate_of(e)
            for f in finite_points(30, seed=8):
                assert eval_associate(alpha, f) == e.ev(f)

    def test_functional2_forms(self):
        Y = Functional2(associate=sum_two())
        assert Y.continuous and Y(point((1, 1), 0)) == 2
        T = Functional2.from_term("λf:1. f 0 + f 1")
        assert not T.continuous and T(point((1, 1), 0)) == 2


class TestFanBound:
    def test_constant(self):
        assert fan_bound(Associate.constant(3)) == 3

    def test_first_value(self):
        assert fan_bound(first_read()) == 1

    def test_sum(self):
        assert fan_bound(sum_two()) == 2

    def test_never_secured(self):
        with pytest.raises(OutOfFuel):
            fan_bound(Associate(lambda s: 0), 1000)

    def test_dominates_binary_points(self):
        for e in functional_family(15, seed=11):
            alpha = associate_of(e)
            k = fan_bound(alpha)
            for bits in itertools.product((0, 1), repeat=6):
                for tail in (0, 1):
                    assert eval_associate(alpha, point(bits, tail)) <= k


class TestExists2:
    def test_zero(self):
        assert exists2(point((1, 1, 1, 1, 0), 1)) == 0

    def test_certified_none(self):
        assert exists2(point((1, 2), 1)) == 1

    def test_term_backed_runs_out(self):
        with pytest.raises(OutOfFuel):
            exists2(TermPoint.parse("λn:0. 1"), 1000)

    def test_term_backed_with_zero(self):
        assert exists2(TermPoint.parse("λn:0. |n - 4|")) == 0

    @given(st.integers(0, 4095), st.integers(0, 11))
    @settings(max_examples=80)
    def test_mutation_never_answers_one_with_a_zero(self, n, pos):
        bits = [1 + (n >> i & 1) for i in range(12)]
        bits[pos] = 0
        assert exists2(point(tuple(bits), 1)) == 0
        assert exists2(HostPoint(lambda i: bits[i] if i < 12 else 1, "host"), 10_000) == 0


class TestJump:
    def test_any_n_in(self):
        Y = PairFunctional(lambda g, n: g(n), "g(n)")
        for n in range(4):
            ans = jump_J(Y, n, (5, 2))
            assert isinstance(ans, InJ) and Y(ans.witness, n) == 0

    def test_exhaustive_not_in(self):
        Y = PairFunctional(lambda g, n: 1, "one", dependence=lambda n: (0, 0))
        assert isinstance(jump_J(Y, 0, (2, 4)), NotInJ)

    def test_no_certificate_unknown(self):
        Y = PairFunctional(lambda g, n: 1, "one")
        assert isinstance(jump_J(Y, 0, (2, 4)), Unknown)

    def test_sum_witness(self):
        Y = PairFunctional(lambda g, n: 0 if g(0) + g(1) == n else 1, "sum")
        ans = jump_J(Y, 5, (2, 6))
        assert isinstance(ans, InJ) and ans.witness(0) + ans.witness(1) == 5

    def test_insufficient_class_is_unknown(self):
        # witnesses need value 5 but the class caps at 4
        Y = PairFunctional(lambda g, n: 0 if g(0) == 5 else 1, "g0=5", dependence=lambda n: (1, 6))
        assert isinstance(jump_J(Y, 0, (1, 4)), Unknown)

    def test_out_of_fuel_is_unknown(self):
        def fn(g, n):
            raise OutOfFuel("stuck")

        assert isinstance(jump_J(PairFunctional(fn, "stuck", dependence=lambda n: (0, 0)), 0), Unknown)

    def test_brute_force(self):
        Y = PairFunctional(lambda g, n: 0 if g(0) + g(1) == n else 1, "sum")
        assert brute_force_J(Y, 6, (2, 4)) and not brute_force_J(Y, 7, (2, 4))

    def test_support_class(self):
        assert len(list(SupportClass(2, 3))) == 9
        assert SupportClass(3, 4).covers(2, 3) and not SupportClass(3, 4).covers(4, 1)


class TestDiscontinuity:
    def test_threshold_witness(self):
        w = DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), 1)
        assert w.verify(threshold_at_zero(), 8)

    def test_wrong_gap(self):
        w = DiscontinuityWitness(Real.const(0), lambda n: Real.const(-dyadic(n)), 1)
        assert not w.verify(threshold_at_zero(), 4)

    def test_threshold_on_inexact_input(self):
        x = Real(lambda m, mt: Fraction(1, 3) + dyadic(m + 3))
        assert threshold_at_zero()(x).exact == 1


class TestProvider:
    def test_kind_mismatch(self):
        p = Provider(ProviderKind.CoverOracle, lambda psi: [], "any", "empty")
        p.expect(ProviderKind.CoverOracle)
        with pytest.raises(ProviderInvalid):
            p.expect(ProviderKind.ModulusOracle)

    def test_choice_kind_exists(self):
        p = Provider(ProviderKind.ChoiceOracle, lambda Y: (lambda n: point((n,), 0)), "any", "choice")
        assert p(None)(3)(0) == 3
