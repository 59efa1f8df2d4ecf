import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nred.errors import OutOfFuel, ParseError, ProviderInvalid, TypeCheckError
from nred.tcore import (NAT, TYPE1, TYPE2, Arrow, Evaluator, Mu, MuWitness, OracleTable, eval_term, parse_term,
                        parse_type, show, typecheck)

from oracles import least_zero


def run(text, fuel=100_000, oracles=None, env=None):
    return eval_term(parse_term(text, free=(env or {}).keys()), env, oracles, fuel)


class TestParse:
    def test_lambda_applies_argument_to_zero(self):
        t = parse_term("λf:1. f 0")
        assert typecheck(t) == Arrow(TYPE1, NAT)

    def test_recursor_adds(self):
        assert run("rec 2 (λn:0.λr:0. S r) 3") == 5

    def test_mu_round_trips(self):
        t = parse_term("μ(λn:0. |n - 3|)")
        assert isinstance(t, Mu)
        assert parse_term(show(t)) == t

    def test_ascii_spellings(self):
        assert run("fun x:0. x + 1", env=None) is not None
        assert run("(\\x:N. x * x) 7") == 49

    def test_error_has_position(self):
        with pytest.raises(ParseError) as e:
            parse_term("λx:0. (x")
        assert e.value.line == 1 and e.value.col > 1

    def test_unknown_identifier(self):
        with pytest.raises(ParseError):
            parse_term("y + 1")

    def test_types(self):
        assert parse_type("1") == TYPE1
        assert parse_type("(N -> N) -> N") == TYPE2
        assert parse_type("2 -> 1") == Arrow(TYPE2, TYPE1)


class TestTypecheck:
    def test_nat_applied_to_nat(self):
        with pytest.raises(TypeCheckError):
            typecheck(parse_term("3 4"))

    def test_term_of_shape_two_to_one(self):
        t = parse_term("λZ:2. λn:0. Z (λk:0. k + n)")
        assert typecheck(t) == Arrow(TYPE2, TYPE1)

    def test_ill_typed_recursor(self):
        with pytest.raises(TypeCheckError):
            typecheck(parse_term("rec 0 (λn:0. n) 3"))

    def test_pairs(self):
        t = parse_term("λp:0*0. fst p + snd p")
        assert typecheck(t) == Arrow(parse_type("0*0"), NAT)
        assert run("(λp:0*0. fst p + snd p) <2, 3>") == 5


class TestEval:
    def test_mu_least_zero(self):
        assert run("μ(λn:0. |n - 3|)") == 3

    def test_mu_constant_one_runs_out(self):
        with pytest.raises(OutOfFuel):
            run("μ(λn:0. 1)", fuel=10_000)

    def test_mu_no_zero_certificate(self):
        tab = OracleTable().witness("w", MuWitness(no_zero=True))
        assert run("μ[w](λn:0. 1)", oracles=tab) == 0

    def test_mu_bound_refuted(self):
        tab = OracleTable().witness("w", MuWitness(bound=3))
        with pytest.raises(ProviderInvalid):
            run("μ[w](λn:0. |n - 5|)", oracles=tab)

    def test_oracle_query(self):
        tab = OracleTable().add("f", TYPE1, lambda n: n * n)
        t = parse_term("?f(4) + 1")
        assert typecheck(t, {}, tab.types()) == NAT
        assert eval_term(t, {}, tab, 1000) == 17

    def test_truncated_subtraction(self):
        assert run("2 - 5") == 0

    def test_higher_order_recursion(self):
        # iterate a type-1 function: rec at type 1
        assert run("rec (λx:0. x) (λi:0. λh:1. λx:0. h (x + 2)) 4 1") == 9

    @given(st.lists(st.integers(0, 3), min_size=1, max_size=40))
    @settings(max_examples=60, deadline=None)
    def test_mu_agrees_with_brute_force(self, vals):
        tab = OracleTable().add("f", TYPE1, lambda n: vals[n] if n < len(vals) else 0)
        want = least_zero(lambda n: vals[n] if n < len(vals) else 0, 2 ** 10)
        assert eval_term(parse_term("μ(λn:0. ?f(n))"), {}, tab, 100_000) == want

    @given(st.integers(0, 30), st.integers(0, 30), st.integers(1, 3000))
    @settings(max_examples=60, deadline=None)
    def test_fuel_monotone(self, a, b, fuel):
        text = f"rec {a} (λn:0.λr:0. S r) {b}"
        try:
            v = run(text, fuel)
        except OutOfFuel:
            return
        assert run(text, fuel + 1000) == v
        assert run(text, fuel) == v  # determinism

    def test_evaluator_accepts_host_callables(self):
        ev = Evaluator()
        f = ev.ev(parse_term("λg:1. g 3 + g 4"), {})
        assert ev.apply(f, lambda n: 10 * n) == 70
