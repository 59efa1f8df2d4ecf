"""Instance files: schema, object builders and one runner per reduction.

An instance is a JSON object::

    {"version": 1, "reduction": "nin_from_hbu", "params": {...},
     "fuel": 1000000, "precision": 12, "seed": 0}

``params`` is checked against the schema of the named reduction before
anything runs.  Rationals are written as strings ("1/3") or integers.
"""

from __future__ import annotations

from fractions import Fraction

import jsonschema

from .budget import as_meter
from .coding import rational_code, seq_decode
from .encode.points import CharSet, point
from .encode.reals import Real, dyadic
from .errors import InstanceError
from .funct import DiscontinuityWitness, PairFunctional, SupportClass, brute_force_J, threshold_at_zero
from .nets import DirectedIndex, check_increasing
from .reduce import (CATALOG, PiecewisePsi, ReductionReport, TermPsi, cantor_from_hbu, const_psi,
                     exists2_from_maximizer, finite_comprehension, first_bits_numeral, first_bits_weight,
                     grilliot_exists2, hbu_from_modulus, jump_to_netlimit, lebesgue_from_netlimit,
                     lebesgue_from_nfp, maximizer_from_exists2, nfp_from_comprehension, nin_from_hbu,
                     run_theorem3, zero_Z)
from .reduce import grilliot as gr
from .reduce import providers as pv
from .tcore import NAT, TYPE1, Arrow, Evaluator, Num, App, eval_term, parse_term, typecheck

VERSION = 1
DEFAULT_FUEL = 2_000_000
DEFAULT_GRID = 12

RAT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
TERM = {"type": "object", "required": ["kind", "text"],
        "properties": {"kind": {"const": "term"}, "text": {"type": "string"}}}


def _kind(name, **props):
    req = ["kind"] + [k for k in props if not k.startswith("_")]
    props = {k: v for k, v in props.items() if not k.startswith("_")}
    return {"type": "object", "required": req, "additionalProperties": False,
            "properties": {"kind": {"const": name}, **props}}


def _opt(schema, **optional):
    schema = dict(schema)
    schema["properties"] = {**schema["properties"], **optional}
    return schema


NAT_S = {"type": "integer", "minimum": 0}
PSI = {"oneOf": [
    _kind("const", value=RAT),
    _kind("piecewise", breaks={"type": "array", "items": RAT}, values={"type": "array", "items": RAT}),
    TERM,
]}
POINT = {"type": "object", "required": ["prefix"], "additionalProperties": False,
         "properties": {"prefix": {"type": "array", "items": NAT_S},
                        "tail": {"oneOf": [NAT_S, {"type": "array", "items": NAT_S, "minItems": 1}]}}}
CLASS = {"type": "array", "items": NAT_S, "minItems": 2, "maxItems": 2}

PARAMS = {
    "jump_to_netlimit": {"required": ["Y"], "properties": {"Y": TERM, "class": CLASS, "depth": NAT_S}},
    "netlimit_to_jump": {"required": ["Y"], "properties": {"Y": TERM, "class": CLASS, "depth": NAT_S}},
    "hbu_from_modulus": {"required": ["psi", "modulus"], "properties": {
        "psi": PSI, "modulus": {"oneOf": [_kind("greedy"), _kind("empty"), _kind("truncated")]}}},
    "lebesgue_from_netlimit": {"required": ["psi", "limit"], "properties": {
        "psi": PSI, "limit": {"oneOf": [_opt(_kind("large-index"), grid_exp=NAT_S), _kind("constant", value=RAT)]}}},
    "lebesgue_from_nfp": {"required": ["psi", "nfp"], "properties": {
        "psi": PSI, "depth": NAT_S, "samples": NAT_S,
        "nfp": {"oneOf": [_opt(_kind("realizer"), resolution=NAT_S), _kind("constant", value=NAT_S),
                          _kind("unstable")]}}},
    "nin_from_hbu": {"required": ["Z", "cover"], "properties": {
        "Z": {"oneOf": [_kind("zero"), _kind("bits", k=NAT_S), _kind("weight", k=NAT_S), TERM]},
        "cover": {"oneOf": [_kind("greedy"), _kind("fixed", points={"type": "array", "items": RAT})]}}},
    "cantor_from_hbu": {"required": ["A", "cover"], "properties": {
        "A": {"type": "array", "items": RAT},
        "cover": {"oneOf": [_kind("greedy"), _kind("fixed", points={"type": "array", "items": RAT})]}}},
    "grilliot_exists2": {"required": ["f"], "properties": {"f": POINT, "k0": NAT_S}},
    "exists2_from_maximizer": {"required": ["eps", "f"], "properties": {
        "f": POINT, "eps": {"oneOf": [_kind("honest"), _kind("constant", value=RAT)]}}},
    "maximizer_from_exists2": {"required": ["E", "g"], "properties": {
        "E": {"oneOf": [_opt(_kind("horizon"), n=NAT_S), _kind("always", value={"enum": [0, 1]})]},
        "g": {"oneOf": [_opt(_kind("linear", slope=RAT), intercept=RAT), _kind("peak", at=RAT)]},
        "stages": NAT_S}},
    "nfp_from_comprehension": {"required": ["A"], "properties": {
        "A": {"oneOf": [_kind("min-length", n=NAT_S), _kind("contains", value=NAT_S), TERM]},
        "depth": NAT_S, "samples": NAT_S, "alphabet": {"type": "array", "items": NAT_S, "minItems": 1}}},
    "finite_comprehension": {"required": ["A", "k"], "properties": {"A": TERM, "k": NAT_S}},
}

INSTANCE = {
    "type": "object",
    "required": ["version", "reduction", "params"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": VERSION},
        "reduction": {"enum": sorted(CATALOG)},
        "params": {"type": "object"},
        "fuel": {"type": "integer", "minimum": 1},
        "precision": {"type": "integer", "minimum": 1, "maximum": 20},
        "seed": {"type": "integer"},
        "description": {"type": "string"},
    },
}


def validate(instance: dict) -> None:
    """Raise InstanceError unless ``instance`` matches the schema."""
    try:
        jsonschema.validate(instance, INSTANCE)
        schema = {"type": "object", "additionalProperties": False, **PARAMS[instance["reduction"]]}
        jsonschema.validate(instance["params"], schema)
    except jsonschema.ValidationError as e:
        where = "/".join(map(str, e.absolute_path)) or "<root>"
        raise InstanceError(f"schema error at {where}: {e.message}") from e


# ---------------------------------------------------------------- builders


def rat(v) -> Fraction:
    return Fraction(v)


def _closed(text: str, want):
    try:
        t = parse_term(text)
        ty = typecheck(t, {}, None)
    except Exception as e:  # noqa: BLE001 - any parse or type error is an instance error
        raise InstanceError(f"bad term {text!r}: {e}") from e
    if ty != want:
        raise InstanceError(f"term {text!r} has type {ty}, expected {want}")
    return t


def nat_fn(text: str, fuel: int):
    """A closed term of type 0 -> 0 as a Python function."""
    t = _closed(text, Arrow(NAT, NAT))
    return lambda n: eval_term(App(t, Num(n)), {}, None, fuel)


def build_psi(spec, fuel):
    if spec["kind"] == "const":
        return const_psi(rat(spec["value"]))
    if spec["kind"] == "piecewise":
        if len(spec["values"]) != len(spec["breaks"]) + 1:
            raise InstanceError("piecewise Ψ needs one more value than breakpoints")
        return PiecewisePsi([rat(b) for b in spec["breaks"]], [rat(v) for v in spec["values"]])
    _closed(spec["text"], Arrow(NAT, NAT))
    return TermPsi(spec["text"], fuel)


def build_pair(spec, fuel) -> PairFunctional:
    text = spec["text"]
    t = _closed(text, Arrow(TYPE1, Arrow(NAT, NAT)))

    def fn(g, k):
        ev = Evaluator(None, as_meter(fuel))
        return ev.apply(ev.apply(ev.ev(t, {}), g), k)

    return PairFunctional(fn, name=text)


def build_point(spec):
    tail = spec.get("tail", 0)
    return point(tuple(spec["prefix"]), tuple(tail) if isinstance(tail, list) else tail)


def build_Z(spec, fuel):
    k = spec["kind"]
    if k == "zero":
        return zero_Z
    if k == "bits":
        return first_bits_numeral(spec["k"])
    if k == "weight":
        return first_bits_weight(spec["k"])
    f = nat_fn(spec["text"], fuel)

    def Z(x):
        return f(rational_code(Fraction(x)))

    Z.__name__ = spec["text"]
    return Z


def build_cover(spec):
    if spec["kind"] == "greedy":
        return pv.cover_oracle()
    return pv.fixed_cover([rat(p) for p in spec["points"]])


def build_seqset(spec, fuel) -> CharSet:
    k = spec["kind"]
    if k == "min-length":
        n = spec["n"]
        return CharSet(lambda c: 1 if len(seq_decode(c)) >= n else 0, "nat", f"|σ|>={n}")
    if k == "contains":
        v = spec["value"]
        return CharSet(lambda c: 1 if v in seq_decode(c) else 0, "nat", f"{v}∈σ")
    f = nat_fn(spec["text"], fuel)
    return CharSet(lambda c: 1 if f(c) == 0 else 0, "nat", spec["text"])


# ---------------------------------------------------------------- runners


def _theorem3_inputs(p, fuel):
    Y = build_pair(p["Y"], fuel)
    cls = SupportClass(*p.get("class", (3, 4)))
    return Y, cls, p.get("depth", 8)


def run_jump_to_netlimit(p, fuel, grid, seed):
    Y, cls, depth = _theorem3_inputs(p, fuel)
    rep = ReductionReport("jump_to_netlimit", inputs={"Y": Y.name, "class": [cls.length, cls.values],
                                                       "depth": depth})
    pool = tuple(cls)
    net = jump_to_netlimit(Y, pool)
    samples = [DirectedIndex(), DirectedIndex(frozenset(pool[: len(pool) // 2])), net.top()]
    rep.checks["increasing"] = check_increasing(net, samples, depth=depth + 1)
    top = net(net.top())
    bits = [top(n) for n in range(depth)]
    rep.output = {"limit_prefix": bits}
    rep.checks["bits_match_brute_force"] = bits == [1 if brute_force_J(Y, n, cls) else 0 for n in range(depth)]
    return rep


def run_netlimit_to_jump(p, fuel, grid, seed):
    Y, cls, depth = _theorem3_inputs(p, fuel)
    rep = run_theorem3(Y, (cls.length, cls.values), depth, fuel)
    rep.name = "netlimit_to_jump"
    return rep


def run_hbu(p, fuel, grid, seed):
    mod = {"greedy": pv.honest_modulus, "empty": pv.empty_modulus,
           "truncated": pv.truncated_modulus}[p["modulus"]["kind"]]()
    return hbu_from_modulus(build_psi(p["psi"], fuel), mod, fuel, grid)


def run_lebesgue_netlimit(p, fuel, grid, seed):
    s = p["limit"]
    lim = pv.netlimit_oracle(s.get("grid_exp", 8)) if s["kind"] == "large-index" else pv.constant_limit(rat(s["value"]))
    return lebesgue_from_netlimit(build_psi(p["psi"], fuel), lim, fuel, grid)


def run_lebesgue_nfp(p, fuel, grid, seed):
    s = p["nfp"]
    nfp = {"realizer": lambda: pv.nfp_realizer(s.get("resolution", 6)),
           "constant": lambda: pv.constant_nfp(s.get("value", 0)),
           "unstable": pv.unstable_nfp}[s["kind"]]()
    return lebesgue_from_nfp(build_psi(p["psi"], fuel), nfp, fuel, p.get("depth", 8), p.get("samples", 32),
                             seed, grid)


def run_nin(p, fuel, grid, seed):
    return nin_from_hbu(build_Z(p["Z"], fuel), build_cover(p["cover"]), fuel, grid)


def run_cantor(p, fuel, grid, seed):
    pts = [rat(a) for a in p["A"]]
    index = {a: i for i, a in enumerate(pts)}
    A = CharSet(lambda x: 1 if Fraction(x) in index else 0, "real", "A")

    def Y(x):
        return index[Fraction(x)]

    return cantor_from_hbu(Y, A, build_cover(p["cover"]), fuel)


def _dyadic_witness(k0):
    return DiscontinuityWitness(Real.const(0), lambda n: Real.const(dyadic(n)), k0)


def run_grilliot(p, fuel, grid, seed):
    f = build_point(p["f"])
    k0 = p.get("k0", 1)
    rep = ReductionReport("grilliot_exists2", inputs={"F": "threshold at 0", "f": str(f), "k0": k0})
    rep.output = grilliot_exists2(threshold_at_zero(), _dyadic_witness(k0), f, as_meter(fuel))
    rep.checks["agrees_with_table_search"] = rep.output == (0 if f.first_zero() is not None else 1)
    return rep


def run_exists2_from_maximizer(p, fuel, grid, seed):
    f = build_point(p["f"])
    s = p["eps"]
    eps = gr.honest_eps if s["kind"] == "honest" else gr.constant_eps(rat(s["value"]))
    rep = ReductionReport("exists2_from_maximizer", inputs={"eps": s["kind"], "f": str(f)})
    try:
        rep.output = exists2_from_maximizer(eps, f, as_meter(fuel), rep)
    except Exception as e:  # noqa: BLE001 - re-raised with the report attached
        from .reduce import fail
        raise fail(e, rep)
    rep.checks["agrees_with_table_search"] = rep.output == (0 if f.first_zero() is not None else 1)
    return rep


def _build_g(s):
    if s["kind"] == "linear":
        return gr.LinearFn(rat(s["slope"]), rat(s.get("intercept", 0)))
    at = rat(s["at"])

    def g(x):
        return -abs(Fraction(x) - at)

    g.name = f"-|x-{at}|"
    return g


def run_maximizer(p, fuel, grid, seed):
    s = p["E"]
    E = gr.horizon_E(s.get("n", 13)) if s["kind"] == "horizon" else gr.always_E(s["value"])
    return maximizer_from_exists2(E, _build_g(p["g"]), fuel, p.get("stages", 12), check_exp=grid)


def run_nfp_comprehension(p, fuel, grid, seed):
    A = build_seqset(p["A"], fuel)
    return nfp_from_comprehension(A, p.get("depth", 10), p.get("samples", 100), seed,
                                  tuple(p.get("alphabet", (0, 1))))


def run_finite_comprehension(p, fuel, grid, seed):
    f = nat_fn(p["A"]["text"], fuel)
    k = p["k"]
    rep = ReductionReport("finite_comprehension", inputs={"A": p["A"]["text"], "k": k})
    X = finite_comprehension(lambda n: f(n) == 0, k)
    rep.output = [n for n in range(k + 1) if X(n)]
    rep.checks["matches_direct_evaluation"] = all(X(n) == (1 if f(n) == 0 else 0) for n in range(k + 1))
    return rep


RUNNERS = {
    "jump_to_netlimit": run_jump_to_netlimit,
    "netlimit_to_jump": run_netlimit_to_jump,
    "hbu_from_modulus": run_hbu,
    "lebesgue_from_netlimit": run_lebesgue_netlimit,
    "lebesgue_from_nfp": run_lebesgue_nfp,
    "nin_from_hbu": run_nin,
    "cantor_from_hbu": run_cantor,
    "grilliot_exists2": run_grilliot,
    "exists2_from_maximizer": run_exists2_from_maximizer,
    "maximizer_from_exists2": run_maximizer,
    "nfp_from_comprehension": run_nfp_comprehension,
    "finite_comprehension": run_finite_comprehension,
}


def run(instance: dict, fuel=None, precision=None, seed=None) -> ReductionReport:
    """Validate and run one instance; flag values override the file's."""
    validate(instance)
    fuel = fuel or instance.get("fuel", DEFAULT_FUEL)
    grid = precision or instance.get("precision", DEFAULT_GRID)
    seed = instance.get("seed", 0) if seed is None else seed
    return RUNNERS[instance["reduction"]](instance["params"], fuel, grid, seed)
