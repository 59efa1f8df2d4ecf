"""Command-line driver: run instance files and print reports.

Exit codes: 0 validated, 2 bad instance or usage, 3 ProviderInvalid,
4 ValidationFailed, 5 OutOfFuel, 6 any other workbench failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from . import instances
from .errors import (InstanceError, OutOfFuel, ParseError, ProviderInvalid, TypeCheckError, ValidationFailed,
                     WorkbenchError)
from .reduce import CATALOG

EXIT_OK, EXIT_SCHEMA, EXIT_PROVIDER, EXIT_VALIDATION, EXIT_FUEL, EXIT_OTHER = 0, 2, 3, 4, 5, 6


def exit_code(exc: BaseException | None) -> int:
    if exc is None:
        return EXIT_OK
    for cls, code in ((InstanceError, EXIT_SCHEMA), (ProviderInvalid, EXIT_PROVIDER),
                      (ValidationFailed, EXIT_VALIDATION), (OutOfFuel, EXIT_FUEL)):
        if isinstance(exc, cls):
            return code
    return EXIT_OTHER


def load_instance(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceError(f"cannot read instance {path}: {e}") from e


def run_path(path: str, fuel=None, precision=None, seed=None, trace=False, expect=None) -> tuple[dict, int]:
    """Run one instance file; returns (report dict, exit code)."""
    report, exc = None, None
    try:
        inst = load_instance(path)
        if expect is not None and isinstance(inst, dict) and inst.get("reduction", expect) != expect:
            raise InstanceError(f"{path} is a {inst.get('reduction')} instance, not {expect}")
        if expect is not None and isinstance(inst, dict):
            inst.setdefault("reduction", expect)
        report = instances.run(inst, fuel, precision, seed)
    except WorkbenchError as e:
        exc, report = e, getattr(e, "report", None)
    code = exit_code(exc)
    if code == EXIT_OK and report is not None and not report.ok:
        code = EXIT_VALIDATION
    out = report.to_json() if report is not None else {"reduction": None, "verdict": type(exc).__name__}
    if exc is not None:
        out["error"] = {"type": type(exc).__name__, "message": str(exc)}
    if trace and report is not None:
        out["trace_text"] = {label: t.text() for label, t in report.traces}
    out["instance"] = path
    out["exit_code"] = code
    out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out, code


def _run_job(args):
    return run_path(*args)


def cmd_run(ns, expect=None) -> int:
    jobs = [(p, ns.fuel, ns.precision, ns.seed, ns.trace, expect) for p in ns.instances]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            results = list(pool.map(_run_job, jobs))
    else:
        results = [_run_job(j) for j in jobs]
    for rep, _code in results:
        print(json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False))
    return max(code for _r, code in results)


def cmd_list(ns) -> int:
    if ns.json:
        print(json.dumps([{"name": e.name, "anchor": e.anchor, "instances": e.instance_class,
                           "strong": e.strong} for e in CATALOG.values()], indent=2, ensure_ascii=False))
        return EXIT_OK
    for e in CATALOG.values():
        tag = "strong" if e.strong else "plain"
        print(f"{e.name:24} [{tag}] {e.anchor}\n{'':24} instances: {e.instance_class}")
    return EXIT_OK


def cmd_eval(ns) -> int:
    from .tcore import NAT, eval_term, parse_term, typecheck

    text = open(ns.term, encoding="utf-8").read() if ns.file else ns.term
    try:
        t = parse_term(text)
        ty = typecheck(t, {}, None)
        if ty != NAT:
            print(f"{t} : {ty}")
            return EXIT_OK
        print(eval_term(t, {}, None, ns.fuel))
    except (ParseError, TypeCheckError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except WorkbenchError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code(e)
    return EXIT_OK


def cmd_machine(ns) -> int:
    from .encode.points import point
    from .omachine import load_program, run

    try:
        prog = load_program(ns.program)
        oracle = point(tuple(ns.oracle), ns.tail)
        halted = run(prog, oracle, tuple(ns.input), ns.fuel)
    except WorkbenchError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return exit_code(e) if not isinstance(e, (ParseError,)) else EXIT_SCHEMA
    print(json.dumps({"value": halted.value, "steps": halted.trace.steps,
                      "digest": halted.trace.digest()}, sort_keys=True))
    if ns.trace:
        print(halted.trace.text())
    return EXIT_OK


def _run_flags(p):
    p.add_argument("instances", nargs="+", help="instance JSON files")
    p.add_argument("--fuel", type=int, default=None, help="step budget for searches and evaluation")
    p.add_argument("--precision", type=int, default=None, help="validation grid exponent (default 12)")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    p.add_argument("--trace", action="store_true", help="include machine traces in text form")
    p.add_argument("--jobs", type=int, default=1, help="run independent instances in parallel")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nred", description="Run reductions on instance files.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("run", help="run instance files, whatever their reduction")
    _run_flags(p)
    p.set_defaults(func=cmd_run)
    for name in CATALOG:
        p = sub.add_parser(name, help=f"run {name} instances")
        _run_flags(p)
        p.set_defaults(func=lambda ns, name=name: cmd_run(ns, expect=name))
    p = sub.add_parser("list", help="print the catalog of reductions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_list)
    p = sub.add_parser("eval", help="evaluate a closed term")
    p.add_argument("term")
    p.add_argument("--file", action="store_true", help="read the term from a file")
    p.add_argument("--fuel", type=int, default=1_000_000)
    p.set_defaults(func=cmd_eval)
    p = sub.add_parser("machine", help="run an oracle-machine program file")
    p.add_argument("program")
    p.add_argument("--input", type=int, nargs="*", default=[])
    p.add_argument("--oracle", type=int, nargs="*", default=[], help="oracle prefix values")
    p.add_argument("--tail", type=int, default=0, help="constant oracle value after the prefix")
    p.add_argument("--fuel", type=int, default=1_000_000)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_machine)
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
