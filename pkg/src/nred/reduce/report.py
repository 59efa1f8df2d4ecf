from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

VALIDATED = "Validated"


def jsonable(v):
    """Plain-JSON rendering of report values (rationals become strings)."""
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "to_json"):
        return jsonable(v.to_json())
    return str(v)


@dataclass
class ReductionReport:
    """Everything a reduction did, in a form that can be re-checked.

    The verdict is ``Validated`` iff every entry of ``checks`` holds;
    failed runs carry the name of the failure instead.
    """

    name: str
    inputs: dict = field(default_factory=dict)
    provider_answers: dict = field(default_factory=dict)
    traces: list = field(default_factory=list)     # (label, Trace)
    output: object = None
    checks: dict = field(default_factory=dict)
    failure: str | None = None
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.failure:
            return self.failure
        return VALIDATED if all(self.checks.values()) else "ValidationFailed"

    @property
    def ok(self) -> bool:
        return self.verdict == VALIDATED

    def trace(self, label, trace):
        self.traces.append((label, trace))
        return trace

    def trace_digest(self) -> str:
        h = hashlib.sha256()
        for label, t in self.traces:
            h.update(label.encode())
            h.update(t.text().encode())
        return h.hexdigest()

    def to_json(self) -> dict:
        return {
            "reduction": self.name,
            "inputs": jsonable(self.inputs),
            "provider_answers": jsonable(self.provider_answers),
            "traces": [{"label": lbl, "steps": t.steps, "queries": len(t.queries),
                        "value": jsonable(t.value)} for lbl, t in self.traces],
            "trace_digest": self.trace_digest(),
            "output": jsonable(self.output),
            "checks": jsonable(self.checks),
            "verdict": self.verdict,
            "notes": jsonable(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False)


def fail(exc, report: ReductionReport, failure: str | None = None):
    """Attach ``report`` to ``exc`` and mark the failure kind."""
    report.failure = failure or type(exc).__name__
    exc.report = report
    return exc
