"""Register machines with an oracle-query instruction.

Text form, one instruction per line (``;`` or ``#`` start a comment,
``name:`` defines a label)::

    set  rD c        rD := c
    copy rD rS       rD := rS
    add  rD rA rB    rD := rA + rB
    sub  rD rA rB    rD := max(0, rA - rB)
    mul  rD rA rB    rD := rA * rB
    div  rD rA rB    rD := rA // rB   (0 when rB = 0)
    inc  rD / dec rD (dec stops at 0)
    jmp  L
    jz   rA L        jump when rA = 0
    jnz  rA L
    jlt  rA rB L     jump when rA < rB
    jeq  rA rB L
    query rD rA      rD := oracle(rA)
    halt rA [rB ...] stop; the value is rA, or the tuple (rA, rB, ...)

The input sequence is loaded into r0, r1, ...; every other register
starts at 0.  One instruction costs one unit of fuel.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .budget import as_meter
from .encode.seqs import FinSeq
from .errors import MachineError

ARITY = {
    "set": ("r", "c"), "copy": ("r", "r"), "add": ("r", "r", "r"),
    "sub": ("r", "r", "r"), "mul": ("r", "r", "r"), "div": ("r", "r", "r"),
    "inc": ("r",), "dec": ("r",), "jmp": ("L",), "jz": ("r", "L"),
    "jnz": ("r", "L"), "jlt": ("r", "r", "L"), "jeq": ("r", "r", "L"),
    "query": ("r", "r"), "halt": ("r+",),
}

_REG = re.compile(r"r(\d+)$")
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Instr:
    op: str
    args: tuple

    def __str__(self):
        def fmt(kind, a):
            return f"r{a}" if kind == "r" else str(a)

        kinds = ARITY[self.op]
        if kinds == ("r+",):
            return "halt " + " ".join(f"r{a}" for a in self.args)
        return f"{self.op} " + " ".join(fmt(k, a) for k, a in zip(kinds, self.args))


@dataclass(frozen=True)
class OracleProgram:
    instrs: tuple
    labels: tuple = ()          # (name, index) pairs, for printing
    name: str = "program"

    @property
    def nregs(self) -> int:
        top = -1
        for ins in self.instrs:
            for kind, a in zip(ARITY[ins.op] if ARITY[ins.op] != ("r+",) else ("r",) * len(ins.args), ins.args):
                if kind == "r":
                    top = max(top, a)
        return top + 1

    @classmethod
    def parse(cls, text: str, name: str = "program") -> "OracleProgram":
        lines = []
        labels: dict[str, int] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = re.split(r"[;#]", raw, maxsplit=1)[0].strip()
            while line and ":" in line.split()[0]:
                head, _, line = line.partition(":")
                head = head.strip()
                if not _LABEL.match(head):
                    raise MachineError(f"line {lineno}: bad label {head!r}")
                if head in labels:
                    raise MachineError(f"line {lineno}: duplicate label {head!r}")
                labels[head] = len(lines)
                line = line.strip()
            if line:
                lines.append((lineno, line.split()))
        instrs = []
        for lineno, toks in lines:
            op, args = toks[0].lower(), toks[1:]
            if op not in ARITY:
                raise MachineError(f"line {lineno}: unknown instruction {op!r}")
            kinds = ARITY[op]
            if kinds == ("r+",):
                if not args:
                    raise MachineError(f"line {lineno}: halt needs at least one register")
                kinds = ("r",) * len(args)
            if len(args) != len(kinds):
                raise MachineError(f"line {lineno}: {op} takes {len(kinds)} operands")
            parsed = []
            for kind, a in zip(kinds, args):
                if kind == "r":
                    m = _REG.match(a)
                    if not m:
                        raise MachineError(f"line {lineno}: expected a register, got {a!r}")
                    parsed.append(int(m.group(1)))
                elif kind == "c":
                    if not a.isdigit():
                        raise MachineError(f"line {lineno}: expected a natural constant, got {a!r}")
                    parsed.append(int(a))
                else:
                    if a not in labels:
                        raise MachineError(f"line {lineno}: undefined label {a!r}")
                    parsed.append(labels[a])
            instrs.append(Instr(op, tuple(parsed)))
        if not instrs:
            raise MachineError("empty program")
        return cls(tuple(instrs), tuple(sorted(labels.items(), key=lambda kv: kv[1])), name)

    def __str__(self):
        at: dict[int, list[str]] = {}
        for lbl, idx in self.labels:
            at.setdefault(idx, []).append(lbl)
        names = {idx: lbls[0] for idx, lbls in at.items()}
        out = []
        for i, ins in enumerate(self.instrs):
            for lbl in at.get(i, []):
                out.append(f"{lbl}:")
            kinds = ARITY[ins.op]
            if "L" in kinds:
                args = list(ins.args)
                args[-1] = names.get(args[-1], f"L{args[-1]}")
                head = " ".join(f"r{a}" for a in args[:-1])
                out.append(f"  {ins.op} {head + ' ' if head else ''}{args[-1]}")
            else:
                out.append(f"  {ins}")
        for lbl in at.get(len(self.instrs), []):
            out.append(f"{lbl}:")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Config:
    pc: int
    regs: tuple


@dataclass(frozen=True)
class Trace:
    configs: tuple = ()
    queries: tuple = ()         # (step, argument, answer)
    value: object = None

    @property
    def steps(self) -> int:
        return max(0, len(self.configs) - 1)

    def text(self) -> str:
        qs = {s: (a, v) for s, a, v in self.queries}
        out = []
        for i, c in enumerate(self.configs):
            line = f"{i} pc={c.pc} " + " ".join(map(str, c.regs))
            if i in qs:
                line += f" ? {qs[i][0]} = {qs[i][1]}"
            out.append(line)
        out.append(f"halt {self.value}")
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Halted:
    value: object
    trace: Trace = field(repr=False)


def initial_config(prog: OracleProgram, inp) -> Config:
    inp = tuple(inp)
    n = max(prog.nregs, len(inp))
    regs = list(inp) + [0] * (n - len(inp))
    return Config(0, tuple(regs))


def _step(prog: OracleProgram, c: Config, answer):
    """One transition; ``answer`` supplies the oracle value for queries.

    Returns (next config, query argument or None, halted value or None).
    """
    if not 0 <= c.pc < len(prog.instrs):
        raise MachineError(f"program counter {c.pc} is outside the program")
    ins = prog.instrs[c.pc]
    r = list(c.regs)
    op, a = ins.op, ins.args
    nxt = c.pc + 1
    asked = None
    if op == "set":
        r[a[0]] = a[1]
    elif op == "copy":
        r[a[0]] = r[a[1]]
    elif op == "add":
        r[a[0]] = r[a[1]] + r[a[2]]
    elif op == "sub":
        r[a[0]] = max(0, r[a[1]] - r[a[2]])
    elif op == "mul":
        r[a[0]] = r[a[1]] * r[a[2]]
    elif op == "div":
        r[a[0]] = r[a[1]] // r[a[2]] if r[a[2]] else 0
    elif op == "inc":
        r[a[0]] += 1
    elif op == "dec":
        r[a[0]] = max(0, r[a[0]] - 1)
    elif op == "jmp":
        nxt = a[0]
    elif op == "jz":
        nxt = a[1] if r[a[0]] == 0 else nxt
    elif op == "jnz":
        nxt = a[1] if r[a[0]] != 0 else nxt
    elif op == "jlt":
        nxt = a[2] if r[a[0]] < r[a[1]] else nxt
    elif op == "jeq":
        nxt = a[2] if r[a[0]] == r[a[1]] else nxt
    elif op == "query":
        asked = r[a[1]]
        v = answer(asked)
        if not isinstance(v, int) or v < 0:
            raise MachineError(f"oracle returned {v!r} on {asked}")
        r[a[0]] = v
    elif op == "halt":
        vals = tuple(r[i] for i in a)
        return c, None, (vals[0] if len(vals) == 1 else vals)
    return Config(nxt, tuple(r)), asked, None


def run(prog: OracleProgram, oracle, inp=(), budget=None) -> Halted:
    """Run ``prog`` relative to ``oracle`` on the input sequence.

    Raises OutOfFuel when the budget is exhausted before ``halt``.
    """
    meter = as_meter(budget)
    inp = tuple(inp.entries if isinstance(inp, FinSeq) else inp)
    c = initial_config(prog, inp)
    configs = [c]
    queries = []
    query = oracle.query if hasattr(oracle, "query") else oracle
    while True:
        meter.tick()
        step_no = len(configs) - 1
        nxt, asked, value = _step(prog, c, lambda q: query(q))
        if value is not None:
            return Halted(value, Trace(tuple(configs), tuple(queries), value))
        if asked is not None:
            queries.append((step_no, asked, nxt.regs[prog.instrs[c.pc].args[0]]))
        configs.append(nxt)
        c = nxt


def t_predicate(prog: OracleProgram, inp, trace: Trace) -> bool:
    """Does ``trace`` record a complete halting run of ``prog`` on ``inp``?

    Oracle answers are read from the trace itself.
    """
    inp = tuple(inp.entries if isinstance(inp, FinSeq) else inp)
    if not trace.configs:
        return False
    if trace.configs[0] != initial_config(prog, inp):
        return False
    answers = {s: (a, v) for s, a, v in trace.queries}
    if len(answers) != len(trace.queries):
        return False
    used = 0
    for i, c in enumerate(trace.configs):

        def answer(q, i=i):
            if i not in answers or answers[i][0] != q:
                raise KeyError(i)
            return answers[i][1]

        try:
            nxt, asked, value = _step(prog, c, answer)
        except (KeyError, MachineError):
            return False
        if asked is not None:
            used += 1
        last = i == len(trace.configs) - 1
        if value is not None:
            return last and value == trace.value and used == len(trace.queries)
        if last or trace.configs[i + 1] != nxt:
            return False
    return False


def load_program(path) -> OracleProgram:
    from pathlib import Path

    p = Path(path)
    return OracleProgram.parse(p.read_text(), name=p.stem)
