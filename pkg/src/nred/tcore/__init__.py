"""Typed term language: Gödel's T with μ and oracle queries."""

from .evaluator import (Closure, Evaluator, MuWitness, OracleTable, conforms,
                        eval_term)
from .parser import parse_term, parse_type, tokenize
from .syntax import (App, BinOp, Fst, Lam, Mu, Num, Oracle, Pair, RatLit, Rec,
                     Snd, Succ, Term, Var, apply, free_vars, oracle_names, show)
from .typecheck import typecheck
from .types import NAT, TYPE1, TYPE2, Arrow, Nat, Prod, Ty, arrows, pure

__all__ = [
    "App", "Arrow", "BinOp", "Closure", "Evaluator", "Fst", "Lam", "Mu",
    "MuWitness", "NAT", "Nat", "Num", "Oracle", "OracleTable", "Pair", "Prod",
    "RatLit", "Rec", "Snd", "Succ", "TYPE1", "TYPE2", "Term", "Ty", "Var",
    "apply", "arrows", "conforms", "eval_term", "free_vars", "oracle_names",
    "parse_term", "parse_type", "pure", "show", "tokenize", "typecheck",
]
