"""Codings: finite sequences, type-1 points, characteristic sets, reals."""

from ..coding import (bincode, bindecode, pair, rational_code, rational_decode,
                      seq_code, seq_decode, unpair)
from .points import (BairePoint, CharSet, HostPoint, TablePoint, TermPoint,
                     b_map, const_point, lex_compare, lex_compare_prefix, point)
from .reals import (Real, Separated, approx, as_real, cantor_real, compare,
                    dyadic, dyadic_approx, hat_normalize, real_apart, rmax,
                    rmin, tilde_clamp, to_point)
from .seqs import FinSeq, initial_segment

__all__ = [
    "BairePoint", "CharSet", "FinSeq", "HostPoint", "Real", "Separated",
    "TablePoint", "TermPoint", "approx", "as_real", "b_map", "bincode",
    "bindecode", "cantor_real", "compare", "const_point", "dyadic",
    "dyadic_approx", "hat_normalize", "initial_segment", "lex_compare",
    "lex_compare_prefix", "pair", "point", "rational_code", "rational_decode",
    "real_apart", "rmax", "rmin", "seq_code", "seq_decode", "tilde_clamp",
    "to_point", "unpair",
]
