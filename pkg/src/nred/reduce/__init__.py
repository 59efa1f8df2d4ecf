"""Reductions as executable pipelines with post-validated outputs."""

from __future__ import annotations

from dataclasses import dataclass

from .compactness import (adjoin_endpoints, hbu_from_modulus, hbu_net, is_lebesgue, least_lebesgue_exponent,
                          lebesgue_from_netlimit, lebesgue_from_nfp, lebesgue_net, leftmost_uncovered,
                          recover_lebesgue)
from .comprehension import finite_comprehension, least_secured, nfp_from_comprehension
from .grilliot import (LinearFn, always_E, constant_eps, exists2_from_maximizer, grilliot_exists2, honest_eps,
                       horizon_E, maximizer_from_exists2, probe_family, q_real, refute_maximizer, validate_eps)
from .jump import LimitFromJ, jump_to_netlimit, netlimit_to_jump, run_theorem3
from .psi import CantorPsi, Cover, HostPsi, NinPsi, PiecewisePsi, Psi, TermPsi, const_psi
from .report import ReductionReport, fail
from .uncountable import (cantor_from_hbu, first_bits_numeral, first_bits_weight, nin_from_hbu, nin_oracle,
                          zero_Z)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    anchor: str
    instance_class: str
    strong: bool


CATALOG = {e.name: e for e in (
    CatalogEntry("jump_to_netlimit", "Theorem: limits of monotone Cantor nets from the jump J",
                 "pair functionals with witnesses of bounded support and values", False),
    CatalogEntry("netlimit_to_jump", "Theorem: the jump J from limits of monotone Cantor nets",
                 "increasing Cantor nets generated by finitely many table points", True),
    CatalogEntry("hbu_from_modulus", "Theorem: finite sub-covers from moduli of net convergence",
                 "piecewise-constant rational Ψ, NIN and Cantor forms", False),
    CatalogEntry("lebesgue_from_netlimit", "Theorem: Lebesgue numbers from net limits",
                 "piecewise-constant rational Ψ", True),
    CatalogEntry("lebesgue_from_nfp", "Theorem: Lebesgue numbers from neighbourhood-function realizers",
                 "piecewise-constant rational Ψ", True),
    CatalogEntry("nin_from_hbu", "Theorem: [0,1] is not injectable into ℕ, from Heine-Borel",
                 "finitely-valued Z: [0,1] → ℕ", True),
    CatalogEntry("cantor_from_hbu", "Theorem: Cantor's theorem for countable A, from Heine-Borel",
                 "finite A with Y injective on A", True),
    CatalogEntry("grilliot_exists2", "Grilliot's trick: ∃² from a discontinuous functional",
                 "real functionals with a verified discontinuity witness", False),
    CatalogEntry("exists2_from_maximizer", "Grilliot's trick applied to a maximizer functional",
                 "maximizers on the linear probe family", False),
    CatalogEntry("maximizer_from_exists2", "Interval halving: maximizers from ∃²",
                 "Lipschitz-1 functions on [0,1] read at rationals", False),
    CatalogEntry("nfp_from_comprehension", "Remark: neighbourhood functions from comprehension",
                 "decidable sets of sequence codes", False),
    CatalogEntry("finite_comprehension", "Finite comprehension from induction",
                 "decidable predicates on ℕ", False),
)}
