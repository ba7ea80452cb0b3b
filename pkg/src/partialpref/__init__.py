"""Exact-arithmetic reasoning over partial preference preorders and
finite-support lotteries."""

from .engine import (
    AdmissibleSet,
    DerivedFacts,
    TransportPlan,
    compare,
    cross_profile,
    dominates,
    maximal_filter,
    saturate,
    shift_reachable,
)
from .casetable import (
    AxiomViolation,
    CaseTuple,
    FiniteModel,
    admissible_outcomes,
    check_axioms,
    consistent_tuples,
    regenerate_table,
    verify_table,
)
from .lottery import Lottery, convex_combine, decompose, make_lottery
from .relation import (
    BaseRelation,
    FactKind,
    PrefFact,
    RelKind,
    build_base_relation,
)

__all__ = [
    "AdmissibleSet",
    "AxiomViolation",
    "BaseRelation",
    "CaseTuple",
    "DerivedFacts",
    "FactKind",
    "FiniteModel",
    "Lottery",
    "PrefFact",
    "RelKind",
    "TransportPlan",
    "admissible_outcomes",
    "build_base_relation",
    "check_axioms",
    "compare",
    "consistent_tuples",
    "convex_combine",
    "cross_profile",
    "decompose",
    "dominates",
    "make_lottery",
    "maximal_filter",
    "regenerate_table",
    "saturate",
    "shift_reachable",
    "verify_table",
]

__version__ = "0.1.0"
