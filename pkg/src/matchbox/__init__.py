"""Matching algebraic structures over Q: free dendriform and pre-Lie algebras on
typed trees, Rota-Baxter operator families, the constructions between them, and
an exact axiom checker."""

from .axioms import AXIOM_SETS, Verdict, Witness, check, find_counterexample, replay, report
from .carriers import Poly, sample_element
from .catalog import build, free_dendriform_structure, rooted_prelie_structure
from .errors import (AlphabetMismatch, BudgetExceeded, CapExceeded, DimensionMismatch, EdgeTypeMismatch,
                     InvalidVertex, LeafDecomposition, MatchboxError, MissingOperation, NonzeroWeight,
                     PreconditionFailed)
from .exactalg import LinComb, as_rational
from .freedend import FreeDendriform, dend_bullet, dend_prec, dend_succ
from .operators import (MatTensor, aybe_search, combine_family, kernel_integral, make_kernel_family,
                        make_paybe_family, paybe_residual, running_sum_base, scaled_family, swap_condition,
                        tensor_embed, tensor_operator)
from .prelie import RootedPreLie, prelie_star
from .structures import OpStructure, RBFamily
from .transforms import (antisymmetrize, combine_ops, dendriform_to_prelie, rb_to_assoc_postlie, rb_to_dendriform,
                         rb_to_tridendriform, rblie_to_prelie, split_to_assoc, tridendriform_to_postlie)
from .trees import (LEAF, Node, RootedTree, count_pbt, enumerate_pbt, enumerate_rooted, graft_pbt, graft_rooted_at,
                    parse_pbt, parse_rooted)

__version__ = "0.1.0"

__all__ = [
    "AXIOM_SETS",
    "Verdict",
    "Witness",
    "check",
    "find_counterexample",
    "replay",
    "report",
    "Poly",
    "sample_element",
    "build",
    "free_dendriform_structure",
    "rooted_prelie_structure",
    "AlphabetMismatch",
    "BudgetExceeded",
    "CapExceeded",
    "DimensionMismatch",
    "EdgeTypeMismatch",
    "InvalidVertex",
    "LeafDecomposition",
    "MatchboxError",
    "MissingOperation",
    "NonzeroWeight",
    "PreconditionFailed",
    "LinComb",
    "as_rational",
    "FreeDendriform",
    "dend_bullet",
    "dend_prec",
    "dend_succ",
    "MatTensor",
    "aybe_search",
    "combine_family",
    "kernel_integral",
    "make_kernel_family",
    "make_paybe_family",
    "paybe_residual",
    "running_sum_base",
    "scaled_family",
    "swap_condition",
    "tensor_embed",
    "tensor_operator",
    "RootedPreLie",
    "prelie_star",
    "OpStructure",
    "RBFamily",
    "antisymmetrize",
    "combine_ops",
    "dendriform_to_prelie",
    "rb_to_assoc_postlie",
    "rb_to_dendriform",
    "rb_to_tridendriform",
    "rblie_to_prelie",
    "split_to_assoc",
    "tridendriform_to_postlie",
    "LEAF",
    "Node",
    "RootedTree",
    "count_pbt",
    "enumerate_pbt",
    "enumerate_rooted",
    "graft_pbt",
    "graft_rooted_at",
    "parse_pbt",
    "parse_rooted",
]
