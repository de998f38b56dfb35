"""Exact, certificate-producing computations for arithmetic on middle Cantor sets.

``C_λ`` is the attractor of ``x -> λx`` and ``x -> λx + 1 - λ``.  The
package isolates the λ thresholds at which covering conditions switch on,
checks those conditions exactly at a given rational λ, computes finite-rank
image unions to expose gaps, and builds finite witness trees for points of
``{(x, y) in C_λ × C_λ : xy = t}``.
"""

from .cantor import BasicInterval, LambdaOutOfRange, check_lambda, enumerate_rank
from .coverage import (
    Certificate,
    GapReport,
    IntervalUnion,
    RankLimitExceeded,
    certify,
    certify_circle_continuum,
    certify_fk_coverage,
    certify_st_continuum,
    find_gaps,
    image_union_fk,
    union_normalize,
)
from .exactmath import Interval, LambdaPoly, RootBracket, isolate_root, to_rational
from .images import (
    check_cover,
    check_double_cover,
    cond_2_2,
    cond_3_1,
    cond_3_6,
    cond_4_1,
    decompose_f,
    decompose_fk,
    image_f,
    image_fk,
)
from .thresholds import catalog, lambda_k, named_threshold, r_k, threshold_table
from .witness import ExpansionStalled, WitnessTree, build_witness_tree, verify_tree

__version__ = "0.1.0"

__all__ = [
    "BasicInterval", "LambdaOutOfRange", "check_lambda", "enumerate_rank",
    "Certificate", "GapReport", "IntervalUnion", "RankLimitExceeded", "certify",
    "certify_circle_continuum", "certify_fk_coverage", "certify_st_continuum",
    "find_gaps", "image_union_fk", "union_normalize",
    "Interval", "LambdaPoly", "RootBracket", "isolate_root", "to_rational",
    "check_cover", "check_double_cover", "cond_2_2", "cond_3_1", "cond_3_6", "cond_4_1",
    "decompose_f", "decompose_fk", "image_f", "image_fk",
    "catalog", "lambda_k", "named_threshold", "r_k", "threshold_table",
    "ExpansionStalled", "WitnessTree", "build_witness_tree", "verify_tree",
]
