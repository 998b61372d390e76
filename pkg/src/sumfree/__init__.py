"""Exact enumeration and verification toolkit for sum-free subsets of [1, n].

The public surface groups into four layers: bit-array set values and the
sum-free predicates (:mod:`sumfree.core`), exhaustive and pruned enumeration
with exact g(n, m) values (:mod:`sumfree.search`), the classical and
corrected cardinality bounds with violation scans (:mod:`sumfree.bounds`),
and the maximum-set taxonomy with its verification scans
(:mod:`sumfree.taxonomy`). ``python -m sumfree.cli`` or the ``sumfree``
script exposes all of it on the command line.
"""

from .bounds import (
    BoundCase,
    BoundVerdict,
    PairAnalysis,
    ce_bound,
    evaluate_cell,
    find_tight_exceptions,
    pair_exclusion_analysis,
    revised_bound,
    scan_bound_violations,
)
from .core import (
    IntegerSet,
    ParseError,
    PreconditionError,
    SetRecord,
    SumFreeToolkitError,
    UniverseMismatchError,
    is_difference_free,
    is_maximal_sum_free,
    is_sum_free,
    make_record,
    maximum_cardinality,
    sumset,
)
from .search import (
    ENGINE_FINGERPRINT,
    GEntry,
    SearchCapError,
    SearchConfig,
    compute_g,
    compute_g_with_n,
    enumerate_maximal_sets,
    enumerate_maximum_sets,
    enumerate_sum_free,
    g_table,
    oracle_enumerate_sum_free,
    write_g_table_csv,
)
from .taxonomy import (
    ExceptionName,
    KNOWN_EXCEPTIONS,
    TaxonomyClass,
    TaxonomyLabel,
    TaxonomyReport,
    classify,
    odd_pattern_check,
    verify_lemma_min_element,
    verify_m1_exceptions,
    verify_m2_exceptions,
    verify_pair_coverage,
    verify_taxonomy_completeness,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCase",
    "BoundVerdict",
    "ENGINE_FINGERPRINT",
    "ExceptionName",
    "GEntry",
    "IntegerSet",
    "KNOWN_EXCEPTIONS",
    "PairAnalysis",
    "ParseError",
    "PreconditionError",
    "SearchCapError",
    "SearchConfig",
    "SetRecord",
    "SumFreeToolkitError",
    "TaxonomyClass",
    "TaxonomyLabel",
    "TaxonomyReport",
    "UniverseMismatchError",
    "ce_bound",
    "classify",
    "compute_g",
    "compute_g_with_n",
    "enumerate_maximal_sets",
    "enumerate_maximum_sets",
    "enumerate_sum_free",
    "evaluate_cell",
    "find_tight_exceptions",
    "g_table",
    "is_difference_free",
    "is_maximal_sum_free",
    "is_sum_free",
    "make_record",
    "maximum_cardinality",
    "odd_pattern_check",
    "oracle_enumerate_sum_free",
    "pair_exclusion_analysis",
    "revised_bound",
    "scan_bound_violations",
    "sumset",
    "verify_lemma_min_element",
    "verify_m1_exceptions",
    "verify_m2_exceptions",
    "verify_pair_coverage",
    "verify_taxonomy_completeness",
    "write_g_table_csv",
]
