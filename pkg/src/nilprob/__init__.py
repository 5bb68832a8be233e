"""Exact and statistical nilpotence probabilities of finite groups."""

__version__ = "0.1.0"

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    EmptyInput,
    InvalidCounts,
    NilprobError,
    NotAGroup,
    NotNormal,
    OrderExceeded,
    UnknownCatalogName,
)
from .groups import (
    GroupTable,
    build_from_perm_gens,
    build_from_table,
    catalog_base_names,
    catalog_generators,
    catalog_get,
    direct_product,
    group_from_definition,
    group_to_definition,
)
from .perms import PermGroupBSGS, compose, inverse, schreier_sims, stream_rng
from .structure import (
    ClassData,
    QuotientMap,
    SubgroupRef,
    center,
    centralizer,
    commutator,
    conjugacy_classes,
    coset_intersection_size,
    left_normed_commutator,
    lower_central_series,
    nilpotency_class,
    normal_subgroups,
    quotient,
    subgroup_closure,
    whole_group,
)
from .exact import (
    NpResult,
    commutator_distribution,
    cp,
    np_bruteforce,
    np_fast,
    np_k,
    np_sup,
)
from .montecarlo import EstimateResult, estimate_np, wilson_ci
from .verify import (
    CheckOutcome,
    CorpusConfig,
    VerificationReport,
    gap_constant,
    gap_constant_tight,
    max_bad_series_length,
    run_corpus,
)

__all__ = [
    "BudgetExceeded",
    "CheckOutcome",
    "ClassData",
    "CorpusConfig",
    "DegreeMismatch",
    "EmptyInput",
    "EstimateResult",
    "GroupTable",
    "InvalidCounts",
    "NilprobError",
    "NotAGroup",
    "NotNormal",
    "NpResult",
    "OrderExceeded",
    "PermGroupBSGS",
    "QuotientMap",
    "SubgroupRef",
    "UnknownCatalogName",
    "VerificationReport",
    "build_from_perm_gens",
    "build_from_table",
    "catalog_base_names",
    "catalog_generators",
    "catalog_get",
    "center",
    "centralizer",
    "commutator",
    "commutator_distribution",
    "compose",
    "conjugacy_classes",
    "coset_intersection_size",
    "cp",
    "direct_product",
    "estimate_np",
    "gap_constant",
    "gap_constant_tight",
    "group_from_definition",
    "group_to_definition",
    "inverse",
    "left_normed_commutator",
    "lower_central_series",
    "max_bad_series_length",
    "nilpotency_class",
    "normal_subgroups",
    "np_bruteforce",
    "np_fast",
    "np_k",
    "np_sup",
    "quotient",
    "run_corpus",
    "schreier_sims",
    "stream_rng",
    "subgroup_closure",
    "whole_group",
    "wilson_ci",
]
