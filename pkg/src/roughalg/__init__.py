"""Rough-set approximation operators and anti-structure classification
on finite Cayley tables, plus exhaustive verification at desk scale."""

from .approx import (
    ApproxLawReport,
    ApproxResult,
    ApproxSpace,
    APPROX_LAWS,
    LawCheck,
    Partition,
    Subset,
    Universe,
    approximate,
    check_approx_law,
    check_approx_laws,
    equivalence_class,
    make_partition,
    make_space,
    make_universe,
    space_from_partition,
)
from .algebra import (
    Classification,
    CongruenceReport,
    INDET,
    LawVerdict,
    OpTable,
    ProductApproxReport,
    TABLE_LAWS,
    cancellation_failures,
    check_product_approx_laws,
    classify,
    evaluate_law,
    is_congruence,
    local_neutrals,
    make_table,
    set_product,
)
from .rough_structures import (
    IntersectionReport,
    RoughStructVerdict,
    check_intersection_relations,
    check_rough_anti_semigroup,
    check_rough_anti_subsemigroup,
)
from .morphisms import (
    Mapping,
    MorphismReport,
    check_anti_group_hom,
    check_hom,
    check_rough_hom,
    compose,
    kernel,
    make_mapping,
    neutral_pool,
    verify_composition_props,
)
from .enumeration import (
    FindOutcome,
    SearchOutcome,
    SearchSpec,
    bell_number,
    canonical_universe,
    enum_mappings,
    enum_partitions,
    enum_spaces,
    enum_tables,
    find_counterexample,
    search,
)
from .scenario import (
    ArityError,
    DuplicateNameError,
    LexError,
    ParseError,
    Scenario,
    UnknownReferenceError,
    ValidationError,
    parse_scenario,
    serialize_scenario,
)
from .fixtures import EXAMPLE31_RAS, AuditFinding, audit_paper, fixture_scenario, fixture_space
from . import errors

__all__ = [
    "APPROX_LAWS",
    "ApproxLawReport",
    "ApproxResult",
    "ApproxSpace",
    "ArityError",
    "AuditFinding",
    "Classification",
    "CongruenceReport",
    "DuplicateNameError",
    "EXAMPLE31_RAS",
    "FindOutcome",
    "INDET",
    "IntersectionReport",
    "LawCheck",
    "LawVerdict",
    "LexError",
    "Mapping",
    "MorphismReport",
    "OpTable",
    "ParseError",
    "Partition",
    "ProductApproxReport",
    "RoughStructVerdict",
    "Scenario",
    "SearchOutcome",
    "SearchSpec",
    "Subset",
    "TABLE_LAWS",
    "Universe",
    "UnknownReferenceError",
    "ValidationError",
    "approximate",
    "audit_paper",
    "bell_number",
    "cancellation_failures",
    "canonical_universe",
    "check_anti_group_hom",
    "check_approx_law",
    "check_approx_laws",
    "check_hom",
    "check_intersection_relations",
    "check_product_approx_laws",
    "check_rough_anti_semigroup",
    "check_rough_anti_subsemigroup",
    "check_rough_hom",
    "classify",
    "compose",
    "enum_mappings",
    "enum_partitions",
    "enum_spaces",
    "enum_tables",
    "equivalence_class",
    "errors",
    "evaluate_law",
    "find_counterexample",
    "fixture_scenario",
    "fixture_space",
    "is_congruence",
    "kernel",
    "local_neutrals",
    "make_mapping",
    "make_partition",
    "make_space",
    "make_table",
    "make_universe",
    "neutral_pool",
    "parse_scenario",
    "search",
    "serialize_scenario",
    "set_product",
    "space_from_partition",
    "verify_composition_props",
]
