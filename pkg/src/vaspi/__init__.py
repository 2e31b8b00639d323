"""Value-driven SPI toolkit: benefits-dependency-network models with
validation, tracing, maturity assessment, planning, merging, and
evidence-based evolution."""

from .adoption import ADOPTED, IN_PROGRESS, NOT_ADOPTED, AdoptionState, parse_adoption, serialize_adoption
from .assessment import (
    AssessmentConfig,
    AssessmentReport,
    BenefitStatus,
    PlanStep,
    assess,
    benefit_status,
    plan,
    recommend_next,
    value_attainment,
)
from .errors import (
    DepthExceeded,
    DuplicateSibling,
    MergeCycle,
    ModelDocumentError,
    ParseError,
    PathNotFound,
    TaxonomyMismatch,
    UnknownBenefit,
    UnknownEdge,
    UnknownPractice,
    UnreachableTarget,
    VaspiError,
)
from .fixtures import deployment_fixture_path, load_deployment_model
from .formats import DotOptions, export_dot, export_report, model_to_document, serialize_model
from .graph import ValueSlice, enabled_set, layering, minimal_closure, trace_benefit, trace_value
from .merge import (
    AliasTable,
    MatchReport,
    add_evidence,
    edge_confidence,
    evidence_lints,
    load_aliases,
    match_models,
    merge_models,
)
from .model import (
    BdnModel,
    Benefit,
    DependencyGroup,
    Diagnostic,
    EvidenceRecord,
    Practice,
    Principle,
    Provenance,
    RealizationEdge,
    canonical_key,
    dependency_digraph,
    detect_cycles,
    parse_model,
    validate,
)
from .svm import (
    SvmNode,
    SvmPath,
    SvmTaxonomy,
    default_taxonomy,
    list_components,
    load_taxonomy,
    resolve_path,
    serialize_taxonomy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
