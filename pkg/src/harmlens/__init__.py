"""Harm taxonomy registry, theory-consensus statistics, and severity scoring.

The package keeps three kinds of state strictly apart: the code hierarchy
(:mod:`harmlens.registry`), the normative lookup tables
(:mod:`harmlens.matrix`), and the analytics computed over them
(:mod:`harmlens.consensus`, :mod:`harmlens.severity`,
:mod:`harmlens.mapping`). All values are immutable once constructed.
"""

from .codes import (
    CodeError,
    EntityCode,
    HarmCode,
    format_harm_code,
    parse_entity_code,
    parse_harm_code,
)
from .consensus import (
    ConsensusLabel,
    ConsensusReport,
    ConsensusRow,
    classify_consensus,
    cohort_z,
    consensus_table,
    row_stats,
    student_t_two_tailed_p,
    t_statistic,
)
from .loaders import (
    Diagnostic,
    LoadError,
    load_instances,
    load_mappings,
    load_matrix,
    load_profile,
    load_registry,
)
from .mapping import (
    CoverageReport,
    DomainMapping,
    MappingEntry,
    MappingStrength,
    map_forward,
    map_reverse,
    mapping_asymmetry_check,
)
from .matrix import (
    ConsiderationCode,
    ConsiderationMatrix,
    DuranceClass,
    DuranceWeight,
    ImportanceCode,
    THEORIES,
    Theory,
    likert,
)
from .registry import (
    AuditReport,
    HarmNode,
    Registry,
    ancestors,
    audit_orthogonality,
    lookup,
    register_node,
    remove_node,
)
from .severity import (
    IncidentProfile,
    SeverityReport,
    dur_factor,
    irr_factor,
    severity_report,
    theory_severity,
    victim_multiplier,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "CodeError",
    "ConsensusLabel",
    "ConsensusReport",
    "ConsensusRow",
    "ConsiderationCode",
    "ConsiderationMatrix",
    "CoverageReport",
    "Diagnostic",
    "DomainMapping",
    "DuranceClass",
    "DuranceWeight",
    "EntityCode",
    "HarmCode",
    "HarmNode",
    "ImportanceCode",
    "IncidentProfile",
    "LoadError",
    "MappingEntry",
    "MappingStrength",
    "Registry",
    "SeverityReport",
    "THEORIES",
    "Theory",
    "ancestors",
    "audit_orthogonality",
    "classify_consensus",
    "cohort_z",
    "consensus_table",
    "dur_factor",
    "format_harm_code",
    "irr_factor",
    "likert",
    "load_instances",
    "load_mappings",
    "load_matrix",
    "load_profile",
    "load_registry",
    "lookup",
    "map_forward",
    "map_reverse",
    "mapping_asymmetry_check",
    "parse_entity_code",
    "parse_harm_code",
    "register_node",
    "remove_node",
    "row_stats",
    "severity_report",
    "student_t_two_tailed_p",
    "t_statistic",
    "theory_severity",
    "victim_multiplier",
]
