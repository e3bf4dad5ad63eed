"""Comparative bullet lead analysis.

Measurement ingestion with counting-statistics uncertainties,
k-standard-error interval match criteria with bias correction,
compositional grouping, hypergeometric likelihood-ratio evidence,
heterogeneity tests, distribution-fit ranking, and activation-analysis
measurement reduction.
"""

from .errors import (
    CablError,
    ConflictError,
    DegreesOfFreedomError,
    DesignError,
    DomainError,
    ElementMismatchError,
    FitError,
    IncompletePanelError,
    ParseError,
)
from .evidence import BoxModel, EvidenceResult, likelihood_ratio, p_span_at_least, posterior_odds
from .grouping import GroupingResult, MatchRate, group, within_box_match_rate
from .ingest import Dataset, fixture, parse_csv, render_csv
from .matching import (
    EquivalenceResult,
    MatchResult,
    PerElementMatch,
    equivalence_t_test,
    match_element,
    match_element_biased,
    match_specimens,
)
from .model import (
    DEFAULT_BIAS,
    Basis,
    BiasCorrection,
    Boundary,
    Element,
    ElementSeries,
    Kind,
    Location,
    MatchCriterion,
    RawMeasurement,
    Specimen,
    criterion_preset,
    series_interval,
)
from .uncertainty import (
    DEFAULT_ATTENUATION,
    AttenuationEntry,
    DecaySchedule,
    apply_bias,
    comparator_concentration,
    decay_factor,
    poisson_sigma,
    replicate_summary,
    self_absorption_loss,
)

__version__ = "0.1.0"

__all__ = [
    "CablError",
    "ConflictError",
    "DegreesOfFreedomError",
    "DesignError",
    "DomainError",
    "ElementMismatchError",
    "FitError",
    "IncompletePanelError",
    "ParseError",
    "BoxModel",
    "EvidenceResult",
    "likelihood_ratio",
    "p_span_at_least",
    "posterior_odds",
    "GroupingResult",
    "MatchRate",
    "group",
    "within_box_match_rate",
    "Dataset",
    "fixture",
    "parse_csv",
    "render_csv",
    "EquivalenceResult",
    "MatchResult",
    "PerElementMatch",
    "equivalence_t_test",
    "match_element",
    "match_element_biased",
    "match_specimens",
    "DEFAULT_BIAS",
    "Basis",
    "BiasCorrection",
    "Boundary",
    "Element",
    "ElementSeries",
    "Kind",
    "Location",
    "MatchCriterion",
    "RawMeasurement",
    "Specimen",
    "criterion_preset",
    "series_interval",
    "DEFAULT_ATTENUATION",
    "AttenuationEntry",
    "DecaySchedule",
    "apply_bias",
    "comparator_concentration",
    "decay_factor",
    "poisson_sigma",
    "replicate_summary",
    "self_absorption_loss",
    "__version__",
]
