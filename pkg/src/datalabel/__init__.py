"""Dataset nutrition labels for tabular CSV data.

Profile a dataset and emit a standardized JSON label: metadata, provenance,
variable descriptions, stratified statistics, pair plots, a Dirichlet
posterior backend, and ground-truth correlations. The label is a canonical
JSON document; a separate viewer renders it.
"""

from .errors import (
    ConfigError,
    DataLabelError,
    LabelBuildError,
    ParseError,
    ProfileError,
)
from .groundtruth import (
    CorrelationEntry,
    CorrelationReport,
    GroundTruthTable,
    KeyAggregates,
    aggregate_by_key,
    build_reports,
    correlate,
    ground_truth_from_table,
    normalize_key,
)
from .ingest import (
    ColumnKind,
    DataTable,
    IngestOptions,
    infer_column_kind,
    infer_table_kinds,
    parse_csv,
    write_csv,
)
from .maker import MakeConfig, compute_auto_payloads, make_label
from .pairs import (
    Histogram,
    PairPlotCell,
    all_pairs,
    histogram,
    pair_payload,
    pearson,
)
from .posterior import (
    PosteriorDistribution,
    credible_intervals,
    fit_conditional,
    posterior_from_counts,
    sample_synthetic,
)
from .schema import (
    ActionList,
    LabelDocument,
    ValidationReport,
    Violation,
    build_label,
    deserialize,
    serialize,
    validate,
)
from .stats import (
    CategoricalProfile,
    DatasetProfile,
    FrequencyCell,
    NumericProfile,
    percent_display,
    profile_categorical,
    profile_dataset,
    profile_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "ActionList",
    "CategoricalProfile",
    "ColumnKind",
    "ConfigError",
    "CorrelationEntry",
    "CorrelationReport",
    "DataLabelError",
    "DataTable",
    "DatasetProfile",
    "FrequencyCell",
    "GroundTruthTable",
    "Histogram",
    "IngestOptions",
    "KeyAggregates",
    "LabelBuildError",
    "LabelDocument",
    "MakeConfig",
    "NumericProfile",
    "PairPlotCell",
    "ParseError",
    "PosteriorDistribution",
    "ProfileError",
    "ValidationReport",
    "Violation",
    "aggregate_by_key",
    "all_pairs",
    "build_label",
    "build_reports",
    "compute_auto_payloads",
    "correlate",
    "credible_intervals",
    "deserialize",
    "fit_conditional",
    "ground_truth_from_table",
    "histogram",
    "infer_column_kind",
    "infer_table_kinds",
    "make_label",
    "normalize_key",
    "pair_payload",
    "parse_csv",
    "pearson",
    "percent_display",
    "posterior_from_counts",
    "profile_categorical",
    "profile_dataset",
    "profile_numeric",
    "sample_synthetic",
    "serialize",
    "validate",
    "write_csv",
]
