"""Journal impact metrics with unique-citing-document deduplication.

The classical impact factor counts citation instances; the unique-citing
variant counts each citing document once per journal, which damps the
effect of a few documents citing one journal many times.  This package
ingests raw publication/citation records, computes both metrics per
journal, analyzes the ratio distribution, and flags journals whose drop
suggests abnormal citation patterns.
"""

from uniqjif.analysis import (
    FlagThresholds,
    UndefinedMetric,
    build_distribution,
    flag_journals,
    percentile_of_drop,
)
from uniqjif.ingest import (
    IngestReport,
    MalformedInput,
    parse_citations,
    parse_publications,
    resolve_citations,
)
from uniqjif.metrics import (
    MetricsConfig,
    NumeratorScope,
    ZeroDenominator,
    compute_all,
    compute_journal_metrics,
    count_cit,
    count_pub,
    count_ucit,
    uniq_jif_generic,
)
from uniqjif.model import (
    CitationRecord,
    FlaggedJournal,
    FlagReason,
    FlagReport,
    JournalId,
    JournalMetrics,
    PublicationRecord,
    RatioDistribution,
    ResolvedCitation,
    normalize_id,
)
from uniqjif.synth import (
    Dataset,
    InvalidConfig,
    SplitMix64,
    StackingSpec,
    SynthConfig,
    TargetTooSmall,
    brute_force_metrics,
    generate,
    inject_stacking,
)

__version__ = "0.1.0"

__all__ = [
    "CitationRecord",
    "Dataset",
    "FlagReason",
    "FlagReport",
    "FlagThresholds",
    "FlaggedJournal",
    "IngestReport",
    "InvalidConfig",
    "JournalId",
    "JournalMetrics",
    "MalformedInput",
    "MetricsConfig",
    "NumeratorScope",
    "PublicationRecord",
    "RatioDistribution",
    "ResolvedCitation",
    "SplitMix64",
    "StackingSpec",
    "SynthConfig",
    "TargetTooSmall",
    "UndefinedMetric",
    "ZeroDenominator",
    "brute_force_metrics",
    "build_distribution",
    "compute_all",
    "compute_journal_metrics",
    "count_cit",
    "count_pub",
    "count_ucit",
    "flag_journals",
    "generate",
    "inject_stacking",
    "normalize_id",
    "parse_citations",
    "parse_publications",
    "percentile_of_drop",
    "resolve_citations",
    "uniq_jif_generic",
    "__version__",
]
