"""Domain types shared by every stage of the pipeline.

Identifiers (journal ids, article ids, citing-document ids) are opaque
strings, normalized exactly once at ingest time: surrounding whitespace is
trimmed and the string is case-folded, so DOI-style ids compare
case-insensitively.  All types here are frozen after construction and safe
to share between concurrent workers.

Metric fields that can be undefined (a journal with no publications has no
impact factor) use ``None`` rather than a sentinel number, so a journal
whose impact factor is genuinely zero stays distinguishable from one whose
impact factor does not exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

YEAR_MIN = 1500
YEAR_MAX = 2200

# Identifiers are plain normalized strings; the alias marks intent in
# signatures without wrapping every id in an object.
JournalId = str


def normalize_id(raw: str) -> str:
    """Normalize an identifier: trim whitespace, case-fold."""
    return raw.strip().casefold()


def is_sane_year(year: int) -> bool:
    """True for years inside the accepted [1500, 2200] range."""
    return YEAR_MIN <= year <= YEAR_MAX


@dataclass(frozen=True, slots=True)
class PublicationRecord:
    """One published item of a journal in a given year.

    ``citable`` marks items that count toward the impact-factor
    denominator; ``doc_type`` is a free-form label kept for reporting only.
    """

    journal: JournalId
    article_id: str
    pub_year: int
    citable: bool
    doc_type: str = ""

    def __post_init__(self):
        if not self.journal:
            raise ValueError("journal id must be non-empty")
        if not self.article_id:
            raise ValueError("article id must be non-empty")
        if not is_sane_year(self.pub_year):
            raise ValueError(f"pub_year {self.pub_year} outside [{YEAR_MIN}, {YEAR_MAX}]")


@dataclass(frozen=True, slots=True)
class CitationRecord:
    """One reference from a citing document to a cited article.

    ``cited_journal_hint`` / ``cited_year_hint`` carry optional denormalized
    columns from the input; they let a citation resolve even when the cited
    article is missing from the publication table.
    """

    citing_doc_id: str
    citing_year: int
    cited_article_id: str
    cited_journal_hint: JournalId | None = None
    cited_year_hint: int | None = None

    def __post_init__(self):
        if not self.citing_doc_id:
            raise ValueError("citing_doc_id must be non-empty")
        if not self.cited_article_id:
            raise ValueError("cited_article_id must be non-empty")
        if not is_sane_year(self.citing_year):
            raise ValueError(f"citing_year {self.citing_year} outside [{YEAR_MIN}, {YEAR_MAX}]")

    @property
    def pair(self) -> tuple[str, str]:
        """The identity used for duplicate collapsing."""
        return (self.citing_doc_id, self.cited_article_id)


@dataclass(frozen=True, slots=True)
class ResolvedCitation:
    """A citation joined against the publication table.

    The ``cited_*`` fields mirror the matched publication record (or the
    row's own denormalized columns when the join fell back to them).
    """

    citing_doc_id: str
    citing_year: int
    cited_article_id: str
    cited_journal: JournalId
    cited_pub_year: int
    cited_citable: bool


# Tolerance for the drop/ratio identity when metrics are rebuilt from
# rounded file output; freshly computed metrics satisfy it exactly.
_IDENTITY_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class JournalMetrics:
    """Per-journal, per-census-year metric bundle.

    ``cit_count`` is the classical impact-factor numerator (citation
    instances), ``ucit_count`` the number of distinct citing documents,
    ``pub_count`` the citable items published in the window.  ``jif`` and
    ``uniq_jif`` are defined iff ``pub_count > 0``; ``ratio``
    (uniq_jif / jif) and ``drop`` (1 - ratio) are defined iff ``jif > 0``.
    """

    journal: JournalId
    census_year: int
    cit_count: int
    ucit_count: int
    pub_count: int
    jif: float | None
    uniq_jif: float | None
    ratio: float | None
    drop: float | None

    def __post_init__(self):
        if min(self.cit_count, self.ucit_count, self.pub_count) < 0:
            raise ValueError("counts must be non-negative")
        if self.ucit_count > self.cit_count:
            raise ValueError("ucit_count cannot exceed cit_count")
        defined = self.pub_count > 0
        if (self.jif is not None) != defined or (self.uniq_jif is not None) != defined:
            raise ValueError("jif/uniq_jif must be defined iff pub_count > 0")
        ratio_defined = self.jif is not None and self.jif > 0
        if (self.ratio is not None) != ratio_defined or (self.drop is not None) != ratio_defined:
            raise ValueError("ratio/drop must be defined iff jif > 0")
        if self.jif is not None and self.uniq_jif is not None:
            if self.jif < 0 or self.uniq_jif < 0:
                raise ValueError("jif/uniq_jif must be non-negative")
            if self.uniq_jif > self.jif:
                raise ValueError("uniq_jif cannot exceed jif")
        if self.ratio is not None:
            if not 0.0 <= self.ratio <= 1.0:
                raise ValueError(f"ratio {self.ratio} outside [0, 1]")
            if abs(self.drop - (1.0 - self.ratio)) > _IDENTITY_TOL:
                raise ValueError("drop must equal 1 - ratio")


@dataclass(frozen=True, slots=True)
class RatioDistribution:
    """Sorted uniq-jif/jif ratios with their empirical CDF.

    ``entries`` holds (journal, ratio) sorted ascending by ratio (ties by
    journal id); ``ecdf`` has one point per distinct ratio value r:
    (r, fraction of journals with ratio <= r).  Journals with an undefined
    ratio are excluded and counted in ``n_excluded``.
    """

    entries: tuple[tuple[JournalId, float], ...]
    ecdf: tuple[tuple[float, float], ...]
    n_excluded: int = 0

    def __post_init__(self):
        if self.n_excluded < 0:
            raise ValueError("n_excluded must be non-negative")
        ratios = [r for _, r in self.entries]
        if ratios != sorted(ratios):
            raise ValueError("entries must be sorted ascending by ratio")
        fractions = [f for _, f in self.ecdf]
        if any(b <= a for a, b in zip(fractions, fractions[1:])):
            raise ValueError("ecdf fractions must be strictly increasing")
        if self.entries and (not self.ecdf or self.ecdf[-1][1] != 1.0):
            raise ValueError("ecdf must end at exactly 1.0 for non-empty input")


class FlagReason(str, Enum):
    """Why a journal was flagged."""

    DROP_THRESHOLD = "drop_threshold"
    TOP_PERCENTILE = "top_percentile"


@dataclass(frozen=True, slots=True)
class FlaggedJournal:
    journal: JournalId
    drop: float
    percentile_rank: float
    reasons: tuple[FlagReason, ...]


@dataclass(frozen=True, slots=True)
class FlagReport:
    """Journals exceeding the drop / percentile thresholds.

    ``n_considered`` counts journals with a defined drop; ``n_undefined``
    counts those excluded for lacking one (e.g. zero impact factor).
    """

    flagged: tuple[FlaggedJournal, ...]
    drop_threshold: float
    top_fraction: float
    n_considered: int = 0
    n_undefined: int = 0

    def __post_init__(self):
        for entry in self.flagged:
            if not entry.reasons:
                raise ValueError(f"{entry.journal}: flagged without a reason")
            if FlagReason.DROP_THRESHOLD in entry.reasons and not entry.drop > self.drop_threshold:
                raise ValueError(f"{entry.journal}: drop reason fails re-verification")
            if FlagReason.TOP_PERCENTILE in entry.reasons and not (
                entry.percentile_rank < self.top_fraction and entry.drop > 0
            ):
                raise ValueError(f"{entry.journal}: percentile reason fails re-verification")
