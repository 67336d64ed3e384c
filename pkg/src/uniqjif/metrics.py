"""Per-journal impact metrics over a census year and citation window.

The classical impact factor divides citation instances received in the
census year Y (to items published in the window {Y-1, ..., Y-window}) by
the citable items published in that window.  The unique-citing variant
replaces the numerator with the number of distinct citing documents: a
document citing the same journal's window several times counts once.

Counts are exact integers; divisions are IEEE doubles (relative error well
below 1e-12 for the integer operands involved).
"""

from __future__ import annotations

import os
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from uniqjif import kernels
from uniqjif.model import (
    JournalId,
    JournalMetrics,
    PublicationRecord,
    ResolvedCitation,
    is_sane_year,
)

THREADS_ENV = "UNIQJIF_THREADS"

# Below this many citation pairs, partitioning overhead beats any gain.
_PARALLEL_MIN_PAIRS = 200_000


class ZeroDenominator(ValueError):
    """Raised when a ratio is requested over zero citable items."""


class NumeratorScope(str, Enum):
    """Which cited items count toward the numerators."""

    ALL_ITEMS = "all"
    CITABLE_ONLY = "citable"


@dataclass(frozen=True)
class MetricsConfig:
    """Census year Y, window length (prior years {Y-1..Y-window}), and scope."""

    census_year: int
    window: int = 2
    numerator_scope: NumeratorScope = NumeratorScope.ALL_ITEMS

    def __post_init__(self):
        if not is_sane_year(self.census_year):
            raise ValueError(f"census_year {self.census_year} is not a sane year")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        object.__setattr__(self, "numerator_scope", NumeratorScope(self.numerator_scope))

    def in_window(self, year: int) -> bool:
        return self.census_year - self.window <= year <= self.census_year - 1


def uniq_jif_generic(n_unique_citing: int, n_citable: int) -> float:
    """Generic form: unique citing documents per citable item."""
    if n_unique_citing < 0:
        raise ValueError("n_unique_citing must be non-negative")
    if n_citable <= 0:
        raise ZeroDenominator("n_citable must be positive")
    return n_unique_citing / n_citable


def count_pub(
    journal: JournalId,
    census_year: int,
    window: int,
    publication_table: dict[str, PublicationRecord],
) -> int:
    """Citable items of the journal published in {Y-1, ..., Y-window}."""
    lo, hi = census_year - window, census_year - 1
    return sum(
        1
        for rec in publication_table.values()
        if rec.journal == journal and rec.citable and lo <= rec.pub_year <= hi
    )


def _numerator_match(rc: ResolvedCitation, journal: JournalId, config: MetricsConfig) -> bool:
    return (
        rc.cited_journal == journal
        and rc.citing_year == config.census_year
        and config.in_window(rc.cited_pub_year)
        and (config.numerator_scope is NumeratorScope.ALL_ITEMS or rc.cited_citable)
    )


def count_cit(
    journal: JournalId,
    config: MetricsConfig,
    resolved_citations: list[ResolvedCitation],
) -> int:
    """Citation instances received by the journal (classical numerator)."""
    return sum(1 for rc in resolved_citations if _numerator_match(rc, journal, config))


def count_ucit(
    journal: JournalId,
    config: MetricsConfig,
    resolved_citations: list[ResolvedCitation],
) -> int:
    """Distinct citing documents; one document citing several window articles counts once."""
    return len(
        {rc.citing_doc_id for rc in resolved_citations if _numerator_match(rc, journal, config)}
    )


def _metrics_from_counts(
    journal: JournalId, census_year: int, cit: int, ucit: int, pub: int
) -> JournalMetrics:
    jif = uniq = ratio = drop = None
    if pub > 0:
        jif = cit / pub
        uniq = ucit / pub
        if jif > 0:
            ratio = uniq / jif
            drop = 1.0 - ratio
    return JournalMetrics(
        journal=journal,
        census_year=census_year,
        cit_count=cit,
        ucit_count=ucit,
        pub_count=pub,
        jif=jif,
        uniq_jif=uniq,
        ratio=ratio,
        drop=drop,
    )


def compute_journal_metrics(
    journal: JournalId,
    config: MetricsConfig,
    publication_table: dict[str, PublicationRecord],
    resolved_citations: list[ResolvedCitation],
) -> JournalMetrics:
    """Metric bundle for one journal."""
    return _metrics_from_counts(
        journal,
        config.census_year,
        count_cit(journal, config, resolved_citations),
        count_ucit(journal, config, resolved_citations),
        count_pub(journal, config.census_year, config.window, publication_table),
    )


def _encode_citations(
    config: MetricsConfig,
    journal_index: dict[JournalId, int],
    resolved_citations: list[ResolvedCitation],
) -> tuple[array, array, int]:
    """Encode filter-passing citations as (journal idx, citing-doc idx) pairs."""
    group_ids = array("q")
    item_ids = array("q")
    doc_index: dict[str, int] = {}
    citable_only = config.numerator_scope is NumeratorScope.CITABLE_ONLY
    census = config.census_year
    lo, hi = census - config.window, census - 1
    for rc in resolved_citations:
        if rc.citing_year != census or not lo <= rc.cited_pub_year <= hi:
            continue
        if citable_only and not rc.cited_citable:
            continue
        gi = journal_index.get(rc.cited_journal)
        if gi is None:
            continue
        di = doc_index.get(rc.citing_doc_id)
        if di is None:
            di = doc_index[rc.citing_doc_id] = len(doc_index)
        group_ids.append(gi)
        item_ids.append(di)
    return group_ids, item_ids, len(doc_index)


def _worker_count(threads: int | None) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "")
        try:
            threads = int(raw) if raw.strip() else 1
        except ValueError:
            threads = 1
    return max(1, threads)


def _counts_parallel(kern, group_ids, item_ids, n_groups, n_items, workers):
    """Partition pairs by journal index and merge per-partition counts.

    Partitions are disjoint in journal, so merging is plain placement and
    the result is independent of scheduling order.
    """
    parts = [(array("q"), array("q")) for _ in range(workers)]
    for g, it in zip(group_ids, item_ids):
        part = parts[g % workers]
        part[0].append(g)
        part[1].append(it)
    counts = [0] * n_groups
    distinct = [0] * n_groups
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(
            lambda part: kern.pair_group_counts(part[0], part[1], n_groups, n_items), parts
        )
    for part_counts, part_distinct in results:
        for i, value in enumerate(part_counts):
            if value:
                counts[i] = value
        for i, value in enumerate(part_distinct):
            if value:
                distinct[i] = value
    return counts, distinct


def compute_all(
    config: MetricsConfig,
    publication_table: dict[str, PublicationRecord],
    resolved_citations: list[ResolvedCitation],
    *,
    kernel: str | None = None,
    threads: int | None = None,
) -> list[JournalMetrics]:
    """Metrics for every journal in the publication table, sorted by journal id.

    Single pass over the citations with per-journal accumulators (counting
    delegated to the selected kernel backend).  ``threads`` defaults to the
    UNIQJIF_THREADS environment variable; parallelism never changes output.
    """
    journals = sorted({rec.journal for rec in publication_table.values()})
    if not journals:
        return []
    journal_index = {j: i for i, j in enumerate(journals)}

    pub_counts = [0] * len(journals)
    lo, hi = config.census_year - config.window, config.census_year - 1
    for rec in publication_table.values():
        if rec.citable and lo <= rec.pub_year <= hi:
            pub_counts[journal_index[rec.journal]] += 1

    group_ids, item_ids, n_docs = _encode_citations(config, journal_index, resolved_citations)
    kern = kernels.get_kernel(kernel)
    workers = _worker_count(threads)
    if workers > 1 and len(group_ids) >= _PARALLEL_MIN_PAIRS:
        cit_counts, ucit_counts = _counts_parallel(
            kern, group_ids, item_ids, len(journals), n_docs, workers
        )
    else:
        cit_counts, ucit_counts = kern.pair_group_counts(
            group_ids, item_ids, len(journals), max(n_docs, 1)
        )

    return [
        _metrics_from_counts(
            journal, config.census_year, cit_counts[i], ucit_counts[i], pub_counts[i]
        )
        for i, journal in enumerate(journals)
    ]
