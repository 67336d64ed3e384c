"""Ratio distribution and journal flagging.

The uniq-jif/jif ratio says how much of a journal's measured impact
survives once repeat citations from the same documents are collapsed; the
complement (the drop) is the share attributable to them.  Journals are
flagged when the drop crosses an absolute threshold or lands in the top
tail of the population.  All functions are pure over immutable inputs.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from uniqjif.model import (
    FlaggedJournal,
    FlagReason,
    FlagReport,
    JournalMetrics,
    RatioDistribution,
)


class UndefinedMetric(ValueError):
    """Raised when an operation needs a metric the journal does not have."""


@dataclass(frozen=True)
class FlagThresholds:
    """Absolute drop cutoff and population tail fraction."""

    drop_threshold: float = 0.30
    top_fraction: float = 0.05

    def __post_init__(self):
        if not 0.0 <= self.drop_threshold <= 1.0:
            raise ValueError("drop_threshold must be within [0, 1]")
        if not 0.0 < self.top_fraction <= 1.0:
            raise ValueError("top_fraction must be within (0, 1]")


def build_distribution(metrics: list[JournalMetrics]) -> RatioDistribution:
    """Empirical distribution of defined ratios; undefined ones are counted out."""
    eligible = [(m.journal, m.ratio) for m in metrics if m.ratio is not None]
    entries = sorted(eligible, key=lambda e: (e[1], e[0]))
    n = len(entries)
    ecdf: list[tuple[float, float]] = []
    for i, (_, ratio) in enumerate(entries):
        if i + 1 < n and entries[i + 1][1] == ratio:
            continue  # only the last of a tie group gets the point
        ecdf.append((ratio, (i + 1) / n))
    return RatioDistribution(
        entries=tuple(entries),
        ecdf=tuple(ecdf),
        n_excluded=len(metrics) - n,
    )


def percentile_of_drop(metrics_entry: JournalMetrics, all_metrics: list[JournalMetrics]) -> float:
    """Fraction of defined-drop journals dropping strictly more than this one.

    0.0 means no journal drops more (the worst offender); ties share a value.
    """
    if metrics_entry.drop is None:
        raise UndefinedMetric(f"journal {metrics_entry.journal!r} has no defined drop")
    population = [m.drop for m in all_metrics if m.drop is not None]
    if not population:
        return 0.0
    greater = sum(1 for d in population if d > metrics_entry.drop)
    return greater / len(population)


def flag_journals(
    metrics: list[JournalMetrics],
    thresholds: FlagThresholds = FlagThresholds(),
) -> FlagReport:
    """Flag journals whose drop exceeds the threshold or sits in the top tail.

    Journals with an undefined drop are never flagged.  A drop of exactly
    zero never earns the percentile reason, so an all-quiet population
    yields an empty report.  Output is sorted by drop descending, ties by
    journal id.
    """
    defined = [m for m in metrics if m.drop is not None]
    drops_sorted = sorted(m.drop for m in defined)
    n = len(drops_sorted)

    flagged = []
    for m in defined:
        rank = (n - bisect_right(drops_sorted, m.drop)) / n
        reasons = []
        if m.drop > thresholds.drop_threshold:
            reasons.append(FlagReason.DROP_THRESHOLD)
        if rank < thresholds.top_fraction and m.drop > 0:
            reasons.append(FlagReason.TOP_PERCENTILE)
        if reasons:
            flagged.append(
                FlaggedJournal(
                    journal=m.journal,
                    drop=m.drop,
                    percentile_rank=rank,
                    reasons=tuple(reasons),
                )
            )
    flagged.sort(key=lambda f: (-f.drop, f.journal))
    return FlagReport(
        flagged=tuple(flagged),
        drop_threshold=thresholds.drop_threshold,
        top_fraction=thresholds.top_fraction,
        n_considered=n,
        n_undefined=len(metrics) - n,
    )
