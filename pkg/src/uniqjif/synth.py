"""Deterministic synthetic citation networks, stacking injection, and a
brute-force oracle.

Everything here is reproducible bit-for-bit from the seed.  The generator
uses splitmix64 (documented below) rather than a platform RNG so that
ports in other languages can regenerate identical datasets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from uniqjif.metrics import MetricsConfig, NumeratorScope
from uniqjif.model import (
    CitationRecord,
    JournalId,
    JournalMetrics,
    PublicationRecord,
    is_sane_year,
    normalize_id,
)

# Citing documents added by inject_stacking carry this id prefix and the
# baseline generator never emits it, so injected rows stay auditable.
STACKING_DOC_PREFIX = "stack-"

_MASK64 = (1 << 64) - 1


class InvalidConfig(ValueError):
    """Generator or stacking configuration is unusable."""


class TargetTooSmall(ValueError):
    """The stacking target lacks enough distinct window articles."""


class SplitMix64:
    """splitmix64 PRNG (Steele, Lea & Flood's 64-bit finalizer-based mixer).

    State update and output, all in 64-bit unsigned arithmetic:

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)

    Derived draws, part of the documented contract:
      below(n)  = next_u64() % n          (modulo, no rejection)
      unit()    = (next_u64() >> 11) / 2**53   (uniform in [0, 1))
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def unit(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


class Dataset(NamedTuple):
    publications: list[PublicationRecord]
    citations: list[CitationRecord]


@dataclass(frozen=True)
class SynthConfig:
    """Shape of a generated citation network (all counts per the field names)."""

    seed: int
    n_journals: int
    year_start: int
    year_end: int
    articles_per_journal_year: int
    citing_docs_per_year: int
    refs_per_doc: int
    citable_fraction: float = 1.0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise InvalidConfig("seed must fit in 64 unsigned bits")
        for name in ("n_journals", "articles_per_journal_year", "citing_docs_per_year", "refs_per_doc"):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be >= 1")
        if not (is_sane_year(self.year_start) and is_sane_year(self.year_end)):
            raise InvalidConfig("years outside the sane range")
        if self.year_end < self.year_start:
            raise InvalidConfig("year range is empty")
        if not 0.0 < self.citable_fraction <= 1.0:
            raise InvalidConfig("citable_fraction must be in (0, 1]")

    @property
    def years(self) -> range:
        return range(self.year_start, self.year_end + 1)

    @classmethod
    def from_dict(cls, data: dict) -> SynthConfig:
        """Build from the JSON form, where 'years' is a [start, end] pair."""
        if not isinstance(data, dict):
            raise InvalidConfig("config must be a JSON object")
        data = dict(data)
        years = data.pop("years", None)
        if years is not None:
            if not (isinstance(years, (list, tuple)) and len(years) == 2):
                raise InvalidConfig("'years' must be a [start, end] pair")
            data["year_start"], data["year_end"] = years
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        missing = {f for f in known if f != "citable_fraction"} - set(data)
        if missing:
            raise InvalidConfig(f"missing config keys: {sorted(missing)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidConfig(str(exc)) from None


@dataclass(frozen=True)
class StackingSpec:
    """A burst of fresh documents each citing many window articles of one journal."""

    target_journal: JournalId
    n_stacking_docs: int
    refs_per_stacking_doc: int
    citing_year: int

    def __post_init__(self):
        object.__setattr__(self, "target_journal", normalize_id(self.target_journal))
        if not self.target_journal:
            raise InvalidConfig("target_journal must be non-empty")
        if self.n_stacking_docs < 1:
            raise InvalidConfig("n_stacking_docs must be >= 1")
        if self.refs_per_stacking_doc < 2:
            raise InvalidConfig("refs_per_stacking_doc must be >= 2 (no multiplicity otherwise)")
        if not is_sane_year(self.citing_year):
            raise InvalidConfig("citing_year outside the sane range")


def generate(config: SynthConfig) -> Dataset:
    """Generate a baseline network; deterministic for a given config.

    Articles are laid out journal-major, year-minor, with one citable draw
    each (in that order).  Then for every year and citing document,
    ``refs_per_doc`` distinct articles are drawn uniformly over all
    generated articles (re-drawing on repeats within one document).
    """
    rng = SplitMix64(config.seed)

    publications: list[PublicationRecord] = []
    article_ids: list[str] = []
    for j in range(config.n_journals):
        journal = f"j{j:04d}"
        for year in config.years:
            for a in range(config.articles_per_journal_year):
                article_id = f"{journal}-{year}-a{a:04d}"
                citable = rng.unit() < config.citable_fraction
                publications.append(
                    PublicationRecord(
                        journal=journal,
                        article_id=article_id,
                        pub_year=year,
                        citable=citable,
                        doc_type="article",
                    )
                )
                article_ids.append(article_id)

    total = len(article_ids)
    if config.refs_per_doc > total:
        raise InvalidConfig(
            f"refs_per_doc={config.refs_per_doc} exceeds the {total} generated articles"
        )

    citations: list[CitationRecord] = []
    for year in config.years:
        for d in range(config.citing_docs_per_year):
            doc = f"d{year}-{d:06d}"
            chosen: set[int] = set()
            while len(chosen) < config.refs_per_doc:
                k = rng.below(total)
                if k in chosen:
                    continue
                chosen.add(k)
                citations.append(
                    CitationRecord(
                        citing_doc_id=doc,
                        citing_year=year,
                        cited_article_id=article_ids[k],
                    )
                )
    return Dataset(publications, citations)


def inject_stacking(dataset: Dataset, spec: StackingSpec) -> Dataset:
    """Add stacking documents citing one journal's window articles.

    Each of the ``n_stacking_docs`` fresh documents cites the same
    ``refs_per_stacking_doc`` articles: the id-sorted first ones the target
    published in {citing_year-1, citing_year-2}.  The target's citation
    count rises by docs x refs while its unique-citing count rises only by
    docs; no other journal is touched.
    """
    window = (spec.citing_year - 1, spec.citing_year - 2)
    candidates = sorted(
        p.article_id
        for p in dataset.publications
        if p.journal == spec.target_journal and p.pub_year in window
    )
    if len(candidates) < spec.refs_per_stacking_doc:
        raise TargetTooSmall(
            f"{spec.target_journal!r} has {len(candidates)} window articles, "
            f"need {spec.refs_per_stacking_doc}"
        )
    cited = candidates[: spec.refs_per_stacking_doc]
    injected = [
        CitationRecord(
            citing_doc_id=f"{STACKING_DOC_PREFIX}{spec.target_journal}-{spec.citing_year}-{d:04d}",
            citing_year=spec.citing_year,
            cited_article_id=article_id,
        )
        for d in range(spec.n_stacking_docs)
        for article_id in cited
    ]
    return Dataset(dataset.publications, dataset.citations + injected)


def brute_force_metrics(
    publications: list[PublicationRecord],
    citations: list[CitationRecord],
    config: MetricsConfig,
) -> list[JournalMetrics]:
    """Reference metric computation by naive scans; desk-scale inputs only.

    Deliberately shares no counting or derivation code with the metrics
    module: duplicate pairs are collapsed by an explicit first-seen scan,
    every join is a linear search, and the formulas are restated inline.
    Used as the independent oracle for the fast path.
    """
    deduped: list[CitationRecord] = []
    seen_pairs = set()
    for c in citations:
        key = (c.citing_doc_id, c.cited_article_id)
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        deduped.append(c)

    window_years = [config.census_year - k for k in range(1, config.window + 1)]
    citable_only = config.numerator_scope is NumeratorScope.CITABLE_ONLY

    results = []
    for journal in sorted({p.journal for p in publications}):
        pub_count = 0
        for p in publications:
            if p.journal == journal and p.citable and p.pub_year in window_years:
                pub_count += 1

        cit_count = 0
        citing_docs = set()
        for c in deduped:
            if c.citing_year != config.census_year:
                continue
            hit = None
            for p in publications:
                if p.article_id == c.cited_article_id:
                    hit = p
                    break
            if hit is None or hit.journal != journal or hit.pub_year not in window_years:
                continue
            if citable_only and not hit.citable:
                continue
            cit_count += 1
            citing_docs.add(c.citing_doc_id)
        ucit_count = len(citing_docs)

        jif = cit_count / pub_count if pub_count > 0 else None
        uniq_jif = ucit_count / pub_count if pub_count > 0 else None
        ratio = uniq_jif / jif if jif is not None and jif > 0 else None
        drop = 1.0 - ratio if ratio is not None else None
        results.append(
            JournalMetrics(
                journal=journal,
                census_year=config.census_year,
                cit_count=cit_count,
                ucit_count=ucit_count,
                pub_count=pub_count,
                jif=jif,
                uniq_jif=uniq_jif,
                ratio=ratio,
                drop=drop,
            )
        )
    return results
