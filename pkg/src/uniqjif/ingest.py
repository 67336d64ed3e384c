"""Streaming ingest: parse, validate, normalize, deduplicate, and join.

Inputs are line-oriented CSV (RFC 4180, UTF-8, header row required) or
JSONL with the same field names as object keys; the format is sniffed from
the first non-blank line and gzip compression is auto-detected from the
magic bytes.  Each parse is one sequential pass over its stream.  Bad rows
are never fatal: they are rejected and tallied per reason.  Only an
unreadable stream or an unusable header raises.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import chain
from pathlib import Path

from uniqjif.model import (
    CitationRecord,
    PublicationRecord,
    ResolvedCitation,
    is_sane_year,
    normalize_id,
)

REASON_MALFORMED = "MalformedRow"
REASON_DUPLICATE_ARTICLE = "DuplicateArticle"
REASON_YEAR_RANGE = "YearOutOfRange"
REASON_DANGLING = "DanglingCitation"

PUBLICATION_FIELDS = ("journal_id", "article_id", "year", "citable", "doc_type")
CITATION_FIELDS = ("citing_doc_id", "citing_year", "cited_article_id")
CITATION_OPTIONAL_FIELDS = ("cited_journal_id", "cited_year")

_TRUE_WORDS = frozenset({"true", "t", "1", "yes", "y"})
_FALSE_WORDS = frozenset({"false", "f", "0", "no", "n"})


class MalformedInput(ValueError):
    """The stream cannot be parsed at all (e.g. header missing a column)."""


@dataclass(frozen=True)
class IngestReport:
    """Tallies from one ingest pass; rows_read = rows_accepted + rows_rejected."""

    rows_read: int = 0
    rows_accepted: int = 0
    rows_rejected: int = 0
    reject_reasons: dict = field(default_factory=dict)
    duplicate_pairs_removed: int = 0
    dangling_citations: int = 0
    fallback_resolutions: int = 0

    def __post_init__(self):
        if self.rows_read != self.rows_accepted + self.rows_rejected:
            raise ValueError("rows_read must equal rows_accepted + rows_rejected")
        if sum(self.reject_reasons.values()) != self.rows_rejected:
            raise ValueError("reject_reasons must sum to rows_rejected")

    def as_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_accepted": self.rows_accepted,
            "rows_rejected": self.rows_rejected,
            "reject_reasons": dict(sorted(self.reject_reasons.items())),
            "duplicate_pairs_removed": self.duplicate_pairs_removed,
            "dangling_citations": self.dangling_citations,
            "fallback_resolutions": self.fallback_resolutions,
        }


class _RowError(Exception):
    """Internal: row rejected; .reason feeds the report tally."""

    def __init__(self, reason: str):
        self.reason = reason


@contextmanager
def _open_source(source):
    """Yield a text stream for a path (gzip sniffed) or pass a stream through."""
    if isinstance(source, (str, Path)):
        raw = open(source, "rb")
        try:
            magic = raw.read(2)
            raw.seek(0)
            if magic == b"\x1f\x8b":
                raw = gzip.GzipFile(fileobj=raw)
            stream = io.TextIOWrapper(raw, encoding="utf-8", newline="")
        except Exception:
            raw.close()
            raise
        try:
            yield stream
        finally:
            stream.close()
    else:
        yield source


def _first_data_line(stream):
    for line in stream:
        if line.strip():
            return line
    return None


def _parse_year(text: str, *, reason: str = REASON_MALFORMED) -> int:
    try:
        year = int(text.strip())
    except ValueError:
        raise _RowError(reason) from None
    if not is_sane_year(year):
        raise _RowError(REASON_YEAR_RANGE)
    return year


def _parse_bool(text: str) -> bool:
    word = text.strip().casefold()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise _RowError(REASON_MALFORMED)


def _required_id(text, cache: dict) -> str:
    if not isinstance(text, str):
        raise _RowError(REASON_MALFORMED)
    norm = normalize_id(text)
    if not norm:
        raise _RowError(REASON_MALFORMED)
    # Interning repeated ids keeps million-row tables compact.
    return cache.setdefault(norm, norm)


def _csv_header_index(header, required, optional=()):
    index = {}
    for pos, name in enumerate(header):
        index[name.strip().casefold()] = pos
    for name in required:
        if name not in index:
            raise MalformedInput(f"header is missing required column {name!r}")
    cols = {name: index[name] for name in (*required, *optional) if name in index}
    return cols, len(header)


def _json_row(line: str) -> dict:
    try:
        obj = json.loads(line)
    except ValueError:
        raise _RowError(REASON_MALFORMED) from None
    if not isinstance(obj, dict):
        raise _RowError(REASON_MALFORMED)
    return obj


def _json_cell(obj: dict, name: str):
    try:
        value = obj[name]
    except KeyError:
        raise _RowError(REASON_MALFORMED) from None
    if value is None:
        raise _RowError(REASON_MALFORMED)
    return value if isinstance(value, str) else str(value)


def parse_publications(source) -> tuple[dict[str, PublicationRecord], IngestReport]:
    """Parse the publication table; one record per valid, first-seen article id.

    Later rows repeating an article id are rejected (DuplicateArticle).
    Returns the table keyed by normalized article id plus the pass report.
    """
    table: dict[str, PublicationRecord] = {}
    reasons: Counter = Counter()
    rows_read = accepted = 0
    cache: dict = {}

    def take(journal_raw, article_raw, year_raw, citable_raw, doc_type_raw):
        nonlocal rows_read, accepted
        rows_read += 1
        try:
            record = PublicationRecord(
                journal=_required_id(journal_raw, cache),
                article_id=_required_id(article_raw, cache),
                pub_year=_parse_year(year_raw),
                citable=_parse_bool(citable_raw),
                doc_type=doc_type_raw.strip() if isinstance(doc_type_raw, str) else "",
            )
        except _RowError as err:
            reasons[err.reason] += 1
            return
        if record.article_id in table:
            reasons[REASON_DUPLICATE_ARTICLE] += 1
            return
        table[record.article_id] = record
        accepted += 1

    with _open_source(source) as stream:
        first = _first_data_line(stream)
        if first is not None:
            lines = chain([first], stream)
            if first.lstrip().startswith("{"):
                for line in lines:
                    if not line.strip():
                        continue
                    try:
                        obj = _json_row(line)
                        fields = [_json_cell(obj, n) for n in PUBLICATION_FIELDS[:4]]
                    except _RowError as err:
                        rows_read += 1
                        reasons[err.reason] += 1
                        continue
                    take(*fields, obj.get("doc_type", ""))
            else:
                reader = csv.reader(lines)
                cols, arity = _csv_header_index(next(reader), PUBLICATION_FIELDS[:4], ("doc_type",))
                for row in reader:
                    if not row:
                        continue
                    if len(row) != arity:
                        rows_read += 1
                        reasons[REASON_MALFORMED] += 1
                        continue
                    fields = [row[cols[n]] for n in PUBLICATION_FIELDS[:4]]
                    doc_type = row[cols["doc_type"]] if "doc_type" in cols else ""
                    take(*fields, doc_type)

    report = IngestReport(
        rows_read=rows_read,
        rows_accepted=accepted,
        rows_rejected=rows_read - accepted,
        reject_reasons=dict(reasons),
    )
    return table, report


def parse_citations(source) -> tuple[list[CitationRecord], IngestReport]:
    """Parse citation records, collapsing exact (citing_doc, cited_article) repeats.

    The first-seen citing year of a pair is kept; collapses are tallied in
    duplicate_pairs_removed.  Optional denormalized columns
    (cited_journal_id, cited_year) are carried through as hints.
    """
    records: list[CitationRecord] = []
    seen_pairs: set[tuple[str, str]] = set()
    reasons: Counter = Counter()
    rows_read = accepted = duplicates = 0
    cache: dict = {}

    def take(doc_raw, year_raw, article_raw, journal_hint_raw, year_hint_raw):
        nonlocal rows_read, accepted, duplicates
        rows_read += 1
        try:
            doc = _required_id(doc_raw, cache)
            year = _parse_year(year_raw)
            article = _required_id(article_raw, cache)
            journal_hint = None
            if isinstance(journal_hint_raw, str) and journal_hint_raw.strip():
                journal_hint = _required_id(journal_hint_raw, cache)
            year_hint = None
            if year_hint_raw is not None and str(year_hint_raw).strip():
                year_hint = _parse_year(str(year_hint_raw))
        except _RowError as err:
            reasons[err.reason] += 1
            return
        accepted += 1
        pair = (doc, article)
        if pair in seen_pairs:
            duplicates += 1
            return
        seen_pairs.add(pair)
        records.append(
            CitationRecord(
                citing_doc_id=doc,
                citing_year=year,
                cited_article_id=article,
                cited_journal_hint=journal_hint,
                cited_year_hint=year_hint,
            )
        )

    with _open_source(source) as stream:
        first = _first_data_line(stream)
        if first is not None:
            lines = chain([first], stream)
            if first.lstrip().startswith("{"):
                for line in lines:
                    if not line.strip():
                        continue
                    try:
                        obj = _json_row(line)
                        fields = [_json_cell(obj, n) for n in CITATION_FIELDS]
                    except _RowError as err:
                        rows_read += 1
                        reasons[err.reason] += 1
                        continue
                    take(*fields, obj.get("cited_journal_id"), obj.get("cited_year"))
            else:
                reader = csv.reader(lines)
                cols, arity = _csv_header_index(next(reader), CITATION_FIELDS, CITATION_OPTIONAL_FIELDS)
                for row in reader:
                    if not row:
                        continue
                    if len(row) != arity:
                        rows_read += 1
                        reasons[REASON_MALFORMED] += 1
                        continue
                    fields = [row[cols[n]] for n in CITATION_FIELDS]
                    hints = [row[cols[n]] if n in cols else None for n in CITATION_OPTIONAL_FIELDS]
                    take(*fields, *hints)

    report = IngestReport(
        rows_read=rows_read,
        rows_accepted=accepted,
        rows_rejected=rows_read - accepted,
        reject_reasons=dict(reasons),
        duplicate_pairs_removed=duplicates,
    )
    return records, report


def resolve_citations(
    citations: list[CitationRecord],
    publication_table: dict[str, PublicationRecord],
) -> tuple[list[ResolvedCitation], IngestReport]:
    """Join citations against the publication table.

    Citations to unknown articles resolve from their own denormalized hints
    when present (citable assumed true, tallied in fallback_resolutions),
    otherwise they are dropped and tallied as dangling.
    """
    resolved: list[ResolvedCitation] = []
    dangling = fallback = 0
    for cit in citations:
        pub = publication_table.get(cit.cited_article_id)
        if pub is not None:
            resolved.append(
                ResolvedCitation(
                    citing_doc_id=cit.citing_doc_id,
                    citing_year=cit.citing_year,
                    cited_article_id=cit.cited_article_id,
                    cited_journal=pub.journal,
                    cited_pub_year=pub.pub_year,
                    cited_citable=pub.citable,
                )
            )
        elif cit.cited_journal_hint is not None and cit.cited_year_hint is not None:
            fallback += 1
            resolved.append(
                ResolvedCitation(
                    citing_doc_id=cit.citing_doc_id,
                    citing_year=cit.citing_year,
                    cited_article_id=cit.cited_article_id,
                    cited_journal=cit.cited_journal_hint,
                    cited_pub_year=cit.cited_year_hint,
                    cited_citable=True,
                )
            )
        else:
            dangling += 1

    report = IngestReport(
        rows_read=len(citations),
        rows_accepted=len(resolved),
        rows_rejected=dangling,
        reject_reasons={REASON_DANGLING: dangling} if dangling else {},
        dangling_citations=dangling,
        fallback_resolutions=fallback,
    )
    return resolved, report
