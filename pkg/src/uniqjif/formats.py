"""File formats: metrics tables, ECDF points, flag reports, datasets,
run manifests.

All emitters are byte-stable: fixed column orders, sorted JSON keys, "\n"
line endings, and one numeric format (9 decimal places, trailing zeros
trimmed, never scientific) so identical runs produce identical files on
any platform.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

from uniqjif.model import (
    CitationRecord,
    FlaggedJournal,
    FlagReason,
    FlagReport,
    JournalMetrics,
    PublicationRecord,
    RatioDistribution,
)

METRICS_COLUMNS = (
    "journal_id",
    "cit_count",
    "ucit_count",
    "pub_count",
    "jif",
    "uniq_jif",
    "ratio",
    "drop",
)


def format_number(value: float) -> str:
    """Render with 9 decimal places, trailing zeros trimmed (at least one kept)."""
    text = f"{value:.9f}"
    whole, _, frac = text.partition(".")
    frac = frac.rstrip("0") or "0"
    return f"{whole}.{frac}"


def _round9(value: float | None) -> float | None:
    return None if value is None else round(value, 9)


def write_metrics_csv(metrics: list[JournalMetrics], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(METRICS_COLUMNS)
    for m in metrics:
        writer.writerow(
            [
                m.journal,
                m.cit_count,
                m.ucit_count,
                m.pub_count,
                "" if m.jif is None else format_number(m.jif),
                "" if m.uniq_jif is None else format_number(m.uniq_jif),
                "" if m.ratio is None else format_number(m.ratio),
                "" if m.drop is None else format_number(m.drop),
            ]
        )


def write_metrics_json(metrics: list[JournalMetrics], stream) -> None:
    rows = [
        {
            "journal_id": m.journal,
            "cit_count": m.cit_count,
            "ucit_count": m.ucit_count,
            "pub_count": m.pub_count,
            "jif": _round9(m.jif),
            "uniq_jif": _round9(m.uniq_jif),
            "ratio": _round9(m.ratio),
            "drop": _round9(m.drop),
        }
        for m in metrics
    ]
    json.dump(rows, stream, indent=2, sort_keys=True)
    stream.write("\n")


def read_metrics(path, census_year: int = 0) -> list[JournalMetrics]:
    """Read a metrics table written by this package (CSV or JSON, sniffed)."""
    text = Path(path).read_text(encoding="utf-8")
    rows: list[dict]
    if text.lstrip().startswith("["):
        rows = json.loads(text)
    else:
        rows = list(csv.DictReader(text.splitlines()))
        for row in rows:
            missing = [c for c in METRICS_COLUMNS if row.get(c) is None]
            if missing:
                raise ValueError(f"metrics table is missing columns: {missing}")

    def fnum(value):
        if value is None or value == "":
            return None
        return float(value)

    return [
        JournalMetrics(
            journal=row["journal_id"],
            census_year=census_year,
            cit_count=int(row["cit_count"]),
            ucit_count=int(row["ucit_count"]),
            pub_count=int(row["pub_count"]),
            jif=fnum(row["jif"]),
            uniq_jif=fnum(row["uniq_jif"]),
            ratio=fnum(row["ratio"]),
            drop=fnum(row["drop"]),
        )
        for row in rows
    ]


def write_ecdf_csv(distribution: RatioDistribution, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("ratio", "cumulative_fraction"))
    for ratio, fraction in distribution.ecdf:
        writer.writerow((format_number(ratio), format_number(fraction)))


def flag_report_to_dict(report: FlagReport) -> dict:
    return {
        "thresholds": {
            "drop_threshold": _round9(report.drop_threshold),
            "top_fraction": _round9(report.top_fraction),
        },
        "n_considered": report.n_considered,
        "n_undefined": report.n_undefined,
        "flagged": [
            {
                "journal_id": f.journal,
                "drop": _round9(f.drop),
                "percentile_rank": _round9(f.percentile_rank),
                "reasons": [r.value for r in f.reasons],
            }
            for f in report.flagged
        ],
    }


def write_flag_report(report: FlagReport, stream) -> None:
    json.dump(flag_report_to_dict(report), stream, indent=2, sort_keys=True)
    stream.write("\n")


def read_flag_report(path) -> FlagReport:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return FlagReport(
        flagged=tuple(
            FlaggedJournal(
                journal=row["journal_id"],
                drop=row["drop"],
                percentile_rank=row["percentile_rank"],
                reasons=tuple(FlagReason(r) for r in row["reasons"]),
            )
            for row in data["flagged"]
        ),
        drop_threshold=data["thresholds"]["drop_threshold"],
        top_fraction=data["thresholds"]["top_fraction"],
        n_considered=data["n_considered"],
        n_undefined=data["n_undefined"],
    )


def _bool_word(flag: bool) -> str:
    return "true" if flag else "false"


def write_publications(publications: list[PublicationRecord], stream, fmt: str = "csv") -> None:
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("journal_id", "article_id", "year", "citable", "doc_type"))
        for p in publications:
            writer.writerow((p.journal, p.article_id, p.pub_year, _bool_word(p.citable), p.doc_type))
    elif fmt == "jsonl":
        for p in publications:
            stream.write(
                json.dumps(
                    {
                        "journal_id": p.journal,
                        "article_id": p.article_id,
                        "year": p.pub_year,
                        "citable": p.citable,
                        "doc_type": p.doc_type,
                    },
                    separators=(",", ":"),
                )
            )
            stream.write("\n")
    else:
        raise ValueError(f"unknown dataset format {fmt!r}")


def write_citations(citations: list[CitationRecord], stream, fmt: str = "csv") -> None:
    with_hints = any(c.cited_journal_hint is not None or c.cited_year_hint is not None for c in citations)
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        header = ["citing_doc_id", "citing_year", "cited_article_id"]
        if with_hints:
            header += ["cited_journal_id", "cited_year"]
        writer.writerow(header)
        for c in citations:
            row = [c.citing_doc_id, c.citing_year, c.cited_article_id]
            if with_hints:
                row += [
                    c.cited_journal_hint or "",
                    "" if c.cited_year_hint is None else c.cited_year_hint,
                ]
            writer.writerow(row)
    elif fmt == "jsonl":
        for c in citations:
            obj = {
                "citing_doc_id": c.citing_doc_id,
                "citing_year": c.citing_year,
                "cited_article_id": c.cited_article_id,
            }
            if with_hints:
                obj["cited_journal_id"] = c.cited_journal_hint
                obj["cited_year"] = c.cited_year_hint
            stream.write(json.dumps(obj, separators=(",", ":")))
            stream.write("\n")
    else:
        raise ValueError(f"unknown dataset format {fmt!r}")


def write_dataset(publications, citations, pubs_path, cites_path, fmt: str = "csv") -> None:
    """Emit a dataset in the exact ingest file formats."""
    with open(pubs_path, "w", encoding="utf-8", newline="") as fh:
        write_publications(publications, fh, fmt)
    with open(cites_path, "w", encoding="utf-8", newline="") as fh:
        write_citations(citations, fh, fmt)


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(path, manifest: dict) -> None:
    """Write a run manifest; content depends only on inputs and config."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
