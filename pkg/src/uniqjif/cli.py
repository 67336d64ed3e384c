"""Command-line pipeline: ingest -> compute -> distribution -> flag, plus
synth and validate utilities.

Exit codes are part of the public contract: 0 ok, 2 usage or IO problem,
3 degenerate data (nothing to compute), 4 flags present when
--fail-on-flags asked for that.  Every run emits a manifest next to its
output; identical inputs and config yield identical manifests.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import uniqjif
from uniqjif import formats, svg
from uniqjif.analysis import FlagThresholds, build_distribution, flag_journals
from uniqjif.ingest import MalformedInput, parse_citations, parse_publications, resolve_citations
from uniqjif.metrics import MetricsConfig, NumeratorScope, compute_all
from uniqjif.synth import InvalidConfig, StackingSpec, SynthConfig, TargetTooSmall, generate, inject_stacking

EXIT_OK = 0
EXIT_USAGE_IO = 2
EXIT_DEGENERATE = 3
EXIT_FLAGS_PRESENT = 4


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record emitted with every run."""

    command: str
    config: dict
    inputs: dict
    ingest: dict | None = None
    outputs: dict | None = None
    stats: dict | None = None

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "tool": {"name": "uniqjif", "version": uniqjif.__version__},
        }
        for key, value in (("ingest", self.ingest), ("outputs", self.outputs), ("stats", self.stats)):
            if value is not None:
                data[key] = value
        return data


def _digest_entry(path) -> dict:
    return {"path": str(path), "sha256": formats.sha256_file(path)}


def _write_text(path, render) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        render(fh)


def _emit_manifest(out_path, manifest: RunManifest) -> Path:
    manifest_path = Path(f"{out_path}.manifest.json")
    formats.write_manifest(manifest_path, manifest.to_dict())
    return manifest_path


def _stack_spec(text: str) -> StackingSpec:
    """Parse JOURNAL:DOCS:REFS:YEAR, e.g. 'j0007:3:20:2024'."""
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected JOURNAL:DOCS:REFS:YEAR, got {text!r}")
    journal, docs, refs, year = parts
    try:
        return StackingSpec(
            target_journal=journal,
            n_stacking_docs=int(docs),
            refs_per_stacking_doc=int(refs),
            citing_year=int(year),
        )
    except (ValueError, InvalidConfig) as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def cmd_compute(args) -> int:
    table, pub_report = parse_publications(args.pubs)
    if pub_report.rows_accepted == 0:
        print("error: no publication rows accepted", file=sys.stderr)
        return EXIT_DEGENERATE
    citations, cite_report = parse_citations(args.cites)
    resolved, resolve_report = resolve_citations(citations, table)

    config = MetricsConfig(
        census_year=args.year,
        window=args.window,
        numerator_scope=NumeratorScope(args.scope),
    )
    metrics = compute_all(config, table, resolved)

    if args.format == "csv":
        _write_text(args.out, lambda fh: formats.write_metrics_csv(metrics, fh))
    else:
        _write_text(args.out, lambda fh: formats.write_metrics_json(metrics, fh))

    manifest = RunManifest(
        command="compute",
        config={
            "census_year": config.census_year,
            "window": config.window,
            "numerator_scope": config.numerator_scope.value,
            "format": args.format,
        },
        inputs={"pubs": _digest_entry(args.pubs), "cites": _digest_entry(args.cites)},
        ingest={
            "publications": pub_report.as_dict(),
            "citations": cite_report.as_dict(),
            "resolution": resolve_report.as_dict(),
        },
        stats={"journals": len(metrics)},
    )
    _emit_manifest(args.out, manifest)
    return EXIT_OK


def cmd_distribution(args) -> int:
    metrics = formats.read_metrics(args.metrics)
    distribution = build_distribution(metrics)
    if not distribution.entries:
        print("error: no journals with a defined ratio", file=sys.stderr)
        return EXIT_DEGENERATE

    _write_text(args.out, lambda fh: formats.write_ecdf_csv(distribution, fh))

    inputs = {"metrics": _digest_entry(args.metrics)}
    flags = None
    if args.flags:
        flags = formats.read_flag_report(args.flags)
        inputs["flags"] = _digest_entry(args.flags)
    if args.svg:
        _write_text(args.svg, lambda fh: fh.write(svg.render_ecdf_svg(distribution, flags)))

    manifest = RunManifest(
        command="distribution",
        config={"svg": bool(args.svg)},
        inputs=inputs,
        stats={
            "journals_in_distribution": len(distribution.entries),
            "journals_excluded_undefined_ratio": distribution.n_excluded,
        },
    )
    _emit_manifest(args.out, manifest)
    return EXIT_OK


def cmd_flag(args) -> int:
    metrics = formats.read_metrics(args.metrics)
    thresholds = FlagThresholds(
        drop_threshold=args.drop_threshold,
        top_fraction=args.top_percent / 100.0,
    )
    report = flag_journals(metrics, thresholds)
    _write_text(args.out, lambda fh: formats.write_flag_report(report, fh))

    manifest = RunManifest(
        command="flag",
        config={
            "drop_threshold": thresholds.drop_threshold,
            "top_fraction": thresholds.top_fraction,
        },
        inputs={"metrics": _digest_entry(args.metrics)},
        stats={
            "flagged": len(report.flagged),
            "considered": report.n_considered,
            "undefined_drop": report.n_undefined,
        },
    )
    _emit_manifest(args.out, manifest)
    if args.fail_on_flags and report.flagged:
        return EXIT_FLAGS_PRESENT
    return EXIT_OK


def cmd_synth(args) -> int:
    raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        if not isinstance(raw, dict):
            raise InvalidConfig("config must be a JSON object")
        raw = {**raw, "seed": args.seed}
    config = SynthConfig.from_dict(raw)

    dataset = generate(config)
    for spec in args.stack or []:
        dataset = inject_stacking(dataset, spec)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if args.format == "csv" else "jsonl"
    pubs_path = out_dir / f"pubs.{ext}"
    cites_path = out_dir / f"cites.{ext}"
    formats.write_dataset(dataset.publications, dataset.citations, pubs_path, cites_path, args.format)

    manifest = RunManifest(
        command="synth",
        config={
            "seed": config.seed,
            "n_journals": config.n_journals,
            "years": [config.year_start, config.year_end],
            "articles_per_journal_year": config.articles_per_journal_year,
            "citing_docs_per_year": config.citing_docs_per_year,
            "refs_per_doc": config.refs_per_doc,
            "citable_fraction": config.citable_fraction,
            "stack": [
                {
                    "target_journal": s.target_journal,
                    "n_stacking_docs": s.n_stacking_docs,
                    "refs_per_stacking_doc": s.refs_per_stacking_doc,
                    "citing_year": s.citing_year,
                }
                for s in (args.stack or [])
            ],
            "format": args.format,
        },
        inputs={"config": _digest_entry(args.config)},
        outputs={"pubs": _digest_entry(pubs_path), "cites": _digest_entry(cites_path)},
        stats={
            "publications": len(dataset.publications),
            "citations": len(dataset.citations),
        },
    )
    formats.write_manifest(out_dir / "manifest.json", manifest.to_dict())
    return EXIT_OK


def cmd_validate(args) -> int:
    reports = {}
    table = None
    if args.pubs:
        table, report = parse_publications(args.pubs)
        reports["publications"] = report.as_dict()
    citations = None
    if args.cites:
        citations, report = parse_citations(args.cites)
        reports["citations"] = report.as_dict()
    if table is not None and citations is not None:
        _, report = resolve_citations(citations, table)
        reports["resolution"] = report.as_dict()
    print(json.dumps(reports, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniqjif",
        description="Journal impact metrics with unique-citing-document deduplication.",
    )
    parser.add_argument("--version", action="version", version=f"uniqjif {uniqjif.__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute per-journal metrics from raw records")
    p.add_argument("--pubs", required=True, help="publication table (CSV or JSONL, gzip ok)")
    p.add_argument("--cites", required=True, help="citation records (CSV or JSONL, gzip ok)")
    p.add_argument("--year", required=True, type=int, help="census year Y")
    p.add_argument("--window", type=int, default=2, help="window length (default 2: Y-1, Y-2)")
    p.add_argument("--scope", choices=["all", "citable"], default="all",
                   help="which cited items count toward the numerators")
    p.add_argument("--out", required=True, help="metrics table output path")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("distribution", help="ECDF of the uniq-jif/jif ratio")
    p.add_argument("--metrics", required=True, help="metrics table from 'compute'")
    p.add_argument("--out", required=True, help="ECDF points output (CSV)")
    p.add_argument("--svg", help="also render the curve to this SVG path")
    p.add_argument("--flags", help="flag report (JSON) to mark on the plot")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("flag", help="flag journals with a suspicious impact drop")
    p.add_argument("--metrics", required=True, help="metrics table from 'compute'")
    p.add_argument("--drop-threshold", type=float, default=0.30,
                   help="flag drops above this fraction (default 0.30)")
    p.add_argument("--top-percent", type=float, default=5.0,
                   help="flag the top N%% largest drops (default 5)")
    p.add_argument("--out", required=True, help="flag report output (JSON)")
    p.add_argument("--fail-on-flags", action="store_true",
                   help="exit 4 when any journal is flagged (for CI pipelines)")
    p.set_defaults(func=cmd_flag)

    p = sub.add_parser("synth", help="generate a deterministic synthetic dataset")
    p.add_argument("--config", required=True, help="JSON generator config")
    p.add_argument("--seed", type=int, help="override the seed in the config file")
    p.add_argument("--out-dir", required=True, help="directory for the generated files")
    p.add_argument("--stack", action="append", type=_stack_spec, metavar="JOURNAL:DOCS:REFS:YEAR",
                   help="inject a stacking burst (repeatable)")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("validate", help="parse inputs and print the ingest report")
    p.add_argument("--pubs", help="publication table to check")
    p.add_argument("--cites", help="citation records to check")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "validate" and not (args.pubs or args.cites):
        parser.error("validate needs --pubs and/or --cites")
    try:
        return args.func(args)
    except (InvalidConfig, TargetTooSmall) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (OSError, MalformedInput, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE_IO


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
