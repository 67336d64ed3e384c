"""Shared test utilities: pipeline runner, random instances, comparisons."""

import io

from uniqjif.formats import write_citations, write_publications
from uniqjif.ingest import parse_citations, parse_publications, resolve_citations
from uniqjif.metrics import MetricsConfig, NumeratorScope, compute_all
from uniqjif.model import CitationRecord
from uniqjif.synth import SplitMix64, SynthConfig, generate


def run_pipeline(pubs, cites, config, kernel=None, threads=None):
    """Push records through the real serialize -> parse -> resolve -> compute
    path, so dedup and join behaviour match what the CLI would do."""
    pub_buf = io.StringIO()
    write_publications(pubs, pub_buf, fmt="csv")
    table, _ = parse_publications(io.StringIO(pub_buf.getvalue()))

    cite_buf = io.StringIO()
    write_citations(cites, cite_buf, fmt="csv")
    records, _ = parse_citations(io.StringIO(cite_buf.getvalue()))

    resolved, _ = resolve_citations(records, table)
    return compute_all(config, table, resolved, kernel=kernel, threads=threads)


def assert_metrics_close(got, want, tol=1e-9):
    assert len(got) == len(want), f"{len(got)} journals vs {len(want)}"
    for g, w in zip(got, want):
        assert g.journal == w.journal
        assert g.census_year == w.census_year
        assert g.cit_count == w.cit_count
        assert g.ucit_count == w.ucit_count
        assert g.pub_count == w.pub_count
        for field in ("jif", "uniq_jif", "ratio", "drop"):
            a = getattr(g, field)
            b = getattr(w, field)
            if a is None or b is None:
                assert a is None and b is None, f"{g.journal}.{field}: {a} vs {b}"
            else:
                assert abs(a - b) <= tol, f"{g.journal}.{field}: {a} vs {b}"


def random_instance(seed):
    """Small deterministic dataset plus config, sized for brute-force checks.

    Mixes in dangling citations and duplicated rows so the comparison also
    covers the dedup/join behaviour, not just the happy path.
    """
    rng = SplitMix64(seed ^ 0x5EED)
    year_end = 2022 + rng.below(3)
    cfg = SynthConfig(
        seed=seed,
        n_journals=1 + rng.below(5),
        year_start=2020,
        year_end=year_end,
        articles_per_journal_year=1 + rng.below(4),
        citing_docs_per_year=1 + rng.below(10),
        refs_per_doc=1 + rng.below(4),
        citable_fraction=(1.0, 0.8, 0.5)[rng.below(3)],
    )
    total_articles = cfg.n_journals * (year_end - 2020 + 1) * cfg.articles_per_journal_year
    if cfg.refs_per_doc > total_articles:
        cfg = SynthConfig(
            seed=cfg.seed,
            n_journals=cfg.n_journals,
            year_start=cfg.year_start,
            year_end=cfg.year_end,
            articles_per_journal_year=cfg.articles_per_journal_year,
            citing_docs_per_year=cfg.citing_docs_per_year,
            refs_per_doc=total_articles,
            citable_fraction=cfg.citable_fraction,
        )
    pubs, cites = generate(cfg)

    census = year_end if rng.below(4) else year_end - 1
    metrics_config = MetricsConfig(
        census_year=census,
        window=1 + rng.below(3),
        numerator_scope=NumeratorScope.CITABLE_ONLY if rng.below(2) else NumeratorScope.ALL_ITEMS,
    )

    cites = list(cites)
    for i in range(rng.below(3)):
        cites.append(CitationRecord(f"ghost-doc-{i}", census, f"ghost-article-{i}"))
    cites.extend(cites[::3])  # exact duplicate rows; the pipeline must collapse them
    return list(pubs), cites, metrics_config


def run_cli(argv):
    """Invoke the CLI in-process and normalise SystemExit to a return code."""
    from uniqjif.cli import main

    try:
        return main(list(argv))
    except SystemExit as exc:  # argparse errors
        return int(exc.code or 0)
