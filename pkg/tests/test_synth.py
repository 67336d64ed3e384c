import io

import pytest

from helpers import assert_metrics_close, run_pipeline
from uniqjif.formats import write_citations, write_publications
from uniqjif.metrics import MetricsConfig
from uniqjif.model import CitationRecord, PublicationRecord
from uniqjif.synth import (
    STACKING_DOC_PREFIX,
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

MINIMAL = SynthConfig(
    seed=1,
    n_journals=1,
    year_start=2021,
    year_end=2022,
    articles_per_journal_year=1,
    citing_docs_per_year=1,
    refs_per_doc=1,
)


def serialize(dataset):
    pub_buf, cite_buf = io.StringIO(), io.StringIO()
    write_publications(dataset.publications, pub_buf)
    write_citations(dataset.citations, cite_buf)
    return pub_buf.getvalue(), cite_buf.getvalue()


class TestSplitMix64:
    def test_known_sequence_from_seed_zero(self):
        # Reference outputs of the published splitmix64 algorithm, seed 0.
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(3)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
        ]

    def test_same_seed_same_stream(self):
        a, b = SplitMix64(99), SplitMix64(99)
        assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]

    def test_below_range(self):
        rng = SplitMix64(5)
        draws = [rng.below(7) for _ in range(200)]
        assert all(0 <= d < 7 for d in draws)
        assert len(set(draws)) > 1

    def test_below_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            SplitMix64(5).below(0)

    def test_unit_interval(self):
        rng = SplitMix64(5)
        draws = [rng.unit() for _ in range(200)]
        assert all(0.0 <= d < 1.0 for d in draws)


class TestSynthConfig:
    def test_years_property(self):
        assert list(MINIMAL.years) == [2021, 2022]

    @pytest.mark.parametrize(
        "field,value",
        [
            ("n_journals", 0),
            ("articles_per_journal_year", 0),
            ("citing_docs_per_year", -1),
            ("refs_per_doc", 0),
            ("citable_fraction", 0.0),
            ("citable_fraction", 1.5),
            ("seed", -1),
        ],
    )
    def test_rejects_bad_values(self, field, value):
        fields = {
            "seed": 1,
            "n_journals": 1,
            "year_start": 2021,
            "year_end": 2022,
            "articles_per_journal_year": 1,
            "citing_docs_per_year": 1,
            "refs_per_doc": 1,
        }
        fields[field] = value
        with pytest.raises(InvalidConfig):
            SynthConfig(**fields)

    def test_rejects_empty_year_range(self):
        with pytest.raises(InvalidConfig, match="empty"):
            SynthConfig(1, 1, 2022, 2021, 1, 1, 1)

    def test_from_dict_with_years_pair(self):
        cfg = SynthConfig.from_dict(
            {
                "seed": 3,
                "n_journals": 2,
                "years": [2020, 2024],
                "articles_per_journal_year": 4,
                "citing_docs_per_year": 10,
                "refs_per_doc": 3,
            }
        )
        assert cfg.year_start == 2020 and cfg.year_end == 2024
        assert cfg.citable_fraction == 1.0

    def test_from_dict_unknown_key(self):
        with pytest.raises(InvalidConfig, match="unknown"):
            SynthConfig.from_dict({"seed": 1, "n_journals": 1, "years": [2021, 2022],
                                   "articles_per_journal_year": 1, "citing_docs_per_year": 1,
                                   "refs_per_doc": 1, "typo": 9})

    def test_from_dict_missing_key(self):
        with pytest.raises(InvalidConfig, match="missing"):
            SynthConfig.from_dict({"seed": 1})

    def test_from_dict_bad_years_shape(self):
        with pytest.raises(InvalidConfig, match="years"):
            SynthConfig.from_dict({"seed": 1, "years": 2021})


class TestGenerate:
    def test_minimal_config_counts(self):
        pubs, cites = generate(MINIMAL)
        assert len(pubs) == 2
        assert len(cites) <= 2  # 1 doc/yr x 1 ref across 2 years
        assert len(cites) == 2

    def test_determinism(self):
        assert serialize(generate(MINIMAL)) == serialize(generate(MINIMAL))

    def test_different_seeds_differ(self):
        other = SynthConfig(2, 4, 2021, 2023, 3, 5, 2)
        base = SynthConfig(3, 4, 2021, 2023, 3, 5, 2)
        assert serialize(generate(other)) != serialize(generate(base))

    def test_refs_are_distinct_within_doc(self):
        cfg = SynthConfig(7, 2, 2021, 2023, 3, 4, 5)
        _, cites = generate(cfg)
        by_doc = {}
        for c in cites:
            by_doc.setdefault(c.citing_doc_id, []).append(c.cited_article_id)
        for articles in by_doc.values():
            assert len(articles) == len(set(articles)) == 5

    def test_single_ref_per_doc_means_ratio_one(self):
        cfg = SynthConfig(11, 5, 2021, 2024, 3, 8, 1)
        pubs, cites = generate(cfg)
        for m in run_pipeline(pubs, cites, MetricsConfig(census_year=2024)):
            if m.ratio is not None:
                assert m.ratio == 1.0

    def test_citable_fraction_mixes_flags(self):
        cfg = SynthConfig(13, 2, 2021, 2023, 10, 1, 1, citable_fraction=0.5)
        pubs, _ = generate(cfg)
        flags = {p.citable for p in pubs}
        assert flags == {True, False}

    def test_refs_exceeding_articles_rejected(self):
        with pytest.raises(InvalidConfig, match="refs_per_doc"):
            generate(SynthConfig(1, 1, 2021, 2022, 1, 1, 3))

    def test_ids_are_normalized_form(self):
        pubs, cites = generate(MINIMAL)
        for p in pubs:
            assert p.journal == p.journal.strip().casefold()
            assert p.article_id == p.article_id.strip().casefold()
        for c in cites:
            assert c.citing_doc_id == c.citing_doc_id.strip().casefold()


class TestStackingSpec:
    def test_zero_docs_rejected(self):
        with pytest.raises(InvalidConfig):
            StackingSpec("j1", 0, 10, 2024)

    def test_single_ref_rejected(self):
        with pytest.raises(InvalidConfig, match="refs_per_stacking_doc"):
            StackingSpec("j1", 1, 1, 2024)

    def test_target_normalized(self):
        assert StackingSpec(" J1 ", 1, 2, 2024).target_journal == "j1"


class TestInjectStacking:
    def baseline(self):
        """CIT = UCIT = 10 for j1 in census 2024: ten docs, one window article each."""
        pubs = [PublicationRecord("j1", f"a{i:02d}", 2023, True) for i in range(10)]
        cites = [CitationRecord(f"d{i:02d}", 2024, f"a{i:02d}") for i in range(10)]
        return Dataset(pubs, cites)

    def test_arithmetic_from_postcondition(self):
        dataset = inject_stacking(self.baseline(), StackingSpec("j1", 1, 10, 2024))
        (m,) = run_pipeline(dataset.publications, dataset.citations, MetricsConfig(2024))
        assert (m.cit_count, m.ucit_count) == (20, 11)
        assert m.ratio == pytest.approx(0.55)

    def test_counts_rise_by_docs_times_refs_and_docs(self):
        spec = StackingSpec("j1", 3, 4, 2024)
        dataset = inject_stacking(self.baseline(), spec)
        (m,) = run_pipeline(dataset.publications, dataset.citations, MetricsConfig(2024))
        assert m.cit_count == 10 + 3 * 4
        assert m.ucit_count == 10 + 3

    def test_ratio_strictly_decreases_and_others_untouched(self):
        pubs = [PublicationRecord("j1", f"a{i:02d}", 2023, True) for i in range(5)]
        pubs += [PublicationRecord("j2", f"b{i:02d}", 2023, True) for i in range(5)]
        cites = [CitationRecord(f"d{i:02d}", 2024, f"a{i:02d}") for i in range(5)]
        cites += [CitationRecord(f"e{i:02d}", 2024, f"b{i:02d}") for i in range(5)]
        before = run_pipeline(pubs, cites, MetricsConfig(2024))
        stacked = inject_stacking(Dataset(pubs, cites), StackingSpec("j1", 2, 3, 2024))
        after = run_pipeline(stacked.publications, stacked.citations, MetricsConfig(2024))
        assert after[0].ratio < before[0].ratio
        assert after[1] == before[1]

    def test_fresh_docs_carry_reserved_prefix(self):
        dataset = inject_stacking(self.baseline(), StackingSpec("j1", 2, 2, 2024))
        injected = dataset.citations[len(self.baseline().citations):]
        assert injected and all(
            c.citing_doc_id.startswith(STACKING_DOC_PREFIX) for c in injected
        )
        baseline_docs = {c.citing_doc_id for c in self.baseline().citations}
        assert not any(d.startswith(STACKING_DOC_PREFIX) for d in baseline_docs)

    def test_target_too_small(self):
        with pytest.raises(TargetTooSmall, match="window articles"):
            inject_stacking(self.baseline(), StackingSpec("j1", 1, 11, 2024))

    def test_unknown_target_too_small(self):
        with pytest.raises(TargetTooSmall):
            inject_stacking(self.baseline(), StackingSpec("j9", 1, 2, 2024))

    def test_deterministic(self):
        spec = StackingSpec("j1", 2, 3, 2024)
        assert serialize(inject_stacking(self.baseline(), spec)) == serialize(
            inject_stacking(self.baseline(), spec)
        )


class TestBruteForceOracle:
    def test_worked_example_matches_pipeline(self, worked_example):
        pubs, cites = worked_example
        config = MetricsConfig(census_year=2024)
        assert_metrics_close(
            run_pipeline(pubs, cites, config), brute_force_metrics(pubs, cites, config)
        )

    def test_empty_dataset(self):
        assert brute_force_metrics([], [], MetricsConfig(census_year=2024)) == []

    def test_collapses_duplicate_pairs_itself(self, worked_example):
        pubs, cites = worked_example
        config = MetricsConfig(census_year=2024)
        baseline = brute_force_metrics(pubs, cites, config)
        assert brute_force_metrics(pubs, cites + cites, config) == baseline
