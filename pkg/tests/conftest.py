import pytest

from uniqjif.model import CitationRecord, PublicationRecord

CENSUS_YEAR = 2024

_CRITERION_MARK = "::test_criterion_"


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if _CRITERION_MARK in r.nodeid and getattr(r, "when", "call") == "call"
    ]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for report in sorted(reports, key=lambda r: r.nodeid):
        name = report.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{name}: {'PASS' if report.passed else 'FAIL'}")


@pytest.fixture
def worked_example():
    """Canonical small case: three citable items published in the window,
    three citing documents contributing 3 + 2 + 3 citation instances.

    Expected: cit=8, ucit=3, pub=3, jif=8/3, uniq_jif=1.0, ratio=0.375.
    """
    pubs = [
        PublicationRecord("j1", "a1", 2023, True, "article"),
        PublicationRecord("j1", "a2", 2022, True, "article"),
        PublicationRecord("j1", "a3", 2023, True, "article"),
    ]
    cites = [
        CitationRecord("d1", CENSUS_YEAR, "a1"),
        CitationRecord("d1", CENSUS_YEAR, "a2"),
        CitationRecord("d1", CENSUS_YEAR, "a3"),
        CitationRecord("d2", CENSUS_YEAR, "a1"),
        CitationRecord("d2", CENSUS_YEAR, "a3"),
        CitationRecord("d3", CENSUS_YEAR, "a1"),
        CitationRecord("d3", CENSUS_YEAR, "a2"),
        CitationRecord("d3", CENSUS_YEAR, "a3"),
    ]
    return pubs, cites


@pytest.fixture
def worked_example_files(tmp_path, worked_example):
    from uniqjif.formats import write_dataset

    pubs, cites = worked_example
    pubs_path = tmp_path / "pubs.csv"
    cites_path = tmp_path / "cites.csv"
    write_dataset(pubs, cites, pubs_path, cites_path)
    return pubs_path, cites_path
