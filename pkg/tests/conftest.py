from pathlib import Path

import pytest

from wiktmrd.registry import load_profile

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"


@pytest.fixture(scope="session")
def en():
    return load_profile("en")


@pytest.fixture(scope="session")
def deal_text():
    return (CORPUS / "deal.wiki").read_text(encoding="utf-8")


def build_store(source=CORPUS, profile_id="en", workers=1):
    """Run the pipeline into a fresh in-memory store; returns (store, summary)."""
    from wiktmrd.dump import stream_pages
    from wiktmrd.pipeline import run_pipeline
    from wiktmrd.store import MrdStore

    profile = load_profile(profile_id)
    store = MrdStore(relation_types=profile.relation_types)
    pages = source if isinstance(source, list) else stream_pages(source)
    summary = run_pipeline(pages, profile, store, workers)
    return store, summary


@pytest.fixture
def deal_store():
    store, _ = build_store()
    yield store
    store.close()


# Filled by the acceptance module, printed after the run.
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
