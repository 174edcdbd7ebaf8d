"""Dump → segment → extract → store, with parallel extraction and one writer.

Extraction of a page is a pure function of its text, so pages fan out to a
process pool. Results are collected back in document order and written by
the calling thread, the only writer, which makes the resulting store (and so
its canonical export) independent of the worker count.
"""

from __future__ import annotations

from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .diagnostics import Diagnostic, Diagnostics
from .dump import RawPage, filter_main
from .extractors import (
    Definition,
    RelationGroup,
    TranslationBlock,
    extract_definitions,
    extract_relations,
    extract_translations,
)
from .registry import Profile
from .segmenter import LangPosKey, segment_page
from .store import DuplicateEntryError, MrdStore
from .wikitext import check_braces

# In-flight pages per worker; bounds memory regardless of dump size.
WINDOW_PER_WORKER = 4


@dataclass
class EntryBundle:
    key: LangPosKey
    definitions: list[Definition]
    relations: list[RelationGroup]
    translations: list[TranslationBlock]


@dataclass
class PageBundle:
    title: str
    entries: list[EntryBundle]
    diagnostics: list[Diagnostic]
    tally: Counter


def extract_page(page: RawPage, profile: Profile) -> PageBundle:
    diag = Diagnostics(page.title)
    # Brace problems are reported once per page, not once per section scan.
    check_braces(page.text, diag)
    entries = []
    for key, section in segment_page(page.title, page.text, profile, diag):
        definitions = extract_definitions(section, profile.label_policy, diag)
        relations = extract_relations(section, definitions, profile, diag)
        translations = extract_translations(section, definitions, profile, diag)
        entries.append(EntryBundle(key, definitions, relations, translations))
    return PageBundle(page.title, entries, diag.records, diag.tally)


def _extract_task(args):
    page, profile = args
    return extract_page(page, profile)


def extract_pages(pages: Iterable[RawPage], profile: Profile, workers: int = 1) -> Iterator[PageBundle]:
    """Page bundles in input order."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        for page in pages:
            yield extract_page(page, profile)
        return
    window = workers * WINDOW_PER_WORKER
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        for page in pages:
            pending.append(pool.submit(_extract_task, (page, profile)))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


@dataclass
class RunSummary:
    pages: int = 0
    entry_pages: int = 0
    lang_pos: int = 0
    meanings: int = 0
    relations: int = 0
    translation_entries: int = 0
    skipped_pages: Counter = field(default_factory=Counter)
    diagnostics: Counter = field(default_factory=Counter)
    tally: Counter = field(default_factory=Counter)

    def lines(self) -> list[str]:
        out = [
            f"pages\t{self.pages}",
            f"entry_pages\t{self.entry_pages}",
            f"lang_pos\t{self.lang_pos}",
            f"meanings\t{self.meanings}",
            f"relations\t{self.relations}",
            f"translation_entries\t{self.translation_entries}",
        ]
        out += [f"skipped_pages.{k}\t{v}" for k, v in sorted(self.skipped_pages.items())]
        out += [f"diagnostics.{k}\t{v}" for k, v in sorted(self.diagnostics.items())]
        out += [f"tally.{k}\t{v}" for k, v in sorted(self.tally.items())]
        return out


def write_bundle(store: MrdStore, bundle: PageBundle, summary: RunSummary,
                 on_diagnostic: Optional[Callable[[Diagnostic], None]] = None) -> None:
    diag = Diagnostics(bundle.title, list(bundle.diagnostics))
    stored = 0
    for entry in bundle.entries:
        try:
            store.store_entry(entry.key, entry.definitions, entry.relations, entry.translations, diag)
        except DuplicateEntryError as exc:
            # Same title twice in one dump.
            diag.add("duplicate_lang_pos", str(exc))
            continue
        stored += 1
        summary.lang_pos += 1
        summary.meanings += len(entry.definitions)
        summary.relations += sum(len(g.targets) for g in entry.relations)
        summary.translation_entries += sum(len(b.entries) for b in entry.translations)
    if stored:
        summary.entry_pages += 1
    else:
        diag.add("page_without_entries")
    summary.pages += 1
    summary.tally.update(bundle.tally)
    for record in diag.records:
        summary.diagnostics[record.category] += 1
        if on_diagnostic is not None:
            on_diagnostic(record)


def run_pipeline(pages: Iterable[RawPage], profile: Profile, store: MrdStore, workers: int = 1,
                 on_diagnostic: Optional[Callable[[Diagnostic], None]] = None) -> RunSummary:
    summary = RunSummary()
    main_pages = filter_main(pages, summary.skipped_pages)
    with store.bulk():
        for bundle in extract_pages(main_pages, profile, workers):
            write_bundle(store, bundle, summary, on_diagnostic)
    return summary
