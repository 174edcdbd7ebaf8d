"""Split an entry page into language / etymology / part-of-speech sections.

All bodies carry absolute spans into the page text, so nested segmentation
results can be checked against the original page.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .diagnostics import Diagnostics, note, seen
from .registry import LanguageInfo, Profile
from .wikitext import Heading, SourceSpan, scan_headings


@dataclass
class Body:
    text: str
    span: SourceSpan

    def sub(self, start: int, end: int) -> "Body":
        """Sub-body from local offsets ``start:end``."""
        return Body(self.text[start:end], SourceSpan(self.span.start + start, self.span.start + end))


@dataclass
class LanguageSection:
    language: LanguageInfo
    body: Body


@dataclass
class EtymologyBlock:
    etymology_n: int
    body: Body
    language: Optional[LanguageInfo] = None


@dataclass
class PosSection:
    pos_name: str
    body: Body
    heading_level: int = 3


@dataclass(frozen=True)
class LangPosKey:
    page_title: str
    language: LanguageInfo
    pos_name: str
    etymology_n: int


def _line_end(text: str, pos: int) -> int:
    nl = text.find("\n", pos)
    return len(text) if nl < 0 else nl + 1


def _page_body(page_text: str) -> Body:
    return Body(page_text, SourceSpan(0, len(page_text)))


def segment_languages(page_text: str, profile: Profile,
                      diagnostics: Optional[Diagnostics] = None) -> list[LanguageSection]:
    level = profile.language_heading_level
    page = _page_body(page_text)
    heads = [h for h in scan_headings(page_text) if h.level == level]
    seen(diagnostics, "language_heading", len(heads))
    sections = []
    for i, head in enumerate(heads):
        language = profile.resolve_language_heading(head.title)
        if language is None:
            note(diagnostics, "unknown_language", head.title)
            continue
        seen(diagnostics, "language_section")
        start = _line_end(page_text, head.span.end)
        end = heads[i + 1].span.start if i + 1 < len(heads) else len(page_text)
        sections.append(LanguageSection(language, page.sub(start, max(start, end))))
    if not sections:
        note(diagnostics, "no_language_sections", f"{len(heads)} level-{level} headings")
    return sections


_ETYMOLOGY_RE = re.compile(r"^Etymology(?:\s+(\d+))?$")


def _etymology_number(title: str) -> Optional[int]:
    """0-based etymology number for a heading title, or None if not one."""
    m = _ETYMOLOGY_RE.match(title)
    if not m:
        return None
    if m.group(1) is None:
        return 0
    n = int(m.group(1))
    return n - 1 if n >= 1 else -1


def segment_etymologies(section: LanguageSection, diagnostics: Optional[Diagnostics] = None,
                        pos_names: frozenset[str] = frozenset()) -> list[EtymologyBlock]:
    """Etymology blocks of one language section, numbered from zero.

    ``pos_names`` is only used to report part-of-speech headings that fall
    into a skipped region (before the first etymology heading, or inside a
    duplicate-numbered block).
    """
    text = section.body.text
    headings = scan_headings(text)
    delims: list[tuple[Heading, int]] = []
    for h in headings:
        n = _etymology_number(h.title)
        if n is None:
            continue
        if n < 0:
            note(diagnostics, "bad_etymology_heading", h.title)
            continue
        if h.level != 3:
            note(diagnostics, "etymology_level", f"{h.title} at level {h.level}")
            continue
        delims.append((h, n))

    if not delims:
        return [EtymologyBlock(0, section.body, section.language)]

    _report_pos(text[:delims[0][0].span.start], pos_names, diagnostics, "pos_outside_etymology")
    blocks = []
    numbers: set[int] = set()
    for i, (head, n) in enumerate(delims):
        start = _line_end(text, head.span.end)
        end = delims[i + 1][0].span.start if i + 1 < len(delims) else len(text)
        body = section.body.sub(start, max(start, end))
        if n in numbers:
            note(diagnostics, "duplicate_etymology", head.title)
            _report_pos(body.text, pos_names, diagnostics, "pos_in_duplicate_etymology")
            continue
        numbers.add(n)
        blocks.append(EtymologyBlock(n, body, section.language))
    if 0 not in numbers:
        # "Etymology 2" without "Etymology 1": keep the heading's number.
        note(diagnostics, "etymology_numbering_gap", f"lowest is Etymology {min(numbers) + 1}")
    return blocks


def _pos_headings(text: str, pos_names: frozenset[str]) -> list[Heading]:
    return [h for h in scan_headings(text) if h.level in (3, 4) and h.title.lower() in pos_names]


def _report_pos(text: str, pos_names: frozenset[str], diagnostics: Optional[Diagnostics], category: str) -> None:
    for h in _pos_headings(text, pos_names):
        note(diagnostics, category, h.title)


def segment_pos(block: EtymologyBlock, profile: Profile) -> list[PosSection]:
    """POS sections of a block.

    A section runs to the next heading of the same or shallower level, or to
    the next POS heading, whichever comes first; non-POS subsections
    (Synonyms, Translations, ...) stay inside the body.
    """
    text = block.body.text
    headings = scan_headings(text)
    sections = []
    for i, head in enumerate(headings):
        if head.level not in (3, 4) or head.title.lower() not in profile.pos_names:
            continue
        end = len(text)
        for nxt in headings[i + 1:]:
            if nxt.level <= head.level or (nxt.level in (3, 4) and nxt.title.lower() in profile.pos_names):
                end = nxt.span.start
                break
        start = _line_end(text, head.span.end)
        sections.append(PosSection(head.title.lower(), block.body.sub(start, max(start, end)), head.level))
    return sections


def count_pos_headings(text: str, profile: Profile) -> int:
    return len(_pos_headings(text, profile.pos_names))


def segment_page(title: str, page_text: str, profile: Profile,
                 diagnostics: Optional[Diagnostics] = None) -> Iterator[tuple[LangPosKey, PosSection]]:
    """All (key, section) pairs of a page, with duplicate keys dropped."""
    keys: set[LangPosKey] = set()
    for section in segment_languages(page_text, profile, diagnostics):
        seen(diagnostics, "pos_heading", count_pos_headings(section.body.text, profile))
        found = 0
        for block in segment_etymologies(section, diagnostics, profile.pos_names):
            for pos in segment_pos(block, profile):
                found += 1
                key = LangPosKey(title, section.language, pos.pos_name, block.etymology_n)
                if key in keys:
                    note(diagnostics, "duplicate_lang_pos",
                         f"{section.language.code}/{pos.pos_name}/{block.etymology_n}")
                    continue
                keys.add(key)
                yield key, pos
        if not found:
            note(diagnostics, "language_without_pos", section.language.name)
