"""Definitions, semantic relations and translations of one POS section."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from typing import Optional

from .diagnostics import Diagnostics, note, seen
from .registry import LanguageInfo, Profile
from .segmenter import PosSection
from .wikitext import (
    Template,
    TemplateRenderPolicy,
    iter_list_items,
    iter_templates,
    iter_top_templates,
    remove_comments,
    scan_headings,
    scan_internal_links,
    scan_templates,
    strip_markup,
)

JACCARD_THRESHOLD = 0.5


@dataclass(slots=True)
class Definition:
    meaning_n: int
    raw_wikitext: str
    plain_text: str
    labels: list[str] = field(default_factory=list)


@dataclass
class RelationGroup:
    relation_type: str
    targets: list[str]
    meaning_summary: Optional[str] = None
    resolved_meaning_n: Optional[int] = None


@dataclass
class TranslationBlock:
    gloss: Optional[str]
    entries: list[tuple[LanguageInfo, str]] = field(default_factory=list)
    resolved_meaning_n: Optional[int] = None


def _definition_region(text: str) -> str:
    """The part of a POS body before its first subsection heading."""
    headings = scan_headings(text)
    return text[:headings[0].span.start] if headings else text


def _leading_labels(raw: str, policy: TemplateRenderPolicy) -> list[str]:
    labels = []
    pos = len(raw) - len(raw.lstrip())
    for t in scan_templates(raw):
        if t.span.start != pos or policy.rule(t.name) is None:
            break
        labels.extend(policy.labels(t))
        pos = t.span.end + len(raw[t.span.end:]) - len(raw[t.span.end:].lstrip())
    return labels


def extract_definitions(section: PosSection, policy: TemplateRenderPolicy,
                        diagnostics: Optional[Diagnostics] = None) -> list[Definition]:
    """Numbered senses: ``#`` lines only; ``#:`` examples and ``#*`` quotations are skipped."""
    definitions: list[Definition] = []
    for item in iter_list_items(_definition_region(section.body.text)):
        if item.markers != "#":
            continue
        seen(diagnostics, "definition_line")
        raw = item.content.strip()
        if not raw:
            note(diagnostics, "empty_definition", section.pos_name)
            continue
        definitions.append(Definition(len(definitions), raw, strip_markup(raw, policy),
                                      _leading_labels(raw, policy)))
    if not definitions:
        note(diagnostics, "pos_without_definitions", section.pos_name)
    return definitions


# -- sense matching ---------------------------------------------------------

class _PunctuationTable(dict):
    """``str.translate`` table mapping punctuation to a space, filled on demand."""

    def __missing__(self, code: int) -> str:
        c = chr(code)
        self[code] = value = " " if unicodedata.category(c).startswith("P") else c
        return value


_PUNCTUATION = _PunctuationTable()


def normalize_gloss(text: str) -> str:
    """Lowercase, punctuation to spaces, whitespace collapsed."""
    return " ".join(text.lower().translate(_PUNCTUATION).split())


def jaccard(a: set[str], b: set[str]) -> float:
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def match_sense(gloss: str, definitions: list[Definition]) -> Optional[int]:
    """Bind a sense gloss to one definition, or return None when unsure.

    A unique substring containment wins outright. Otherwise the definition
    with the highest token-set Jaccard score is chosen, but only if that score
    is at least 0.5 and no other definition ties it.
    """
    needle = normalize_gloss(gloss)
    if not needle:
        return None
    texts = [(d.meaning_n, normalize_gloss(d.plain_text)) for d in definitions]
    containing = [n for n, text in texts if needle in text]
    if len(containing) == 1:
        return containing[0]
    tokens = set(needle.split())
    scored = [(jaccard(tokens, set(text.split())), n) for n, text in texts]
    if not scored:
        return None
    best = max(score for score, _ in scored)
    winners = [n for score, n in scored if score == best]
    if best >= JACCARD_THRESHOLD and len(winners) == 1:
        return winners[0]
    return None


# -- relations --------------------------------------------------------------

def _subsections(text: str):
    """(title, body) for every heading in ``text``; body runs to the next heading."""
    headings = scan_headings(text)
    for i, h in enumerate(headings):
        end = headings[i + 1].span.start if i + 1 < len(headings) else len(text)
        start = min(end, h.span.end + 1)
        yield h.title, text[start:end]


def _split_items(text: str) -> list[str]:
    """Split on top-level commas and semicolons (not inside links or templates)."""
    protected = [(t.span.start, t.span.end) for t in scan_templates(text)]
    protected += [(l.span.start, l.span.end) for l in scan_internal_links(text)]
    items = []
    seg = 0
    for i, c in enumerate(text):
        if c in ",;" and not any(a <= i < b for a, b in protected):
            items.append(text[seg:i])
            seg = i + 1
    items.append(text[seg:])
    return [s.strip().rstrip(".").strip() for s in items if s.strip().rstrip(".").strip()]


def _sense_gloss(template: Template) -> str:
    return "; ".join(a.strip() for a in template.positional_args if a.strip())


def extract_relations(section: PosSection, definitions: list[Definition], profile: Profile,
                      diagnostics: Optional[Diagnostics] = None) -> list[RelationGroup]:
    groups = []
    for title, body in _subsections(section.body.text):
        relation_type = profile.relation_headings.get(title)
        if relation_type is None:
            continue
        for item in iter_list_items(body):
            if item.markers.strip("*"):
                continue
            seen(diagnostics, "relation_line")
            content = remove_comments(item.content).strip()
            summary = None
            lead = scan_templates(content)
            if lead and lead[0].span.start == 0 and lead[0].name in profile.sense_templates:
                summary = _sense_gloss(lead[0]) or None
                content = content[lead[0].span.end:]
                content = content.lstrip().lstrip(":").strip()
            targets = _split_items(content)
            if not targets:
                note(diagnostics, "relation_without_targets", f"{title}: {item.content.strip()}")
                continue
            resolved = match_sense(summary, definitions) if summary else None
            seen(diagnostics, "relation_group")
            groups.append(RelationGroup(relation_type, targets, summary, resolved))
    return groups


# -- translations -----------------------------------------------------------

_LANG_LINE_RE = re.compile(r"^([^:]+?):(.*)$", re.S)


def _translation_terms(rest: str, language: Optional[LanguageInfo], profile: Profile,
                       diagnostics: Optional[Diagnostics]):
    """(language, term) pairs from the markup after 'Language:'."""
    terms = []
    for t in iter_templates(scan_templates(rest)):
        if t.name not in profile.translation_templates:
            continue
        code, word = t.arg(0), t.arg(1)
        if not word:
            note(diagnostics, "translation_template_without_term", t.name)
            continue
        lang = language
        if lang is None:
            lang = profile.lookup_code(code) if code else None
        elif code and code.lower() != lang.code:
            note(diagnostics, "translation_code_mismatch", f"{lang.name} vs {code}")
        terms.append((lang, word))
    if not terms:
        for link in scan_internal_links(rest):
            terms.append((language, link.target))
    return terms


def _parse_translation_line(content: str, profile: Profile, diagnostics: Optional[Diagnostics]):
    m = _LANG_LINE_RE.match(content)
    if not m:
        note(diagnostics, "translation_malformed_line", content)
        return []
    name = strip_markup(m.group(1))
    language = profile.lookup_name(name)
    terms = _translation_terms(m.group(2), language, profile, diagnostics)
    if not terms:
        note(diagnostics, "translation_without_terms", content)
        return []
    if any(lang is None for lang, _ in terms):
        note(diagnostics, "unresolved_language", name)
        return []
    seen(diagnostics, "translation_line_stored")
    return terms


def extract_translations(section: PosSection, definitions: list[Definition], profile: Profile,
                         diagnostics: Optional[Diagnostics] = None) -> list[TranslationBlock]:
    text = section.body.text
    markers = []
    for t in iter_top_templates(text):
        if t.name in profile.trans_top_templates:
            markers.append(("top", t))
        elif t.name in profile.trans_bottom_templates:
            markers.append(("bottom", t))
    blocks = []
    for i, (kind, t) in enumerate(markers):
        if kind != "top":
            continue
        end = markers[i + 1][1].span.start if i + 1 < len(markers) else len(text)
        if i + 1 == len(markers):
            # No closing template: stop at the next heading.
            heads = [h for h in scan_headings(text) if h.span.start >= t.span.end]
            if heads:
                end = heads[0].span.start
        gloss = strip_markup(t.arg(0), profile.label_policy) or None
        block = TranslationBlock(gloss)
        for item in iter_list_items(text[t.span.end:end]):
            if not item.markers.startswith("*"):
                continue
            seen(diagnostics, "translation_line")
            block.entries.extend(_parse_translation_line(item.content.strip(), profile, diagnostics))
        if gloss:
            block.resolved_meaning_n = match_sense(gloss, definitions)
        blocks.append(block)
    return blocks
