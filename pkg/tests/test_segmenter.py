import re

from hypothesis import given
from hypothesis import strategies as st

from wiktmrd.diagnostics import Diagnostics
from wiktmrd.registry import load_profile
from wiktmrd.segmenter import (
    LanguageSection,
    segment_etymologies,
    segment_languages,
    segment_page,
    segment_pos,
)


def _one_section(en, text):
    (section,) = segment_languages(text, en)
    return section


def test_language_examples(en):
    (s,) = segment_languages("==English==\n# x\n", en)
    assert s.language.name == "English"
    secs = segment_languages("==English==\na\n==Swedish==\nb\n", en)
    assert [s.language.code for s in secs] == ["en", "sv"]
    assert [s.body.text for s in secs] == ["a\n", "b\n"]
    diag = Diagnostics("p")
    assert segment_languages("==Notalanguage==\ntext", en, diag) == []
    assert diag.count("unknown_language") == 1
    assert diag.count("no_language_sections") == 1


def test_language_body_spans(en):
    text = "intro\n==English==\nbody one\n==Swedish==\nbody two"
    for s in segment_languages(text, en):
        assert text[s.body.span.start:s.body.span.end] == s.body.text
        assert "==" not in s.body.text


def test_etymology_examples(en, deal_text):
    section = _one_section(en, "==English==\n===Etymology 2===\nx\n====Verb====\n# d\n")
    diag = Diagnostics("p")
    (block,) = segment_etymologies(section, diag)
    assert block.etymology_n == 1
    assert diag.count("etymology_numbering_gap") == 1
    section = _one_section(en, "==English==\n===Verb===\n# d\n")
    (block,) = segment_etymologies(section)
    assert block.etymology_n == 0 and block.body == section.body

    # Boundaries against an independent line scan of the fixture.
    section = _one_section(en, deal_text)
    blocks = segment_etymologies(section)
    assert [b.etymology_n for b in blocks] == [0, 1]
    starts = [m.end() for m in re.finditer(r"^===Etymology \d===\n", deal_text, re.M)]
    assert [b.body.span.start for b in blocks] == starts
    assert blocks[0].body.span.end == starts[1] - len("===Etymology 2===\n")
    assert blocks[1].body.span.end == len(deal_text)


def test_etymology_diagnostics(en):
    text = ("==English==\n===Noun===\n# early\n===Etymology 1===\n====Verb====\n# a\n"
            "===Etymology 1===\n====Noun====\n# b\n====Etymology 2====\n===Etymology 0===\n")
    section = _one_section(en, text)
    diag = Diagnostics("p")
    blocks = segment_etymologies(section, diag, en.pos_names)
    assert [b.etymology_n for b in blocks] == [0]
    assert diag.counts() == {
        "pos_outside_etymology": 1,
        "duplicate_etymology": 1,
        "pos_in_duplicate_etymology": 1,
        "etymology_level": 1,
        "bad_etymology_heading": 1,
    }


def test_bare_etymology_heading(en):
    section = _one_section(en, "==English==\n===Etymology===\n====Noun====\n# a\n")
    assert [b.etymology_n for b in segment_etymologies(section)] == [0]


def test_pos_examples(en):
    def pos_of(text):
        section = _one_section(en, "==English==\n" + text)
        (block,) = segment_etymologies(section)
        return segment_pos(block, en)

    assert [p.pos_name for p in pos_of("===Verb===\n# a\n")] == ["verb"]
    assert [p.pos_name for p in pos_of("===Etymology===\n====Noun====\n# a\n")] == ["noun"]
    assert pos_of("===Pronunciation===\n* x\n") == []


def test_pos_body_keeps_subsections(en, deal_text):
    (key, pos), = list(segment_page("deal", deal_text, en))
    assert (key.pos_name, key.etymology_n, key.language.code) == ("verb", 1, "en")
    assert "=====Synonyms=====" in pos.body.text and "=====Translations=====" in pos.body.text
    assert deal_text[pos.body.span.start:pos.body.span.end] == pos.body.text


def test_pos_ends_at_next_pos(en):
    text = "==English==\n===Noun===\n# a\n====Synonyms====\n* x\n===Verb===\n# b\n"
    pairs = list(segment_page("p", text, en))
    assert [k.pos_name for k, _ in pairs] == ["noun", "verb"]
    assert "Verb" not in pairs[0][1].body.text


def test_duplicate_keys_dropped(en):
    diag = Diagnostics("p")
    text = "==English==\n===Noun===\n# a\n===Noun===\n# b\n"
    keys = [k for k, _ in segment_page("p", text, en, diag)]
    assert len(keys) == 1
    assert diag.count("duplicate_lang_pos") == 1
    assert diag.tally["pos_heading"] == 2


def test_ru_profile_segmentation():
    ru = load_profile("ru")
    text = "= {{-ru-}} =\n=== Существительное ===\n# слово\n= {{-sv-}} =\n=== Глагол ===\n# ord\n"
    keys = [(k.language.code, k.pos_name) for k, _ in segment_page("p", text, ru)]
    assert keys == [("ru", "существительное"), ("sv", "глагол")]


LINES = st.sampled_from([
    "==English==", "==Swedish==", "==Bogus==", "===Etymology 1===", "===Etymology 2===",
    "===Etymology===", "===Verb===", "====Noun====", "===Pronunciation===", "====Synonyms====",
    "# def", "#: ex", "* [[x]]", "text", "",
])


@given(st.lists(LINES, max_size=30).map("\n".join))
def test_partition_uniqueness_determinism(text):
    en = load_profile("en")
    sections = segment_languages(text, en)
    spans = [s.body.span for s in sections]
    assert all(a.end <= b.start for a, b in zip(spans, spans[1:]))
    for s in sections:
        diag = Diagnostics("t")
        blocks = segment_etymologies(s, diag)
        ns = [b.etymology_n for b in blocks]
        assert len(set(ns)) == len(ns)
        assert min(ns) == 0 or diag.count("etymology_numbering_gap") == 1
        bspans = [b.body.span for b in blocks]
        assert all(a.end <= b.start for a, b in zip(bspans, bspans[1:]))
        assert all(s.body.span.start <= b.start and b.end <= s.body.span.end for b in bspans)
        for b in blocks:
            pspans = [p.body.span for p in segment_pos(b, en)]
            assert all(x.end <= y.start for x, y in zip(pspans, pspans[1:]))
            for p in segment_pos(b, en):
                assert p.pos_name in en.pos_names
                assert text[p.body.span.start:p.body.span.end] == p.body.text
    keys = [k for k, _ in segment_page("t", text, en)]
    assert len(keys) == len(set(keys))
    again = [(k, p.body.span) for k, p in segment_page("t", text, en)]
    assert again == [(k, p.body.span) for k, p in segment_page("t", text, en)]
