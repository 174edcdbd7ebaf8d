import sqlite3
from collections import Counter

import pytest

from wiktmrd.diagnostics import Diagnostics
from wiktmrd.extractors import Definition, RelationGroup, TranslationBlock
from wiktmrd.segmenter import LangPosKey
from wiktmrd.store import DuplicateEntryError, MrdStore, StoreError

DEAL_DEF_RAW = ("{{transitive}} To [[distribute]] among a number of [[recipient|recipients]], "
            "to give out as one's portion or share.")


def q(store, sql, *args):
    return store.conn.execute(sql, args).fetchall()


@pytest.fixture
def store():
    s = MrdStore()
    yield s
    s.close()


def test_relation_types_seeded_once(store):
    assert q(store, "SELECT COUNT(*) FROM relation_type") == [(9,)]
    assert store.verify_integrity() == []


def test_intern(store):
    a = store.intern_wiki_text("apportion")
    assert store.intern_wiki_text("apportion") == a
    assert store.intern_wiki_text("share") != a
    with pytest.raises(ValueError):
        store.intern_wiki_text("  ")


def test_index_links_recipient(store):
    wid = store.intern_wiki_text("[[recipient|recipients]]")
    rows = q(store, "SELECT p.page_title, i.inflected_form, w.position FROM wiki_text_words w "
                    "JOIN page_inflection pi ON pi.id = w.page_inflection_id "
                    "JOIN page p ON p.id = pi.page_id JOIN inflection i ON i.id = pi.inflection_id "
                    "WHERE w.wiki_text_id = ?", wid)
    assert rows == [("recipient", "recipients", 0)]
    assert store.index_links(wid) == 1
    assert q(store, "SELECT COUNT(*) FROM wiki_text_words") == [(1,)]
    assert store.index_links(store.intern_wiki_text("no links")) == 0


def test_index_links_deal_definition(store):
    wid = store.intern_wiki_text(DEAL_DEF_RAW)
    rows = q(store, "SELECT p.page_title, i.inflected_form, w.position FROM wiki_text_words w "
                    "JOIN page_inflection pi ON pi.id = w.page_inflection_id "
                    "JOIN page p ON p.id = pi.page_id JOIN inflection i ON i.id = pi.inflection_id "
                    "WHERE w.wiki_text_id = ? ORDER BY w.position", wid)
    assert rows == [("distribute", "distribute", 0), ("recipient", "recipients", 1)]


def test_deal_entry(deal_store):
    s = deal_store
    assert q(s, "SELECT p.page_title, l.code, pos.name, lp.etymology_n FROM lang_pos lp "
                "JOIN page p ON p.id = lp.page_id JOIN lang l ON l.id = lp.lang_id "
                "JOIN part_of_speech pos ON pos.id = lp.pos_id") == [("deal", "en", "verb", 1)]
    meanings = q(s, "SELECT m.meaning_n, w.text FROM meaning m JOIN wiki_text w ON w.id = m.wiki_text_id "
                    "ORDER BY m.meaning_n")
    assert [n for n, _ in meanings] == [0, 1] and meanings[0][1] == DEAL_DEF_RAW
    rel = q(s, "SELECT m.meaning_n, r.meaning_summary, t.name FROM relation r JOIN meaning m ON m.id = r.meaning_id "
               "JOIN relation_type t ON t.id = r.relation_type_id")
    assert rel == [(0, "distribute among a number of recipients", "synonym")] * 5
    tr = q(s, "SELECT m.meaning_n, l.code, w.text FROM translation_entry e JOIN translation t ON t.id = e.translation_id "
              "JOIN meaning m ON m.id = t.meaning_id JOIN lang l ON l.id = e.lang_id "
              "JOIN wiki_text w ON w.id = e.wiki_text_id")
    assert tr == [(0, "sv", "dela")]
    # The definition text is referenced by exactly one meaning.
    assert q(s, "SELECT COUNT(*) FROM meaning m JOIN wiki_text w ON w.id = m.wiki_text_id WHERE w.text = ?",
             DEAL_DEF_RAW) == [(1,)]
    # apportion is both a wiki_text and a (stub) page.
    assert q(s, "SELECT COUNT(*) FROM page WHERE page_title = 'apportion'") == [(1,)]
    assert s.verify_integrity() == []


def test_counter_matches_recount(deal_store):
    recount = Counter(code for (code,) in q(deal_store, "SELECT l.code FROM translation_entry e "
                                                        "JOIN lang l ON l.id = e.lang_id"))
    stored = dict(q(deal_store, "SELECT code, n_translation FROM lang"))
    assert stored == {"en": 0, "sv": 1}
    assert all(stored[c] == recount.get(c, 0) for c in stored)


def _key(en, title="w", pos="noun", etym=0):
    return LangPosKey(title, en.lookup_code("en"), pos, etym)


def test_empty_entry(store, en):
    store.store_entry(_key(en))
    counts = store.counts()
    assert counts["lang_pos"] == 1
    assert counts["meaning"] == counts["relation"] == counts["translation"] == 0


def test_duplicate_entry_rejected_atomically(store, en):
    store.store_entry(_key(en), [Definition(0, "[[a]]", "a")])
    before = store.counts()
    with pytest.raises(DuplicateEntryError):
        store.store_entry(_key(en), [Definition(0, "[[brand new]]", "x")])
    assert store.counts() == before


def test_unbound_relation_keeps_summary(store, en):
    store.store_entry(_key(en), [Definition(0, "a", "a")],
                      [RelationGroup("antonym", ["[[x]]", "y"], "some gloss", None)])
    assert q(store, "SELECT meaning_id, meaning_summary, position FROM relation ORDER BY position") == [
        (None, "some gloss", 0), (None, "some gloss", 1)]
    with pytest.raises(StoreError):
        store.store_entry(_key(en, "v"), [], [RelationGroup("cousin", ["x"])])


def test_translation_merge_and_counters(store, en):
    sv, de = en.lookup_code("sv"), en.lookup_code("de")
    diag = Diagnostics("w")
    blocks = [TranslationBlock("g1", [(sv, "a"), (de, "b")], 0),
              TranslationBlock("g1 again", [(sv, "c")], 0),
              TranslationBlock(None, [(sv, "d")], None),
              TranslationBlock("other", [(de, "e")], None)]
    store.store_entry(_key(en), [Definition(0, "x", "x")], [], blocks, diag)
    assert diag.count("translation_merged") == 1
    assert q(store, "SELECT COUNT(*) FROM translation") == [(3,)]
    assert dict(q(store, "SELECT code, n_translation FROM lang")) == {"en": 0, "sv": 3, "de": 2}
    assert store.verify_integrity() == []


def test_lang_name_conflict(store, en):
    from wiktmrd.registry import LanguageInfo
    store.ensure_lang(en.lookup_code("sv"))
    with pytest.raises(StoreError):
        store.ensure_lang(LanguageInfo("sv", "Svenska", 0))


def test_word_card(deal_store):
    card = deal_store.lookup_word_card("deal")
    (sec,) = card.sections
    assert (sec.language_name, sec.pos, sec.etymology_n) == ("English", "verb", 1)
    assert [m.meaning_n for m in sec.meanings] == [0, 1]
    (group,) = sec.relations["synonym"]
    assert len(group.targets) == 5 and group.meaning_n == 0
    assert sec.translations[0].entries == {"Swedish": ["dela"]}
    assert sec.translations[0].meaning_n == 0
    stub = deal_store.lookup_word_card("recipient")
    assert stub.is_stub and stub.sections == []
    assert deal_store.lookup_word_card("zzz-absent") is None


def test_word_card_orders_languages(store, en):
    sv, de = en.lookup_code("sv"), en.lookup_code("de")
    store.store_entry(_key(en), [Definition(0, "x", "x")], [],
                      [TranslationBlock("g", [(sv, "b"), (de, "a"), (sv, "c")], 0)])
    (tr,) = store.lookup_word_card("w").sections[0].translations
    assert list(tr.entries.items()) == [("German", ["a"]), ("Swedish", ["b", "c"])]


# -- verify_integrity fault injection --------------------------------------

def _categories(store):
    return [f.category for f in store.verify_integrity()]


def test_fault_counter(deal_store):
    deal_store.conn.execute("UPDATE lang SET n_translation = n_translation + 1 WHERE code = 'sv'")
    assert _categories(deal_store) == ["counter_mismatch"]


def test_fault_meaning_gap(deal_store):
    deal_store.conn.execute("UPDATE meaning SET meaning_n = 2 WHERE meaning_n = 1")
    assert _categories(deal_store) == ["meaning_density"]


def test_fault_dangling_fk(deal_store):
    deal_store.conn.execute("UPDATE translation_entry SET lang_id = 999")
    assert "foreign_key" in _categories(deal_store)


def test_fault_orphans_and_types(store):
    store.conn.execute("INSERT INTO wiki_text (text) VALUES ('lonely')")
    store.conn.execute("DELETE FROM relation_type WHERE name = 'troponym'")
    assert sorted(_categories(store)) == ["orphan", "relation_type_cardinality"]


def test_fault_binding_mismatch(store, en):
    store.store_entry(_key(en, "a"), [Definition(0, "x", "x")])
    store.store_entry(_key(en, "b"), [Definition(0, "y", "y")], [RelationGroup("synonym", ["z"], "x", 0)])
    other = q(store, "SELECT m.id FROM meaning m JOIN lang_pos lp ON lp.id = m.lang_pos_id "
                     "JOIN page p ON p.id = lp.page_id WHERE p.page_title = 'a'")[0][0]
    store.conn.execute("UPDATE relation SET meaning_id = ?", (other,))
    assert _categories(store) == ["binding_mismatch"]


def test_open_and_create(tmp_path, en):
    path = tmp_path / "s.db"
    with MrdStore.create(path) as s:
        s.store_entry(_key(en), [Definition(0, "x", "x")])
    with MrdStore.open(path) as s:
        assert s.counts()["meaning"] == 1
    with MrdStore.create(path) as s:
        assert s.counts()["meaning"] == 0
    with pytest.raises(FileNotFoundError):
        MrdStore.open(tmp_path / "missing.db")
    (tmp_path / "junk.db").write_bytes(b"not a database at all" * 10)
    with pytest.raises(StoreError):
        MrdStore.open(tmp_path / "junk.db")
    conn = sqlite3.connect(tmp_path / "other.db")
    conn.execute("CREATE TABLE x (a)")
    conn.close()
    with pytest.raises(StoreError):
        MrdStore.open(tmp_path / "other.db")
