import random

import pytest

from conftest import build_store
from synth import corpus
from wiktmrd.exchange import (
    ImportFormatError,
    canonical_rows,
    export_store,
    import_sql_dump,
    import_store,
    import_tsv_bundle,
    sql_dump_bytes,
    tsv_bundle_bytes,
)
from wiktmrd.pipeline import run_pipeline
from wiktmrd.registry import load_profile
from wiktmrd.store import TABLES, MrdStore


@pytest.fixture(scope="module")
def synth_store():
    store, _ = build_store(corpus(11, 60))
    yield store
    store.close()


def test_export_deterministic(deal_store):
    assert tsv_bundle_bytes(deal_store) == tsv_bundle_bytes(deal_store)
    assert sql_dump_bytes(deal_store) == sql_dump_bytes(deal_store)


def test_insertion_order_independent():
    en = load_profile("en")
    pages = corpus(5, 30)
    a, b = MrdStore(), MrdStore()
    run_pipeline(pages, en, a)
    shuffled = list(pages)
    random.Random(1).shuffle(shuffled)
    run_pipeline(shuffled, en, b)
    assert tsv_bundle_bytes(a) == tsv_bundle_bytes(b)
    assert sql_dump_bytes(a) == sql_dump_bytes(b)


def test_tsv_round_trip(tmp_path, synth_store):
    out = export_store(synth_store, "tsv-bundle", tmp_path / "bundle")
    assert sorted(p.name for p in out.iterdir()) == sorted(f"{t}.tsv" for t in TABLES)
    back = import_store(out)
    assert back.verify_integrity() == []
    assert tsv_bundle_bytes(back) == tsv_bundle_bytes(synth_store)


def test_sql_round_trip(tmp_path, synth_store):
    path = export_store(synth_store, "sql-dump", tmp_path / "dump.sql")
    back = import_store(path)
    assert back.verify_integrity() == []
    assert sql_dump_bytes(back) == path.read_bytes()
    assert canonical_rows(back) == canonical_rows(synth_store)


def test_escaping_round_trip(tmp_path, en):
    from wiktmrd.extractors import Definition
    from wiktmrd.segmenter import LangPosKey
    store = MrdStore()
    odd = "tab\there\nnew line \\N back\\slash 'quote' -- dash; (paren)"
    store.store_entry(LangPosKey("t", en.lookup_code("en"), "noun", 0), [Definition(0, odd, odd)])
    for fmt in ("tsv-bundle", "sql-dump"):
        back = import_store(export_store(store, fmt, tmp_path / fmt))
        assert back.conn.execute("SELECT text FROM wiki_text").fetchall() == [(odd,)]


def test_sql_dump_is_plain_sql(synth_store):
    import sqlite3
    conn = sqlite3.connect(":memory:")
    conn.executescript(sql_dump_bytes(synth_store).decode("utf-8"))
    assert conn.execute("SELECT COUNT(*) FROM meaning").fetchone()[0] == synth_store.counts()["meaning"]


def _bundle(tmp_path, store):
    return export_store(store, "tsv-bundle", tmp_path / "b")


def test_tsv_malformed_positions(tmp_path, deal_store):
    d = _bundle(tmp_path, deal_store)
    meaning = d / "meaning.tsv"
    lines = meaning.read_text(encoding="utf-8").split("\n")
    lines[2] = lines[2].replace("\t", "\tx", 1)
    meaning.write_text("\n".join(lines), encoding="utf-8")
    with pytest.raises(ImportFormatError, match=r"meaning\.tsv:3: column 'lang_pos_id' expects an integer"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "page.tsv").write_bytes((d / "page.tsv").read_bytes() + b"99\tbad\\qescape\n")
    with pytest.raises(ImportFormatError, match=r"page\.tsv:\d+: bad escape"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "lang.tsv").write_bytes(b"id\tcode\n")
    with pytest.raises(ImportFormatError, match=r"lang\.tsv:1: header"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "relation.tsv").write_bytes((d / "relation.tsv").read_bytes() + b"1\t2\n")
    with pytest.raises(ImportFormatError, match=r"relation\.tsv:7: expected 7 fields, got 2"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "page.tsv").write_bytes((d / "page.tsv").read_bytes() + b"1\tdup")
    with pytest.raises(ImportFormatError, match="final newline"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "page.tsv").write_bytes((d / "page.tsv").read_bytes() + b"1\tdup\n")
    with pytest.raises(ImportFormatError, match=r"page row \d+"):
        import_tsv_bundle(d)

    d = _bundle(tmp_path, deal_store)
    (d / "inflection.tsv").unlink()
    with pytest.raises(ImportFormatError, match="missing table file"):
        import_tsv_bundle(d)


def test_sql_malformed_positions(deal_store):
    good = sql_dump_bytes(deal_store).decode("utf-8")
    lines = good.split("\n")
    i = next(k for k, line in enumerate(lines) if line.startswith("INSERT INTO meaning"))
    broken = list(lines)
    broken[i] = broken[i].replace("VALUES (", "VALUES (@", 1)
    col = broken[i].index("@") + 1
    with pytest.raises(ImportFormatError, match=rf"line {i + 1}, column {col}: unexpected"):
        import_sql_dump("\n".join(broken).encode())

    broken = list(lines)
    broken[i] = broken[i].replace("VALUES (1, ", "VALUES (", 1)
    with pytest.raises(ImportFormatError, match=rf"line {i + 1}, column \d+: expected 5 values, got 4"):
        import_sql_dump("\n".join(broken).encode())

    broken = list(lines)
    broken[1] = broken[1].replace("TEXT NOT NULL UNIQUE", "TEXT")
    with pytest.raises(ImportFormatError, match=r"line 2, column 1: unexpected table definition"):
        import_sql_dump("\n".join(broken).encode())

    with pytest.raises(ImportFormatError, match="missing tables"):
        import_sql_dump(b"-- nothing\n")
    with pytest.raises(ImportFormatError, match="byte 0: invalid UTF-8"):
        import_sql_dump(b"\xff")
    with pytest.raises(ImportFormatError, match=r"line 1, column 1: expected CREATE or INSERT"):
        import_sql_dump(b"DROP TABLE page;")
