"""The machine-readable dictionary: a relational store on SQLite.

Tables mirror the dictionary layout: ``page`` and ``lang_pos`` address an
entry part by (page, language, part of speech, etymology number); ``meaning``
numbers its senses; ``relation`` and ``translation`` hang off meanings;
``wiki_text`` interns raw markup, and ``inflection`` / ``page_inflection`` /
``wiki_text_words`` record which lemma every internal link points at.

One writer at a time. The connection is not bound to its creating thread, so
a store can be handed to a dedicated writer thread.
"""

from __future__ import annotations

import sqlite3
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .diagnostics import Diagnostics, note
from .extractors import Definition, RelationGroup, TranslationBlock
from .registry import LanguageInfo, load_profile
from .segmenter import LangPosKey
from .wikitext import scan_internal_links


class StoreError(Exception):
    pass


class DuplicateEntryError(StoreError):
    """A (page, language, POS, etymology) key was stored twice."""


# (table, [(column, type)], [table constraints]); column order is export order.
SCHEMA: list[tuple[str, list[tuple[str, str]], list[str]]] = [
    ("page", [("id", "INTEGER PRIMARY KEY"), ("page_title", "TEXT NOT NULL UNIQUE")], []),
    ("lang", [("id", "INTEGER PRIMARY KEY"), ("code", "TEXT NOT NULL UNIQUE"),
              ("name", "TEXT NOT NULL UNIQUE"), ("n_translation", "INTEGER NOT NULL")], []),
    ("part_of_speech", [("id", "INTEGER PRIMARY KEY"), ("name", "TEXT NOT NULL UNIQUE")], []),
    ("relation_type", [("id", "INTEGER PRIMARY KEY"), ("name", "TEXT NOT NULL UNIQUE")], []),
    ("wiki_text", [("id", "INTEGER PRIMARY KEY"), ("text", "TEXT NOT NULL UNIQUE")], []),
    ("inflection", [("id", "INTEGER PRIMARY KEY"), ("inflected_form", "TEXT NOT NULL UNIQUE")], []),
    ("lang_pos", [("id", "INTEGER PRIMARY KEY"), ("page_id", "INTEGER NOT NULL"),
                  ("lang_id", "INTEGER NOT NULL"), ("pos_id", "INTEGER NOT NULL"),
                  ("etymology_n", "INTEGER NOT NULL")],
     ["UNIQUE (page_id, lang_id, pos_id, etymology_n)"]),
    ("meaning", [("id", "INTEGER PRIMARY KEY"), ("lang_pos_id", "INTEGER NOT NULL"),
                 ("meaning_n", "INTEGER NOT NULL"), ("wiki_text_id", "INTEGER NOT NULL"),
                 ("plain_text", "TEXT NOT NULL")],
     ["UNIQUE (lang_pos_id, meaning_n)"]),
    ("page_inflection", [("id", "INTEGER PRIMARY KEY"), ("page_id", "INTEGER NOT NULL"),
                         ("inflection_id", "INTEGER NOT NULL")],
     ["UNIQUE (page_id, inflection_id)"]),
    ("wiki_text_words", [("id", "INTEGER PRIMARY KEY"), ("wiki_text_id", "INTEGER NOT NULL"),
                         ("page_inflection_id", "INTEGER NOT NULL"), ("position", "INTEGER NOT NULL")],
     ["UNIQUE (wiki_text_id, position)"]),
    ("relation", [("id", "INTEGER PRIMARY KEY"), ("lang_pos_id", "INTEGER NOT NULL"),
                  ("position", "INTEGER NOT NULL"), ("meaning_id", "INTEGER"),
                  ("wiki_text_id", "INTEGER NOT NULL"), ("relation_type_id", "INTEGER NOT NULL"),
                  ("meaning_summary", "TEXT")],
     ["UNIQUE (lang_pos_id, position)"]),
    ("translation", [("id", "INTEGER PRIMARY KEY"), ("lang_pos_id", "INTEGER NOT NULL"),
                     ("position", "INTEGER NOT NULL"), ("meaning_id", "INTEGER UNIQUE"),
                     ("gloss", "TEXT")],
     ["UNIQUE (lang_pos_id, position)"]),
    ("translation_entry", [("id", "INTEGER PRIMARY KEY"), ("translation_id", "INTEGER NOT NULL"),
                           ("position", "INTEGER NOT NULL"), ("lang_id", "INTEGER NOT NULL"),
                           ("wiki_text_id", "INTEGER NOT NULL")],
     ["UNIQUE (translation_id, position)"]),
]

TABLES = [name for name, _, _ in SCHEMA]
COLUMNS = {name: [c for c, _ in cols] for name, cols, _ in SCHEMA}

# (table, column, referenced table, nullable)
FOREIGN_KEYS = [
    ("lang_pos", "page_id", "page", False),
    ("lang_pos", "lang_id", "lang", False),
    ("lang_pos", "pos_id", "part_of_speech", False),
    ("meaning", "lang_pos_id", "lang_pos", False),
    ("meaning", "wiki_text_id", "wiki_text", False),
    ("page_inflection", "page_id", "page", False),
    ("page_inflection", "inflection_id", "inflection", False),
    ("wiki_text_words", "wiki_text_id", "wiki_text", False),
    ("wiki_text_words", "page_inflection_id", "page_inflection", False),
    ("relation", "lang_pos_id", "lang_pos", False),
    ("relation", "meaning_id", "meaning", True),
    ("relation", "wiki_text_id", "wiki_text", False),
    ("relation", "relation_type_id", "relation_type", False),
    ("translation", "lang_pos_id", "lang_pos", False),
    ("translation", "meaning_id", "meaning", True),
    ("translation_entry", "translation_id", "translation", False),
    ("translation_entry", "lang_id", "lang", False),
    ("translation_entry", "wiki_text_id", "wiki_text", False),
]

UNIQUE_KEYS = [
    ("page", ("page_title",)),
    ("lang", ("code",)),
    ("lang", ("name",)),
    ("part_of_speech", ("name",)),
    ("relation_type", ("name",)),
    ("wiki_text", ("text",)),
    ("inflection", ("inflected_form",)),
    ("lang_pos", ("page_id", "lang_id", "pos_id", "etymology_n")),
    ("meaning", ("lang_pos_id", "meaning_n")),
    ("page_inflection", ("page_id", "inflection_id")),
    ("wiki_text_words", ("wiki_text_id", "position")),
    ("relation", ("lang_pos_id", "position")),
    ("translation", ("lang_pos_id", "position")),
    ("translation", ("meaning_id",)),
    ("translation_entry", ("translation_id", "position")),
]


def create_table_sql(table: str) -> str:
    for name, cols, constraints in SCHEMA:
        if name == table:
            parts = [f"{c} {t}" for c, t in cols] + constraints
            return f"CREATE TABLE {name} ({', '.join(parts)});"
    raise KeyError(table)


def default_relation_types() -> tuple[str, ...]:
    return load_profile("en").relation_types


@dataclass
class Finding:
    category: str
    table: str
    row_id: Optional[int]
    detail: str = ""


@dataclass
class CardMeaning:
    meaning_n: int
    plain_text: str
    raw_wikitext: str


@dataclass
class CardRelationGroup:
    meaning_summary: Optional[str]
    meaning_n: Optional[int]
    targets: list[str] = field(default_factory=list)


@dataclass
class CardTranslation:
    gloss: Optional[str]
    meaning_n: Optional[int]
    # language name -> terms, language names ascending
    entries: dict[str, list[str]] = field(default_factory=dict)


@dataclass
class CardSection:
    language_code: str
    language_name: str
    pos: str
    etymology_n: int
    meanings: list[CardMeaning] = field(default_factory=list)
    relations: dict[str, list[CardRelationGroup]] = field(default_factory=dict)
    translations: list[CardTranslation] = field(default_factory=list)


@dataclass
class WordCard:
    page_title: str
    sections: list[CardSection] = field(default_factory=list)

    @property
    def is_stub(self) -> bool:
        return not self.sections


class MrdStore:
    """Relational dictionary store. ``path`` of ``":memory:"`` keeps it in RAM."""

    def __init__(self, path: Union[str, Path] = ":memory:", relation_types: Optional[Sequence[str]] = None,
                 *, _conn: Optional[sqlite3.Connection] = None):
        if _conn is not None:
            self.conn = _conn
        else:
            self.conn = sqlite3.connect(str(path), isolation_level=None, check_same_thread=False)
            self._create(relation_types or default_relation_types())
        self._rel_type_ids = dict(self.conn.execute("SELECT name, id FROM relation_type"))

    @classmethod
    def create(cls, path: Union[str, Path], relation_types: Optional[Sequence[str]] = None) -> "MrdStore":
        """A fresh store at ``path``, replacing any existing file."""
        path = Path(path)
        if path.exists():
            path.unlink()
        return cls(path, relation_types)

    @classmethod
    def open(cls, path: Union[str, Path]) -> "MrdStore":
        path = Path(path)
        if not path.is_file():
            raise FileNotFoundError(f"no store at {path}")
        conn = sqlite3.connect(path.resolve().as_uri() + "?mode=rw", uri=True,
                               isolation_level=None, check_same_thread=False)
        try:
            tables = {r[0] for r in conn.execute("SELECT name FROM sqlite_master WHERE type='table'")}
        except sqlite3.DatabaseError as exc:
            conn.close()
            raise StoreError(f"{path}: not a store ({exc})") from exc
        if not set(TABLES) <= tables:
            conn.close()
            raise StoreError(f"{path}: not a store (missing tables)")
        return cls(_conn=conn)

    @classmethod
    def empty(cls) -> "MrdStore":
        """Schema only, no seeded relation types (used by import)."""
        conn = sqlite3.connect(":memory:", isolation_level=None, check_same_thread=False)
        for table in TABLES:
            conn.execute(create_table_sql(table))
        return cls(_conn=conn)

    def _create(self, relation_types: Sequence[str]) -> None:
        with self.transaction():
            for table in TABLES:
                self.conn.execute(create_table_sql(table))
            # Filled once, before any entry is stored.
            self.conn.executemany("INSERT INTO relation_type (name) VALUES (?)",
                                  [(name,) for name in relation_types])

    def close(self) -> None:
        self.conn.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    @contextmanager
    def transaction(self):
        if self.conn.in_transaction:
            yield
            return
        self.conn.execute("BEGIN")
        try:
            yield
        except BaseException:
            self.conn.execute("ROLLBACK")
            raise
        self.conn.execute("COMMIT")

    @contextmanager
    def bulk(self):
        """One transaction for many entries, committed even if the caller fails.

        Entries are atomic on their own, so whatever was written before an
        input error is a consistent store.
        """
        if self.conn.in_transaction:
            yield
            return
        self.conn.execute("BEGIN")
        try:
            yield
        finally:
            self.conn.execute("COMMIT")

    # -- id helpers ---------------------------------------------------------

    def _ensure(self, table: str, column: str, value, extra: Optional[dict] = None) -> int:
        row = self.conn.execute(f"SELECT id FROM {table} WHERE {column} = ?", (value,)).fetchone()
        if row:
            return row[0]
        cols = [column] + list(extra or {})
        vals = [value] + list((extra or {}).values())
        marks = ", ".join("?" * len(cols))
        return self.conn.execute(f"INSERT INTO {table} ({', '.join(cols)}) VALUES ({marks})", vals).lastrowid

    def ensure_page(self, title: str) -> int:
        if not title.strip():
            raise ValueError("empty page title")
        return self._ensure("page", "page_title", title)

    def ensure_lang(self, language: LanguageInfo) -> int:
        row = self.conn.execute("SELECT id, name FROM lang WHERE code = ?", (language.code,)).fetchone()
        if row:
            if row[1] != language.name:
                raise StoreError(f"language {language.code} stored as {row[1]!r}, got {language.name!r}")
            return row[0]
        return self.conn.execute("INSERT INTO lang (code, name, n_translation) VALUES (?, ?, 0)",
                                 (language.code, language.name)).lastrowid

    def ensure_pos(self, name: str) -> int:
        return self._ensure("part_of_speech", "name", name.lower())

    def _ensure_inflection(self, form: str) -> int:
        return self._ensure("inflection", "inflected_form", form)

    def _ensure_page_inflection(self, page_id: int, inflection_id: int) -> int:
        row = self.conn.execute("SELECT id FROM page_inflection WHERE page_id = ? AND inflection_id = ?",
                                (page_id, inflection_id)).fetchone()
        if row:
            return row[0]
        return self.conn.execute("INSERT INTO page_inflection (page_id, inflection_id) VALUES (?, ?)",
                                 (page_id, inflection_id)).lastrowid

    # -- interning and link indexing ----------------------------------------

    def intern_wiki_text(self, text: str) -> int:
        """Id of the ``wiki_text`` row holding exactly ``text``; new rows get their links indexed."""
        if not text or not text.strip():
            raise ValueError("cannot intern empty wikitext")
        row = self.conn.execute("SELECT id FROM wiki_text WHERE text = ?", (text,)).fetchone()
        if row:
            return row[0]
        with self.transaction():
            wiki_text_id = self.conn.execute("INSERT INTO wiki_text (text) VALUES (?)", (text,)).lastrowid
            self.index_links(wiki_text_id)
        return wiki_text_id

    def index_links(self, wiki_text_id: int) -> int:
        row = self.conn.execute("SELECT text FROM wiki_text WHERE id = ?", (wiki_text_id,)).fetchone()
        if row is None:
            raise StoreError(f"no wiki_text row {wiki_text_id}")
        links = scan_internal_links(row[0])
        for position, link in enumerate(links):
            page_id = self.ensure_page(link.target)
            pair = self._ensure_page_inflection(page_id, self._ensure_inflection(link.label))
            self.conn.execute(
                "INSERT OR IGNORE INTO wiki_text_words (wiki_text_id, page_inflection_id, position) "
                "VALUES (?, ?, ?)", (wiki_text_id, pair, position))
        return len(links)

    # -- entries ------------------------------------------------------------

    def store_entry(self, key: LangPosKey, definitions: Iterable[Definition] = (),
                    relation_groups: Iterable[RelationGroup] = (),
                    translation_blocks: Iterable[TranslationBlock] = (),
                    diagnostics: Optional[Diagnostics] = None) -> int:
        """Write one language/POS part of an entry; returns the ``lang_pos`` id.

        All-or-nothing: a duplicate key leaves the store untouched.
        """
        self.conn.execute("SAVEPOINT entry")
        try:
            lang_pos_id = self._store_entry(key, definitions, relation_groups, translation_blocks, diagnostics)
        except BaseException:
            self.conn.execute("ROLLBACK TO entry")
            self.conn.execute("RELEASE entry")
            raise
        self.conn.execute("RELEASE entry")
        return lang_pos_id

    def _store_entry(self, key, definitions, relation_groups, translation_blocks, diagnostics) -> int:
        page_id = self.ensure_page(key.page_title)
        lang_id = self.ensure_lang(key.language)
        pos_id = self.ensure_pos(key.pos_name)
        try:
            lang_pos_id = self.conn.execute(
                "INSERT INTO lang_pos (page_id, lang_id, pos_id, etymology_n) VALUES (?, ?, ?, ?)",
                (page_id, lang_id, pos_id, key.etymology_n)).lastrowid
        except sqlite3.IntegrityError as exc:
            raise DuplicateEntryError(
                f"{key.page_title}/{key.language.code}/{key.pos_name}/{key.etymology_n} already stored") from exc

        meaning_ids: dict[int, int] = {}
        for d in definitions:
            meaning_ids[d.meaning_n] = self.conn.execute(
                "INSERT INTO meaning (lang_pos_id, meaning_n, wiki_text_id, plain_text) VALUES (?, ?, ?, ?)",
                (lang_pos_id, d.meaning_n, self.intern_wiki_text(d.raw_wikitext), d.plain_text)).lastrowid

        position = 0
        for group in relation_groups:
            type_id = self._rel_type_ids.get(group.relation_type)
            if type_id is None:
                raise StoreError(f"unregistered relation type {group.relation_type!r}")
            meaning_id = meaning_ids.get(group.resolved_meaning_n) if group.resolved_meaning_n is not None else None
            for target in group.targets:
                self.conn.execute(
                    "INSERT INTO relation (lang_pos_id, position, meaning_id, wiki_text_id, relation_type_id, "
                    "meaning_summary) VALUES (?, ?, ?, ?, ?, ?)",
                    (lang_pos_id, position, meaning_id, self.intern_wiki_text(target), type_id,
                     group.meaning_summary))
                position += 1

        by_meaning: dict[int, int] = {}
        next_entry: dict[int, int] = defaultdict(int)
        for position, block in enumerate(translation_blocks):
            meaning_id = meaning_ids.get(block.resolved_meaning_n) if block.resolved_meaning_n is not None else None
            if meaning_id is not None and meaning_id in by_meaning:
                # One translation record per meaning: merge repeated blocks.
                translation_id = by_meaning[meaning_id]
                note(diagnostics, "translation_merged", block.gloss or "")
            else:
                translation_id = self.conn.execute(
                    "INSERT INTO translation (lang_pos_id, position, meaning_id, gloss) VALUES (?, ?, ?, ?)",
                    (lang_pos_id, position, meaning_id, block.gloss)).lastrowid
                if meaning_id is not None:
                    by_meaning[meaning_id] = translation_id
            for language, term in block.entries:
                entry_lang = self.ensure_lang(language)
                self.conn.execute(
                    "INSERT INTO translation_entry (translation_id, position, lang_id, wiki_text_id) "
                    "VALUES (?, ?, ?, ?)",
                    (translation_id, next_entry[translation_id], entry_lang, self.intern_wiki_text(term)))
                next_entry[translation_id] += 1
                self.conn.execute("UPDATE lang SET n_translation = n_translation + 1 WHERE id = ?", (entry_lang,))
        return lang_pos_id

    # -- queries ------------------------------------------------------------

    def counts(self) -> dict[str, int]:
        out = {t: self.conn.execute(f"SELECT COUNT(*) FROM {t}").fetchone()[0] for t in TABLES}
        out["entry_pages"] = self.conn.execute("SELECT COUNT(DISTINCT page_id) FROM lang_pos").fetchone()[0]
        return out

    def lookup_word_card(self, page_title: str) -> Optional[WordCard]:
        row = self.conn.execute("SELECT id FROM page WHERE page_title = ?", (page_title,)).fetchone()
        if row is None:
            return None
        card = WordCard(page_title)
        parts = self.conn.execute(
            "SELECT lp.id, l.code, l.name, p.name, lp.etymology_n FROM lang_pos lp "
            "JOIN lang l ON l.id = lp.lang_id JOIN part_of_speech p ON p.id = lp.pos_id "
            "WHERE lp.page_id = ? ORDER BY l.name, lp.etymology_n, p.name", (row[0],)).fetchall()
        for lp_id, code, lang_name, pos, etym in parts:
            section = CardSection(code, lang_name, pos, etym)
            for n, plain, raw in self.conn.execute(
                    "SELECT m.meaning_n, m.plain_text, w.text FROM meaning m "
                    "JOIN wiki_text w ON w.id = m.wiki_text_id WHERE m.lang_pos_id = ? ORDER BY m.meaning_n",
                    (lp_id,)):
                section.meanings.append(CardMeaning(n, plain, raw))
            last = None
            for rtype, summary, n, target in self.conn.execute(
                    "SELECT t.name, r.meaning_summary, m.meaning_n, w.text FROM relation r "
                    "JOIN relation_type t ON t.id = r.relation_type_id JOIN wiki_text w ON w.id = r.wiki_text_id "
                    "LEFT JOIN meaning m ON m.id = r.meaning_id WHERE r.lang_pos_id = ? ORDER BY r.position",
                    (lp_id,)):
                groups = section.relations.setdefault(rtype, [])
                if last != (rtype, summary, n) or not groups:
                    groups.append(CardRelationGroup(summary, n))
                    last = (rtype, summary, n)
                groups[-1].targets.append(target)
            for t_id, gloss, n in self.conn.execute(
                    "SELECT t.id, t.gloss, m.meaning_n FROM translation t LEFT JOIN meaning m ON m.id = t.meaning_id "
                    "WHERE t.lang_pos_id = ? ORDER BY t.position", (lp_id,)).fetchall():
                tr = CardTranslation(gloss, n)
                for lang_name_, term in self.conn.execute(
                        "SELECT l.name, w.text FROM translation_entry e JOIN lang l ON l.id = e.lang_id "
                        "JOIN wiki_text w ON w.id = e.wiki_text_id WHERE e.translation_id = ? "
                        "ORDER BY l.name, e.position", (t_id,)):
                    tr.entries.setdefault(lang_name_, []).append(term)
                section.translations.append(tr)
            card.sections.append(section)
        return card

    # -- integrity ------------------------------------------------------------

    def verify_integrity(self) -> list[Finding]:
        findings: list[Finding] = []
        q = self.conn.execute

        for table, column, ref, nullable in FOREIGN_KEYS:
            null_clause = f"t.{column} IS NOT NULL AND " if nullable else ""
            for row_id, value in q(f"SELECT t.id, t.{column} FROM {table} t LEFT JOIN {ref} r "
                                   f"ON r.id = t.{column} WHERE {null_clause}r.id IS NULL"):
                findings.append(Finding("foreign_key", table, row_id, f"{column}={value} not in {ref}"))

        for table, cols in UNIQUE_KEYS:
            col_list = ", ".join(cols)
            not_null = " AND ".join(f"{c} IS NOT NULL" for c in cols)
            for row_id, n in q(f"SELECT MIN(id), COUNT(*) FROM {table} WHERE {not_null} "
                               f"GROUP BY {col_list} HAVING COUNT(*) > 1"):
                findings.append(Finding("uniqueness", table, row_id, f"({col_list}) repeated {n} times"))

        for lang_id, stored, actual in q(
                "SELECT l.id, l.n_translation, COUNT(e.id) FROM lang l "
                "LEFT JOIN translation_entry e ON e.lang_id = l.id GROUP BY l.id"):
            if stored != actual:
                findings.append(Finding("counter_mismatch", "lang", lang_id,
                                        f"n_translation={stored}, entries={actual}"))

        for lp_id, k, lo, hi, distinct in q(
                "SELECT lang_pos_id, COUNT(*), MIN(meaning_n), MAX(meaning_n), COUNT(DISTINCT meaning_n) "
                "FROM meaning GROUP BY lang_pos_id"):
            if lo != 0 or hi != k - 1 or distinct != k:
                findings.append(Finding("meaning_density", "lang_pos", lp_id,
                                        f"{k} meanings numbered {lo}..{hi}"))

        n_types = q("SELECT COUNT(*) FROM relation_type").fetchone()[0]
        if n_types != 9:
            findings.append(Finding("relation_type_cardinality", "relation_type", None, f"{n_types} rows"))

        orphan_checks = [
            ("inflection", "SELECT i.id FROM inflection i WHERE NOT EXISTS "
                           "(SELECT 1 FROM page_inflection pi WHERE pi.inflection_id = i.id)"),
            ("page_inflection", "SELECT pi.id FROM page_inflection pi WHERE NOT EXISTS "
                                "(SELECT 1 FROM wiki_text_words w WHERE w.page_inflection_id = pi.id)"),
            ("wiki_text", "SELECT w.id FROM wiki_text w WHERE "
                          "NOT EXISTS (SELECT 1 FROM meaning m WHERE m.wiki_text_id = w.id) AND "
                          "NOT EXISTS (SELECT 1 FROM relation r WHERE r.wiki_text_id = w.id) AND "
                          "NOT EXISTS (SELECT 1 FROM translation_entry e WHERE e.wiki_text_id = w.id)"),
        ]
        for table, sql in orphan_checks:
            for (row_id,) in q(sql):
                findings.append(Finding("orphan", table, row_id, "unreferenced"))

        for table in ("relation", "translation"):
            for row_id, in q(f"SELECT t.id FROM {table} t JOIN meaning m ON m.id = t.meaning_id "
                             f"WHERE m.lang_pos_id != t.lang_pos_id"):
                findings.append(Finding("binding_mismatch", table, row_id, "meaning of another lang_pos"))

        value_checks = [
            ("page", "SELECT id FROM page WHERE TRIM(page_title) = ''", "empty title"),
            ("part_of_speech", "SELECT id FROM part_of_speech WHERE name != LOWER(name)", "name not lowercase"),
            ("wiki_text", "SELECT id FROM wiki_text WHERE TRIM(text) = ''", "empty text"),
            ("lang_pos", "SELECT id FROM lang_pos WHERE etymology_n < 0", "negative etymology_n"),
            ("lang", "SELECT id FROM lang WHERE n_translation < 0", "negative n_translation"),
        ]
        for table, sql, detail in value_checks:
            for (row_id,) in q(sql):
                findings.append(Finding("value", table, row_id, detail))
        return findings
