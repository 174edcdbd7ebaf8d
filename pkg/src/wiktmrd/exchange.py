"""Canonical export and import of a store.

Export is a pure function of store content: every table is sorted by its
natural key (titles, codes, names, then numeric fields) and ids are
renumbered densely in that order, so two stores holding the same dictionary
export byte-identical output no matter how they were built.

Formats:

* ``tsv-bundle``: a directory with one ``<table>.tsv`` per table, UTF-8, LF,
  a header row, tab-separated fields, ``\\t`` ``\\n`` ``\\r`` ``\\\\``
  escapes and ``\\N`` for NULL.
* ``sql-dump``: one UTF-8 file of CREATE TABLE and INSERT statements.
"""

from __future__ import annotations

import re
import sqlite3
from pathlib import Path
from typing import Optional, Union

from .store import COLUMNS, SCHEMA, TABLES, MrdStore, StoreError, create_table_sql

FORMATS = ("tsv-bundle", "sql-dump")


class ImportFormatError(StoreError):
    """Malformed export input; the message carries the position."""


def _renumber(rows, key):
    rows = sorted(rows, key=key)
    return {row[0]: new_id for new_id, row in enumerate(rows, 1)}, rows


def canonical_rows(store: MrdStore) -> dict[str, list[tuple]]:
    q = lambda sql: store.conn.execute(sql).fetchall()
    out: dict[str, list[tuple]] = {}

    def simple(table, cols):
        ids, rows = _renumber(q(f"SELECT id, {cols} FROM {table}"), key=lambda r: r[1:])
        out[table] = [(ids[r[0]],) + tuple(r[1:]) for r in rows]
        return ids

    page = simple("page", "page_title")
    lang = simple("lang", "code, name, n_translation")
    pos = simple("part_of_speech", "name")
    rtype = simple("relation_type", "name")
    wtext = simple("wiki_text", "text")
    infl = simple("inflection", "inflected_form")

    def mapped(table, cols, maps, sort_width):
        """Rows with foreign keys rewritten; sorted on the first ``sort_width`` fields."""
        rows = []
        for r in q(f"SELECT id, {cols} FROM {table}"):
            vals = tuple(m.get(v) if (m is not None and v is not None) else v for m, v in zip(maps, r[1:]))
            rows.append((r[0],) + vals)
        ids, rows = _renumber(rows, key=lambda r: tuple((v is None, v) for v in r[1:1 + sort_width]))
        out[table] = [(ids[r[0]],) + r[1:] for r in rows]
        return ids

    lang_pos = mapped("lang_pos", "page_id, lang_id, pos_id, etymology_n", [page, lang, pos, None], 4)
    meaning = mapped("meaning", "lang_pos_id, meaning_n, wiki_text_id, plain_text",
                     [lang_pos, None, wtext, None], 2)
    page_infl = mapped("page_inflection", "page_id, inflection_id", [page, infl], 2)
    mapped("wiki_text_words", "wiki_text_id, page_inflection_id, position", [wtext, page_infl, None], 3)
    mapped("relation", "lang_pos_id, position, meaning_id, wiki_text_id, relation_type_id, meaning_summary",
           [lang_pos, None, meaning, wtext, rtype, None], 2)
    trans = mapped("translation", "lang_pos_id, position, meaning_id, gloss", [lang_pos, None, meaning, None], 2)
    mapped("translation_entry", "translation_id, position, lang_id, wiki_text_id",
           [trans, None, lang, wtext], 2)
    return {t: out[t] for t in TABLES}


# -- tsv ----------------------------------------------------------------------

_TSV_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_TSV_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}
_TSV_ESCAPE_RE = re.compile(r"[\\\t\n\r]")


def _tsv_field(value) -> str:
    if value is None:
        return "\\N"
    if isinstance(value, int):
        return str(value)
    return _TSV_ESCAPE_RE.sub(lambda m: _TSV_ESCAPES[m.group()], value)


def tsv_bundle_bytes(store: MrdStore) -> dict[str, bytes]:
    files = {}
    for table, rows in canonical_rows(store).items():
        lines = ["\t".join(COLUMNS[table])]
        lines += ["\t".join(_tsv_field(v) for v in row) for row in rows]
        files[f"{table}.tsv"] = ("\n".join(lines) + "\n").encode("utf-8")
    return files


def export_tsv_bundle(store: MrdStore, out_dir: Union[str, Path]) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, data in tsv_bundle_bytes(store).items():
        (out_dir / name).write_bytes(data)
    return out_dir


def _unescape_tsv(field: str, where: str) -> Optional[str]:
    if field == "\\N":
        return None
    if "\\" not in field:
        return field
    out = []
    i = 0
    while i < len(field):
        c = field[i]
        if c == "\\":
            nxt = field[i + 1:i + 2]
            if nxt not in _TSV_UNESCAPES:
                raise ImportFormatError(f"{where}: bad escape '\\{nxt}' at column {i + 1}")
            out.append(_TSV_UNESCAPES[nxt])
            i += 2
        else:
            out.append(c)
            i += 1
    return "".join(out)


def _is_int_column(table: str, column: str) -> bool:
    for name, cols, _ in SCHEMA:
        if name == table:
            return dict(cols)[column].startswith("INTEGER")
    raise KeyError(table)


def _coerce(table: str, column: str, value: Optional[str], where: str):
    if value is None or not _is_int_column(table, column):
        return value
    if not re.fullmatch(r"-?\d+", value):
        raise ImportFormatError(f"{where}: column {column!r} expects an integer, got {value!r}")
    return int(value)


def import_tsv_bundle(directory: Union[str, Path]) -> MrdStore:
    directory = Path(directory)
    tables = {}
    for table in TABLES:
        path = directory / f"{table}.tsv"
        if not path.is_file():
            raise ImportFormatError(f"{path}: missing table file")
        try:
            text = path.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ImportFormatError(f"{path}: byte {exc.start}: invalid UTF-8") from exc
        if not text.endswith("\n"):
            raise ImportFormatError(f"{path}: missing final newline")
        lines = text[:-1].split("\n")
        if lines[0].split("\t") != COLUMNS[table]:
            raise ImportFormatError(f"{path}:1: header {lines[0]!r} does not match {COLUMNS[table]}")
        rows = []
        for lineno, line in enumerate(lines[1:], 2):
            where = f"{path}:{lineno}"
            fields = line.split("\t")
            if len(fields) != len(COLUMNS[table]):
                raise ImportFormatError(f"{where}: expected {len(COLUMNS[table])} fields, got {len(fields)}")
            rows.append(tuple(_coerce(table, col, _unescape_tsv(f, where), where)
                              for col, f in zip(COLUMNS[table], fields)))
        tables[table] = rows
    return _load_rows(tables, str(directory))


# -- sql ----------------------------------------------------------------------

def _sql_literal(value) -> str:
    if value is None:
        return "NULL"
    if isinstance(value, int):
        return str(value)
    return "'" + value.replace("'", "''") + "'"


def sql_dump_bytes(store: MrdStore) -> bytes:
    out = ["-- wiktmrd sql-dump"]
    rows = canonical_rows(store)
    for table in TABLES:
        out.append(create_table_sql(table))
    for table in TABLES:
        cols = ", ".join(COLUMNS[table])
        for row in rows[table]:
            out.append(f"INSERT INTO {table} ({cols}) VALUES ({', '.join(_sql_literal(v) for v in row)});")
    return ("\n".join(out) + "\n").encode("utf-8")


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>--[^\n]*)|(?P<str>'(?:[^']|'')*')|(?P<int>-?\d+)"
    r"|(?P<word>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[(),;])")


def _position(text: str, offset: int) -> str:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"line {line}, column {col}"


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ImportFormatError(f"sql-dump: {_position(text, pos)}: unexpected {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append((kind, m.group(), m.start()))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _SqlParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def fail(self, message: str):
        tok = self.tokens[self.i]
        raise ImportFormatError(f"sql-dump: {_position(self.text, tok[2])}: {message}")

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: Optional[str] = None) -> str:
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1].upper() != value):
            self.fail(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok[1]

    def statement_text(self) -> str:
        """Raw text up to and including the next ';' (DDL is compared verbatim)."""
        start = self.tokens[self.i][2]
        while self.peek()[0] != "eof" and self.peek()[1] != ";":
            self.i += 1
        self.take("punct", ";")
        return self.text[start:self.tokens[self.i - 1][2] + 1]

    def value(self):
        kind, text, _ = self.peek()
        if kind == "int":
            self.i += 1
            return int(text)
        if kind == "str":
            self.i += 1
            return text[1:-1].replace("''", "'")
        if kind == "word" and text.upper() == "NULL":
            self.i += 1
            return None
        self.fail(f"expected a value, got {text!r}")

    def parse(self) -> dict[str, list[tuple]]:
        tables: dict[str, list[tuple]] = {}
        while self.peek()[0] != "eof":
            kind, word, _ = self.peek()
            if kind == "word" and word.upper() == "CREATE":
                at = self.i
                stmt = " ".join(self.statement_text().split())
                name = stmt.split()[2] if len(stmt.split()) > 2 else ""
                if name not in COLUMNS or stmt != create_table_sql(name):
                    self.i = at
                    self.fail(f"unexpected table definition for {name!r}")
                tables.setdefault(name, [])
            elif kind == "word" and word.upper() == "INSERT":
                self.i += 1
                self.take("word", "INTO")
                table = self.take("word")
                if table not in tables:
                    self.i -= 1
                    self.fail(f"INSERT into undeclared table {table!r}")
                self.take("punct", "(")
                cols = [self.take("word")]
                while self.peek()[1] == ",":
                    self.i += 1
                    cols.append(self.take("word"))
                self.take("punct", ")")
                if cols != COLUMNS[table]:
                    self.fail(f"column list {cols} does not match {COLUMNS[table]}")
                self.take("word", "VALUES")
                self.take("punct", "(")
                row = [self.value()]
                while self.peek()[1] == ",":
                    self.i += 1
                    row.append(self.value())
                self.take("punct", ")")
                self.take("punct", ";")
                if len(row) != len(cols):
                    self.i -= 1
                    self.fail(f"expected {len(cols)} values, got {len(row)}")
                tables[table].append(tuple(row))
            else:
                self.fail(f"expected CREATE or INSERT, got {word!r}")
        missing = [t for t in TABLES if t not in tables]
        if missing:
            raise ImportFormatError(f"sql-dump: missing tables {missing}")
        return tables


def import_sql_dump(data: bytes) -> MrdStore:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ImportFormatError(f"sql-dump: byte {exc.start}: invalid UTF-8") from exc
    return _load_rows(_SqlParser(text).parse(), "sql-dump")


# -- common -----------------------------------------------------------------

def _load_rows(tables: dict[str, list[tuple]], source: str) -> MrdStore:
    store = MrdStore.empty()
    with store.transaction():
        for table in TABLES:
            cols = COLUMNS[table]
            sql = f"INSERT INTO {table} ({', '.join(cols)}) VALUES ({', '.join('?' * len(cols))})"
            for n, row in enumerate(tables[table], 1):
                try:
                    store.conn.execute(sql, row)
                except sqlite3.IntegrityError as exc:
                    raise ImportFormatError(f"{source}: {table} row {n}: {exc}") from exc
    store._rel_type_ids = dict(store.conn.execute("SELECT name, id FROM relation_type"))
    return store


def export_store(store: MrdStore, fmt: str, out: Union[str, Path]) -> Path:
    out = Path(out)
    if fmt == "tsv-bundle":
        return export_tsv_bundle(store, out)
    if fmt == "sql-dump":
        out.write_bytes(sql_dump_bytes(store))
        return out
    raise ValueError(f"unknown export format {fmt!r}; expected one of {FORMATS}")


def import_store(path: Union[str, Path]) -> MrdStore:
    """Read a tsv-bundle directory or a sql-dump file."""
    path = Path(path)
    if path.is_dir():
        return import_tsv_bundle(path)
    return import_sql_dump(path.read_bytes())
