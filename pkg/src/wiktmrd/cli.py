"""Command-line front end.

Exit status: 0 success, 1 usage/config error, 2 I/O error, 3 lookup not found.
Diagnostics go to stderr as ``DIAG<TAB>category<TAB>page<TAB>detail`` lines.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .dump import DumpError, stream_pages
from .exchange import FORMATS, export_store
from .pipeline import run_pipeline
from .registry import PROFILE_IDS, RegistryError, load_profile
from .store import MrdStore, StoreError, WordCard
from .wikitext import strip_markup

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NOT_FOUND = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _workers(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wiktmrd", description="Wiktionary wikitext to a machine-readable dictionary.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse a dump or fixture directory into a new store")
    p.add_argument("--profile", choices=PROFILE_IDS, required=True)
    p.add_argument("--input", required=True, help="XML dump, '-' for stdin, or a directory of <title>.wiki files")
    p.add_argument("--store", required=True, help="store file to (re)create")
    p.add_argument("--workers", type=_workers, default=1)
    p.add_argument("--registry", help="directory with languages.<profile>.tsv and profile.<profile>.json")
    p.add_argument("-q", "--quiet", action="store_true", help="do not print DIAG lines")

    p = sub.add_parser("lookup", help="print the word card of one page")
    p.add_argument("--store", required=True)
    p.add_argument("--title", required=True)
    p.add_argument("--format", choices=("text", "doc"), default="text")

    p = sub.add_parser("export", help="canonical export of a store")
    p.add_argument("--store", required=True)
    p.add_argument("--format", choices=FORMATS, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check store invariants")
    p.add_argument("--store", required=True)
    return parser


def _err(message: str) -> None:
    print(f"wiktmrd: {message}", file=sys.stderr)


def cmd_parse(args) -> int:
    try:
        profile = load_profile(args.profile, args.registry)
    except RegistryError as exc:
        _err(str(exc))
        return EXIT_USAGE
    source = args.input
    if source != "-" and not Path(source).exists():
        _err(f"cannot read input {source}")
        return EXIT_IO
    on_diag = None if args.quiet else (lambda d: print(d.line(), file=sys.stderr))
    try:
        store = MrdStore.create(args.store, profile.relation_types)
    except (OSError, StoreError) as exc:
        _err(f"cannot create store {args.store}: {exc}")
        return EXIT_IO
    try:
        summary = run_pipeline(stream_pages(source), profile, store, args.workers, on_diag)
    except (OSError, DumpError) as exc:
        _err(f"input error: {exc}")
        return EXIT_IO
    finally:
        store.close()
    print("\n".join(summary.lines()))
    return EXIT_OK


def _open_store(path: str) -> Optional[MrdStore]:
    try:
        return MrdStore.open(path)
    except (OSError, StoreError) as exc:
        _err(str(exc))
        return None


def render_card(card: WordCard) -> str:
    lines = [card.page_title]
    if card.is_stub:
        lines.append("  (stub page: linked from other entries, no entry of its own)")
    for s in card.sections:
        etym = f", Etymology {s.etymology_n + 1}" if s.etymology_n else ""
        lines.append(f"  {s.language_name} ({s.language_code}) / {s.pos}{etym}")
        for m in s.meanings:
            lines.append(f"    {m.meaning_n + 1}. {m.plain_text}")
        for rtype, groups in s.relations.items():
            lines.append(f"    {rtype}:")
            for g in groups:
                bound = f" [meaning {g.meaning_n + 1}]" if g.meaning_n is not None else ""
                summary = f"({g.meaning_summary}){bound}: " if g.meaning_summary else ""
                lines.append(f"      {summary}{', '.join(strip_markup(t) for t in g.targets)}")
        for t in s.translations:
            bound = f" [meaning {t.meaning_n + 1}]" if t.meaning_n is not None else ""
            lines.append(f"    translations: {t.gloss or '(no gloss)'}{bound}")
            for lang, terms in t.entries.items():
                lines.append(f"      {lang}: {', '.join(terms)}")
    return "\n".join(lines)


def cmd_lookup(args) -> int:
    store = _open_store(args.store)
    if store is None:
        return EXIT_IO
    with store:
        card = store.lookup_word_card(args.title)
    if card is None:
        _err(f"not found: {args.title}")
        return EXIT_NOT_FOUND
    if args.format == "doc":
        doc = dataclasses.asdict(card)
        doc["is_stub"] = card.is_stub
        print(json.dumps(doc, ensure_ascii=False, indent=2))
    else:
        print(render_card(card))
    return EXIT_OK


def cmd_export(args) -> int:
    store = _open_store(args.store)
    if store is None:
        return EXIT_IO
    try:
        with store:
            out = export_store(store, args.format, args.out)
    except OSError as exc:
        _err(f"cannot write {args.out}: {exc}")
        return EXIT_IO
    print(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    store = _open_store(args.store)
    if store is None:
        return EXIT_IO
    with store:
        findings = store.verify_integrity()
    for f in findings:
        print(f"{f.category}\t{f.table}\t{f.row_id}\t{f.detail}")
    print(f"findings\t{len(findings)}")
    return EXIT_OK


COMMANDS = {"parse": cmd_parse, "lookup": cmd_lookup, "export": cmd_export, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
