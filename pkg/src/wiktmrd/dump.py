"""Stream pages out of a MediaWiki XML export or a fixture directory.

Only one page is materialized at a time: finished ``<page>`` elements are
dropped from the tree as soon as they are yielded.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Optional, Union
from xml.etree.ElementTree import ParseError, XMLPullParser

CHUNK_SIZE = 64 * 1024


@dataclass
class RawPage:
    title: str
    namespace: int
    text: str
    is_redirect: bool = False


class DumpError(Exception):
    """Malformed dump input; ``line``/``column`` locate the problem."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _child(elem, name: str):
    for c in elem:
        if _local(c.tag) == name:
            return c
    return None


def _page_from_element(elem) -> RawPage:
    title = _child(elem, "title")
    ns = _child(elem, "ns")
    revisions = [c for c in elem if _local(c.tag) == "revision"]
    text = ""
    if revisions:
        # Latest revision only.
        node = _child(revisions[-1], "text")
        text = (node.text or "") if node is not None else ""
    try:
        namespace = int((ns.text or "0").strip()) if ns is not None else 0
    except ValueError:
        namespace = -1
    return RawPage(
        title=(title.text or "") if title is not None else "",
        namespace=namespace,
        text=text,
        is_redirect=_child(elem, "redirect") is not None,
    )


def stream_xml(stream: BinaryIO, chunk_size: int = CHUNK_SIZE) -> Iterator[RawPage]:
    parser = XMLPullParser(events=("start", "end"))
    root = None
    depth = 0
    while True:
        data = stream.read(chunk_size)
        try:
            if data:
                parser.feed(data)
            else:
                parser.close()
            # A syntax error is queued behind the events before it, so pages
            # completed ahead of the error are still yielded.
            for event, elem in parser.read_events():
                if event == "start":
                    if root is None:
                        root = elem
                    depth += 1
                    continue
                depth -= 1
                if _local(elem.tag) == "page" and depth == 1:
                    page = _page_from_element(elem)
                    root.clear()
                    if page.title:
                        yield page
        except ParseError as exc:
            line, column = getattr(exc, "position", (None, None))
            raise DumpError(f"malformed XML: {exc}", line, column) from None
        if not data:
            return


def stream_fixture_dir(directory: Path) -> Iterator[RawPage]:
    """One page per ``<title>.wiki`` file, in file-name order."""
    for path in sorted(directory.glob("*.wiki")):
        yield RawPage(path.stem, 0, path.read_text(encoding="utf-8"))


def stream_pages(source: Union[str, Path, BinaryIO]) -> Iterator[RawPage]:
    """Pages from an XML file path, ``-`` for stdin, a binary stream, or a fixture directory."""
    if hasattr(source, "read"):
        yield from stream_xml(source)
        return
    if str(source) == "-":
        yield from stream_xml(sys.stdin.buffer)
        return
    path = Path(source)
    if path.is_dir():
        yield from stream_fixture_dir(path)
        return
    with open(path, "rb") as fh:
        yield from stream_xml(fh)


def filter_main(pages: Iterable[RawPage], skipped: Optional[Counter] = None) -> Iterator[RawPage]:
    """Keep main-namespace, non-redirect pages; count the rest in ``skipped`` by reason."""
    for page in pages:
        if page.is_redirect:
            reason = "redirect"
        elif page.namespace != 0:
            reason = "namespace"
        else:
            yield page
            continue
        if skipped is not None:
            skipped[reason] += 1
