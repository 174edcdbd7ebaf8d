"""Structural scanner for wiki markup.

Every scanner here is total: arbitrary input (including unbalanced braces and
brackets) produces a result, never an exception. HTML comments are masked out
before scanning, but all spans are reported in offsets of the original source
so ``source[span.start:span.end]`` gives back the exact markup of a node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .diagnostics import Diagnostics, note

__all__ = [
    "SourceSpan",
    "Heading",
    "Template",
    "InternalLink",
    "ListItem",
    "TemplateRenderPolicy",
    "remove_comments",
    "scan_headings",
    "scan_templates",
    "iter_top_templates",
    "check_braces",
    "scan_internal_links",
    "scan_list_items",
    "iter_list_items",
    "strip_markup",
]


@dataclass(frozen=True, order=True)
class SourceSpan:
    start: int
    end: int

    def slice(self, source: str) -> str:
        return source[self.start:self.end]

    def __len__(self) -> int:
        return self.end - self.start


@dataclass
class Heading:
    level: int
    title: str
    span: SourceSpan


@dataclass
class Template:
    name: str
    positional_args: list[str] = field(default_factory=list)
    named_args: dict[str, str] = field(default_factory=dict)
    children: list["Template"] = field(default_factory=list)
    span: SourceSpan = SourceSpan(0, 0)

    def arg(self, index: int, default: str = "") -> str:
        """Positional arg ``index`` (0-based), stripped."""
        if index < len(self.positional_args):
            return self.positional_args[index].strip()
        return default


@dataclass
class InternalLink:
    target: str
    label: str
    span: SourceSpan


@dataclass
class ListItem:
    markers: str
    content: str
    span: SourceSpan

    @property
    def depth(self) -> int:
        return len(self.markers)


# -- comments ---------------------------------------------------------------

_COMMENT_RE = re.compile(r"<!--.*?(?:-->|\Z)", re.S)


def remove_comments(text: str) -> str:
    return _COMMENT_RE.sub("", text)


def _mask_comments(text: str) -> str:
    # Same length as the input, so offsets into the mask are source offsets.
    if "<!--" not in text:
        return text
    return _COMMENT_RE.sub(lambda m: " " * len(m.group()), text)


def _lines(text: str):
    """Yield (offset, line) without the trailing newline."""
    pos = 0
    while True:
        nl = text.find("\n", pos)
        if nl < 0:
            yield pos, text[pos:]
            return
        yield pos, text[pos:nl]
        pos = nl + 1


# -- headings ---------------------------------------------------------------

def scan_headings(source: str) -> list[Heading]:
    masked = _mask_comments(source)
    headings = []
    for start, line in _lines(masked):
        if not line.startswith("="):
            continue
        stripped = line.rstrip()
        lead = len(stripped) - len(stripped.lstrip("="))
        if lead == len(stripped):
            continue
        trail = len(stripped) - len(stripped.rstrip("="))
        if lead != trail or lead > 6:
            continue
        end = start + len(stripped)
        title = remove_comments(source[start + lead:end - trail]).strip()
        if not title:
            continue
        headings.append(Heading(lead, title, SourceSpan(start, end)))
    return headings


# -- templates --------------------------------------------------------------

_BRACE_RE = re.compile(r"\{\{|\}\}")
_LINK_RE = re.compile(r"\[\[([^\[\]\n|]*)(?:\|([^\[\]\n]*))?\]\]")


def _brace_pairs(masked: str) -> tuple[list[tuple[int, int]], list[int]]:
    stack: list[int] = []
    pairs = []
    for m in _BRACE_RE.finditer(masked):
        if m.group() == "{{":
            stack.append(m.start())
        elif stack:
            pairs.append((stack.pop(), m.end()))
    return pairs, stack


def _split_top_level(masked: str, start: int, end: int, protected: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Split masked[start:end] on '|' outside the protected ranges."""
    parts = []
    seg = start
    i = start
    pi = 0
    while True:
        j = masked.find("|", i, end)
        if j < 0:
            break
        while pi < len(protected) and protected[pi][1] <= j:
            pi += 1
        if pi < len(protected) and protected[pi][0] <= j:
            i = protected[pi][1]
            continue
        parts.append((seg, j))
        seg = i = j + 1
    parts.append((seg, end))
    return parts


def _merge_ranges(ranges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    merged: list[tuple[int, int]] = []
    for a, b in sorted(ranges):
        if merged and a < merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return merged


@dataclass
class _Node:
    start: int
    end: int
    kids: list["_Node"] = field(default_factory=list)


def _build_tree(pairs: list[tuple[int, int]]) -> list[_Node]:
    # Pairs from a stack matcher are either nested or disjoint.
    roots: list[_Node] = []
    open_nodes: list[_Node] = []
    for start, end in sorted(pairs, key=lambda p: (p[0], -p[1])):
        node = _Node(start, end)
        while open_nodes and open_nodes[-1].end <= start:
            open_nodes.pop()
        (open_nodes[-1].kids if open_nodes else roots).append(node)
        open_nodes.append(node)
    return roots


def _make_templates(source: str, masked: str, node: _Node) -> list[Template]:
    children: list[Template] = []
    for kid in node.kids:
        children.extend(_make_templates(source, masked, kid))
    body_start, body_end = node.start + 2, node.end - 2
    protected = [(k.start, k.end) for k in node.kids]
    protected += [m.span() for m in _LINK_RE.finditer(masked, body_start, body_end)]
    parts = _split_top_level(masked, body_start, body_end, _merge_ranges(protected))
    name = remove_comments(source[parts[0][0]:parts[0][1]]).strip()
    if not name:
        # Not a template; nested ones surface at this level.
        return children
    positional = []
    named = {}
    for a, b in parts[1:]:
        raw = remove_comments(source[a:b])
        eq = masked.find("=", a, b)
        while eq >= 0 and any(p <= eq < q for p, q in protected):
            eq = masked.find("=", eq + 1, b)
        if eq >= 0:
            key = remove_comments(source[a:eq]).strip()
            if key:
                named[key] = remove_comments(source[eq + 1:b]).strip()
                continue
        positional.append(raw)
    return [Template(name, positional, named, children, SourceSpan(node.start, node.end))]


def scan_templates(source: str, diagnostics: Optional[Diagnostics] = None) -> list[Template]:
    """Top-level templates in document order; nested ones are in ``children``.

    An opening ``{{`` that never closes is plain text. A brace pair whose name
    (text before the first top-level ``|``) is blank is not a template; any
    templates inside it are promoted to the enclosing level.
    """
    return list(iter_top_templates(source, diagnostics))


def iter_top_templates(source: str, diagnostics: Optional[Diagnostics] = None) -> Iterator[Template]:
    """Lazy ``scan_templates``: each top-level template is built when reached."""
    if "{{" not in source:
        return
    masked = _mask_comments(source)
    pairs, unclosed = _brace_pairs(masked)
    for pos in unclosed:
        note(diagnostics, "unbalanced_braces", f"unclosed '{{{{' at offset {pos}")
    for root in _build_tree(pairs):
        yield from _make_templates(source, masked, root)


def check_braces(source: str, diagnostics: Optional[Diagnostics] = None) -> int:
    """Report every ``{{`` that never closes; returns how many there are.

    Same matching as ``scan_templates`` without building templates.
    """
    if "{{" not in source:
        return 0
    _, unclosed = _brace_pairs(_mask_comments(source))
    for pos in unclosed:
        note(diagnostics, "unbalanced_braces", f"unclosed '{{{{' at offset {pos}")
    return len(unclosed)


def iter_templates(templates: list[Template]):
    """Depth-first walk over templates and all their descendants."""
    for t in templates:
        yield t
        yield from iter_templates(t.children)


# -- links ------------------------------------------------------------------

def scan_internal_links(source: str) -> list[InternalLink]:
    """``[[T|L]]`` and ``[[T]]`` links; ``#fragment`` is dropped from targets."""
    if "[[" not in source:
        return []
    masked = _mask_comments(source)
    links = []
    for m in _LINK_RE.finditer(masked):
        target = remove_comments(source[m.start(1):m.end(1)]).split("#", 1)[0].strip()
        if not target:
            continue
        label = target
        if m.group(2) is not None:
            label = remove_comments(source[m.start(2):m.end(2)]).strip() or target
        links.append(InternalLink(target, label, SourceSpan(m.start(), m.end())))
    return links


# -- list items -------------------------------------------------------------

_MARKERS = "#*:"


def scan_list_items(source: str) -> list[ListItem]:
    return list(iter_list_items(source))


def iter_list_items(source: str) -> Iterator[ListItem]:
    masked = _mask_comments(source)
    for start, line in _lines(masked):
        if not line or line[0] not in _MARKERS:
            continue
        n = len(line) - len(line.lstrip(_MARKERS))
        end = start + len(line)
        content = remove_comments(source[start + n:end]).rstrip("\r")
        if content.startswith(" "):
            content = content[1:]
        yield ListItem(line[:n], content, SourceSpan(start, end))


# -- markup stripping -------------------------------------------------------

@dataclass(frozen=True)
class TemplateRenderPolicy:
    """Rendering rules for grammar-label templates.

    ``rules`` maps a template name to one of:

    * ``"self"``: ``{{transitive}}`` renders as ``(transitive)``
    * ``"args"``: positional args become the label list
    * ``"args-after-lang"``: as ``args`` but the first positional (a
      language code, as in ``{{lb|en|transitive}}``) is dropped

    Templates not listed render to nothing.
    """

    rules: Mapping[str, str] = field(default_factory=dict)

    def rule(self, name: str) -> Optional[str]:
        rule = self.rules.get(name)
        if rule is None and name:
            rule = self.rules.get(name[0].lower() + name[1:])
        return rule

    def labels(self, template: Template) -> list[str]:
        rule = self.rule(template.name)
        if rule == "self":
            return [template.name]
        if rule in ("args", "args-after-lang"):
            args = template.positional_args[1:] if rule == "args-after-lang" else template.positional_args
            return [a.strip() for a in args if a.strip()]
        return []

    def render(self, template: Template) -> str:
        labels = self.labels(template)
        return "(" + ", ".join(labels) + ")" if labels else ""


_QUOTES_RE = re.compile(r"'{2,}")
_SPACE_RE = re.compile(r"\s+")


def _replace_spans(text: str, pieces) -> str:
    out = []
    pos = 0
    for span, replacement in pieces:
        out.append(text[pos:span.start])
        out.append(replacement)
        pos = span.end
    out.append(text[pos:])
    return "".join(out)


def _strip_once(text: str, policy: TemplateRenderPolicy) -> str:
    text = remove_comments(text)
    text = _replace_spans(text, ((t.span, policy.render(t)) for t in scan_templates(text)))
    text = _replace_spans(text, ((link.span, link.label) for link in scan_internal_links(text)))
    text = _QUOTES_RE.sub("", text)
    return _SPACE_RE.sub(" ", text).strip()


def strip_markup(source: str, policy: Optional[TemplateRenderPolicy] = None) -> str:
    """Reduce wikitext to reader-visible plain text.

    Repeats until nothing changes, since removing one construct can expose
    another (``[{{x}}[a]]``). Each changing pass deletes brace, bracket or
    quote characters or only normalizes whitespace, so this terminates.
    """
    policy = policy or TemplateRenderPolicy()
    while True:
        out = _strip_once(source, policy)
        if out == source:
            return out
        source = out
