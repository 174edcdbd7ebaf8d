"""Non-fatal parse diagnostics.

Malformed markup never raises; scanners and extractors record what they
skipped here instead. A collector is bound to one page title so records can
be emitted as ``DIAG<TAB>category<TAB>page<TAB>detail`` lines.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional


@dataclass(frozen=True)
class Diagnostic:
    category: str
    page: str
    detail: str = ""

    def line(self) -> str:
        detail = self.detail.replace("\t", " ").replace("\n", " ")
        page = self.page.replace("\t", " ").replace("\n", " ")
        return f"DIAG\t{self.category}\t{page}\t{detail}"


@dataclass
class Diagnostics:
    page: str = ""
    records: list[Diagnostic] = field(default_factory=list)
    # constructs encountered, by kind; stored + skipped must add up to these
    tally: Counter = field(default_factory=Counter)

    def add(self, category: str, detail: str = "") -> None:
        self.records.append(Diagnostic(category, self.page, detail))

    def extend(self, records: Iterable[Diagnostic]) -> None:
        self.records.extend(records)

    def counts(self) -> Counter:
        return Counter(r.category for r in self.records)

    def count(self, category: str) -> int:
        return sum(1 for r in self.records if r.category == category)

    def __len__(self) -> int:
        return len(self.records)


def note(diagnostics: Optional[Diagnostics], category: str, detail: str = "") -> None:
    """Record on ``diagnostics`` if a collector was supplied."""
    if diagnostics is not None:
        diagnostics.add(category, detail)


def seen(diagnostics: Optional[Diagnostics], kind: str, n: int = 1) -> None:
    if diagnostics is not None:
        diagnostics.tally[kind] += n
