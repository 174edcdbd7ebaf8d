"""Language registries and per-wiktionary profiles.

Registries are plain TSV data files (``languages.<profile>.tsv``) and the rest
of a profile lives next to them in ``profile.<profile>.json``, so the language
inventory and heading vocabularies can grow without touching code.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from .diagnostics import Diagnostics, note
from .wikitext import TemplateRenderPolicy

PROFILE_IDS = ("en", "ru")
DATA_DIR = Path(__file__).with_name("data")

_CODE_RE = re.compile(r"^[a-z][a-z0-9-]{1,11}$")


class RegistryError(ValueError):
    """A registry or profile file failed validation."""


@dataclass(frozen=True)
class LanguageInfo:
    code: str
    name: str
    id: int = field(default=0, compare=False)


class LanguageRegistry:
    """Immutable code/name lookup table for one profile."""

    def __init__(self, languages: list[LanguageInfo]):
        self._by_code: dict[str, LanguageInfo] = {}
        self._by_name: dict[str, LanguageInfo] = {}
        for lang in languages:
            if not _CODE_RE.match(lang.code):
                raise RegistryError(f"bad language code {lang.code!r}")
            if lang.code in self._by_code:
                raise RegistryError(f"duplicate language code {lang.code!r}")
            if lang.name in self._by_name:
                raise RegistryError(f"duplicate language name {lang.name!r}")
            self._by_code[lang.code] = lang
            self._by_name[lang.name] = lang
        self.languages = tuple(languages)

    @classmethod
    def from_tsv(cls, path: Union[str, Path]) -> "LanguageRegistry":
        languages = []
        with open(path, encoding="utf-8", newline="") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2 or not parts[1].strip():
                    raise RegistryError(f"{path}:{lineno}: expected 'code<TAB>name'")
                code, name = parts[0].strip(), parts[1].strip()
                languages.append(LanguageInfo(code, name, len(languages) + 1))
        return cls(languages)

    def __len__(self) -> int:
        return len(self.languages)

    def __iter__(self):
        return iter(self.languages)

    def lookup_code(self, code: str, diagnostics: Optional[Diagnostics] = None) -> Optional[LanguageInfo]:
        lang = self._by_code.get(code.strip().lower())
        if lang is None:
            note(diagnostics, "unknown_language_code", code)
        return lang

    def lookup_name(self, name: str, diagnostics: Optional[Diagnostics] = None) -> Optional[LanguageInfo]:
        lang = self._by_name.get(name.strip())
        if lang is None:
            note(diagnostics, "unknown_language_name", name)
        return lang


@dataclass(frozen=True)
class Profile:
    """Everything that differs between wiktionaries: data, not code."""

    profile_id: str
    languages: LanguageRegistry
    pos_names: frozenset[str]
    relation_types: tuple[str, ...]
    relation_headings: dict[str, str]
    label_policy: TemplateRenderPolicy
    sense_templates: frozenset[str]
    trans_top_templates: frozenset[str]
    trans_bottom_templates: frozenset[str]
    translation_templates: frozenset[str]
    language_heading_level: int = 2
    language_heading_code_pattern: Optional[str] = None

    def lookup_code(self, code: str, diagnostics: Optional[Diagnostics] = None) -> Optional[LanguageInfo]:
        return self.languages.lookup_code(code, diagnostics)

    def lookup_name(self, name: str, diagnostics: Optional[Diagnostics] = None) -> Optional[LanguageInfo]:
        return self.languages.lookup_name(name, diagnostics)

    def resolve_language_heading(self, title: str) -> Optional[LanguageInfo]:
        if self.language_heading_code_pattern:
            m = re.match(self.language_heading_code_pattern, title.strip())
            if m:
                return self.lookup_code(m.group(1))
        return self.lookup_name(title)

    def __reduce__(self):
        # Workers rebuild from the same files instead of pickling the tables.
        return (_load_cached, (self.profile_id, str(self._registry_dir)))

    @property
    def _registry_dir(self) -> Path:
        return self.__dict__.get("_dir", DATA_DIR)


def _validate(raw: dict, profile_id: str) -> None:
    required = ("relation_types", "pos_names", "relation_headings", "label_templates",
                "sense_templates", "trans_top_templates", "trans_bottom_templates",
                "translation_templates")
    missing = [k for k in required if k not in raw]
    if missing:
        raise RegistryError(f"profile {profile_id}: missing keys {missing}")
    types = raw["relation_types"]
    if len(types) != 9 or len(set(types)) != 9:
        raise RegistryError(f"profile {profile_id}: expected 9 distinct relation types")
    stray = set(raw["relation_headings"].values()) - set(types)
    if stray:
        raise RegistryError(f"profile {profile_id}: unregistered relation types {sorted(stray)}")
    bad_rules = {v for v in raw["label_templates"].values()} - {"self", "args", "args-after-lang"}
    if bad_rules:
        raise RegistryError(f"profile {profile_id}: unknown label rules {sorted(bad_rules)}")


def load_profile(profile_id: str, registry_dir: Union[str, Path, None] = None) -> Profile:
    """Load and validate ``profile.<id>.json`` + ``languages.<id>.tsv``."""
    if profile_id not in PROFILE_IDS:
        raise RegistryError(f"unknown profile {profile_id!r}; expected one of {PROFILE_IDS}")
    return _load_cached(profile_id, str(Path(registry_dir) if registry_dir else DATA_DIR))


@lru_cache(maxsize=None)
def _load_cached(profile_id: str, registry_dir: str) -> Profile:
    directory = Path(registry_dir)
    lang_path = directory / f"languages.{profile_id}.tsv"
    profile_path = directory / f"profile.{profile_id}.json"
    for path in (lang_path, profile_path):
        if not path.is_file():
            raise RegistryError(f"missing registry file {path}")
    try:
        raw = json.loads(profile_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise RegistryError(f"{profile_path}: {exc}") from exc
    _validate(raw, profile_id)
    profile = Profile(
        profile_id=profile_id,
        languages=LanguageRegistry.from_tsv(lang_path),
        pos_names=frozenset(n.lower() for n in raw["pos_names"]),
        relation_types=tuple(raw["relation_types"]),
        relation_headings=dict(raw["relation_headings"]),
        label_policy=TemplateRenderPolicy(dict(raw["label_templates"])),
        sense_templates=frozenset(raw["sense_templates"]),
        trans_top_templates=frozenset(raw["trans_top_templates"]),
        trans_bottom_templates=frozenset(raw["trans_bottom_templates"]),
        translation_templates=frozenset(raw["translation_templates"]),
        language_heading_level=int(raw.get("language_heading_level", 2)),
        language_heading_code_pattern=raw.get("language_heading_code_pattern"),
    )
    object.__setattr__(profile, "_dir", directory)
    return profile
