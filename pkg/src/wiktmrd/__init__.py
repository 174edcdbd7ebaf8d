"""Wiktionary entry wikitext to a relational machine-readable dictionary."""

from .dump import RawPage, filter_main, stream_pages
from .exchange import export_store, import_store
from .extractors import extract_definitions, extract_relations, extract_translations, match_sense
from .pipeline import extract_page, run_pipeline
from .registry import LanguageInfo, Profile, load_profile
from .segmenter import LangPosKey, segment_etymologies, segment_languages, segment_pos
from .store import MrdStore
from .wikitext import (
    TemplateRenderPolicy,
    scan_headings,
    scan_internal_links,
    scan_list_items,
    scan_templates,
    strip_markup,
)

__version__ = "0.1.0"
