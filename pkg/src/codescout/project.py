"""Project configuration and the index + thesauri bundle behind CLI and service."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from codescout import cache as cache_io
from codescout.ingest import DEFAULT_INCLUDE, scan_project
from codescout.lexicon import load_stopword_file
from codescout.recommend import Recommender
from codescout.search import IndexOptions, ProjectIndex
from codescout.thesaurus import (
    GENERAL,
    SE,
    Thesaurus,
    bundled_thesaurus_path,
    load_frequency_list,
    load_thesaurus,
)
from codescout.vdo import load_verb_lexicon

log = logging.getLogger(__name__)

DEFAULT_PORT = 7420
CACHE_FILENAME = ".codescout.cache"

_LIST_KEYS = {"include", "exclude"}
_KNOWN_KEYS = {
    "root",
    "port",
    "include",
    "exclude",
    "se_thesaurus",
    "general_thesaurus",
    "verb_lexicon",
    "stopwords",
    "cache",
    "frequency_list",
}


@dataclass
class Config:
    """Resolved settings for one project; file values override defaults."""

    root: Path = Path(".")
    port: int = DEFAULT_PORT
    include: Sequence[str] = DEFAULT_INCLUDE
    exclude: Sequence[str] = ()
    se_thesaurus: Optional[Path] = None
    general_thesaurus: Optional[Path] = None
    verb_lexicon: Optional[Path] = None
    stopwords: Optional[Path] = None
    cache: Optional[Path] = None
    frequency_list: Optional[Path] = None

    @property
    def cache_path(self) -> Path:
        return self.cache if self.cache is not None else self.root / CACHE_FILENAME

    def index_options(self) -> IndexOptions:
        return IndexOptions(
            include_globs=tuple(self.include),
            exclude_globs=tuple(self.exclude),
            stopwords=load_stopword_file(self.stopwords) if self.stopwords else None,
            verb_lexicon=load_verb_lexicon(self.verb_lexicon),
        )


def load_config(path: str | Path) -> Config:
    """Parse a ``key = value`` config file (# comments, blank lines allowed)."""
    config = Config()
    base = Path(path).resolve().parent
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KNOWN_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key == "port":
            config.port = int(value)
        elif key in _LIST_KEYS:
            setattr(config, key, tuple(v.strip() for v in value.split(",") if v.strip()))
        elif key == "root":
            config.root = (base / value).resolve() if not Path(value).is_absolute() else Path(value)
        else:
            resolved = (base / value) if not Path(value).is_absolute() else Path(value)
            setattr(config, key, resolved)
    return config


class Project:
    """An open project: index, thesauri, and recommendation entry points."""

    def __init__(self, config: Config, index: ProjectIndex, se: Thesaurus, general: Thesaurus):
        self.config = config
        self.index = index
        self.se_thesaurus = se
        self.general_thesaurus = general

    @classmethod
    def open(cls, config: Config, use_cache: bool = True, force_full: bool = False) -> "Project":
        """Load from cache when possible, refresh stale files incrementally,
        otherwise index from scratch."""
        options = config.index_options()
        index: Optional[ProjectIndex] = None
        if use_cache and not force_full:
            try:
                index = cache_io.load_cache(config.cache_path, options, expected_root=config.root)
            except cache_io.CacheMiss:
                pass
            except cache_io.CacheInvalid as err:
                log.warning("rejecting index cache (%s); reindexing", err)
        if index is not None:
            stale = cls._stale_paths(config, index)
            if stale:
                index.refresh_paths(stale)
        else:
            index = ProjectIndex.index_full(config.root, options)
        frequency = load_frequency_list(config.frequency_list) if config.frequency_list else None
        se = load_thesaurus(config.se_thesaurus or bundled_thesaurus_path(SE), SE)
        general = load_thesaurus(
            config.general_thesaurus or bundled_thesaurus_path(GENERAL), GENERAL, frequency
        )
        return cls(config, index, se, general)

    @staticmethod
    def _stale_paths(config: Config, index: ProjectIndex) -> list[str]:
        cached = index.snapshot.file_hashes
        on_disk = {
            f.path: f.content_hash
            for f in scan_project(config.root, config.include, config.exclude)
        }
        stale = {path for path in cached.keys() | on_disk.keys() if cached.get(path) != on_disk.get(path)}
        return sorted(stale)

    def save_cache(self) -> Path:
        return cache_io.save_cache(self.index, self.config.cache_path)

    def recommender(self) -> Recommender:
        return Recommender(self.index.snapshot, self.se_thesaurus, self.general_thesaurus)

    def reindex_full(self) -> None:
        """Rebuild from scratch into a fresh generation (used by POST /api/index)."""
        options = self.config.index_options()
        rebuilt = ProjectIndex.index_full(self.config.root, options)
        old = self.index
        rebuilt._snapshot.generation = old.generation + 1
        self.index = rebuilt
