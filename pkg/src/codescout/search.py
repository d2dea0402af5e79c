"""Inverted index over entity term sets, ranking, and incremental updates."""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from codescout import cooccur, vdo
from codescout.ingest import (
    DEFAULT_INCLUDE,
    SoftwareEntity,
    SourceFile,
    extract_entities,
    read_source_file,
    scan_project,
)
from codescout.lexicon import LocalDictionary, analyze_entity, line_terms, tokenize_query


@dataclass
class IndexOptions:
    """Knobs shared by full and incremental indexing."""

    include_globs: Sequence[str] = DEFAULT_INCLUDE
    exclude_globs: Sequence[str] = ()
    stopwords: Optional[frozenset[str]] = None
    verb_lexicon: frozenset[str] = field(default_factory=vdo.load_verb_lexicon)


@dataclass
class SearchResult:
    """One ranked hit: the entity plus how and where it matched."""

    entity: SoftwareEntity
    score: float
    matched_terms: list[str]
    snippet_lines: list[str]


EntityAnalysis = tuple[list[str], Counter, Counter]  # terms, tf, identifiers


class Snapshot:
    """All stores for one index generation; never mutated after publication."""

    def __init__(self, generation: int, options: IndexOptions):
        self.generation = generation
        self.options = options
        self.entities: dict[str, SoftwareEntity] = {}
        self.file_entities: dict[str, list[str]] = {}
        self.file_hashes: dict[str, str] = {}
        self.entity_terms: dict[str, list[str]] = {}
        self.entity_tf: dict[str, Counter] = {}
        self.entity_identifiers: dict[str, Counter] = {}
        self.postings: dict[str, dict[str, int]] = {}
        self.term_freq: Counter = Counter()
        self.entity_freq: Counter = Counter()
        self.identifier_freq: Counter = Counter()
        self.pair_rows: dict[str, dict[str, int]] = {}
        self._dictionary: Optional[LocalDictionary] = None
        self._matrix: Optional[cooccur.CooccurrenceMatrix] = None
        self._vdo_store: Optional[vdo.VdoStore] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, files: Iterable[SourceFile], options: IndexOptions, generation: int = 1) -> "Snapshot":
        snap = cls(generation, options)
        for file in files:
            snap._add_file(file)
        return snap

    def _analyze(self, entity: SoftwareEntity) -> EntityAnalysis:
        return analyze_entity(entity, self.options.stopwords)

    def _add_file(
        self,
        file: SourceFile,
        analyses: Optional[dict[str, EntityAnalysis]] = None,
        update_pairs: bool = True,
    ) -> None:
        eids = []
        for entity in extract_entities(file):
            analysis = analyses.get(entity.id) if analyses else None
            self._add_entity(entity, analysis, update_pairs=update_pairs)
            eids.append(entity.id)
        self.file_entities[file.path] = eids
        self.file_hashes[file.path] = file.content_hash

    def _add_entity(
        self, entity: SoftwareEntity, analysis: Optional[EntityAnalysis] = None, update_pairs: bool = True
    ) -> None:
        terms, tf, identifiers = analysis if analysis is not None else self._analyze(entity)
        eid = entity.id
        self.entities[eid] = entity
        self.entity_terms[eid] = terms
        self.entity_tf[eid] = tf
        self.entity_identifiers[eid] = identifiers
        self.term_freq.update(tf)
        self.identifier_freq.update(identifiers)
        for term in terms:
            self.entity_freq[term] += 1
            self.postings.setdefault(term, {})[eid] = tf[term]
        if update_pairs:
            cooccur.add_entity_pairs(self.pair_rows, terms, +1)

    def _remove_entity(self, eid: str, update_pairs: bool = True) -> None:
        terms = self.entity_terms.pop(eid)
        tf = self.entity_tf.pop(eid)
        identifiers = self.entity_identifiers.pop(eid)
        del self.entities[eid]
        self.term_freq.subtract(tf)
        self.identifier_freq.subtract(identifiers)
        for counter, keys in ((self.term_freq, tf), (self.identifier_freq, identifiers)):
            for key in keys:
                if counter[key] <= 0:
                    del counter[key]
        for term in terms:
            self.entity_freq[term] -= 1
            if self.entity_freq[term] <= 0:
                del self.entity_freq[term]
            post = self.postings[term]
            post.pop(eid, None)
            if not post:
                del self.postings[term]
        if update_pairs:
            cooccur.add_entity_pairs(self.pair_rows, terms, -1)

    # -- copy-on-write incremental update ----------------------------------

    def apply_changes(
        self, changed: Sequence[SourceFile] = (), removed_paths: Sequence[str] = ()
    ) -> "Snapshot":
        """Derive the next generation; shared structure is copied only where
        the change touches it, so readers of this snapshot are unaffected."""
        changed = [f for f in changed if self.file_hashes.get(f.path) != f.content_hash]
        removed_paths = [p for p in removed_paths if p in self.file_entities]
        new = Snapshot(self.generation + 1, self.options)
        if not changed and not removed_paths:
            self._share_into(new)
            return new

        new.entities = dict(self.entities)
        new.file_entities = dict(self.file_entities)
        new.file_hashes = dict(self.file_hashes)
        new.entity_terms = dict(self.entity_terms)
        new.entity_tf = dict(self.entity_tf)
        new.entity_identifiers = dict(self.entity_identifiers)
        new.postings = dict(self.postings)
        new.term_freq = self.term_freq.copy()
        new.entity_freq = self.entity_freq.copy()
        new.identifier_freq = self.identifier_freq.copy()
        new.pair_rows = dict(self.pair_rows)

        new_analyses: dict[str, dict[str, EntityAnalysis]] = {}
        affected_terms: set[str] = set()
        removed_term_sets: list[list[str]] = []
        added_term_sets: list[list[str]] = []
        for path in list(removed_paths) + [f.path for f in changed]:
            for eid in self.file_entities.get(path, ()):
                removed_term_sets.append(self.entity_terms[eid])
                affected_terms.update(self.entity_terms[eid])
        for file in changed:
            per_file: dict[str, EntityAnalysis] = {}
            for entity in extract_entities(file):
                analysis = analyze_entity(entity, self.options.stopwords)
                per_file[entity.id] = analysis
                added_term_sets.append(analysis[0])
                affected_terms.update(analysis[0])
            new_analyses[file.path] = per_file

        for term in affected_terms:
            if term in new.postings:
                new.postings[term] = dict(new.postings[term])

        # Pair counts move by net delta, so rows untouched by the edit are
        # shared with the previous snapshot instead of copied. Rows are
        # canonical: a pair lives under its smaller term only.
        delta = cooccur.pair_delta(removed_term_sets, added_term_sets)
        copied: set[str] = set()
        for a, _ in delta:
            if a not in copied and a in new.pair_rows:
                new.pair_rows[a] = dict(new.pair_rows[a])
                copied.add(a)
        cooccur.apply_pair_delta(new.pair_rows, delta)

        for path in removed_paths:
            for eid in list(new.file_entities.get(path, ())):
                new._remove_entity(eid, update_pairs=False)
            new.file_entities.pop(path, None)
            new.file_hashes.pop(path, None)
        for file in changed:
            for eid in list(new.file_entities.get(file.path, ())):
                new._remove_entity(eid, update_pairs=False)
            new._add_file(file, new_analyses[file.path], update_pairs=False)
        return new

    def _share_into(self, other: "Snapshot") -> None:
        for name in (
            "entities",
            "file_entities",
            "file_hashes",
            "entity_terms",
            "entity_tf",
            "entity_identifiers",
            "postings",
            "term_freq",
            "entity_freq",
            "identifier_freq",
            "pair_rows",
            "_dictionary",
            "_matrix",
            "_vdo_store",
        ):
            setattr(other, name, getattr(self, name))

    # -- derived stores (built on demand, cached per generation) ------------

    @property
    def doc_count(self) -> int:
        return len(self.entities)

    @property
    def dictionary(self) -> LocalDictionary:
        if self._dictionary is None:
            self._dictionary = LocalDictionary.from_counts(
                self.term_freq, self.entity_freq, self.identifier_freq
            )
        return self._dictionary

    @property
    def matrix(self) -> cooccur.CooccurrenceMatrix:
        if self._matrix is None:
            self._matrix = cooccur.matrix_from_counts(self.entity_freq, self.pair_rows)
        return self._matrix

    @property
    def vdo_store(self) -> vdo.VdoStore:
        if self._vdo_store is None:
            self._vdo_store = vdo.VdoStore.from_entities(
                self.entities.values(), self.options.verb_lexicon
            )
        return self._vdo_store

    # -- querying ------------------------------------------------------------

    def search(self, query: str, k: int = 10) -> list[SearchResult]:
        """Rank entities matching any query term by summed tf-idf."""
        terms = tokenize_query(query)
        scores: dict[str, float] = {}
        matched: dict[str, list[str]] = {}
        for term in terms:
            post = self.postings.get(term)
            if not post:
                continue
            idf = math.log(1.0 + self.doc_count / len(post))
            for eid, tf in post.items():
                scores[eid] = scores.get(eid, 0.0) + tf * idf
                matched.setdefault(eid, []).append(term)
        ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))[:k]
        results = []
        for eid, score in ranked:
            entity = self.entities[eid]
            matched_terms = matched[eid]
            results.append(
                SearchResult(
                    entity=entity,
                    score=score,
                    matched_terms=matched_terms,
                    snippet_lines=_snippet_lines(entity, matched_terms),
                )
            )
        return results


def _snippet_lines(entity: SoftwareEntity, matched_terms: Sequence[str]) -> list[str]:
    wanted = set(matched_terms)
    return [line for line in entity.body.splitlines() if line_terms(line) & wanted]


class ProjectIndex:
    """Facade owning the current snapshot; one writer, many readers.

    Queries read whichever snapshot is published; writers derive the next
    snapshot under a lock and publish it atomically.
    """

    def __init__(self, root: str | Path, options: IndexOptions, snapshot: Snapshot):
        self.root = Path(root)
        self.options = options
        self._snapshot = snapshot
        self._write_lock = threading.Lock()

    @classmethod
    def index_full(cls, root: str | Path, options: Optional[IndexOptions] = None) -> "ProjectIndex":
        """Scan, extract, and populate every store into generation 1."""
        options = options or IndexOptions()
        files = scan_project(root, options.include_globs, options.exclude_globs)
        return cls(root, options, Snapshot.build(files, options))

    @property
    def snapshot(self) -> Snapshot:
        return self._snapshot

    @property
    def generation(self) -> int:
        return self._snapshot.generation

    @property
    def doc_count(self) -> int:
        return self._snapshot.doc_count

    def search(self, query: str, k: int = 10) -> list[SearchResult]:
        return self._snapshot.search(query, k)

    def index_incremental(self, changed: SourceFile) -> Snapshot:
        """Replace one file's contribution to every store; unknown files are
        additions. Publishes and returns the next generation."""
        return self.apply_changes(changed=[changed])

    def remove_file(self, path: str) -> Snapshot:
        """Drop a deleted file's entities from every store."""
        return self.apply_changes(removed=[path])

    def apply_changes(
        self, changed: Sequence[SourceFile] = (), removed: Sequence[str] = ()
    ) -> Snapshot:
        with self._write_lock:
            new = self._snapshot.apply_changes(changed, removed)
            self._snapshot = new
        return new

    def refresh_paths(self, relpaths: Iterable[str]) -> Snapshot:
        """Re-read the given project-relative paths from disk and fold them
        in; files that are gone (or no longer match) are removed."""
        changed: list[SourceFile] = []
        removed: list[str] = []
        for rel in sorted(set(relpaths)):
            try:
                changed.append(read_source_file(self.root, rel))
            except (OSError, ValueError):
                removed.append(rel)
        return self.apply_changes(changed=changed, removed=removed)
