"""Identifier splitting, the local term dictionary, and query segmentation."""

from __future__ import annotations

import bisect
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from codescout.ingest import SoftwareEntity, classify_language

# Identifier-shaped tokens; also picks up words inside strings and comments.
_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# Camel-case / digit-boundary parts within one separator-free run.
# Acronym runs stay together until a trailing lowercase starts a new word.
_PART_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")

_STOPWORD_FILES = {
    "c-family": "stopwords_cfamily.txt",
    "plain-text": "stopwords_text.txt",
}


def _read_data_file(name: str) -> str:
    return resources.files("codescout").joinpath("data", name).read_text(encoding="utf-8")


def load_stopword_file(path: str | Path) -> frozenset[str]:
    """Read a stop-word file: one token per line, ``#`` comments allowed."""
    words = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=None)
def default_stopwords(language: str) -> frozenset[str]:
    filename = _STOPWORD_FILES.get(language, _STOPWORD_FILES["plain-text"])
    words = set()
    for raw in _read_data_file(filename).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.add(line.lower())
    return frozenset(words)


def stopwords_for(language: str, override: Optional[frozenset[str]] = None) -> frozenset[str]:
    return override if override is not None else default_stopwords(language)


@lru_cache(maxsize=65536)
def split_parts(identifier: str) -> tuple[str, ...]:
    """Split one identifier into lowercase parts at underscores, case and digit boundaries."""
    parts: list[str] = []
    for run in identifier.split("_"):
        if run:
            parts.extend(m.group(0).lower() for m in _PART_RE.finditer(run))
    return tuple(parts)


def split_identifier(identifier: str) -> list[str]:
    """Split an identifier into terms; multi-part names also yield the whole
    identifier (lowercased, separators dropped) as a compound term."""
    parts = list(split_parts(identifier))
    if len(parts) >= 2:
        parts.append("".join(parts))
    return parts


def _term_stream(body: str, stopwords: frozenset[str]) -> Iterable[tuple[str, list[str]]]:
    """Yield (raw token, split terms) for every surviving token of a body."""
    for match in _WORD_RE.finditer(body):
        token = match.group(0)
        if token.lower() in stopwords:
            continue
        terms = split_identifier(token)
        if terms:
            yield token, terms


def analyze_entity(
    entity: SoftwareEntity, stopwords: Optional[frozenset[str]] = None
) -> tuple[list[str], Counter, Counter]:
    """Single-pass lexing of an entity body.

    Returns the deduplicated term list (first-occurrence order), the term
    multiplicity counter, and the raw-identifier counter (original casing).
    """
    stop = stopwords_for(classify_language(entity.file), stopwords)
    ordered: list[str] = []
    seen: set[str] = set()
    counts: Counter = Counter()
    identifiers: Counter = Counter()
    for token, terms in _term_stream(entity.body, stop):
        identifiers[token] += 1
        for term in terms:
            counts[term] += 1
            if term not in seen:
                seen.add(term)
                ordered.append(term)
    if entity.name and entity.name not in identifiers:
        # Declaration names are identifiers even when the body lexer drops them.
        identifiers[entity.name] = 1
    return ordered, counts, identifiers


def tokenize_entity(entity: SoftwareEntity, stopwords: Optional[frozenset[str]] = None) -> list[str]:
    """Terms of one entity, deduplicated, in first-occurrence order."""
    return analyze_entity(entity, stopwords)[0]


def entity_term_counts(entity: SoftwareEntity, stopwords: Optional[frozenset[str]] = None) -> Counter:
    """Term multiplicities of one entity (feeds corpus term frequencies)."""
    return analyze_entity(entity, stopwords)[1]


def tokenize_query(text: str) -> list[str]:
    """Lex and split a query with the indexing rules, minus stop-word removal.

    Keywords were never indexed, so filtering them from queries would only
    hide terms that exist as identifier parts (e.g. "event").
    """
    ordered: list[str] = []
    seen: set[str] = set()
    for match in _WORD_RE.finditer(text):
        for term in split_identifier(match.group(0)):
            if term not in seen:
                seen.add(term)
                ordered.append(term)
    return ordered


def line_terms(line: str) -> set[str]:
    """All terms derivable from one line of text (used for snippet matching)."""
    terms: set[str] = set()
    for match in _WORD_RE.finditer(line):
        terms.update(split_identifier(match.group(0)))
    return terms


@dataclass
class LocalDictionary:
    """Deduplicated term store with frequencies and prefix lookup.

    ``terms`` is sorted, so membership and prefix ranges are O(log n);
    ``identifiers`` keeps original casing, sorted by lowercased form.
    """

    terms: list[str] = field(default_factory=list)
    term_freq: Counter = field(default_factory=Counter)
    entity_freq: Counter = field(default_factory=Counter)
    identifiers: list[str] = field(default_factory=list)
    identifier_freq: Counter = field(default_factory=Counter)
    _lowered: list[str] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if not self._lowered:
            self._lowered = [ident.lower() for ident in self.identifiers]

    @classmethod
    def from_counts(
        cls, term_freq: Counter, entity_freq: Counter, identifier_freq: Counter
    ) -> "LocalDictionary":
        identifiers = sorted(identifier_freq, key=lambda s: (s.lower(), s))
        return cls(
            terms=sorted(term_freq),
            term_freq=term_freq,
            entity_freq=entity_freq,
            identifiers=identifiers,
            identifier_freq=identifier_freq,
        )

    def __len__(self) -> int:
        return len(self.terms)

    def contains(self, term: str) -> bool:
        i = bisect.bisect_left(self.terms, term)
        return i < len(self.terms) and self.terms[i] == term

    def __contains__(self, term: str) -> bool:
        return self.contains(term)

    def prefix_complete(self, prefix: str, k: int) -> list[str]:
        """Identifiers whose lowercased form starts with the prefix, by
        frequency descending then lexicographic, truncated to k."""
        p = prefix.lower()
        lo = bisect.bisect_left(self._lowered, p)
        matches = []
        for i in range(lo, len(self.identifiers)):
            if not self._lowered[i].startswith(p):
                break
            matches.append(self.identifiers[i])
        matches.sort(key=lambda ident: (-self.identifier_freq[ident], ident))
        return matches[:k]

    def segment_token(self, token: str) -> Optional[list[str]]:
        """Greedy longest-prefix segmentation of one token against the
        dictionary; None when any residue is not covered."""
        t = token.lower()
        if self.contains(t):
            return [t]
        parts: list[str] = []
        pos = 0
        while pos < len(t):
            match = self._longest_prefix_term(t, pos)
            if match is None:
                return None
            parts.append(match)
            pos += len(match)
        return parts

    def _longest_prefix_term(self, text: str, pos: int) -> Optional[str]:
        for end in range(len(text), pos, -1):
            candidate = text[pos:end]
            if self.contains(candidate):
                return candidate
        return None

    def segment_query(self, query: str) -> tuple[list[str], list[str]]:
        """Split a query into dictionary-known terms and unknown raw tokens."""
        known: list[str] = []
        unknown: list[str] = []
        for token in query.split():
            parts = self.segment_token(token)
            if parts is None:
                unknown.append(token)
            else:
                known.extend(parts)
        return known, unknown


def build_dictionary(
    entities: Iterable[SoftwareEntity], stopwords: Optional[frozenset[str]] = None
) -> LocalDictionary:
    """Union of all entity term sets with corpus-wide frequencies."""
    term_freq: Counter = Counter()
    entity_freq: Counter = Counter()
    identifier_freq: Counter = Counter()
    for entity in entities:
        terms, counts, identifiers = analyze_entity(entity, stopwords)
        term_freq.update(counts)
        entity_freq.update(terms)
        identifier_freq.update(identifiers)
    return LocalDictionary.from_counts(term_freq, entity_freq, identifier_freq)
