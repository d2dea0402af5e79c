"""Symmetric term co-occurrence counts in compressed sparse row layout."""

from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional

from codescout.ingest import SoftwareEntity
from codescout.lexicon import LocalDictionary, tokenize_entity


@dataclass
class CooccurrenceMatrix:
    """Canonical CSR storage: three integer arrays plus the term table.

    Rows and columns are the dictionary terms in sorted order. The diagonal
    stores each term's entity frequency; off-diagonal cells count the
    entities in which both terms appear.
    """

    terms: tuple[str, ...]
    term_index: dict[str, int] = field(repr=False)
    row_ptr: list[int] = field(repr=False)
    col_idx: list[int] = field(repr=False)
    values: list[int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def nnz(self) -> int:
        return len(self.col_idx)


def add_entity_pairs(rows: dict[str, dict[str, int]], term_set: Iterable[str], delta: int) -> None:
    """Apply one entity's unordered term pairs to the canonical row map.

    Rows store each pair once under its smaller term (a < b); symmetry is
    reconstructed when the CSR arrays are assembled. ``delta`` is +1 when
    the entity is added and -1 when removed; entries that reach zero are
    deleted so structural zeros never accumulate.
    """
    rows_get = rows.get
    for a, b in combinations(sorted(set(term_set)), 2):
        row = rows_get(a)
        if row is None:
            if delta > 0:
                rows[a] = {b: delta}
            continue
        count = row.get(b, 0) + delta
        if count > 0:
            row[b] = count
        else:
            row.pop(b, None)
            if not row:
                del rows[a]


def pair_delta(
    removed_term_sets: Iterable[Iterable[str]], added_term_sets: Iterable[Iterable[str]]
) -> dict[tuple[str, str], int]:
    """Net per-pair count change between two entity populations.

    Pairs are canonical (a < b); zero-net entries are dropped, so an edit
    that leaves most co-occurrence intact touches only the rows that moved.
    """
    net: Counter = Counter()
    for terms in added_term_sets:
        net.update(combinations(sorted(set(terms)), 2))
    removed: Counter = Counter()
    for terms in removed_term_sets:
        removed.update(combinations(sorted(set(terms)), 2))
    net.subtract(removed)
    return {pair: change for pair, change in net.items() if change}


def apply_pair_delta(rows: dict[str, dict[str, int]], delta: Mapping[tuple[str, str], int]) -> None:
    # Hot loop during incremental reindexing; kept flat on purpose.
    rows_get = rows.get
    for (a, b), change in delta.items():
        row = rows_get(a)
        if row is None:
            if change > 0:
                rows[a] = {b: change}
            continue
        count = row.get(b, 0) + change
        if count > 0:
            row[b] = count
        else:
            row.pop(b, None)
            if not row:
                del rows[a]


def matrix_from_counts(
    diagonal: Mapping[str, int], rows: Mapping[str, Mapping[str, int]]
) -> CooccurrenceMatrix:
    """Assemble canonical CSR arrays from the diagonal and canonical pair rows."""
    terms = tuple(sorted(diagonal))
    term_index = {t: i for i, t in enumerate(terms)}
    per_row: list[list[tuple[int, int]]] = [[(i, diagonal[t])] for i, t in enumerate(terms)]
    for a, partners in rows.items():
        ia = term_index[a]
        for b, count in partners.items():
            ib = term_index[b]
            per_row[ia].append((ib, count))
            per_row[ib].append((ia, count))
    row_ptr = [0]
    col_idx: list[int] = []
    values: list[int] = []
    for entries in per_row:
        entries.sort()
        for j, count in entries:
            col_idx.append(j)
            values.append(count)
        row_ptr.append(len(col_idx))
    return CooccurrenceMatrix(terms, term_index, row_ptr, col_idx, values)


def build_matrix(
    entities: Iterable[SoftwareEntity],
    dictionary: LocalDictionary,
    stopwords: Optional[frozenset[str]] = None,
) -> CooccurrenceMatrix:
    """Count per-entity co-occurrence over a corpus already in the dictionary."""
    rows: dict[str, dict[str, int]] = {}
    for entity in entities:
        add_entity_pairs(rows, tokenize_entity(entity, stopwords), +1)
    return matrix_from_counts(dictionary.entity_freq, rows)


def cooccur_count(m: CooccurrenceMatrix, a: str, b: str) -> int:
    """Stored count for a pair; 0 for unknown terms or never-paired terms."""
    i = m.term_index.get(a)
    j = m.term_index.get(b)
    if i is None or j is None:
        return 0
    lo, hi = m.row_ptr[i], m.row_ptr[i + 1]
    pos = bisect.bisect_left(m.col_idx, j, lo, hi)
    if pos < hi and m.col_idx[pos] == j:
        return m.values[pos]
    return 0


def top_cooccurring(m: CooccurrenceMatrix, term: str, k: int) -> list[tuple[str, int]]:
    """Off-diagonal neighbors by count descending, ties lexicographic."""
    i = m.term_index.get(term)
    if i is None:
        return []
    lo, hi = m.row_ptr[i], m.row_ptr[i + 1]
    neighbors = [
        (m.terms[m.col_idx[pos]], m.values[pos]) for pos in range(lo, hi) if m.col_idx[pos] != i
    ]
    neighbors.sort(key=lambda item: (-item[1], item[0]))
    return neighbors[:k]
