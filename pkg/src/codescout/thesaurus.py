"""Synonym stores: field-specific (software engineering) and general English."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

SE = "se"
GENERAL = "general"

GENERAL_FREQUENCY_CAP = 100_000

_TERM_RE = re.compile(r"[a-z0-9]+\Z")


class ThesaurusFormatError(ValueError):
    """Raised for malformed thesaurus files; the message lists line numbers."""


def load_frequency_list(path: Optional[str | Path] = None, cap: int = GENERAL_FREQUENCY_CAP) -> frozenset[str]:
    """First ``cap`` terms of a rank-ordered frequency file (one per line)."""
    if path is None:
        text = resources.files("codescout").joinpath("data", "frequency_list.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    terms = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip().lower()
        if line:
            terms.append(line)
        if len(terms) >= cap:
            break
    return frozenset(terms)


@dataclass
class Thesaurus:
    """Symmetric term relation with optional relatedness weights in (0, 1]."""

    kind: str
    _partners: dict[str, list[tuple[str, float]]] = field(default_factory=dict, repr=False)

    def _add(self, a: str, b: str, weight: float) -> bool:
        existing = self._partners.get(a, [])
        if any(p == b for p, _ in existing):
            return False
        self._partners.setdefault(a, []).append((b, weight))
        self._partners.setdefault(b, []).append((a, weight))
        return True

    def _finalize(self) -> None:
        for partners in self._partners.values():
            partners.sort(key=lambda pw: (-pw[1], pw[0]))

    def synonym_weights(self, term: str) -> list[tuple[str, float]]:
        """Partners of a term with weights, descending weight then lexicographic."""
        return list(self._partners.get(term.lower(), []))

    def synonyms(self, term: str) -> list[str]:
        return [p for p, _ in self.synonym_weights(term)]

    def __len__(self) -> int:
        return sum(len(v) for v in self._partners.values()) // 2

    def terms(self) -> set[str]:
        return set(self._partners)


def synonyms(thesaurus: Thesaurus, term: str) -> list[str]:
    return thesaurus.synonyms(term)


def _parse_line(line: str) -> tuple[str, str, float]:
    fields = [f.strip().lower() for f in line.split(",")]
    if len(fields) == 2:
        a, b = fields
        weight = 1.0
    elif len(fields) == 3:
        a, b = fields[0], fields[1]
        weight = float(fields[2])  # ValueError propagates to the caller
    else:
        raise ValueError("expected 'termA,termB[,weight]'")
    if not _TERM_RE.fullmatch(a) or not _TERM_RE.fullmatch(b):
        raise ValueError("terms must be nonempty lowercase letters/digits")
    if a == b:
        raise ValueError("self-pairs are not allowed")
    if not 0.0 < weight <= 1.0:
        raise ValueError("weight must be in (0, 1]")
    return a, b, weight


def load_thesaurus(
    path: str | Path,
    kind: str,
    frequency_list: Optional[frozenset[str]] = None,
) -> Thesaurus:
    """Load and symmetrize a pair-per-line CSV thesaurus.

    Malformed lines raise one error listing every offending line number. A
    general-English store keeps only pairs whose terms both appear in the
    frequency list (bundled by default), mirroring the top-100k memory cap.
    """
    text = Path(path).read_text(encoding="utf-8")
    if kind == GENERAL and frequency_list is None:
        frequency_list = load_frequency_list()
    store = Thesaurus(kind=kind)
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            a, b, weight = _parse_line(line)
        except ValueError as err:
            errors.append(f"line {lineno}: {err} ({raw.strip()!r})")
            continue
        if kind == GENERAL and (a not in frequency_list or b not in frequency_list):
            continue
        store._add(a, b, weight)
    if errors:
        raise ThesaurusFormatError(f"malformed thesaurus {path}:\n  " + "\n  ".join(errors))
    store._finalize()
    return store


def bundled_thesaurus_path(kind: str) -> Path:
    name = "se_thesaurus.csv" if kind == SE else "general_thesaurus.csv"
    return Path(str(resources.files("codescout").joinpath("data", name)))
