"""Verb–direct-object pair mining from method names."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from codescout.ingest import SoftwareEntity
from codescout.lexicon import split_parts


@dataclass(frozen=True)
class VdoPair:
    """An action/object concept such as ("open", "file")."""

    verb: str
    object: str
    support: int


def load_verb_lexicon(path: Optional[str | Path] = None) -> frozenset[str]:
    """Verb list, one per line, ``#`` comments allowed; bundled by default."""
    if path is None:
        text = resources.files("codescout").joinpath("data", "verbs.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    verbs = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            verbs.add(line.lower())
    return frozenset(verbs)


def mine_pairs(entities: Iterable[SoftwareEntity], verb_lexicon: frozenset[str]) -> list[VdoPair]:
    """Mine pairs from method names whose first part is a known verb.

    The remaining name parts join into the object ("SaveFileAs" yields
    ("save", "file as")); identical pairs aggregate into support counts.
    """
    counts: Counter = Counter()
    for entity in entities:
        if entity.kind != "method":
            continue
        parts = split_parts(entity.name)
        if len(parts) >= 2 and parts[0] in verb_lexicon:
            counts[(parts[0], " ".join(parts[1:]))] += 1
    return [VdoPair(verb, obj, support) for (verb, obj), support in sorted(counts.items())]


class VdoStore:
    """Mined pairs indexed for completion in both directions."""

    def __init__(self, pairs: Iterable[VdoPair]):
        self.pairs = list(pairs)
        self._by_verb: dict[str, list[VdoPair]] = {}
        self._by_object_word: dict[str, list[VdoPair]] = {}
        for pair in self.pairs:
            self._by_verb.setdefault(pair.verb, []).append(pair)
            for word in pair.object.split():
                self._by_object_word.setdefault(word, []).append(pair)

    def __len__(self) -> int:
        return len(self.pairs)

    @classmethod
    def from_entities(
        cls, entities: Iterable[SoftwareEntity], verb_lexicon: frozenset[str]
    ) -> "VdoStore":
        return cls(mine_pairs(entities, verb_lexicon))


def complete_vdo(store: VdoStore, term: str) -> list[VdoPair]:
    """Pairs whose verb is the term plus pairs whose object contains it,
    by support descending, ties lexicographic."""
    t = term.lower()
    seen = set()
    matches = []
    for pair in store._by_verb.get(t, []) + store._by_object_word.get(t, []):
        key = (pair.verb, pair.object)
        if key not in seen:
            seen.add(key)
            matches.append(pair)
    matches.sort(key=lambda p: (-p.support, p.verb, p.object))
    return matches
