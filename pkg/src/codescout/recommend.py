"""Pre-search completions and post-search replacement recommendations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from codescout.cooccur import top_cooccurring
from codescout.lexicon import LocalDictionary
from codescout.search import Snapshot
from codescout.thesaurus import Thesaurus
from codescout.vdo import complete_vdo

SOURCE_VDO = "vdo"
SOURCE_IDENTIFIER = "identifier"
SOURCE_COOCCUR = "cooccur"
SOURCE_SE = "se-thesaurus"
SOURCE_GENERAL = "general-thesaurus"
SOURCE_TYPO = "typo"

CLOUD_BUCKETS = 5
TYPO_MAX_DISTANCE = 2


@dataclass
class Recommendation:
    """A proposed query or fragment with its source and ranking weight."""

    text: str
    source: str
    weight: float
    replaces: Optional[str] = None


@dataclass
class PreSearchBundle:
    """The three pre-search sources, kept separate for the UI."""

    vdo: list[Recommendation]
    identifiers: list[Recommendation]
    cloud: list[tuple[str, int, int]]  # term, count, font bucket 1-5


def bucketize(count: int, max_count: int) -> int:
    """Linear map of a co-occurrence count to font buckets 1..5."""
    if max_count <= 0 or count <= 0:
        return 0
    return 1 + (CLOUD_BUCKETS - 1) * count // max_count


def levenshtein(a: str, b: str, cutoff: Optional[int] = None) -> int:
    """Edit distance; may return cutoff+1 once the true distance exceeds it."""
    if a == b:
        return 0
    if cutoff is not None and abs(len(a) - len(b)) > cutoff:
        return cutoff + 1
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        best = i
        for j, cb in enumerate(b, 1):
            cost = min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            )
            current.append(cost)
            if cost < best:
                best = cost
        if cutoff is not None and best > cutoff:
            return cutoff + 1
        previous = current
    return previous[-1]


def _typo_candidates(dictionary: LocalDictionary, token: str, k: int) -> list[tuple[str, int]]:
    t = token.lower()
    found = []
    for term in dictionary.terms:
        if abs(len(term) - len(t)) > TYPO_MAX_DISTANCE:
            continue
        dist = levenshtein(t, term, cutoff=TYPO_MAX_DISTANCE)
        if dist <= TYPO_MAX_DISTANCE:
            found.append((term, dist))
    found.sort(key=lambda td: (td[1], -dictionary.term_freq[td[0]], td[0]))
    return found[:k]


def correct_typo(dictionary: LocalDictionary, token: str, k: int) -> list[str]:
    """Dictionary terms within edit distance 2, ranked by distance,
    then term frequency descending, then lexicographic."""
    return [term for term, _ in _typo_candidates(dictionary, token, k)]


class Recommender:
    """Stateless query recommendation over one index snapshot."""

    def __init__(
        self,
        snapshot: Snapshot,
        se_thesaurus: Thesaurus,
        general_thesaurus: Thesaurus,
    ):
        self.snapshot = snapshot
        self.se_thesaurus = se_thesaurus
        self.general_thesaurus = general_thesaurus

    # -- before the query ----------------------------------------------------

    def presearch(self, partial_input: str, k: int = 10) -> PreSearchBundle:
        """Completions for the last token typed: verb-object pairs,
        identifier prefixes, and the co-occurrence tag cloud."""
        tokens = partial_input.split()
        last = tokens[-1].lower() if tokens else ""
        dictionary = self.snapshot.dictionary

        vdo_recs = []
        cloud: list[tuple[str, int, int]] = []
        if last:
            for pair in complete_vdo(self.snapshot.vdo_store, last)[:k]:
                vdo_recs.append(
                    Recommendation(
                        text=f"{pair.verb} {pair.object}",
                        source=SOURCE_VDO,
                        weight=float(pair.support),
                    )
                )
            neighbors = top_cooccurring(self.snapshot.matrix, last, k)
            if neighbors:
                max_count = neighbors[0][1]
                cloud = [(term, count, bucketize(count, max_count)) for term, count in neighbors]

        identifier_recs = [
            Recommendation(
                text=ident,
                source=SOURCE_IDENTIFIER,
                weight=float(dictionary.identifier_freq[ident]),
            )
            for ident in dictionary.prefix_complete(last, k)
        ]
        return PreSearchBundle(vdo=vdo_recs, identifiers=identifier_recs, cloud=cloud)

    # -- after a failed query --------------------------------------------------

    def postsearch(self, failed_query: str, k: int = 10) -> list[Recommendation]:
        """Replacement queries for a failed search.

        Terms found in the local dictionary are never replaced. Each unknown
        token independently tries field-specific synonyms, then general
        synonyms, then typo corrections; every replacement term is guaranteed
        to appear in the codebase.
        """
        if self.snapshot.search(failed_query, 1):
            return []  # tolerated: the query was not actually a failure
        dictionary = self.snapshot.dictionary
        tokens = failed_query.split()
        segmented = [(token, dictionary.segment_token(token)) for token in tokens]

        recommendations: list[Recommendation] = []
        for position, (token, parts) in enumerate(segmented):
            if parts is not None:
                continue
            for replacement, weight, source in self._replacements_for(dictionary, token, k):
                text = self._rebuild(segmented, position, replacement)
                recommendations.append(
                    Recommendation(text=text, source=source, weight=weight, replaces=token)
                )
        return recommendations

    def _replacements_for(
        self, dictionary: LocalDictionary, token: str, k: int
    ) -> list[tuple[str, float, str]]:
        t = token.lower()
        for thesaurus, source in (
            (self.se_thesaurus, SOURCE_SE),
            (self.general_thesaurus, SOURCE_GENERAL),
        ):
            candidates = [
                (term, weight)
                for term, weight in thesaurus.synonym_weights(t)
                if dictionary.contains(term)
            ]
            if candidates:
                candidates.sort(key=lambda tw: (-tw[1], -dictionary.term_freq[tw[0]], tw[0]))
                return [(term, weight, source) for term, weight in candidates[:k]]
        return [
            (term, 1.0 / (1 + dist), SOURCE_TYPO)
            for term, dist in _typo_candidates(dictionary, token, k)
        ]

    @staticmethod
    def _rebuild(
        segmented: Sequence[tuple[str, Optional[list[str]]]], position: int, replacement: str
    ) -> str:
        pieces = []
        for i, (token, parts) in enumerate(segmented):
            if i == position:
                pieces.append(replacement)
            elif parts is not None:
                pieces.append(" ".join(parts))
            else:
                pieces.append(token)
        return " ".join(pieces)
