"""JSON payload shapes shared by the HTTP API and the CLI's --json output."""

from __future__ import annotations

from typing import Sequence

from codescout.recommend import PreSearchBundle, Recommendation
from codescout.search import SearchResult, Snapshot


def search_payload(snapshot: Snapshot, results: Sequence[SearchResult]) -> dict:
    return {
        "generation": snapshot.generation,
        "results": [
            {
                "id": r.entity.id,
                "kind": r.entity.kind,
                "name": r.entity.name,
                "file": r.entity.file,
                "line_start": r.entity.line_start,
                "line_end": r.entity.line_end,
                "score": r.score,
                "snippet_lines": r.snippet_lines,
            }
            for r in results
        ],
    }


def _recommendation_item(rec: Recommendation) -> dict:
    item = {"text": rec.text, "source": rec.source, "weight": rec.weight}
    if rec.replaces is not None:
        item["replaces"] = rec.replaces
    return item


def presearch_payload(snapshot: Snapshot, bundle: PreSearchBundle) -> dict:
    return {
        "generation": snapshot.generation,
        "vdo": [_recommendation_item(r) for r in bundle.vdo],
        "identifiers": [_recommendation_item(r) for r in bundle.identifiers],
        "cloud": [{"term": term, "count": count, "bucket": bucket} for term, count, bucket in bundle.cloud],
    }


def postsearch_payload(snapshot: Snapshot, recommendations: Sequence[Recommendation]) -> dict:
    return {
        "generation": snapshot.generation,
        "recommendations": [
            {"text": r.text, "source": r.source, "replaces": r.replaces} for r in recommendations
        ],
    }
