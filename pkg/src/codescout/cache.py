"""Single-file index cache: versioned JSON manifest plus length-prefixed sections.

Sections carry the stores themselves (dictionary counters, postings, entity
term lists, the co-occurrence CSR arrays with their term table, mined vdo
pairs) so a load is a restore, not a re-derivation.
"""

from __future__ import annotations

import json
import os
import struct
import zlib
from collections import Counter
from pathlib import Path
from typing import Optional

from codescout.cooccur import CooccurrenceMatrix
from codescout.ingest import SoftwareEntity
from codescout.search import IndexOptions, ProjectIndex, Snapshot
from codescout.vdo import VdoPair, VdoStore

MAGIC = b"CSCOUTIX"
SCHEMA_VERSION = 2

_LEN = struct.Struct("<I")
_SECTIONS = (
    "entities",
    "entity_terms",
    "entity_identifiers",
    "postings",
    "dictionary",
    "cooccurrence",
    "vdo",
)


class CacheError(Exception):
    """Base for cache problems; callers fall back to a full reindex."""


class CacheMiss(CacheError):
    """No cache file at the given path."""


class CacheInvalid(CacheError):
    """Unusable cache: bad magic, schema mismatch, truncation, or corruption."""


def _sections_payload(snap: Snapshot) -> dict[str, object]:
    matrix = snap.matrix
    return {
        "entities": [
            {
                "id": e.id,
                "kind": e.kind,
                "name": e.name,
                "body": e.body,
                "file": e.file,
                "line_start": e.line_start,
                "line_end": e.line_end,
            }
            for _, e in sorted(snap.entities.items())
        ],
        "entity_terms": snap.entity_terms,
        "entity_identifiers": {eid: dict(c) for eid, c in snap.entity_identifiers.items()},
        "postings": snap.postings,
        "dictionary": {
            "term_freq": dict(snap.term_freq),
            "entity_freq": dict(snap.entity_freq),
            "identifier_freq": dict(snap.identifier_freq),
        },
        "cooccurrence": {
            "terms": list(matrix.terms),
            "row_ptr": matrix.row_ptr,
            "col_idx": matrix.col_idx,
            "values": matrix.values,
        },
        "vdo": [[p.verb, p.object, p.support] for p in snap.vdo_store.pairs],
    }


def save_cache(index: ProjectIndex, path: str | Path) -> Path:
    """Persist every store of the current snapshot to one versioned file."""
    snap = index.snapshot
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "project_root": str(Path(index.root).resolve()),
        "generation": snap.generation,
        "file_hashes": snap.file_hashes,
        "sections": list(_SECTIONS),
    }
    sections = _sections_payload(snap)
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        blob = json.dumps(manifest).encode("utf-8")
        fh.write(_LEN.pack(len(blob)))
        fh.write(blob)
        for name in _SECTIONS:
            blob = zlib.compress(json.dumps(sections[name]).encode("utf-8"), level=1)
            fh.write(_LEN.pack(len(blob)))
            fh.write(blob)
    os.replace(tmp, path)
    return path


def _read_block(fh, what: str) -> bytes:
    header = fh.read(_LEN.size)
    if len(header) != _LEN.size:
        raise CacheInvalid(f"truncated cache: missing {what} length")
    (length,) = _LEN.unpack(header)
    blob = fh.read(length)
    if len(blob) != length:
        raise CacheInvalid(f"truncated cache: short {what}")
    return blob


def read_manifest(path: str | Path) -> dict:
    """Manifest header only (cheap staleness checks before a full load)."""
    path = Path(path)
    if not path.exists():
        raise CacheMiss(f"no cache at {path}")
    with open(path, "rb") as fh:
        if fh.read(len(MAGIC)) != MAGIC:
            raise CacheInvalid("bad magic")
        try:
            manifest = json.loads(_read_block(fh, "manifest"))
        except (ValueError, UnicodeDecodeError) as err:
            raise CacheInvalid(f"unreadable manifest: {err}") from None
    if manifest.get("schema_version") != SCHEMA_VERSION:
        raise CacheInvalid(
            f"schema version {manifest.get('schema_version')!r} != {SCHEMA_VERSION}"
        )
    return manifest


def _restore_snapshot(manifest: dict, payload: dict, options: IndexOptions) -> Snapshot:
    snap = Snapshot(manifest["generation"], options)
    try:
        for record in payload["entities"]:
            entity = SoftwareEntity(**record)
            snap.entities[entity.id] = entity
            snap.file_entities.setdefault(entity.file, []).append(entity.id)
        snap.file_hashes = dict(manifest["file_hashes"])
        snap.entity_terms = {eid: list(terms) for eid, terms in payload["entity_terms"].items()}
        snap.entity_identifiers = {
            eid: Counter(counts) for eid, counts in payload["entity_identifiers"].items()
        }
        snap.postings = {
            term: dict(entries) for term, entries in payload["postings"].items()
        }
        snap.entity_tf = {
            eid: Counter({t: snap.postings[t][eid] for t in terms})
            for eid, terms in snap.entity_terms.items()
        }
        dictionary = payload["dictionary"]
        snap.term_freq = Counter(dictionary["term_freq"])
        snap.entity_freq = Counter(dictionary["entity_freq"])
        snap.identifier_freq = Counter(dictionary["identifier_freq"])

        matrix = payload["cooccurrence"]
        terms = tuple(matrix["terms"])
        row_ptr, col_idx, values = matrix["row_ptr"], matrix["col_idx"], matrix["values"]
        rows: dict[str, dict[str, int]] = {}
        for i, term in enumerate(terms):
            for pos in range(row_ptr[i], row_ptr[i + 1]):
                j = col_idx[pos]
                if j > i:  # canonical upper triangle; diagonal is entity_freq
                    rows.setdefault(term, {})[terms[j]] = values[pos]
        snap.pair_rows = rows
        snap._matrix = CooccurrenceMatrix(
            terms, {t: i for i, t in enumerate(terms)}, row_ptr, col_idx, values
        )
        snap._vdo_store = VdoStore(
            VdoPair(verb, obj, support) for verb, obj, support in payload["vdo"]
        )
    except (KeyError, TypeError, AttributeError) as err:
        raise CacheInvalid(f"inconsistent cache contents: {err!r}") from None
    return snap


def load_cache(
    path: str | Path,
    options: Optional[IndexOptions] = None,
    expected_root: Optional[str | Path] = None,
) -> ProjectIndex:
    """Reload a cached index; observationally equal to the index that saved it.

    Raises CacheMiss / CacheInvalid when the cache must be rejected, in which
    case the caller performs a full reindex.
    """
    manifest = read_manifest(path)
    if expected_root is not None:
        if str(Path(expected_root).resolve()) != manifest.get("project_root"):
            raise CacheInvalid("cache belongs to a different project root")
    with open(path, "rb") as fh:
        fh.read(len(MAGIC))
        _read_block(fh, "manifest")
        payload = {}
        for name in manifest.get("sections", _SECTIONS):
            try:
                payload[name] = json.loads(zlib.decompress(_read_block(fh, name)))
            except (ValueError, zlib.error) as err:
                raise CacheInvalid(f"corrupt section {name}: {err}") from None
    for name in _SECTIONS:
        if name not in payload:
            raise CacheInvalid(f"missing section {name}")

    options = options or IndexOptions()
    snapshot = _restore_snapshot(manifest, payload, options)
    return ProjectIndex(manifest["project_root"], options, snapshot)
