"""Shared fixtures: the hand-annotated mini project, thesauri, corpus builders."""

from __future__ import annotations

import json
import random
import shutil
import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from codescout.ingest import SoftwareEntity, scan_project, extract_entities
from codescout.search import ProjectIndex
from codescout.thesaurus import GENERAL, SE, bundled_thesaurus_path, load_thesaurus

FIXTURES = Path(__file__).parent / "fixtures"
MINIPROJ = FIXTURES / "miniproj"


@pytest.fixture(scope="session")
def annotations() -> dict:
    return json.loads((FIXTURES / "miniproj_annotations.json").read_text())


@pytest.fixture(scope="session")
def miniproj_files():
    return scan_project(MINIPROJ)


@pytest.fixture(scope="session")
def miniproj_entities(miniproj_files):
    return [e for f in miniproj_files for e in extract_entities(f)]


@pytest.fixture(scope="session")
def miniproj_index() -> ProjectIndex:
    return ProjectIndex.index_full(MINIPROJ)


@pytest.fixture(scope="session")
def se_thesaurus():
    return load_thesaurus(bundled_thesaurus_path(SE), SE)


@pytest.fixture(scope="session")
def general_thesaurus():
    return load_thesaurus(bundled_thesaurus_path(GENERAL), GENERAL)


@pytest.fixture
def miniproj_copy(tmp_path) -> Path:
    target = tmp_path / "miniproj"
    shutil.copytree(MINIPROJ, target)
    return target


def make_entity(body: str, name: str = "", kind: str = "method", file: str = "synth.cs", eid: str = "") -> SoftwareEntity:
    lines = max(1, len(body.splitlines()))
    return SoftwareEntity(
        id=eid or f"{file}:1-{lines}:{kind}:{name}",
        kind=kind,
        name=name,
        body=body,
        file=file,
        line_start=1,
        line_end=lines,
    )


# Split-free, stop-word-free vocabulary for oracle corpora.
VOCAB = """alpha bravo charlie delta echo foxtrot golf hotel india juliet kilo lima
mike november oscar papa quebec romeo sierra tango victor whiskey yankee zulu
beta gamma epsilon zeta theta iota kappa lambada sigma omega""".split()


def random_corpus(rng: random.Random, max_entities: int = 30, max_terms: int = 20) -> list[SoftwareEntity]:
    entities = []
    for i in range(rng.randint(1, max_entities)):
        terms = rng.sample(VOCAB, rng.randint(1, min(max_terms, len(VOCAB))))
        body = " ".join(rng.choice(terms) for _ in range(rng.randint(len(terms), 3 * len(terms))))
        body = body + " " + " ".join(terms)  # every sampled term occurs at least once
        entities.append(make_entity(body, name=f"M{i}", eid=f"synth{i}.cs:1-1:method:M{i}", file=f"synth{i}.cs"))
    return entities


def corpus_term_sets(entities) -> list[set[str]]:
    from codescout.lexicon import tokenize_entity

    return [set(tokenize_entity(e)) for e in entities]


def corpus_tf(entities) -> dict[str, Counter]:
    from codescout.lexicon import entity_term_counts

    return {e.id: entity_term_counts(e) for e in entities}


def write_file(root: Path, rel: str, content: str) -> None:
    path = root / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)
