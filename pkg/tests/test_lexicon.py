"""Identifier splitting, dictionary construction, prefix lookup, segmentation."""

from __future__ import annotations

import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codescout.lexicon import (
    build_dictionary,
    split_identifier,
    split_parts,
    tokenize_entity,
)

from conftest import VOCAB, make_entity, random_corpus
from oracles import prefix_scan

identifiers = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,24}", fullmatch=True).filter(
    lambda s: re.search(r"[A-Za-z0-9]", s)
)


class TestSplitIdentifier:
    @pytest.mark.parametrize(
        "identifier,expected",
        [
            ("FinishedEvent", ["finished", "event", "finishedevent"]),
            ("func", ["func"]),
            ("open_file", ["open", "file", "openfile"]),
            ("parse2Xml", ["parse", "2", "xml", "parse2xml"]),
            ("XMLParser", ["xml", "parser", "xmlparser"]),
            ("HTTPServer", ["http", "server", "httpserver"]),
            ("value", ["value"]),
            ("_private", ["private"]),
            ("A", ["a"]),
            ("snake_case_name", ["snake", "case", "name", "snakecasename"]),
        ],
    )
    def test_examples(self, identifier, expected):
        assert split_identifier(identifier) == expected

    @given(identifiers)
    def test_parts_partition_the_alphanumerics(self, identifier):
        parts = split_parts(identifier)
        assert "".join(parts) == "".join(ch for ch in identifier.lower() if ch.isalnum())
        assert all(parts)

    @given(identifiers)
    def test_parts_lowercase_without_separators(self, identifier):
        for part in split_parts(identifier):
            assert part == part.lower()
            assert "_" not in part and " " not in part

    @given(identifiers)
    def test_compound_only_for_multipart(self, identifier):
        parts = split_parts(identifier)
        terms = split_identifier(identifier)
        if len(parts) >= 2:
            assert terms == list(parts) + ["".join(parts)]
        else:
            assert terms == list(parts)


PERFORM_BODY = (
    "void Perform()\n{\n    var output = func.Invoke(input);\n"
    "    if(FinishedEvent != null)\n        FinishedEvent(this, output);\n}\n"
)
PERFORM_TERMS = {"perform", "output", "func", "invoke", "input", "finished", "event", "finishedevent"}


class TestTokenizeEntity:
    def test_perform_terms_exact(self):
        entity = make_entity(PERFORM_BODY, name="Perform")
        assert set(tokenize_entity(entity)) == PERFORM_TERMS

    def test_stop_word_removed(self):
        entity = make_entity("void X() { }", name="X")
        assert tokenize_entity(entity) == ["x"]

    def test_fixture_entity_matches_hand_tokens(self, miniproj_entities, annotations):
        parse_file = next(e for e in miniproj_entities if e.name == "ParseFile")
        assert tokenize_entity(parse_file) == annotations["parsefile_terms"]

    def test_first_occurrence_order_and_dedup(self):
        entity = make_entity("alpha beta alpha gamma beta", name="M")
        assert tokenize_entity(entity) == ["alpha", "beta", "gamma"]

    def test_string_and_comment_words_indexed(self):
        entity = make_entity('void F() { var s = "walrus token"; /* comment narwhal */ }', name="F")
        terms = set(tokenize_entity(entity))
        assert {"walrus", "token", "narwhal"} <= terms


class TestBuildDictionary:
    def test_empty(self):
        d = build_dictionary([])
        assert len(d) == 0
        assert d.prefix_complete("a", 5) == []

    def test_perform_dictionary(self):
        d = build_dictionary([make_entity(PERFORM_BODY, name="Perform")])
        assert set(d.terms) == PERFORM_TERMS
        assert len(d) == 8
        assert all(d.entity_freq[t] == 1 for t in d.terms)

    def test_matches_bruteforce_union(self):
        rng = random.Random(11)
        entities = random_corpus(rng, max_entities=50)
        d = build_dictionary(entities)
        union = set()
        for e in entities:
            union.update(tokenize_entity(e))
        assert set(d.terms) == union

    def test_order_insensitive(self):
        rng = random.Random(5)
        entities = random_corpus(rng, max_entities=25)
        shuffled = entities[:]
        rng.shuffle(shuffled)
        a, b = build_dictionary(entities), build_dictionary(shuffled)
        assert a.terms == b.terms
        assert a.term_freq == b.term_freq
        assert a.entity_freq == b.entity_freq
        assert a.identifier_freq == b.identifier_freq

    def test_freq_invariant(self, miniproj_entities):
        d = build_dictionary(miniproj_entities)
        for t in d.terms:
            assert d.term_freq[t] >= d.entity_freq[t] >= 1


class TestContains:
    def test_paper_term(self):
        d = build_dictionary([make_entity(PERFORM_BODY, name="Perform")])
        assert d.contains("finishedevent")
        assert "finishedevent" in d

    def test_empty_never_stored(self):
        d = build_dictionary([make_entity(PERFORM_BODY, name="Perform")])
        assert not d.contains("")

    def test_random_probes_match_linear_scan(self):
        rng = random.Random(23)
        entities = random_corpus(rng, max_entities=40)
        d = build_dictionary(entities)
        stored = set(d.terms)
        probes = list(stored) + [w + "x" for w in VOCAB] + ["", "zz", "alphabravo"]
        for probe in probes:
            assert d.contains(probe) == (probe in stored)


class TestPrefixComplete:
    def test_create_prefix(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        results = d.prefix_complete("create", 10)
        assert results
        assert all(r.lower().startswith("create") for r in results)
        assert {"CreateEntity", "CreateIndex"} <= set(results)

    def test_no_match(self, miniproj_index):
        assert miniproj_index.snapshot.dictionary.prefix_complete("zzzz", 5) == []

    def test_empty_prefix_returns_top_k(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        top = d.prefix_complete("", 3)
        assert len(top) == 3
        assert top == prefix_scan(d.identifier_freq, "", 3)

    def test_matches_linear_scan_oracle(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        for prefix in ("c", "create", "p", "parse", "Re", "OPEN", "x", ""):
            for k in (1, 3, 50):
                assert d.prefix_complete(prefix, k) == prefix_scan(d.identifier_freq, prefix, k), prefix

    def test_case_insensitive(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        assert d.prefix_complete("CREATE", 10) == d.prefix_complete("create", 10)


class TestSegmentQuery:
    @pytest.fixture
    def open_file_dict(self):
        return build_dictionary([make_entity("open file", name="M")])

    def test_whitespace_split(self, open_file_dict):
        known, unknown = open_file_dict.segment_query("open file")
        assert known == ["open", "file"]
        assert unknown == []

    def test_intra_token_segmentation(self, open_file_dict):
        # only "open" and "file" are indexed; the joined token still covers
        from oracles import has_full_cover

        assert has_full_cover(set(open_file_dict.terms), "openfile")
        known, unknown = open_file_dict.segment_query("openfile")
        assert known == ["open", "file"]
        assert unknown == []

    def test_unknown_token_intact(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        known, unknown = d.segment_query("choice")
        assert known == []
        assert unknown == ["choice"]

    def test_mixed(self, miniproj_index):
        d = miniproj_index.snapshot.dictionary
        known, unknown = d.segment_query("parse widgetry")
        assert known == ["parse"]
        assert unknown == ["widgetry"]

    def test_cover_property(self):
        rng = random.Random(3)
        entities = random_corpus(rng, max_entities=20)
        d = build_dictionary(entities)
        for _ in range(200):
            tokens = [rng.choice(VOCAB + ["qqq", "zzz9"]) for _ in range(rng.randint(1, 4))]
            known, unknown = d.segment_query(" ".join(tokens))
            segmentable = sum(1 for t in tokens if d.segment_token(t) is not None)
            assert len(unknown) == len(tokens) - segmentable
            for term in known:
                assert d.contains(term)
            for token in unknown:
                assert token in tokens

    @given(st.lists(st.sampled_from(VOCAB + ["zzz", "qq1"]), min_size=1, max_size=5))
    @settings(max_examples=50, deadline=None)
    def test_known_union_unknown_covers_tokens(self, tokens):
        d = build_dictionary([make_entity(" ".join(VOCAB[:10]), name="M")])
        query = " ".join(tokens)
        known, unknown = d.segment_query(query)
        # every token is accounted for: either contributed parts or kept intact
        assert len(unknown) + sum(1 for t in tokens if d.segment_token(t) is not None) == len(tokens)
        for term in known:
            assert d.contains(term)
