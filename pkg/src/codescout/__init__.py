"""Local code search with query recommendations.

Indexes a source tree into class/method/field entities, recommends query
completions before a search (verb-object pairs, identifier prefixes,
co-occurring terms), and repairs failed queries afterwards (synonyms, then
typo correction), always restricted to terms the codebase actually contains.
"""

from codescout.ingest import SoftwareEntity, SourceFile, extract_entities, scan_project
from codescout.lexicon import LocalDictionary, build_dictionary, split_identifier, tokenize_entity
from codescout.cooccur import CooccurrenceMatrix, build_matrix, cooccur_count, top_cooccurring
from codescout.vdo import VdoPair, VdoStore, complete_vdo, mine_pairs
from codescout.thesaurus import Thesaurus, load_thesaurus, synonyms
from codescout.search import IndexOptions, ProjectIndex, SearchResult, Snapshot
from codescout.recommend import PreSearchBundle, Recommendation, Recommender, correct_typo
from codescout.project import Config, Project, load_config

__version__ = "0.1.0"

__all__ = [
    "Config",
    "CooccurrenceMatrix",
    "IndexOptions",
    "LocalDictionary",
    "PreSearchBundle",
    "Project",
    "ProjectIndex",
    "Recommendation",
    "Recommender",
    "SearchResult",
    "Snapshot",
    "SoftwareEntity",
    "SourceFile",
    "Thesaurus",
    "VdoPair",
    "VdoStore",
    "build_dictionary",
    "build_matrix",
    "complete_vdo",
    "cooccur_count",
    "correct_typo",
    "extract_entities",
    "load_config",
    "load_thesaurus",
    "mine_pairs",
    "scan_project",
    "split_identifier",
    "synonyms",
    "tokenize_entity",
    "top_cooccurring",
]
