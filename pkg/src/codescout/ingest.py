"""Project scanning and heuristic entity extraction for C-family sources."""

from __future__ import annotations

import bisect
import hashlib
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

log = logging.getLogger(__name__)

C_FAMILY = "c-family"
PLAIN_TEXT = "plain-text"

C_FAMILY_EXTENSIONS = {".cs", ".c", ".h", ".cpp", ".hpp", ".cc", ".hh", ".cxx", ".hxx"}

DEFAULT_INCLUDE = ("*.cs", "*.c", "*.h", "*.cpp", "*.hpp", "*.txt")

_CLASS_RE = re.compile(r"\b(class|struct|interface|enum)\s+([A-Za-z_]\w*)")
_METHOD_HEAD_RE = re.compile(r"([A-Za-z_]\w*)\s*(?:<[\w\s,<>\[\]]*>)?\s*\(")
_BEFORE_METHOD_RE = re.compile(r"(\bnew\b|\breturn\b|\.|=>|->)\s*\Z")

# Identifiers that look like calls or control flow, never method declarations.
_NOT_METHOD_NAMES = frozenset(
    """if for foreach while switch catch using lock return new delete sizeof
    typeof nameof throw do else case default goto defined assert""".split()
)

_FIELD_SKIP_TOKENS = frozenset(
    """return break continue using goto throw case delete typedef
    else do public private protected internal""".split()
)


@dataclass(frozen=True)
class SourceFile:
    """One file of a project snapshot."""

    path: str
    language: str
    content: str
    content_hash: str


@dataclass(frozen=True)
class SoftwareEntity:
    """A class, method, or field declaration; the unit of indexing."""

    id: str
    kind: str  # class | method | field | fragment
    name: str
    body: str
    file: str
    line_start: int
    line_end: int


def content_digest(text: str) -> str:
    """64-bit content digest, stable across runs."""
    return hashlib.blake2b(text.encode("utf-8"), digest_size=8).hexdigest()


def classify_language(path: str) -> str:
    suffix = Path(path).suffix.lower()
    return C_FAMILY if suffix in C_FAMILY_EXTENSIONS else PLAIN_TEXT


def glob_to_regex(pattern: str) -> re.Pattern:
    """Compile a ``**``/``*`` glob. Patterns without ``/`` match basenames."""
    out = []
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if ch == "*":
            if pattern[i : i + 3] == "**/":
                out.append(r"(?:.*/)?")
                i += 3
                continue
            if pattern[i : i + 2] == "**":
                out.append(r".*")
                i += 2
                continue
            out.append(r"[^/]*")
        elif ch == "?":
            out.append(r"[^/]")
        else:
            out.append(re.escape(ch))
        i += 1
    return re.compile("".join(out) + r"\Z")


class GlobSet:
    """Matcher over several glob patterns."""

    def __init__(self, patterns: Iterable[str]):
        self._entries = [(glob_to_regex(p), "/" not in p) for p in patterns]

    def matches(self, relpath: str) -> bool:
        name = relpath.rsplit("/", 1)[-1]
        return any(pat.fullmatch(name if on_name else relpath) for pat, on_name in self._entries)


def scan_project(
    root: str | Path,
    include_globs: Optional[Sequence[str]] = None,
    exclude_globs: Optional[Sequence[str]] = None,
) -> list[SourceFile]:
    """Walk a project tree and load every matching file, sorted by path.

    Unreadable individual files are skipped with a warning log record;
    an unreadable root is fatal.
    """
    rootpath = Path(root)
    if not rootpath.is_dir():
        raise FileNotFoundError(f"project root not readable: {root}")
    include = GlobSet(include_globs if include_globs is not None else DEFAULT_INCLUDE)
    exclude = GlobSet(exclude_globs or ())
    files = []
    for path in rootpath.rglob("*"):
        if not path.is_file():
            continue
        rel = path.relative_to(rootpath).as_posix()
        if not include.matches(rel) or exclude.matches(rel):
            continue
        try:
            content = path.read_text(encoding="utf-8", errors="replace")
        except OSError as err:
            log.warning("skipping unreadable file %s: %s", rel, err)
            continue
        files.append(
            SourceFile(
                path=rel,
                language=classify_language(rel),
                content=content,
                content_hash=content_digest(content),
            )
        )
    files.sort(key=lambda f: f.path)
    return files


def read_source_file(root: str | Path, relpath: str) -> SourceFile:
    """Load one project file by relative path (for incremental reindexing)."""
    content = (Path(root) / relpath).read_text(encoding="utf-8", errors="replace")
    return SourceFile(
        path=relpath,
        language=classify_language(relpath),
        content=content,
        content_hash=content_digest(content),
    )


def _blank_strings_and_comments(text: str) -> str:
    """Replace comment and string interiors with spaces, preserving newlines.

    Offsets stay stable, so spans computed on the cleaned text apply to the
    original. Handles //, /* */, "..." (with escapes), '...', and @"..."
    verbatim strings; unterminated quotes stop at end of line.
    """
    out = list(text)
    i, n = 0, len(text)
    NORMAL, LINE, BLOCK, DQ, SQ, VERBATIM = range(6)
    state = NORMAL
    while i < n:
        ch = text[i]
        if state == NORMAL:
            if ch == "/" and i + 1 < n and text[i + 1] == "/":
                state = LINE
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if ch == "/" and i + 1 < n and text[i + 1] == "*":
                state = BLOCK
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if ch == "@" and i + 1 < n and text[i + 1] == '"':
                state = VERBATIM
                out[i] = out[i + 1] = " "
                i += 2
                continue
            if ch == '"':
                state = DQ
                out[i] = " "
            elif ch == "'":
                state = SQ
                out[i] = " "
            i += 1
        elif state == LINE:
            if ch == "\n":
                state = NORMAL
            else:
                out[i] = " "
            i += 1
        elif state == BLOCK:
            if ch == "*" and i + 1 < n and text[i + 1] == "/":
                out[i] = out[i + 1] = " "
                state = NORMAL
                i += 2
                continue
            if ch != "\n":
                out[i] = " "
            i += 1
        elif state in (DQ, SQ):
            quote = '"' if state == DQ else "'"
            if ch == "\\" and i + 1 < n:
                out[i] = " "
                if text[i + 1] != "\n":
                    out[i + 1] = " "
                i += 2
                continue
            if ch == quote or ch == "\n":
                state = NORMAL
            if ch != "\n":
                out[i] = " "
            i += 1
        else:  # VERBATIM: "" escapes a quote
            if ch == '"':
                if i + 1 < n and text[i + 1] == '"':
                    out[i] = out[i + 1] = " "
                    i += 2
                    continue
                state = NORMAL
            if ch != "\n":
                out[i] = " "
            i += 1
    return "".join(out)


class _Layout:
    """Line offsets plus brace and paren pairing over cleaned text."""

    def __init__(self, clean: str):
        self.clean = clean
        self.line_offsets = [0]
        for m in re.finditer("\n", clean):
            self.line_offsets.append(m.end())
        self.brace_match: dict[int, int] = {}
        self.paren_match: dict[int, int] = {}
        self.balanced = self._pair("{", "}", self.brace_match)
        self._pair("(", ")", self.paren_match)

    def _pair(self, open_ch: str, close_ch: str, table: dict[int, int]) -> bool:
        stack: list[int] = []
        ok = True
        for i, ch in enumerate(self.clean):
            if ch == open_ch:
                stack.append(i)
            elif ch == close_ch:
                if not stack:
                    ok = False
                    continue
                table[stack.pop()] = i
        return ok and not stack

    def line_of(self, offset: int) -> int:
        return bisect.bisect_right(self.line_offsets, offset)

    def line_span_slice(self, text: str, start_offset: int, end_offset: int) -> tuple[str, int, int]:
        """Original-text slice covering the full lines of [start, end]."""
        first = self.line_of(start_offset)
        last = self.line_of(end_offset)
        lo = self.line_offsets[first - 1]
        hi = self.line_offsets[last] - 1 if last < len(self.line_offsets) else len(text)
        return text[lo:hi], first, last


def _fragment(file: SourceFile) -> SoftwareEntity:
    lines = max(1, len(file.content.splitlines()))
    return SoftwareEntity(
        id=f"{file.path}:1-{lines}:fragment:",
        kind="fragment",
        name="",
        body=file.content,
        file=file.path,
        line_start=1,
        line_end=lines,
    )


def _find_classes(
    file: SourceFile, clean: str, layout: _Layout, text: str
) -> tuple[list[SoftwareEntity], list[tuple[int, int]]]:
    entities = []
    braces = []
    for m in _CLASS_RE.finditer(clean):
        open_brace = clean.find("{", m.end())
        if open_brace < 0 or open_brace not in layout.brace_match:
            continue
        if ";" in clean[m.end() : open_brace]:
            continue  # forward declaration; the brace belongs to something else
        close_brace = layout.brace_match[open_brace]
        body, first, last = layout.line_span_slice(text, m.start(), close_brace)
        braces.append((open_brace, close_brace))
        entities.append(
            SoftwareEntity(
                id="",
                kind="class",
                name=m.group(2),
                body=body,
                file=file.path,
                line_start=first,
                line_end=last,
            )
        )
    return entities, braces


def _find_methods(file: SourceFile, clean: str, layout: _Layout, text: str) -> list[SoftwareEntity]:
    entities = []
    for head in _METHOD_HEAD_RE.finditer(clean):
        open_paren = head.end() - 1
        close_paren = layout.paren_match.get(open_paren)
        if close_paren is None:
            continue
        name = head.group(1)
        if name.lower() in _NOT_METHOD_NAMES:
            continue
        if _BEFORE_METHOD_RE.search(clean, max(0, head.start(1) - 64), head.start(1)):
            continue
        after = close_paren + 1
        while after < len(clean) and clean[after].isspace():
            after += 1
        if after >= len(clean) or clean[after] != "{":
            continue
        body_close = layout.brace_match.get(after)
        if body_close is None:
            continue
        body, first, last = layout.line_span_slice(text, head.start(1), body_close)
        entities.append(
            SoftwareEntity(
                id="",
                kind="method",
                name=name,
                body=body,
                file=file.path,
                line_start=first,
                line_end=last,
            )
        )
    return entities


def _find_fields(
    file: SourceFile, clean: str, layout: _Layout, text: str, class_braces: list[tuple[int, int]]
) -> list[SoftwareEntity]:
    """Field statements at class level: ``type name [= expr];`` with no parens."""
    entities = []
    for open_brace, close_brace in class_braces:
        stmt_start = open_brace + 1
        i = open_brace + 1
        while i < close_brace:
            ch = clean[i]
            if ch == "{" and i in layout.brace_match:
                i = layout.brace_match[i] + 1
                stmt_start = i
                continue
            if ch == ";":
                entity = _field_from_statement(file, layout, text, clean[stmt_start:i], stmt_start, i)
                if entity is not None:
                    entities.append(entity)
                stmt_start = i + 1
            i += 1
    return entities


def _field_from_statement(
    file: SourceFile, layout: _Layout, text: str, stmt: str, start: int, end: int
) -> Optional[SoftwareEntity]:
    if "(" in stmt or ")" in stmt or not stmt.strip():
        return None
    decl = stmt.split("=", 1)[0]
    tokens = [t for t in re.findall(r"[A-Za-z_]\w*", decl) if t not in _FIELD_SKIP_TOKENS]
    if len(tokens) < 2:
        return None
    lead = len(stmt) - len(stmt.lstrip())
    body, first, last = layout.line_span_slice(text, start + lead, end)
    return SoftwareEntity(
        id="",
        kind="field",
        name=tokens[-1],
        body=body,
        file=file.path,
        line_start=first,
        line_end=last,
    )


def extract_entities(file: SourceFile) -> list[SoftwareEntity]:
    """Extract class/method/field entities from one file.

    Plain-text files become a single fragment entity. C-family files that
    cannot be brace-matched, or that yield no declarations at all, degrade
    to one fragment so every nonempty file stays searchable.
    """
    if not file.content.strip():
        return []
    if file.language != C_FAMILY:
        return [_fragment(file)]

    clean = _blank_strings_and_comments(file.content)
    layout = _Layout(clean)
    if not layout.balanced:
        return [_fragment(file)]

    classes, class_braces = _find_classes(file, clean, layout, file.content)
    methods = _find_methods(file, clean, layout, file.content)
    fields = _find_fields(file, clean, layout, file.content, class_braces)

    entities = classes + methods + fields
    if not entities:
        return [_fragment(file)]
    entities.sort(key=lambda e: (e.line_start, -e.line_end, e.kind, e.name))
    taken: set[str] = set()
    final = []
    for e in entities:
        eid = f"{file.path}:{e.line_start}-{e.line_end}:{e.kind}:{e.name}"
        if eid in taken:
            continue  # identical re-detection, drop
        taken.add(eid)
        final.append(
            SoftwareEntity(
                id=eid,
                kind=e.kind,
                name=e.name,
                body=e.body,
                file=e.file,
                line_start=e.line_start,
                line_end=e.line_end,
            )
        )
    return final
