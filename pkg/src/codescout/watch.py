"""Polling project watcher feeding incremental reindexes."""

from __future__ import annotations

import logging
import threading
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

from codescout.ingest import DEFAULT_INCLUDE, GlobSet

log = logging.getLogger(__name__)

DEFAULT_INTERVAL = 2.0  # poll fallback cadence; no native watcher dependency
DEFAULT_DEBOUNCE = 0.2


class Watcher:
    """Scans the tree for (mtime, size) changes and batches them.

    Events quiet for the debounce window are flushed to ``on_change`` as one
    sorted batch of project-relative paths (created, modified, and deleted
    alike; the consumer re-reads from disk and treats missing as removal).
    """

    def __init__(
        self,
        root: str | Path,
        on_change: Callable[[list[str]], None],
        include_globs: Optional[Sequence[str]] = None,
        exclude_globs: Optional[Sequence[str]] = None,
        interval: float = DEFAULT_INTERVAL,
        debounce: float = DEFAULT_DEBOUNCE,
    ):
        self.root = Path(root)
        self.on_change = on_change
        self.include = GlobSet(include_globs if include_globs is not None else DEFAULT_INCLUDE)
        self.exclude = GlobSet(exclude_globs or ())
        self.interval = interval
        self.debounce = debounce
        self._seen = self._scan()
        self._pending: set[str] = set()
        self._last_event = 0.0
        self._stop = threading.Event()
        self._thread: Optional[threading.Thread] = None

    def _scan(self) -> dict[str, tuple[int, int]]:
        state = {}
        for path in self.root.rglob("*"):
            if not path.is_file():
                continue
            rel = path.relative_to(self.root).as_posix()
            if not self.include.matches(rel) or self.exclude.matches(rel):
                continue
            try:
                stat = path.stat()
            except OSError:
                continue
            state[rel] = (stat.st_mtime_ns, stat.st_size)
        return state

    def poll_once(self) -> list[str]:
        """One scan-diff-flush step; returns the batch flushed (if any)."""
        current = self._scan()
        changed = {
            rel
            for rel in current.keys() | self._seen.keys()
            if current.get(rel) != self._seen.get(rel)
        }
        if changed:
            self._pending.update(changed)
            self._last_event = time.monotonic()
        self._seen = current
        if self._pending and time.monotonic() - self._last_event >= self.debounce:
            batch = sorted(self._pending)
            self._pending.clear()
            try:
                self.on_change(batch)
            except Exception:
                log.exception("change handler failed for %s", batch)
            return batch
        return []

    def _run(self) -> None:
        quantum = min(self.interval, self.debounce, 0.05)
        next_scan = 0.0
        while not self._stop.is_set():
            now = time.monotonic()
            if now >= next_scan or self._pending:
                self.poll_once()
                next_scan = now + self.interval
            self._stop.wait(quantum)

    def start(self) -> None:
        if self._thread is None:
            self._thread = threading.Thread(target=self._run, name="codescout-watcher", daemon=True)
            self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None
