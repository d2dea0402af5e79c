"""Local HTTP service exposing indexing, search, and recommendations."""

from __future__ import annotations

import errno
import logging
import sys
import time
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from codescout import wire
from codescout.project import Config, Project
from codescout.watch import Watcher

log = logging.getLogger(__name__)

_FRONTEND_DIST = Path(__file__).resolve().parents[2] / "frontend" / "dist"


class IndexRequest(BaseModel):
    root: Optional[str] = None


def create_app(project: Project, watch: bool = False, watch_interval: Optional[float] = None) -> FastAPI:
    """Wire the API around an open project; optionally start the watcher."""
    watcher = None
    if watch:
        watcher = Watcher(
            project.config.root,
            on_change=lambda paths: project.index.refresh_paths(paths),
            include_globs=project.config.include,
            exclude_globs=project.config.exclude,
            **({"interval": watch_interval} if watch_interval else {}),
        )

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        if watcher is not None:
            watcher.start()
        yield
        if watcher is not None:
            watcher.stop()

    app = FastAPI(title="codescout", version="0.1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.project = project
    app.state.watcher = watcher

    @app.get("/api/search")
    def api_search(q: str = Query(default=""), k: int = Query(default=10, ge=1)):
        snapshot = project.index.snapshot
        return wire.search_payload(snapshot, snapshot.search(q, k))

    @app.get("/api/presearch")
    def api_presearch(q: str = Query(default=""), k: int = Query(default=10, ge=1)):
        recommender = project.recommender()
        return wire.presearch_payload(recommender.snapshot, recommender.presearch(q, k))

    @app.get("/api/postsearch")
    def api_postsearch(q: str = Query(default=""), k: int = Query(default=10, ge=1)):
        recommender = project.recommender()
        return wire.postsearch_payload(recommender.snapshot, recommender.postsearch(q, k))

    @app.post("/api/index")
    def api_index(body: IndexRequest):
        started = time.perf_counter()
        if body.root:
            project.config.root = Path(body.root)
        project.reindex_full()
        project.save_cache()
        snapshot = project.index.snapshot
        return {
            "generation": snapshot.generation,
            "entity_count": snapshot.doc_count,
            "term_count": len(snapshot.entity_freq),
            "elapsed_ms": (time.perf_counter() - started) * 1000.0,
        }

    @app.get("/api/status")
    def api_status():
        snapshot = project.index.snapshot
        return {
            "generation": snapshot.generation,
            "doc_count": snapshot.doc_count,
            "term_count": len(snapshot.entity_freq),
            "cache_path": str(project.config.cache_path),
        }

    if _FRONTEND_DIST.is_dir():

        @app.get("/")
        def index_page():
            return FileResponse(_FRONTEND_DIST / "index.html")

        app.mount("/", StaticFiles(directory=_FRONTEND_DIST), name="frontend")

    return app


def serve(config: Config, host: str = "127.0.0.1", watch: bool = True, use_cache: bool = True) -> None:
    """Open the project (cache or full build) and run the HTTP service.

    A port already in use is fatal with a clear message and nonzero exit.
    """
    import uvicorn

    project = Project.open(config, use_cache=use_cache)
    project.save_cache()
    app = create_app(project, watch=watch)
    try:
        uvicorn.run(app, host=host, port=config.port, log_level="warning")
    except OSError as err:
        if err.errno in (errno.EADDRINUSE, errno.EACCES):
            print(f"error: port {config.port} is unavailable: {err}", file=sys.stderr)
            raise SystemExit(1) from None
        raise
