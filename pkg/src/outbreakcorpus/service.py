"""Read-only HTTP/JSON API over an index snapshot.

The only shared state is a SnapshotHolder: one attribute holding the
current immutable index. Each request reads it exactly once, so a swap
mid-request cannot mix two snapshots in one response.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse

from .config import ServiceConfig
from .errors import QuerySyntaxError
from .indexing import CorpusIndex
from .querylang import parse_query
from .searching import FACET_NAMES, highlight, search

MAX_PAGE_SIZE = 100


class SnapshotHolder:
    """Atomically replaceable reference to the current index snapshot."""

    def __init__(self, index: Optional[CorpusIndex] = None):
        self._index = index

    def get(self) -> Optional[CorpusIndex]:
        return self._index

    def swap(self, index: CorpusIndex) -> None:
        self._index = index


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message, **extra})


def _loading() -> JSONResponse:
    return JSONResponse(status_code=503, content={"status": "loading"})


def _region_string(region) -> str:
    _page, x, y, w, h = region
    return f"{x},{y},{w},{h}"


def _snippets(index, doc_id, ast):
    out = []
    for mark in highlight(index, doc_id, ast):
        out.append({
            "text": mark.text,
            "page": mark.regions[0][0] if mark.regions else None,
            "regions": [_region_string(r) for r in mark.regions],
        })
    return out


def create_app(holder: SnapshotHolder,
               config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="outbreak corpus search", docs_url=None, redoc_url=None)
    if config.cors_origin:
        app.add_middleware(CORSMiddleware, allow_origins=[config.cors_origin],
                           allow_methods=["GET"], allow_headers=["*"])

    @app.get("/healthz")
    def healthz():
        index = holder.get()
        if index is None:
            return _loading()
        return {"status": "ok", "index_version": index.index_version}

    @app.get("/search")
    def do_search(q: str = "", page: int = 1, size: int = 10, facets: str = ""):
        index = holder.get()
        if index is None:
            return _loading()
        requested = [name for name in facets.split(",") if name] if facets else []
        for name in requested:
            if name not in FACET_NAMES:
                return _error(422, f"unknown facet: {name!r}")
        if page < 1 or size < 1 or size > MAX_PAGE_SIZE:
            return _error(400, "page must be >= 1 and 1 <= size <= 100")
        try:
            ast = parse_query(q)
        except QuerySyntaxError as exc:
            return _error(400, str(exc), position=exc.position)
        result = search(index, ast, page=page, page_size=size)
        wanted = requested or list(FACET_NAMES)
        return {
            "total": result.total,
            "index_version": index.index_version,
            "hits": [{
                "doc_id": hit.doc_id,
                "title": hit.title,
                "year": hit.year,
                "score": hit.score,
                "snippets": _snippets(index, hit.doc_id, ast),
            } for hit in result.hits],
            "facets": {name: result.facets[name] for name in wanted},
        }

    @app.get("/documents/{doc_id}/search")
    def in_document_search(doc_id: str, q: str = ""):
        index = holder.get()
        if index is None:
            return _loading()
        if not index.has_document(doc_id):
            return _error(404, f"unknown document: {doc_id!r}")
        try:
            ast = parse_query(q)
        except QuerySyntaxError as exc:
            return _error(400, str(exc), position=exc.position)
        doc = index.document(doc_id)
        resources = []
        for mark in highlight(index, doc_id, ast):
            resources.append({
                "match": doc.text[mark.char_start:mark.char_end],
                "page": mark.regions[0][0] if mark.regions else None,
                "region": _region_string(mark.regions[0]) if mark.regions else None,
                "char_start": mark.char_start,
                "char_end": mark.char_end,
            })
        return {"resources": resources, "index_version": index.index_version}

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str):
        index = holder.get()
        if index is None:
            return _loading()
        if not index.has_document(doc_id):
            return _error(404, f"unknown document: {doc_id!r}")
        doc = index.document(doc_id)
        return {
            "doc_id": doc.doc_id,
            "title": doc.title,
            "year": doc.year,
            "main_location": doc.main_location,
            "language": doc.language,
            "zones": [{"label": label, "start": start, "end": end, "page": page}
                      for label, start, end, page in doc.zones],
            "entity_counts": dict(sorted(doc.entity_counts.items())),
            "entity_total": doc.entity_total,
            "index_version": index.index_version,
        }

    @app.get("/pages/{doc_id}/{page}.png")
    def get_page_image(doc_id: str, page: int):
        if not config.page_image_dir:
            return _error(404, "page images not configured")
        path = Path(config.page_image_dir) / doc_id / f"{page}.png"
        if not path.is_file():
            return _error(404, "page image not found")
        return FileResponse(path, media_type="image/png")

    return app
