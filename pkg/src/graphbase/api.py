"""HTTP service: upload, retrieval, conversion, search, comparison.

Single documented JSON shape per endpoint; graph detail pages, properties
and images are readable without authentication (guest access), while every
mutating endpoint requires a bearer token unless the server runs in open
mode.  Uploads are answered before analysis finishes; a background worker
fills in properties and the SVG rendering.

Environment configuration: ``OGA_DATA_DIR``, ``OGA_LISTEN_ADDR``,
``OGA_OPEN_MODE``, ``OGA_VERTEX_THRESHOLD``.
"""

from __future__ import annotations

import os
from contextlib import asynccontextmanager
from dataclasses import dataclass, field as dataclass_field
from datetime import datetime
from pathlib import Path

from fastapi import Depends, FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import formats
from .analysis import BOOLEAN_PROPERTIES, NUMERIC_PROPERTIES, AnalysisConfig
from .errors import (CorruptArchive, DuplicateMember, FieldNotUserSettable,
                     FormatSyntaxError, GraphbaseError, InvalidTag, NotFound,
                     ParseFailed, UnknownFormat, UnknownProperty,
                     UnsupportedConstruct)
from .model import Metadata, Reference, Tag
from .store import (ArchiveStore, BooleanEquals, NumericRange, SearchQuery,
                    TagEquals, TextContains, UploadedBetween)
from .worker import AnalysisWorker

DEFAULT_LISTEN = "127.0.0.1:8747"


@dataclass
class ServiceConfig:
    data_dir: Path = dataclass_field(default_factory=lambda: Path("./data"))
    listen_addr: str = DEFAULT_LISTEN
    open_mode: bool = False
    vertex_threshold: int = 100_000
    time_budget: float | None = 60.0
    max_upload_bytes: int = 32 * 1024 * 1024
    layout_iterations: int = 500
    layout_max_nodes: int = 500
    worker_autostart: bool = True

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        cfg = cls()
        if "OGA_DATA_DIR" in os.environ:
            cfg.data_dir = Path(os.environ["OGA_DATA_DIR"])
        if "OGA_LISTEN_ADDR" in os.environ:
            cfg.listen_addr = os.environ["OGA_LISTEN_ADDR"]
        if "OGA_OPEN_MODE" in os.environ:
            cfg.open_mode = os.environ["OGA_OPEN_MODE"].lower() in (
                "1", "true", "yes", "on")
        if "OGA_VERTEX_THRESHOLD" in os.environ:
            cfg.vertex_threshold = int(os.environ["OGA_VERTEX_THRESHOLD"])
        return cfg


class UploadBody(BaseModel):
    content: str
    name: str
    creator: str
    format: str | None = None
    description: str | None = None
    creation_method: str | None = None
    license: str | None = None
    tags: list[str] = Field(default_factory=list)


class MetadataPatch(BaseModel):
    name: str | None = None
    description: str | None = None
    creation_method: str | None = None
    license: str | None = None
    tags: list[str] | None = None


class CommentBody(BaseModel):
    author: str
    text: str


class ReferenceBody(BaseModel):
    kind: str
    citation_or_url: str


class UserPropertiesBody(BaseModel):
    crossing_number: int


class CollectionBody(BaseModel):
    name: str
    description: str = ""


class MemberBody(BaseModel):
    graph_id: str


_SEARCH_PARAMS = {
    "tag", "q", "name", "creator", "description", "min_nodes", "max_nodes",
    "min_edges", "max_edges", "planar", "connected", "bipartite", "acyclic",
    "directed", "from", "to", "page", "page_size", "all",
}
_BOOL_PARAMS = {
    "planar": "is_planar", "connected": "is_connected",
    "bipartite": "is_bipartite", "acyclic": "is_acyclic",
    "directed": "directed",
}


def create_app(config: ServiceConfig | None = None,
               store: ArchiveStore | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        owned_store = store or ArchiveStore(config.data_dir)
        owned_store.reset_running_jobs()
        worker = AnalysisWorker(
            owned_store,
            AnalysisConfig(vertex_threshold=config.vertex_threshold,
                           time_budget=config.time_budget),
            layout_iterations=config.layout_iterations,
            layout_max_nodes=config.layout_max_nodes)
        app.state.store = owned_store
        app.state.worker = worker
        app.state.config = config
        if config.worker_autostart:
            worker.start()
        try:
            yield
        finally:
            worker.stop()
            if store is None:
                owned_store.close()

    app = FastAPI(title="graphbase", lifespan=lifespan)

    def get_store() -> ArchiveStore:
        return app.state.store

    def require_write(request: Request):
        if app.state.config.open_mode:
            return "open"
        header = request.headers.get("authorization", "")
        token = header.removeprefix("Bearer ").strip()
        owner = get_store().token_owner(token) if token else None
        if owner is None:
            raise _HttpError(401, "authentication required")
        return owner

    @app.exception_handler(GraphbaseError)
    async def _domain_error(request: Request, exc: GraphbaseError):
        return _error_response(exc)

    @app.exception_handler(_HttpErrorShim)
    async def _shim_error(request: Request, exc: "_HttpErrorShim"):
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.message})

    # --- graphs ----------------------------------------------------------

    @app.post("/graphs", status_code=201)
    def upload_graph(body: UploadBody, request: Request,
                     owner: str = Depends(require_write)):
        content = body.content.encode("utf-8")
        if len(content) > config.max_upload_bytes:
            raise _HttpError(413, "upload exceeds size limit")
        try:
            tags = frozenset(Tag(t) for t in body.tags)
            metadata = Metadata(name=body.name, creator=body.creator,
                                description=body.description,
                                creation_method=body.creation_method,
                                license=body.license, tags=tags)
        except ValueError as exc:
            raise _HttpError(400, str(exc))
        graph_id = get_store().put_graph(content, body.format, metadata)
        return {"id": graph_id, "uri": f"/graphs/{graph_id}",
                "status": "pending-analysis"}

    @app.get("/graphs/{graph_id}")
    def get_graph(graph_id: str):
        record = get_store().get_record(graph_id)
        md = record.metadata
        return {
            "id": record.id,
            "uri": f"/graphs/{record.id}",
            "status": record.status,
            "format": record.original_format,
            "analysis_error": record.analysis_error,
            "has_image": get_store().get_svg(graph_id) is not None,
            "metadata": {
                "name": md.name,
                "creator": md.creator,
                "uploaded_at": md.uploaded_at.isoformat(),
                "description": md.description,
                "creation_method": md.creation_method,
                "license": md.license,
                "tags": sorted(t.value for t in md.tags),
                "comments": [{"author": c.author,
                              "timestamp": c.timestamp.isoformat(),
                              "text": c.text} for c in md.comments],
                "references": [{"kind": r.kind,
                                "citation_or_url": r.citation_or_url}
                               for r in md.references],
            },
            "properties": record.properties.to_dict()
            if record.properties else None,
            "user_properties": record.user_properties,
        }

    @app.get("/graphs/{graph_id}/download")
    def download_graph(graph_id: str, format: str | None = None):
        data, original_fmt = get_store().get_original_bytes(graph_id)
        if format is None or format == original_fmt:
            report = formats.LossReport()
            out, fmt = data, original_fmt
        else:
            out, report = formats.convert(data, original_fmt, format)
            fmt = format
        headers = {
            "Content-Disposition":
                f'attachment; filename="{graph_id}'
                f'{formats.extension_for(fmt)}"',
            "X-Original-Format": original_fmt,
            "X-Loss-Report": _compact_json(report.to_dict()),
        }
        return Response(content=out, media_type="text/plain; charset=utf-8",
                        headers=headers)

    @app.get("/graphs/{graph_id}/image.svg")
    def get_image(graph_id: str):
        svg = get_store().get_svg(graph_id)
        if svg is None:
            raise _HttpError(404, "image not rendered yet")
        return Response(content=svg, media_type="image/svg+xml")

    @app.patch("/graphs/{graph_id}/metadata")
    def patch_metadata(graph_id: str, body: MetadataPatch,
                       owner: str = Depends(require_write)):
        patch = {k: v for k, v in body.model_dump().items()
                 if v is not None and k != "tags"}
        if patch:
            get_store().update_metadata(graph_id, patch)
        if body.tags is not None:
            get_store().set_tags(graph_id, body.tags)
        return {"id": graph_id, "updated": sorted(
            list(patch) + (["tags"] if body.tags is not None else []))}

    @app.post("/graphs/{graph_id}/comments", status_code=201)
    def post_comment(graph_id: str, body: CommentBody,
                     owner: str = Depends(require_write)):
        get_store().add_comment(graph_id, body.author, body.text)
        return {"id": graph_id}

    @app.post("/graphs/{graph_id}/references", status_code=201)
    def post_reference(graph_id: str, body: ReferenceBody,
                       owner: str = Depends(require_write)):
        try:
            ref = Reference(kind=body.kind,
                            citation_or_url=body.citation_or_url)
        except ValueError as exc:
            raise _HttpError(400, str(exc))
        get_store().add_reference(graph_id, ref)
        return {"id": graph_id}

    @app.post("/graphs/{graph_id}/properties", status_code=200)
    def post_user_properties(graph_id: str, body: UserPropertiesBody,
                             owner: str = Depends(require_write)):
        get_store().set_properties(graph_id, body.model_dump(),
                                   supplied_by="user")
        return {"id": graph_id}

    # --- search / compare --------------------------------------------------

    @app.get("/search")
    def search(request: Request):
        params = request.query_params
        unknown = set(params.keys()) - _SEARCH_PARAMS
        if unknown:
            raise UnknownProperty(sorted(unknown)[0])
        for key in set(params.keys()):
            if key != "tag" and len(params.getlist(key)) > 1:
                raise _HttpError(400, f"parameter {key!r} given more "
                                      f"than once")
        page = _int_param(params.get("page", "1"), "page")
        page_size = _int_param(params.get("page_size", "50"), "page_size")

        criteria = _criteria_from_params(params)
        store = get_store()
        try:
            if criteria:
                total, ids = store.search(SearchQuery(tuple(criteria)),
                                          page, page_size)
            elif params.get("all") in ("true", "1"):
                total, ids = store.list_all(page, page_size)
            else:
                raise _HttpError(
                    400, "no criteria given; pass all=true to list "
                         "everything")
            return {"total": total, "page": page, "page_size": page_size,
                    "results": [store.get_summary(i) for i in ids]}
        except ValueError as exc:
            raise _HttpError(400, str(exc))

    @app.get("/compare")
    def compare(ids: str = ""):
        id_list = [i for i in ids.split(",") if i]
        if not 2 <= len(id_list) <= 8:
            raise _HttpError(400, "compare takes between 2 and 8 ids")
        store = get_store()
        summaries = {gid: store.get_summary(gid)  # raises NotFound first
                     for gid in id_list}
        property_sets = {}
        for graph_id in id_list:
            if summaries[graph_id]["status"] == "pending-analysis":
                raise _HttpError(409, f"graph {graph_id} is still pending "
                                      f"analysis")
            record = store.get_record(graph_id)
            property_sets[graph_id] = (record.properties.to_dict()
                                       if record.properties else {})
        rows = []
        for prop in sorted(NUMERIC_PROPERTIES | BOOLEAN_PROPERTIES):
            values = {gid: property_sets[gid].get(prop)
                      for gid in id_list}
            row = {"property": prop, "values": values}
            if prop in BOOLEAN_PROPERTIES:
                holders = sum(1 for v in values.values() if v is True)
                row["tally"] = ("all" if holders == len(id_list)
                                else "none" if holders == 0 else "some")
            rows.append(row)
        return {"ids": id_list, "rows": rows}

    # --- collections ----------------------------------------------------------

    @app.post("/collections", status_code=201)
    def create_collection(body: CollectionBody,
                          owner: str = Depends(require_write)):
        try:
            cid = get_store().create_collection(body.name, body.description)
        except ValueError as exc:
            raise _HttpError(400, str(exc))
        return {"id": cid, "uri": f"/collections/{cid}"}

    @app.post("/collections/{collection_id}/members", status_code=201)
    def add_member(collection_id: str, body: MemberBody,
                   owner: str = Depends(require_write)):
        get_store().add_to_collection(collection_id, body.graph_id)
        return {"id": collection_id}

    @app.get("/collections/{collection_id}")
    def get_collection(collection_id: str):
        coll = get_store().list_collection(collection_id)
        return {"id": coll.id, "name": coll.name,
                "description": coll.description,
                "members": list(coll.member_graph_ids)}

    # --- bulk ---------------------------------------------------------------

    @app.post("/import")
    async def import_zip(request: Request, creator: str = "importer",
                         owner: str = Depends(require_write)):
        data = await request.body()
        if len(data) > config.max_upload_bytes:
            raise _HttpError(413, "upload exceeds size limit")
        results = get_store().import_zip(data, creator=creator)
        return [{"filename": r.filename, "id": r.graph_id, "error": r.error}
                for r in results]

    @app.get("/export")
    def export_zip(ids: str = "", format: str | None = None):
        id_list = [i for i in ids.split(",") if i]
        if not id_list:
            raise _HttpError(400, "ids parameter is required")
        data = get_store().export_zip(id_list, format)
        return Response(content=data, media_type="application/zip",
                        headers={"Content-Disposition":
                                 'attachment; filename="graphs.zip"'})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    return app


# --- helpers -------------------------------------------------------------------


class _HttpErrorShim(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _HttpError(status: int, message: str) -> _HttpErrorShim:
    return _HttpErrorShim(status, message)


def _compact_json(value) -> str:
    import json
    return json.dumps(value, separators=(",", ":"))


def _int_param(raw: str, name: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise _HttpError(400, f"{name} must be an integer")


def _bool_param(raw: str, name: str) -> bool:
    if raw == "true":
        return True
    if raw == "false":
        return False
    raise _HttpError(400, f"{name} must be 'true' or 'false'")


def _criteria_from_params(params) -> list:
    criteria: list = []
    for tag in params.getlist("tag"):
        try:
            criteria.append(TagEquals(Tag(tag).value))
        except InvalidTag:
            raise _HttpError(400, f"invalid tag {tag!r}")
    if params.get("q"):
        criteria.append(TextContains("any", params["q"]))
    for field_name in ("name", "creator", "description"):
        if params.get(field_name):
            criteria.append(TextContains(field_name, params[field_name]))
    for prop, low_key, high_key in (
            ("node_count", "min_nodes", "max_nodes"),
            ("edge_count", "min_edges", "max_edges")):
        low = params.get(low_key)
        high = params.get(high_key)
        if low is not None or high is not None:
            criteria.append(NumericRange(
                prop,
                low=_int_param(low, low_key) if low is not None else None,
                high=_int_param(high, high_key) if high is not None else None))
    for param, prop in _BOOL_PARAMS.items():
        raw = params.get(param)
        if raw is not None:
            criteria.append(BooleanEquals(prop, _bool_param(raw, param)))
    start_raw, end_raw = params.get("from"), params.get("to")
    if start_raw or end_raw:
        criteria.append(UploadedBetween(
            start=_date_param(start_raw, "from") if start_raw else None,
            end=_date_param(end_raw, "to") if end_raw else None))
    return criteria


def _date_param(raw: str, name: str) -> datetime:
    from datetime import timezone
    try:
        parsed = datetime.fromisoformat(raw)
    except ValueError:
        raise _HttpError(400, f"{name} must be an ISO date or datetime")
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed


def _error_response(exc: GraphbaseError) -> JSONResponse:
    if isinstance(exc, NotFound):
        return JSONResponse(status_code=404, content={"error": str(exc)})
    if isinstance(exc, DuplicateMember):
        return JSONResponse(status_code=409, content={"error": str(exc)})
    if isinstance(exc, ParseFailed):
        body = {"error": str(exc)}
        cause = exc.cause
        if isinstance(cause, FormatSyntaxError):
            body["line"] = cause.line
            body["column"] = cause.column
            body["reason"] = cause.reason
        return JSONResponse(status_code=400, content=body)
    if isinstance(exc, (UnknownProperty, UnknownFormat, InvalidTag,
                        FieldNotUserSettable, FormatSyntaxError,
                        UnsupportedConstruct, CorruptArchive)):
        return JSONResponse(status_code=400, content={"error": str(exc)})
    return JSONResponse(status_code=500, content={"error": str(exc)})
