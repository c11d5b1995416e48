"""Persistent graph archive: records, annotations, search, bulk transfer.

Storage is a single SQLite file next to a content blob directory
(``blobs/<first two id chars>/<id>``) holding every submission byte-exact.
The canonical graph is always re-derived from those original bytes, so the
stored original is the single source of truth.  Property values are
materialized into a typed side table that search criteria run against;
records whose analysis is still pending simply have no rows there and thus
never match property criteria.

Writes are serialized by a process-wide lock per store; readers see
consistent snapshots.  Deletion is a tombstone: the record stops appearing
in searches but its permanent URI keeps resolving.
"""

from __future__ import annotations

import io
import json
import sqlite3
import threading
import zipfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from secrets import token_urlsafe

from . import formats, ids
from .analysis import (BOOLEAN_PROPERTIES, NUMERIC_PROPERTIES,
                       USER_SETTABLE_PROPERTIES, PropertySet)
from .errors import (CorruptArchive, DuplicateMember, FieldNotUserSettable,
                     FormatSyntaxError, GraphbaseError, NotFound, ParseFailed,
                     UnknownProperty, UnsupportedConstruct)
from .layout import Layout
from .model import (Collection, Comment, Graph, Metadata, Reference, Tag,
                    normalize_tag, utc_now)

STATUS_PENDING = "pending-analysis"
STATUS_ANALYZED = "analyzed"
STATUS_SKIPPED = "analysis-skipped"
STATUS_FAILED = "analysis-failed"

MAX_PAGE_SIZE = 500

_SCHEMA = """
CREATE TABLE IF NOT EXISTS graphs (
    id TEXT PRIMARY KEY,
    format TEXT NOT NULL,
    status TEXT NOT NULL,
    name TEXT NOT NULL,
    creator TEXT NOT NULL,
    uploaded_at TEXT NOT NULL,
    description TEXT,
    creation_method TEXT,
    license TEXT,
    properties TEXT,
    user_properties TEXT NOT NULL DEFAULT '{}',
    layout TEXT,
    svg BLOB,
    analysis_error TEXT,
    deleted INTEGER NOT NULL DEFAULT 0
);
CREATE TABLE IF NOT EXISTS tags (
    graph_id TEXT NOT NULL,
    value TEXT NOT NULL,
    kind TEXT NOT NULL DEFAULT 'freeform',
    PRIMARY KEY (graph_id, value)
);
CREATE TABLE IF NOT EXISTS comments (
    graph_id TEXT NOT NULL,
    seq INTEGER NOT NULL,
    author TEXT NOT NULL,
    created_at TEXT NOT NULL,
    body TEXT NOT NULL,
    PRIMARY KEY (graph_id, seq)
);
CREATE TABLE IF NOT EXISTS refs (
    graph_id TEXT NOT NULL,
    seq INTEGER NOT NULL,
    kind TEXT NOT NULL,
    value TEXT NOT NULL,
    PRIMARY KEY (graph_id, seq)
);
CREATE TABLE IF NOT EXISTS props (
    graph_id TEXT NOT NULL,
    name TEXT NOT NULL,
    num REAL,
    bool INTEGER,
    PRIMARY KEY (graph_id, name)
);
CREATE TABLE IF NOT EXISTS collections (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    description TEXT NOT NULL DEFAULT ''
);
CREATE TABLE IF NOT EXISTS collection_members (
    collection_id TEXT NOT NULL,
    seq INTEGER NOT NULL,
    graph_id TEXT NOT NULL,
    PRIMARY KEY (collection_id, seq),
    UNIQUE (collection_id, graph_id)
);
CREATE TABLE IF NOT EXISTS tokens (
    token TEXT PRIMARY KEY,
    owner TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS jobs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    graph_id TEXT NOT NULL,
    state TEXT NOT NULL DEFAULT 'queued'
);
CREATE INDEX IF NOT EXISTS idx_props_name ON props (name, num, bool);
CREATE INDEX IF NOT EXISTS idx_tags_value ON tags (value);
"""


# --- search criteria ---------------------------------------------------------

@dataclass(frozen=True)
class NumericRange:
    prop: str
    low: float | None = None
    high: float | None = None


@dataclass(frozen=True)
class TagEquals:
    tag: str


@dataclass(frozen=True)
class TextContains:
    field: str  # name | creator | description | any
    needle: str


@dataclass(frozen=True)
class BooleanEquals:
    prop: str
    value: bool


@dataclass(frozen=True)
class UploadedBetween:
    start: datetime | None = None
    end: datetime | None = None


Criterion = NumericRange | TagEquals | TextContains | BooleanEquals | UploadedBetween


@dataclass(frozen=True)
class SearchQuery:
    """Conjunctive criteria; refinement appends, never widens."""

    criteria: tuple[Criterion, ...] = ()

    def refined(self, criterion: Criterion) -> "SearchQuery":
        return SearchQuery(self.criteria + (criterion,))


@dataclass(frozen=True)
class GraphRecord:
    id: str
    original_format: str
    original_bytes: bytes
    canonical: Graph
    metadata: Metadata
    status: str
    properties: PropertySet | None
    user_properties: dict
    layout: Layout | None
    analysis_error: str | None = None


@dataclass(frozen=True)
class ImportResult:
    filename: str
    graph_id: str | None = None
    error: str | None = None


def _iso(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat()


class ArchiveStore:
    """All durable state of one archive instance."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.blob_dir = self.data_dir / "blobs"
        self.blob_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._db = sqlite3.connect(self.data_dir / "archive.db",
                                   check_same_thread=False)
        self._db.execute("PRAGMA journal_mode=WAL")
        self._db.executescript(_SCHEMA)
        self._db.commit()

    def close(self):
        with self._lock:
            self._db.close()

    # --- blobs ---------------------------------------------------------

    def _blob_path(self, graph_id: str) -> Path:
        return self.blob_dir / graph_id[:2] / graph_id

    def _write_blob(self, graph_id: str, data: bytes):
        path = self._blob_path(graph_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(data)
        tmp.replace(path)

    # --- records ---------------------------------------------------------

    def put_graph(self, data: bytes, fmt: str | None,
                  metadata: Metadata) -> str:
        """Validate, persist and queue a submission; returns its new id."""
        try:
            if fmt is None:
                fmt = formats.detect_format(data)
            formats.parse(data, fmt)
        except (FormatSyntaxError, UnsupportedConstruct, GraphbaseError) as exc:
            raise ParseFailed(exc) from exc
        graph_id = ids.new_id()
        with self._lock:
            self._write_blob(graph_id, data)
            self._db.execute(
                "INSERT INTO graphs (id, format, status, name, creator,"
                " uploaded_at, description, creation_method, license)"
                " VALUES (?,?,?,?,?,?,?,?,?)",
                (graph_id, fmt, STATUS_PENDING, metadata.name,
                 metadata.creator, _iso(metadata.uploaded_at),
                 metadata.description, metadata.creation_method,
                 metadata.license))
            for tag in metadata.tags:
                self._db.execute(
                    "INSERT OR IGNORE INTO tags (graph_id, value, kind)"
                    " VALUES (?,?,?)", (graph_id, tag.value, tag.kind))
            self._db.execute("INSERT INTO jobs (graph_id) VALUES (?)",
                             (graph_id,))
            self._db.commit()
        return graph_id

    def _row(self, graph_id: str):
        cur = self._db.execute("SELECT * FROM graphs WHERE id = ?",
                               (graph_id,))
        cur.row_factory = None
        names = [d[0] for d in cur.description]
        row = cur.fetchone()
        if row is None:
            raise NotFound(f"graph {graph_id}")
        return dict(zip(names, row))

    def get_original_bytes(self, graph_id: str) -> tuple[bytes, str]:
        with self._lock:
            row = self._row(graph_id)
            return self._blob_path(graph_id).read_bytes(), row["format"]

    def get_record(self, graph_id: str) -> GraphRecord:
        with self._lock:
            row = self._row(graph_id)
            data = self._blob_path(graph_id).read_bytes()
            tags = frozenset(
                Tag(value, kind) for value, kind in self._db.execute(
                    "SELECT value, kind FROM tags WHERE graph_id = ?"
                    " ORDER BY value", (graph_id,)))
            comments = tuple(
                Comment(author, datetime.fromisoformat(created), body)
                for author, created, body in self._db.execute(
                    "SELECT author, created_at, body FROM comments"
                    " WHERE graph_id = ? ORDER BY seq", (graph_id,)))
            references = tuple(
                Reference(kind, value) for kind, value in self._db.execute(
                    "SELECT kind, value FROM refs WHERE graph_id = ?"
                    " ORDER BY seq", (graph_id,)))
        metadata = Metadata(
            name=row["name"], creator=row["creator"],
            uploaded_at=datetime.fromisoformat(row["uploaded_at"]),
            description=row["description"],
            creation_method=row["creation_method"],
            license=row["license"], tags=tags, comments=comments,
            references=references)
        user_props = json.loads(row["user_properties"])
        props = None
        if row["properties"]:
            merged = json.loads(row["properties"])
            merged.update(user_props)
            props = PropertySet.from_dict(merged)
        layout = Layout.from_dict(json.loads(row["layout"])) \
            if row["layout"] else None
        return GraphRecord(
            id=graph_id, original_format=row["format"], original_bytes=data,
            canonical=formats.parse(data, row["format"]), metadata=metadata,
            status=row["status"], properties=props,
            user_properties=user_props, layout=layout,
            analysis_error=row["analysis_error"])

    def exists(self, graph_id: str) -> bool:
        with self._lock:
            cur = self._db.execute("SELECT 1 FROM graphs WHERE id = ?",
                                   (graph_id,))
            return cur.fetchone() is not None

    def soft_delete(self, graph_id: str):
        with self._lock:
            self._row(graph_id)
            self._db.execute("UPDATE graphs SET deleted = 1 WHERE id = ?",
                             (graph_id,))
            self._db.commit()

    def audit(self, graph_id: str) -> bool:
        """Original bytes still parse and match the stored counts."""
        with self._lock:
            row = self._row(graph_id)
            data = self._blob_path(graph_id).read_bytes()
        try:
            g = formats.parse(data, row["format"])
        except GraphbaseError:
            return False
        if row["properties"]:
            stored = json.loads(row["properties"])
            if (stored["node_count"] != g.node_count
                    or stored["edge_count"] != g.edge_count):
                return False
        return True

    # --- metadata -----------------------------------------------------------

    _PATCHABLE = ("name", "description", "creation_method", "license")

    def update_metadata(self, graph_id: str, patch: dict):
        unknown = set(patch) - set(self._PATCHABLE)
        if unknown:
            raise ValueError(f"not patchable: {sorted(unknown)}")
        if "name" in patch and not patch["name"]:
            raise ValueError("name must be non-empty")
        with self._lock:
            self._row(graph_id)
            sets = ", ".join(f"{k} = ?" for k in patch)
            self._db.execute(f"UPDATE graphs SET {sets} WHERE id = ?",
                             (*patch.values(), graph_id))
            self._db.commit()

    def add_comment(self, graph_id: str, author: str, text: str):
        with self._lock:
            self._row(graph_id)
            (seq,), = self._db.execute(
                "SELECT COALESCE(MAX(seq), 0) + 1 FROM comments"
                " WHERE graph_id = ?", (graph_id,))
            self._db.execute(
                "INSERT INTO comments (graph_id, seq, author, created_at,"
                " body) VALUES (?,?,?,?,?)",
                (graph_id, seq, author, _iso(utc_now()), text))
            self._db.commit()

    def add_reference(self, graph_id: str, ref: Reference):
        with self._lock:
            self._row(graph_id)
            (seq,), = self._db.execute(
                "SELECT COALESCE(MAX(seq), 0) + 1 FROM refs"
                " WHERE graph_id = ?", (graph_id,))
            self._db.execute(
                "INSERT INTO refs (graph_id, seq, kind, value)"
                " VALUES (?,?,?,?)", (graph_id, seq, ref.kind,
                                      ref.citation_or_url))
            self._db.commit()

    def set_tags(self, graph_id: str, tags):
        normalized = []
        for tag in tags:
            if isinstance(tag, Tag):
                normalized.append(tag)
            else:
                normalized.append(Tag(normalize_tag(tag)))
        with self._lock:
            self._row(graph_id)
            self._db.execute("DELETE FROM tags WHERE graph_id = ?",
                             (graph_id,))
            for tag in normalized:
                self._db.execute(
                    "INSERT OR IGNORE INTO tags (graph_id, value, kind)"
                    " VALUES (?,?,?)", (graph_id, tag.value, tag.kind))
            self._db.commit()

    # --- properties -----------------------------------------------------------

    def set_properties(self, graph_id: str, props, supplied_by: str):
        """System analysis results or user-supplied extras (crossing number).

        User values may only fill the user-settable fields and never touch
        computed ones; system results replace prior system results and flip
        the record's status.
        """
        if supplied_by == "user":
            if not isinstance(props, dict):
                raise TypeError("user properties must be a dict")
            bad = set(props) - USER_SETTABLE_PROPERTIES
            if bad:
                raise FieldNotUserSettable(sorted(bad)[0])
            with self._lock:
                row = self._row(graph_id)
                user = json.loads(row["user_properties"])
                user.update(props)
                self._db.execute(
                    "UPDATE graphs SET user_properties = ? WHERE id = ?",
                    (json.dumps(user), graph_id))
                for name, value in props.items():
                    self._db.execute(
                        "INSERT OR REPLACE INTO props (graph_id, name, num,"
                        " bool) VALUES (?,?,?,?)",
                        (graph_id, name, float(value), None))
                self._db.commit()
            return

        if supplied_by != "system":
            raise ValueError("supplied_by must be 'system' or 'user'")
        if not isinstance(props, PropertySet):
            raise TypeError("system properties must be a PropertySet")
        status = STATUS_SKIPPED if props.analysis_skipped else STATUS_ANALYZED
        with self._lock:
            self._row(graph_id)
            self._db.execute(
                "UPDATE graphs SET properties = ?, status = ?,"
                " analysis_error = NULL WHERE id = ?",
                (json.dumps(props.to_dict()), status, graph_id))
            self._db.execute(
                "DELETE FROM props WHERE graph_id = ? AND name != ?",
                (graph_id, "crossing_number"))
            for name, value in props.to_dict().items():
                if value is None:
                    continue
                if name in NUMERIC_PROPERTIES and name not in \
                        USER_SETTABLE_PROPERTIES:
                    self._db.execute(
                        "INSERT OR REPLACE INTO props (graph_id, name, num)"
                        " VALUES (?,?,?)", (graph_id, name, float(value)))
                elif name in BOOLEAN_PROPERTIES:
                    self._db.execute(
                        "INSERT OR REPLACE INTO props (graph_id, name, bool)"
                        " VALUES (?,?,?)", (graph_id, name, int(value)))
            self._db.commit()

    def mark_analysis_failed(self, graph_id: str, message: str):
        with self._lock:
            self._row(graph_id)
            self._db.execute(
                "UPDATE graphs SET status = ?, analysis_error = ?"
                " WHERE id = ?", (STATUS_FAILED, message, graph_id))
            self._db.commit()

    def set_layout(self, graph_id: str, layout: Layout, svg: bytes):
        with self._lock:
            self._row(graph_id)
            self._db.execute(
                "UPDATE graphs SET layout = ?, svg = ? WHERE id = ?",
                (json.dumps(layout.to_dict()), svg, graph_id))
            self._db.commit()

    def get_svg(self, graph_id: str) -> bytes | None:
        with self._lock:
            row = self._row(graph_id)
            return row["svg"]

    def get_summary(self, graph_id: str) -> dict:
        """Lightweight record view for search results; no blob access."""
        with self._lock:
            row = self._row(graph_id)
            tags = [v for (v,) in self._db.execute(
                "SELECT value FROM tags WHERE graph_id = ? ORDER BY value",
                (graph_id,))]
        props = json.loads(row["properties"]) if row["properties"] else {}
        return {
            "id": graph_id,
            "name": row["name"],
            "creator": row["creator"],
            "uploaded_at": row["uploaded_at"],
            "status": row["status"],
            "format": row["format"],
            "tags": tags,
            "node_count": props.get("node_count"),
            "edge_count": props.get("edge_count"),
            "directed": props.get("directed"),
            "is_planar": props.get("is_planar"),
            "is_connected": props.get("is_connected"),
            "has_image": row["svg"] is not None,
        }

    # --- search -----------------------------------------------------------

    def search(self, query: SearchQuery, page: int = 1,
               page_size: int = 50) -> tuple[int, list[str]]:
        """Conjunction of all criteria; newest first, id as tie-break."""
        if not query.criteria:
            raise ValueError("search requires at least one criterion")
        return self._run_search(list(query.criteria), page, page_size)

    def list_all(self, page: int = 1, page_size: int = 50
                 ) -> tuple[int, list[str]]:
        return self._run_search([], page, page_size)

    def _run_search(self, criteria: list, page: int,
                    page_size: int) -> tuple[int, list[str]]:
        if not 1 <= page_size <= MAX_PAGE_SIZE:
            raise ValueError(f"page_size must be in 1..{MAX_PAGE_SIZE}")
        if page < 1:
            raise ValueError("page must be >= 1")
        where = ["deleted = 0"]
        args: list = []
        for criterion in criteria:
            clause, clause_args = self._clause(criterion)
            where.append(clause)
            args.extend(clause_args)
        where_sql = " AND ".join(where)
        with self._lock:
            (total,), = self._db.execute(
                f"SELECT COUNT(*) FROM graphs WHERE {where_sql}", args)
            rows = self._db.execute(
                f"SELECT id FROM graphs WHERE {where_sql}"
                f" ORDER BY uploaded_at DESC, id DESC LIMIT ? OFFSET ?",
                args + [page_size, (page - 1) * page_size]).fetchall()
        return total, [r[0] for r in rows]

    @staticmethod
    def _clause(criterion: Criterion) -> tuple[str, list]:
        if isinstance(criterion, TagEquals):
            return ("EXISTS (SELECT 1 FROM tags t WHERE t.graph_id ="
                    " graphs.id AND t.value = ?)", [criterion.tag])
        if isinstance(criterion, NumericRange):
            if criterion.prop not in NUMERIC_PROPERTIES:
                raise UnknownProperty(criterion.prop)
            low = criterion.low if criterion.low is not None else -1e308
            high = criterion.high if criterion.high is not None else 1e308
            return ("EXISTS (SELECT 1 FROM props p WHERE p.graph_id ="
                    " graphs.id AND p.name = ? AND p.num IS NOT NULL"
                    " AND p.num >= ? AND p.num <= ?)",
                    [criterion.prop, low, high])
        if isinstance(criterion, BooleanEquals):
            if criterion.prop not in BOOLEAN_PROPERTIES:
                raise UnknownProperty(criterion.prop)
            return ("EXISTS (SELECT 1 FROM props p WHERE p.graph_id ="
                    " graphs.id AND p.name = ? AND p.bool = ?)",
                    [criterion.prop, int(criterion.value)])
        if isinstance(criterion, TextContains):
            if criterion.field == "any":
                return ("(instr(lower(graphs.name), lower(?)) > 0 OR"
                        " instr(lower(graphs.creator), lower(?)) > 0 OR"
                        " instr(lower(COALESCE(graphs.description, '')),"
                        " lower(?)) > 0)", [criterion.needle] * 3)
            if criterion.field not in ("name", "creator", "description"):
                raise UnknownProperty(criterion.field)
            return (f"instr(lower(COALESCE(graphs.{criterion.field}, '')),"
                    f" lower(?)) > 0", [criterion.needle])
        if isinstance(criterion, UploadedBetween):
            clauses, args = [], []
            if criterion.start is not None:
                clauses.append("graphs.uploaded_at >= ?")
                args.append(_iso(criterion.start))
            if criterion.end is not None:
                clauses.append("graphs.uploaded_at <= ?")
                args.append(_iso(criterion.end))
            if not clauses:
                return ("1 = 1", [])
            return (" AND ".join(clauses), args)
        raise TypeError(f"unknown criterion {criterion!r}")

    # --- zip import/export ------------------------------------------------------

    def import_zip(self, data: bytes, creator: str = "importer",
                   format_overrides: dict[str, str] | None = None,
                   tags: tuple[str, ...] = ()) -> list[ImportResult]:
        """Each member parsed independently; failures stay per-file.

        A ``provenance.txt`` member (as written by the generators) is not
        treated as a graph; its text becomes the creation_method of every
        graph in the archive.
        """
        try:
            archive = zipfile.ZipFile(io.BytesIO(data))
            names = [i.filename for i in archive.infolist()
                     if not i.is_dir()]
        except zipfile.BadZipFile as exc:
            raise CorruptArchive(str(exc)) from exc
        overrides = format_overrides or {}
        creation_method = None
        if "provenance.txt" in names:
            names.remove("provenance.txt")
            creation_method = archive.read("provenance.txt").decode(
                "utf-8", errors="replace").strip() or None
        results = []
        for name in names:
            try:
                content = archive.read(name)
                fmt = overrides.get(name) or formats.detect_format(content)
                metadata = Metadata(
                    name=Path(name).stem or name, creator=creator,
                    creation_method=creation_method,
                    tags=frozenset(Tag(t) for t in tags))
                graph_id = self.put_graph(content, fmt, metadata)
                results.append(ImportResult(name, graph_id=graph_id))
            except GraphbaseError as exc:
                results.append(ImportResult(name, error=str(exc)))
        return results

    def export_zip(self, graph_ids: list[str],
                   fmt: str | None = None) -> bytes:
        """Zip of the graphs (converted when fmt given) plus manifest and
        per-file loss report."""
        buffer = io.BytesIO()
        manifest_lines = []
        loss_lines = []
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
            for graph_id in graph_ids:
                data, original_fmt = self.get_original_bytes(graph_id)
                out_fmt = fmt or original_fmt
                if fmt is not None and fmt != original_fmt:
                    data, report = formats.convert(data, original_fmt, fmt)
                else:
                    report = formats.LossReport()
                filename = f"{graph_id}{formats.extension_for(out_fmt)}"
                archive.writestr(filename, data)
                manifest_lines.append(f"{graph_id}\t{filename}\t{out_fmt}")
                if report.lossless:
                    loss_lines.append(f"{graph_id}\tlossless")
                else:
                    for item in report.dropped_items:
                        loss_lines.append(
                            f"{graph_id}\t{item.kind}\t{item.count}\t"
                            f"{item.message}")
            archive.writestr("manifest.txt", "\n".join(manifest_lines) + "\n")
            archive.writestr("lossreport.txt",
                             "\n".join(loss_lines) + "\n" if loss_lines
                             else "")
        return buffer.getvalue()

    # --- collections ------------------------------------------------------------

    def create_collection(self, name: str, description: str = "") -> str:
        if not name:
            raise ValueError("collection name must be non-empty")
        collection_id = ids.new_id()
        with self._lock:
            self._db.execute(
                "INSERT INTO collections (id, name, description)"
                " VALUES (?,?,?)", (collection_id, name, description))
            self._db.commit()
        return collection_id

    def add_to_collection(self, collection_id: str, graph_id: str):
        with self._lock:
            if self._db.execute("SELECT 1 FROM collections WHERE id = ?",
                                (collection_id,)).fetchone() is None:
                raise NotFound(f"collection {collection_id}")
            self._row(graph_id)
            exists = self._db.execute(
                "SELECT 1 FROM collection_members WHERE collection_id = ?"
                " AND graph_id = ?", (collection_id, graph_id)).fetchone()
            if exists:
                raise DuplicateMember(graph_id)
            (seq,), = self._db.execute(
                "SELECT COALESCE(MAX(seq), 0) + 1 FROM collection_members"
                " WHERE collection_id = ?", (collection_id,))
            self._db.execute(
                "INSERT INTO collection_members (collection_id, seq,"
                " graph_id) VALUES (?,?,?)", (collection_id, seq, graph_id))
            self._db.commit()

    def list_collection(self, collection_id: str) -> Collection:
        with self._lock:
            row = self._db.execute(
                "SELECT name, description FROM collections WHERE id = ?",
                (collection_id,)).fetchone()
            if row is None:
                raise NotFound(f"collection {collection_id}")
            members = [gid for (gid,) in self._db.execute(
                "SELECT graph_id FROM collection_members"
                " WHERE collection_id = ? ORDER BY seq", (collection_id,))]
        return Collection(id=collection_id, name=row[0], description=row[1],
                          member_graph_ids=tuple(members))

    # --- tokens --------------------------------------------------------------

    def create_token(self, owner: str) -> str:
        token = token_urlsafe(32)
        with self._lock:
            self._db.execute(
                "INSERT INTO tokens (token, owner, created_at)"
                " VALUES (?,?,?)", (token, owner, _iso(utc_now())))
            self._db.commit()
        return token

    def token_owner(self, token: str) -> str | None:
        with self._lock:
            row = self._db.execute(
                "SELECT owner FROM tokens WHERE token = ?",
                (token,)).fetchone()
        return row[0] if row else None

    # --- job queue ----------------------------------------------------------

    def enqueue_analysis(self, graph_id: str):
        with self._lock:
            self._db.execute("INSERT INTO jobs (graph_id) VALUES (?)",
                             (graph_id,))
            self._db.commit()

    def claim_job(self) -> tuple[int, str] | None:
        with self._lock:
            row = self._db.execute(
                "SELECT id, graph_id FROM jobs WHERE state = 'queued'"
                " ORDER BY id LIMIT 1").fetchone()
            if row is None:
                return None
            self._db.execute("UPDATE jobs SET state = 'running'"
                             " WHERE id = ?", (row[0],))
            self._db.commit()
            return row[0], row[1]

    def finish_job(self, job_id: int):
        with self._lock:
            self._db.execute("DELETE FROM jobs WHERE id = ?", (job_id,))
            self._db.commit()

    def reset_running_jobs(self):
        """Crash recovery: re-queue jobs claimed by a dead worker."""
        with self._lock:
            self._db.execute(
                "UPDATE jobs SET state = 'queued' WHERE state = 'running'")
            self._db.commit()

    def pending_job_count(self) -> int:
        with self._lock:
            (count,), = self._db.execute("SELECT COUNT(*) FROM jobs")
            return count
