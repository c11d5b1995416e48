"""Exception hierarchy shared across the archive."""

from __future__ import annotations


class GraphbaseError(Exception):
    """Base class for every error raised by this package."""


# --- model -----------------------------------------------------------------

class DuplicateNodeId(GraphbaseError):
    def __init__(self, node_id: str):
        super().__init__(f"duplicate node id: {node_id!r}")
        self.node_id = node_id


class DanglingEdgeEndpoint(GraphbaseError):
    def __init__(self, endpoint: str):
        super().__init__(f"edge endpoint names unknown node: {endpoint!r}")
        self.endpoint = endpoint


class InvalidTag(GraphbaseError):
    def __init__(self, value: str):
        super().__init__(f"invalid tag: {value!r}")
        self.value = value


# --- formats ---------------------------------------------------------------

class FormatSyntaxError(GraphbaseError):
    """Positioned parse failure. Line and column are 1-based."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class UnsupportedConstruct(GraphbaseError):
    def __init__(self, name: str):
        super().__init__(f"unsupported construct: {name}")
        self.name = name


class Unrepresentable(GraphbaseError):
    def __init__(self, reason: str):
        super().__init__(f"graph cannot be emitted in this format: {reason}")
        self.reason = reason


class UnknownFormat(GraphbaseError):
    pass


# --- analysis --------------------------------------------------------------

class TimeBudgetExceeded(GraphbaseError):
    """Analysis ran out of time. ``partial`` holds what was computed."""

    def __init__(self, partial):
        super().__init__("analysis time budget exceeded")
        self.partial = partial


# --- generators ------------------------------------------------------------

class FilterExhausted(GraphbaseError):
    def __init__(self, round_index: int, retries: int):
        super().__init__(
            f"no mutation candidate passed the filter in round {round_index} "
            f"after {retries} retries"
        )
        self.round_index = round_index
        self.retries = retries


# --- archive store ---------------------------------------------------------

class NotFound(GraphbaseError):
    def __init__(self, what: str):
        super().__init__(f"not found: {what}")
        self.what = what


class ParseFailed(GraphbaseError):
    """Upload rejected because the submitted bytes did not parse."""

    def __init__(self, cause: Exception):
        super().__init__(f"submission did not parse: {cause}")
        self.cause = cause


class FieldNotUserSettable(GraphbaseError):
    def __init__(self, field: str):
        super().__init__(f"property {field!r} is computed by the system and "
                         f"cannot be supplied by users")
        self.field = field


class UnknownProperty(GraphbaseError):
    def __init__(self, name: str):
        super().__init__(f"unknown property: {name!r}")
        self.name = name


class DuplicateMember(GraphbaseError):
    def __init__(self, graph_id: str):
        super().__init__(f"graph {graph_id} is already a member of the collection")
        self.graph_id = graph_id


class CorruptArchive(GraphbaseError):
    pass


class StorageFull(GraphbaseError):
    pass


# --- layout ----------------------------------------------------------------

class LayoutMismatch(GraphbaseError):
    def __init__(self, message: str):
        super().__init__(message)
