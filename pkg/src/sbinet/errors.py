"""Exception hierarchy shared by every pipeline stage."""

from __future__ import annotations


class PipelineError(Exception):
    """Base class for all errors raised by this package."""


class ParseLocationError(PipelineError):
    """Parse failure carrying a 1-based line (and optionally column) position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        elif line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)


# --- annotated dataset files -------------------------------------------------

class NoTableFound(PipelineError):
    """No CSV boundary could be detected in the file."""


class NoPrelude(PipelineError):
    """The file starts with the CSV header; the annotation prelude is mandatory."""


class TurtleSyntaxError(ParseLocationError):
    """Input outside the supported annotation grammar."""


class UndeclaredPrefix(ParseLocationError):
    """A prefixed name uses a prefix with no @prefix declaration."""


class CsvError(ParseLocationError):
    """Malformed CSV body."""


class RaggedRow(CsvError):
    def __init__(self, row_index: int, expected: int, got: int):
        self.row_index = row_index
        super().__init__(f"row {row_index} has {got} cells, expected {expected}")


class UnterminatedQuote(CsvError):
    pass


class UnboundEntity(PipelineError):
    """A referenced entity has no ccsv:atColumn statement."""

    def __init__(self, entity: str):
        self.entity = entity
        super().__init__(f"entity <{entity}> has no column binding")


class AmbiguousBinding(PipelineError):
    """More than one entity (or column) claims the same semantic role."""


class MissingMandatoryBinding(PipelineError):
    def __init__(self, role: str):
        self.role = role
        super().__init__(f"mandatory binding missing for role '{role}'")


class RoleConflict(PipelineError):
    """The dataset pair does not form exactly one node set and one edge set."""


# --- network construction -----------------------------------------------------

class UnresolvedNodeRef(PipelineError):
    def __init__(self, cell: str, row: int | None = None):
        self.cell = cell
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"node reference {cell!r} does not match any node{where}")


class DuplicateNodeId(PipelineError):
    pass


class NegativeWeight(PipelineError):
    pass


class InvalidCoordinate(PipelineError):
    pass


# --- metrics -------------------------------------------------------------------

class EmptyEdgeSet(PipelineError):
    pass


class SingletonNetwork(PipelineError):
    pass


class InvalidPartition(PipelineError):
    pass


class PathMetricNotApplicable(PipelineError):
    """Path metrics are gated on edges that represent traversable routes."""


class Unreachable(PipelineError):
    def __init__(self, src, dst):
        self.src = src
        self.dst = dst
        super().__init__(f"no path from {src!r} to {dst!r}")


class NoFinitePairs(PipelineError):
    pass


# --- dashboard model -------------------------------------------------------------

class MissingResult(PipelineError):
    def __init__(self, indicator_id: str):
        self.indicator_id = indicator_id
        super().__init__(f"no computed result for indicator '{indicator_id}'")


class EmptyDashboard(PipelineError):
    """No indicator is applicable; there is nothing to generate."""


class UnknownObjectId(PipelineError):
    pass


class DuplicateObjectId(PipelineError):
    pass


class UnknownColumn(PipelineError):
    pass


class SchemaViolation(PipelineError):
    pass
