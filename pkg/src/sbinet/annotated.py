"""Annotated dataset files: a Turtle prelude describing a CSV body.

A file carries its semantics in a leading annotation zone followed by the
tabular data.  This module splits the two zones, parses each side and links
annotated entities to their table columns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import (
    AmbiguousBinding,
    CsvError,
    MissingMandatoryBinding,
    NoPrelude,
    NoTableFound,
    RaggedRow,
    RoleConflict,
    UnboundEntity,
    UnterminatedQuote,
)
from .turtle import RDF_TYPE, Term, Triple, parse_turtle_document
from .vocab import Matcher

NODE_SET = "NodeSet"
EDGE_SET = "EdgeSet"

# Semantic roles a bound column can play.
ROLE_ID = "id"
ROLE_LAT = "lat"
ROLE_LONG = "long"
ROLE_LABEL = "label"
ROLE_SOURCE = "source"
ROLE_TARGET = "target"
ROLE_USER = "user"
ROLE_WEIGHT = "weight"
ROLE_RECORD = "record"


@dataclass(frozen=True)
class DataTable:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    @property
    def col_count(self) -> int:
        return len(self.header)

    @property
    def row_count(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Binding:
    entity: str  # local name of the annotated entity, e.g. "id"
    role: str
    column: int


@dataclass(frozen=True)
class ColumnBindingMap:
    entries: tuple[Binding, ...]

    def by_role(self, role: str) -> Binding | None:
        for b in self.entries:
            if b.role == role:
                return b
        return None

    def column_for(self, role: str) -> int | None:
        b = self.by_role(role)
        return None if b is None else b.column

    def roles(self) -> frozenset[str]:
        return frozenset(b.role for b in self.entries)

    def as_dict(self) -> dict[str, int]:
        return {b.role: b.column for b in self.entries}


@dataclass(frozen=True)
class AnnotatedDataset:
    name: str
    triples: frozenset[Triple]
    prefixes: dict[str, str] = field(compare=False)
    table: DataTable
    bindings: ColumnBindingMap
    role: str  # NODE_SET or EDGE_SET
    graph_id: str  # local name of the graph both datasets must reference


def split_prelude(text: str) -> tuple[str, str]:
    """Split a file into (annotation prelude, CSV body).

    The CSV body starts at the first line whose first non-blank character is a
    double quote, or at the line following the first blank line, whichever
    comes first.  Concatenating the two parts reproduces the input exactly.
    """
    lines = text.splitlines(keepends=True)
    boundary: int | None = None
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped.startswith('"'):
            boundary = i
            break
        if not stripped:
            boundary = i + 1
            break
    if boundary is None or boundary >= len(lines):
        raise NoTableFound("no CSV boundary detected")
    if boundary == 0:
        raise NoPrelude("file starts with the CSV table; annotations are mandatory")
    return "".join(lines[:boundary]), "".join(lines[boundary:])


def parse_csv(text: str) -> DataTable:
    """Parse a comma-separated body into a width-checked table.

    Double-quoted cells may contain commas, doubled quotes and newlines;
    unquoted cells are trimmed of surrounding whitespace.
    """
    records = _read_records(text)
    if not records:
        raise NoTableFound("CSV body is empty")
    header = tuple(records[0])
    rows = []
    for i, rec in enumerate(records[1:]):
        if len(rec) != len(header):
            raise RaggedRow(i, len(header), len(rec))
        rows.append(tuple(rec))
    return DataTable(header, tuple(rows))


def _read_records(text: str) -> list[list[str]]:
    records: list[list[str]] = []
    cells: list[str] = []
    buf: list[str] = []
    quoted = False
    seen_quote = False  # current cell was quoted; keep content verbatim
    record_quoted = False
    pos, line = 0, 1
    n = len(text)

    def end_cell() -> None:
        nonlocal buf, seen_quote
        cell = "".join(buf)
        cells.append(cell if seen_quote else cell.strip())
        buf = []
        seen_quote = False

    def end_record() -> None:
        nonlocal cells, record_quoted
        end_cell()
        blank = len(cells) == 1 and cells[0] == "" and not record_quoted
        if not blank:
            records.append(cells)
        cells = []
        record_quoted = False

    while pos < n:
        ch = text[pos]
        if quoted:
            if ch == '"':
                if pos + 1 < n and text[pos + 1] == '"':
                    buf.append('"')
                    pos += 2
                    continue
                quoted = False
                pos += 1
                continue
            if ch == "\n":
                line += 1
            buf.append(ch)
            pos += 1
            continue
        if ch == '"':
            if "".join(buf).strip():
                raise CsvError("quote inside an unquoted cell", line)
            quoted = True
            seen_quote = True
            record_quoted = True
            buf = []
            pos += 1
            continue
        if ch == ",":
            end_cell()
            pos += 1
            continue
        if ch == "\n":
            end_record()
            line += 1
            pos += 1
            continue
        if ch == "\r":
            pos += 1
            continue
        if seen_quote and ch not in " \t":
            raise CsvError("unexpected character after closing quote", line)
        if not seen_quote:
            buf.append(ch)
        pos += 1
    if quoted:
        raise UnterminatedQuote("unterminated quoted cell", line)
    if buf or cells or seen_quote:
        end_record()
    return records


_USER_SUFFIX = "_User"


def extract_bindings(
    triples: frozenset[Triple] | set[Triple],
    prefixes: dict[str, str] | None = None,
) -> ColumnBindingMap:
    """Resolve every entity reachable from the data record to its column.

    The record entity is found through ``ccsv:hasDataRecord``; recognized
    properties map referenced entities to semantic roles, and each referenced
    entity must carry exactly one ``ccsv:atColumn`` statement.
    """
    matcher = Matcher([prefixes] if prefixes else [])
    role = dataset_role(triples, matcher)

    record = _single_object(triples, matcher, "ccsv", "hasDataRecord")
    if record is None:
        raise MissingMandatoryBinding("record")

    columns = _at_columns(triples, matcher)
    entries: list[Binding] = []
    if record.value in columns:
        entries.append(Binding(str(record.value), ROLE_RECORD, columns[str(record.value)]))

    role_props = (
        (ROLE_ID, "graph", "hasId"),
        (ROLE_SOURCE, "graph", "hasSourceNode"),
        (ROLE_TARGET, "graph", "hasTargetNode"),
        (ROLE_WEIGHT, "graph", "hasWeight"),
        (ROLE_LAT, "geo", "lat"),
        (ROLE_LONG, "geo", "long"),
        (ROLE_LABEL, "rdfs", "label"),
    )
    for sem_role, pfx, local in role_props:
        entity = _property_target(triples, matcher, record, pfx, local)
        if entity is not None:
            entries.append(_bind(entity, sem_role, columns))

    user = _user_entity(triples, matcher, record)
    if user is not None:
        entries.append(_bind(user, ROLE_USER, columns))

    seen_roles: set[str] = set()
    for b in entries:
        if b.role in seen_roles:
            raise AmbiguousBinding(f"role '{b.role}' is bound more than once")
        seen_roles.add(b.role)

    if role == NODE_SET and ROLE_ID not in seen_roles:
        raise MissingMandatoryBinding(ROLE_ID)
    if role == EDGE_SET:
        for needed in (ROLE_SOURCE, ROLE_TARGET):
            if needed not in seen_roles:
                raise MissingMandatoryBinding(needed)
    return ColumnBindingMap(tuple(entries))


def dataset_role(triples, matcher: Matcher | None = None) -> str:
    """NodeSet or EdgeSet, decided by the dataset's typing; exactly one applies."""
    matcher = matcher or Matcher()
    is_nodes = _has_typing(triples, matcher, "graph", "NodeSet")
    is_edges = _has_typing(triples, matcher, "graph", "EdgeSet")
    if is_nodes == is_edges:
        raise RoleConflict(
            "dataset types as both NodeSet and EdgeSet" if is_nodes else "dataset is neither a NodeSet nor an EdgeSet"
        )
    return NODE_SET if is_nodes else EDGE_SET


def dataset_graph_id(triples, role: str, matcher: Matcher | None = None) -> str:
    matcher = matcher or Matcher()
    prop = "isNodeSetFor" if role == NODE_SET else "isEdgeSetFor"
    target = _single_object(triples, matcher, "graph", prop)
    if target is None:
        raise MissingMandatoryBinding(prop)
    return str(target.value)


def load_annotated_text(text: str, name: str = "<memory>") -> AnnotatedDataset:
    """Parse a full annotated dataset file from text."""
    prelude, csv_body = split_prelude(text)
    doc = parse_turtle_document(prelude)
    table = parse_csv(csv_body)
    matcher = Matcher([doc.prefixes])
    role = dataset_role(doc.triples, matcher)
    bindings = extract_bindings(doc.triples, doc.prefixes)
    for b in bindings.entries:
        if not 0 <= b.column < table.col_count:
            raise CsvError(
                f"binding <{b.entity}> points at column {b.column}, "
                f"but the table has {table.col_count} columns"
            )
    graph_id = dataset_graph_id(doc.triples, role, matcher)
    return AnnotatedDataset(name, doc.triples, doc.prefixes, table, bindings, role, graph_id)


def load_annotated_file(path: str | os.PathLike) -> AnnotatedDataset:
    with open(path, encoding="utf-8") as fh:
        return load_annotated_text(fh.read(), name=os.fspath(path))


# --- triple walking helpers ---------------------------------------------------

def _has_typing(triples, matcher: Matcher, prefix: str, local: str) -> bool:
    return any(
        t.predicate == RDF_TYPE and matcher.is_term(t.object, prefix, local) for t in triples
    )


def _single_object(triples, matcher: Matcher, prefix: str, local: str) -> Term | None:
    found = sorted(
        (t.object for t in triples if matcher.is_term(t.predicate, prefix, local)),
        key=lambda term: term.sort_key,
    )
    if not found:
        return None
    if len(found) > 1:
        raise AmbiguousBinding(f"more than one {prefix}:{local} statement")
    return found[0]


def _property_target(triples, matcher: Matcher, record: Term, prefix: str, local: str) -> Term | None:
    found = sorted(
        (t.object for t in triples if t.subject == record and matcher.is_term(t.predicate, prefix, local)),
        key=lambda term: term.sort_key,
    )
    if len(found) > 1:
        raise AmbiguousBinding(f"record has more than one {prefix}:{local} property")
    return found[0] if found else None


def _user_entity(triples, matcher: Matcher, record: Term) -> Term | None:
    """The user reference: an object of the record typed ``*_User``."""
    candidates = []
    for t in triples:
        if t.subject != record or t.object.is_literal or t.predicate == RDF_TYPE:
            continue
        for typing in triples:
            if (
                typing.subject == t.object
                and typing.predicate == RDF_TYPE
                and str(typing.object.value).endswith(_USER_SUFFIX)
            ):
                candidates.append(t.object)
                break
    candidates.sort(key=lambda term: term.sort_key)
    if len(candidates) > 1:
        raise AmbiguousBinding("record references more than one user entity")
    return candidates[0] if candidates else None


def _at_columns(triples, matcher: Matcher) -> dict[str, int]:
    columns: dict[str, int] = {}
    for t in triples:
        if matcher.is_term(t.predicate, "ccsv", "atColumn"):
            entity = str(t.subject.value)
            if t.object.kind != "int":
                raise AmbiguousBinding(f"ccsv:atColumn of <{entity}> is not an integer")
            if entity in columns and columns[entity] != t.object.value:
                raise AmbiguousBinding(f"<{entity}> has more than one ccsv:atColumn value")
            columns[entity] = int(t.object.value)
    return columns


def _bind(entity: Term, role: str, columns: dict[str, int]) -> Binding:
    key = str(entity.value)
    if key not in columns:
        raise UnboundEntity(key)
    return Binding(key, role, columns[key])
