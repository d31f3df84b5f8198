"""Conceptual dashboard model, user customization and bundle emission.

A dashboard bundle is a directory: ``dashboard.json`` (the interactive-object
model), ``nodes.csv`` / ``edges.csv`` (the enriched tables) and
``metrics.json`` (scalar and path results).  Emission is deterministic:
sorted keys, 9-significant-digit floats, byte-identical across runs on the
same input.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from .annotated import DataTable, parse_csv
from .catalog import (
    OP_AVERAGE,
    OP_COUNT,
    OP_DIRECT,
    OP_SUM,
    VIZ_BAR,
    VIZ_HISTOGRAM,
    VIZ_MAP_PATH,
    VIZ_MAP_POINTS,
    VIZ_SCATTER,
    IndicatorSpec,
    builtin_catalog,
    indicator_title,
)
from .errors import (
    DuplicateObjectId,
    EmptyDashboard,
    MissingResult,
    SchemaViolation,
    UnknownColumn,
    UnknownObjectId,
)
from .kg import DomainClass
from .metrics import format_number

SCHEMA_VERSION = "1"
KNOWN_VIZ = (VIZ_HISTOGRAM, VIZ_BAR, VIZ_SCATTER, VIZ_MAP_POINTS, VIZ_MAP_PATH)
KNOWN_OPS = (OP_AVERAGE, OP_SUM, OP_COUNT, OP_DIRECT)
KNOWN_DATA = ("nodes", "edges", "metrics")

DASHBOARD_FILE = "dashboard.json"
NODES_FILE = "nodes.csv"
EDGES_FILE = "edges.csv"
METRICS_FILE = "metrics.json"


@dataclass(frozen=True)
class InteractiveObject:
    id: str
    title: str
    viz: str
    data: str
    measure: dict
    dimension: dict | None = None
    style: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "viz": self.viz,
            "data": self.data,
            "dimension": self.dimension,
            "measure": self.measure,
            "style": self.style,
        }


@dataclass(frozen=True)
class ConceptualModel:
    domain: DomainClass
    objects: tuple[InteractiveObject, ...]
    source: dict[str, str]
    columns: dict[str, tuple[str, ...]]  # data source -> available fields


@dataclass(frozen=True)
class BundleData:
    nodes_table: DataTable
    edges_table: DataTable
    metrics: dict
    node_fields: dict[str, str | None]  # key/label/lat/lon field names
    edge_fields: dict[str, str | None]


def _style_for(spec: IndicatorSpec, results: dict, k: int) -> dict:
    if spec.id == "avg-interconnections":
        return {"reference_line": float(results[spec.id])}
    if spec.id == "connections-vs-usage":
        return {"x_field": "sbi_degree"}
    if spec.id == "communities-map":
        return {"color_by": "sbi_community", "palette": "categorical"}
    if spec.id == "centrality-map":
        return {"color_by": "sbi_degree_centrality", "palette": "sequential",
                "highlight": {"top_quantile": 0.9}}
    if spec.id == "lowest-offer":
        return {"order": "ascending", "limit": k}
    if spec.id == "terminal-candidates":
        return {"color_by": "sbi_betweenness", "palette": "sequential",
                "highlight": {"top_quantile": 0.9}}
    if spec.id == "express-route-candidates":
        return {"limit": k}
    return {}


def build_conceptual_model(
    applicable_ids: list[str],
    results: dict,
    domain: DomainClass,
    *,
    columns: dict[str, tuple[str, ...]],
    source: dict[str, str] | None = None,
    k: int = 10,
) -> ConceptualModel:
    """One interactive object per applicable indicator, in catalog order."""
    if not applicable_ids:
        raise EmptyDashboard("no applicable indicator; nothing to generate")
    wanted = set(applicable_ids)
    objects = []
    for spec in builtin_catalog():
        if spec.id not in wanted:
            continue
        if spec.id not in results:
            raise MissingResult(spec.id)
        objects.append(
            InteractiveObject(
                id=spec.id,
                title=indicator_title(spec.id, domain),
                viz=spec.viz,
                data=spec.data,
                dimension={"field": spec.dimension_field} if spec.dimension_field else None,
                measure={"op": spec.measure_op, "field": spec.measure_field},
                style=_style_for(spec, results, k),
            )
        )
    return ConceptualModel(domain, tuple(objects), dict(source or {}), dict(columns))


def apply_customization(model: ConceptualModel, manifest: dict | None) -> ConceptualModel:
    """Reorder objects, override titles/bindings and append user objects.

    Idempotent for an empty manifest; override application is idempotent too.
    """
    if not manifest:
        return model
    objects = list(model.objects)
    known = {o.id for o in objects}

    for oid, override in (manifest.get("overrides") or {}).items():
        if oid not in known:
            raise UnknownObjectId(f"override targets unknown object {oid!r}")
        idx = next(i for i, o in enumerate(objects) if o.id == oid)
        obj = objects[idx]
        changes: dict = {}
        if "title" in override:
            changes["title"] = str(override["title"])
        if "dimension" in override:
            dim = override["dimension"]
            if dim is not None:
                _check_column(model, obj.data, dim.get("field"))
            changes["dimension"] = dim
        if "measure" in override:
            measure = dict(override["measure"])
            _check_measure(model, obj.data, measure)
            changes["measure"] = measure
        objects[idx] = replace(obj, **changes)

    for raw in manifest.get("add") or []:
        obj = _object_from_manifest(model, raw)
        if obj.id in known:
            raise DuplicateObjectId(f"object id {obj.id!r} already exists")
        known.add(obj.id)
        objects.append(obj)

    order = manifest.get("order")
    if order:
        by_id = {o.id: o for o in objects}
        for oid in order:
            if oid not in by_id:
                raise UnknownObjectId(f"order references unknown object {oid!r}")
        head = [by_id[oid] for oid in order]
        tail = [o for o in objects if o.id not in set(order)]
        objects = head + tail

    return replace(model, objects=tuple(objects))


def _object_from_manifest(model: ConceptualModel, raw: dict) -> InteractiveObject:
    for required in ("id", "viz", "data", "measure"):
        if required not in raw:
            raise SchemaViolation(f"added object is missing {required!r}")
    if raw["viz"] not in KNOWN_VIZ:
        raise SchemaViolation(f"unknown visualization {raw['viz']!r}")
    if raw["data"] not in KNOWN_DATA:
        raise SchemaViolation(f"unknown data reference {raw['data']!r}")
    measure = dict(raw["measure"])
    _check_measure(model, raw["data"], measure)
    dimension = raw.get("dimension")
    if dimension is not None:
        _check_column(model, raw["data"], dimension.get("field"))
    return InteractiveObject(
        id=str(raw["id"]),
        title=str(raw.get("title", raw["id"])),
        viz=raw["viz"],
        data=raw["data"],
        dimension=dimension,
        measure=measure,
        style=dict(raw.get("style") or {}),
    )


def _check_measure(model: ConceptualModel, data: str, measure: dict) -> None:
    if measure.get("op") not in KNOWN_OPS:
        raise SchemaViolation(f"unknown measure operation {measure.get('op')!r}")
    _check_column(model, data, measure.get("field"))


def _check_column(model: ConceptualModel, data: str, column: str | None) -> None:
    if column is None:
        raise UnknownColumn("binding is missing its field name")
    if column not in model.columns.get(data, ()):
        raise UnknownColumn(f"column {column!r} does not exist in {data}")


# --- serialization ----------------------------------------------------------------

def _round_floats(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(format_number(value))
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def model_to_dict(
    model: ConceptualModel, data: BundleData, generated_at: str | None
) -> dict:
    doc = {
        "version": SCHEMA_VERSION,
        "domain": model.domain.value,
        "source": model.source,
        "objects": [o.to_dict() for o in model.objects],
        "data": {
            "nodes": {"file": NODES_FILE, **{k: v for k, v in data.node_fields.items() if v}},
            "edges": {"file": EDGES_FILE, **{k: v for k, v in data.edge_fields.items() if v}},
            "metrics": {"file": METRICS_FILE},
        },
    }
    if generated_at is not None:
        doc["generated_at"] = generated_at
    return _round_floats(doc)


def write_csv(table: DataTable) -> str:
    """Render a table so that re-reading it with the bundled parser round-trips."""

    def cell(value: str) -> str:
        if value == "":
            return value
        if any(c in value for c in ',"\n\r') or value != value.strip():
            return '"' + value.replace('"', '""') + '"'
        return value

    lines = [",".join(cell(c) for c in table.header)]
    lines.extend(",".join(cell(c) for c in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def emit_bundle(
    model: ConceptualModel,
    data: BundleData,
    out_dir: str | os.PathLike,
    *,
    reproducible: bool = False,
) -> Path:
    """Write the bundle directory; fails before writing if the model is unsound."""
    problems = _model_problems(model, data)
    if problems:
        raise SchemaViolation("; ".join(problems))

    generated_at = None if reproducible else datetime.now(timezone.utc).isoformat(timespec="seconds")
    doc = model_to_dict(model, data, generated_at)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_text(out / DASHBOARD_FILE, _dump_json(doc))
    _write_text(out / NODES_FILE, write_csv(data.nodes_table))
    _write_text(out / EDGES_FILE, write_csv(data.edges_table))
    _write_text(out / METRICS_FILE, _dump_json(_round_floats(data.metrics)))
    return out


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --- validation -------------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    severity: str  # fatal | error | warning
    code: str
    message: str


def _model_problems(model: ConceptualModel, data: BundleData) -> list[str]:
    problems = []
    node_cols = set(data.nodes_table.header)
    edge_cols = set(data.edges_table.header)
    metric_keys = set(data.metrics)
    seen: set[str] = set()
    for obj in model.objects:
        if obj.id in seen:
            problems.append(f"duplicate object id {obj.id!r}")
        seen.add(obj.id)
        problems.extend(_binding_problems(obj, node_cols, edge_cols, metric_keys))
    return problems


def _binding_problems(
    obj: InteractiveObject, node_cols: set, edge_cols: set, metric_keys: set
) -> list[str]:
    problems = []
    if obj.viz not in KNOWN_VIZ:
        problems.append(f"object {obj.id!r} has unknown viz {obj.viz!r}")
    if obj.data not in KNOWN_DATA:
        problems.append(f"object {obj.id!r} has unknown data reference {obj.data!r}")
        return problems

    def check(field_name: str | None, what: str) -> None:
        if field_name is None:
            return
        universe = {"nodes": node_cols, "edges": edge_cols, "metrics": metric_keys}[obj.data]
        if field_name not in universe:
            problems.append(f"object {obj.id!r} {what} {field_name!r} not found in {obj.data}")

    check(obj.measure.get("field"), "measure field")
    if obj.dimension is not None:
        check(obj.dimension.get("field"), "dimension field")
    for hint in ("color_by", "x_field"):
        value = obj.style.get(hint)
        if value is not None and obj.data in ("nodes", "edges"):
            universe = node_cols if obj.data == "nodes" else edge_cols
            if value not in universe:
                problems.append(f"object {obj.id!r} style {hint} {value!r} not found in {obj.data}")
    return problems


def validate_bundle(bundle_dir: str | os.PathLike) -> list[Diagnostic]:
    """Structural and referential checks; an empty list means the bundle is valid."""
    out: list[Diagnostic] = []
    root = Path(bundle_dir)

    dash_path = root / DASHBOARD_FILE
    if not dash_path.is_file():
        return [Diagnostic("fatal", "MissingFile", f"{DASHBOARD_FILE} not found in {root}")]
    try:
        doc = json.loads(dash_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        return [Diagnostic("fatal", "ParseError", f"{DASHBOARD_FILE}: {exc}")]

    for key in ("version", "domain", "objects", "data"):
        if key not in doc:
            out.append(Diagnostic("error", "SchemaViolation", f"missing top-level key {key!r}"))
    if doc.get("version") not in (None, SCHEMA_VERSION):
        out.append(Diagnostic("warning", "SchemaViolation", f"unknown schema version {doc.get('version')!r}"))
    if out and any(d.severity == "error" for d in out):
        return out

    tables: dict[str, set[str]] = {}
    for name, filename in (("nodes", NODES_FILE), ("edges", EDGES_FILE)):
        ref = doc["data"].get(name, {})
        path = root / ref.get("file", filename)
        if not path.is_file():
            out.append(Diagnostic("fatal", "MissingFile", f"{path.name} not found"))
            continue
        try:
            table = parse_csv(path.read_text(encoding="utf-8"))
        except Exception as exc:
            out.append(Diagnostic("fatal", "ParseError", f"{path.name}: {exc}"))
            continue
        tables[name] = set(table.header)
        for field_key, value in ref.items():
            if field_key.endswith("_field") and value not in table.header:
                out.append(
                    Diagnostic("error", "UnresolvedBinding",
                               f"data.{name}.{field_key} {value!r} not in {path.name}")
                )

    metrics_path = root / doc["data"].get("metrics", {}).get("file", METRICS_FILE)
    metric_keys: set[str] = set()
    if not metrics_path.is_file():
        out.append(Diagnostic("fatal", "MissingFile", f"{metrics_path.name} not found"))
    else:
        try:
            metric_keys = set(json.loads(metrics_path.read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as exc:
            out.append(Diagnostic("fatal", "ParseError", f"{metrics_path.name}: {exc}"))

    seen: set[str] = set()
    for raw in doc.get("objects", []):
        oid = raw.get("id", "<missing id>")
        if oid in seen:
            out.append(Diagnostic("error", "SchemaViolation", f"duplicate object id {oid!r}"))
        seen.add(oid)
        obj = InteractiveObject(
            id=oid,
            title=raw.get("title", ""),
            viz=raw.get("viz", ""),
            data=raw.get("data", ""),
            measure=raw.get("measure") or {},
            dimension=raw.get("dimension"),
            style=raw.get("style") or {},
        )
        for problem in _binding_problems(
            obj, tables.get("nodes", set()), tables.get("edges", set()), metric_keys
        ):
            code = "SchemaViolation" if "unknown" in problem else "UnresolvedBinding"
            out.append(Diagnostic("error", code, problem))
    return out
