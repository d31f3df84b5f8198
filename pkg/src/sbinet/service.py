"""HTTP service: JSON API over the pipeline plus static bundle/viewer hosting.

The API mirrors the CLI surface for long-running, multi-client use: clients
POST the two annotated files as text and get the inspection, discovery or the
full bundle back as JSON.  The same app serves an emitted bundle directory
and the bundled viewer, which is how ``sbinet serve`` exposes a dashboard.
"""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse, HTMLResponse
from pydantic import BaseModel, Field

from . import __version__
from .dashboard import model_to_dict, validate_bundle, write_csv
from .errors import EmptyDashboard, PipelineError
from .paths import parse_criterion
from .pipeline import (
    RunOptions,
    build_output,
    discovery_report,
    inspect_report,
    load_pair_from_text,
)

VIEWER_DIR = Path(__file__).parent / "viewer"

_MEDIA_TYPES = {
    ".json": "application/json",
    ".csv": "text/csv; charset=utf-8",
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
}


class DatasetPair(BaseModel):
    nodes_text: str = Field(description="full contents of the annotated node-set file")
    edges_text: str = Field(description="full contents of the annotated edge-set file")
    coord_scale: str = "auto"


class BuildRequest(DatasetPair):
    k: int = 10
    criterion: str = "hops"
    reproducible: bool = True
    manifest: dict | None = None


class BindingReport(BaseModel):
    file: str
    role: str
    rows: int
    bindings: dict[str, int]


class InspectResponse(BaseModel):
    domain: str
    graph: str
    nodes: BindingReport
    edges: BindingReport
    network: dict
    capabilities: list[str]
    warnings: list[str]


class IndicatorReport(BaseModel):
    id: str
    metric: str
    applicable: bool
    missing: list[str]
    reason: str | None


class DiscoverResponse(BaseModel):
    domain: str
    capabilities: list[str]
    indicators: list[IndicatorReport]


class BuildResponse(BaseModel):
    dashboard: dict
    nodes_csv: str
    edges_csv: str
    metrics: dict
    warnings: list[str]


def _options(req: DatasetPair, **extra) -> RunOptions:
    return RunOptions(coord_scale=req.coord_scale, **extra)


def create_app(bundle_dir: Path | None = None, viewer_dir: Path | None = None) -> FastAPI:
    """App factory; ``bundle_dir`` is the emitted bundle served at the root."""
    app = FastAPI(title="sbinet", version=__version__)
    viewer = viewer_dir or VIEWER_DIR

    def _fail(exc: PipelineError) -> HTTPException:
        status = 422 if isinstance(exc, EmptyDashboard) else 400
        return HTTPException(status_code=status, detail=str(exc))

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/api/inspect", response_model=InspectResponse)
    def api_inspect(req: DatasetPair):
        try:
            pair = load_pair_from_text(req.nodes_text, req.edges_text, _options(req))
            return inspect_report(pair)
        except PipelineError as exc:
            raise _fail(exc) from exc

    @app.post("/api/discover", response_model=DiscoverResponse)
    def api_discover(req: DatasetPair):
        try:
            pair = load_pair_from_text(req.nodes_text, req.edges_text, _options(req))
            return discovery_report(pair)
        except PipelineError as exc:
            raise _fail(exc) from exc

    @app.post("/api/build", response_model=BuildResponse)
    def api_build(req: BuildRequest):
        try:
            options = _options(
                req,
                k=req.k,
                criterion=parse_criterion(req.criterion),
                reproducible=req.reproducible,
            )
            pair = load_pair_from_text(req.nodes_text, req.edges_text, options)
            output = build_output(pair, options, req.manifest)
            generated_at = (
                None
                if req.reproducible
                else datetime.now(timezone.utc).isoformat(timespec="seconds")
            )
            return BuildResponse(
                dashboard=model_to_dict(output.model, output.data, generated_at),
                nodes_csv=write_csv(output.data.nodes_table),
                edges_csv=write_csv(output.data.edges_table),
                metrics=output.data.metrics,
                warnings=output.warnings,
            )
        except PipelineError as exc:
            raise _fail(exc) from exc

    @app.get("/api/validate")
    def api_validate():
        if bundle_dir is None:
            raise HTTPException(status_code=404, detail="no bundle mounted")
        diagnostics = validate_bundle(bundle_dir)
        return {
            "valid": not diagnostics,
            "diagnostics": [
                {"severity": d.severity, "code": d.code, "message": d.message}
                for d in diagnostics
            ],
        }

    @app.get("/", response_class=HTMLResponse)
    def index():
        page = viewer / "index.html"
        if page.is_file():
            return HTMLResponse(page.read_text(encoding="utf-8"))
        return HTMLResponse("<!doctype html><title>sbinet</title><p>viewer assets not installed</p>")

    @app.get("/viewer/{asset_path:path}")
    def viewer_asset(asset_path: str):
        return _safe_file(viewer, asset_path)

    @app.get("/{file_path:path}")
    def bundle_file(file_path: str):
        if bundle_dir is None:
            raise HTTPException(status_code=404, detail="no bundle mounted")
        return _safe_file(bundle_dir, file_path)

    return app


def _safe_file(root: Path, rel: str) -> FileResponse:
    target = (root / rel).resolve()
    if not str(target).startswith(str(root.resolve())) or not target.is_file():
        raise HTTPException(status_code=404, detail=f"{rel} not found")
    media = _MEDIA_TYPES.get(target.suffix.lower(), "application/octet-stream")
    return FileResponse(target, media_type=media)
