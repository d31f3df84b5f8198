"""Command-line entry point.

``inspect`` / ``discover`` / ``build`` run the pipeline directly and print a
machine-readable JSON payload on stdout; human diagnostics go to stderr.
``serve`` hands the emitted bundle to the HTTP service.

Exit codes: 0 success, 2 input/validation failure, 3 empty result,
4 environment problem (e.g. port in use).
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .errors import EmptyDashboard, PipelineError
from .paths import parse_criterion
from .pipeline import RunOptions, build_output, discovery_report, inspect_report, load_pair_from_files

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_ENV = 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbinet",
        description="Generate interactive dashboards from annotated network datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pair(p: argparse.ArgumentParser) -> None:
        p.add_argument("--nodes", required=True, help="annotated node-set file")
        p.add_argument("--edges", required=True, help="annotated edge-set file")
        p.add_argument(
            "--coord-scale",
            choices=("auto", "none", "micro"),
            default="auto",
            help="coordinate scaling: auto divides |values| > 1000 by 10^6 (default: auto)",
        )

    p_inspect = sub.add_parser("inspect", help="report domain, roles, bindings and capabilities")
    add_pair(p_inspect)

    p_discover = sub.add_parser("discover", help="list applicable indicators with reasons")
    add_pair(p_discover)

    p_build = sub.add_parser("build", help="compute metrics and emit a dashboard bundle")
    add_pair(p_build)
    p_build.add_argument("--out", required=True, help="output bundle directory")
    p_build.add_argument("--manifest", help="customization manifest (JSON)")
    p_build.add_argument("--k", type=int, default=10, help="size of top/bottom rankings (default: 10)")
    p_build.add_argument(
        "--criterion", default="hops", help="path criterion: hops or weight (default: hops)"
    )
    p_build.add_argument(
        "--reproducible", action="store_true", help="omit timestamps for byte-identical output"
    )

    p_serve = sub.add_parser("serve", help="serve a bundle and the viewer over HTTP")
    p_serve.add_argument("--out", required=True, help="bundle directory to serve")
    p_serve.add_argument("--port", type=int, default=8765, help="listen port (default: 8765)")
    return parser


def _load_manifest(path: str | None) -> dict | None:
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True, ensure_ascii=False)
    sys.stdout.write("\n")


def _options(args: argparse.Namespace) -> RunOptions:
    return RunOptions(
        k=getattr(args, "k", 10),
        criterion=parse_criterion(getattr(args, "criterion", "hops")),
        reproducible=getattr(args, "reproducible", False),
        coord_scale=getattr(args, "coord_scale", "auto"),
    )


def cmd_inspect(args: argparse.Namespace) -> int:
    pair = load_pair_from_files(args.nodes, args.edges, _options(args))
    _emit(inspect_report(pair))
    return EXIT_OK


def cmd_discover(args: argparse.Namespace) -> int:
    pair = load_pair_from_files(args.nodes, args.edges, _options(args))
    _emit(discovery_report(pair))
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    from .dashboard import emit_bundle

    options = _options(args)
    manifest = _load_manifest(args.manifest)
    pair = load_pair_from_files(args.nodes, args.edges, options)
    output = build_output(pair, options, manifest)
    out_dir = emit_bundle(output.model, output.data, args.out, reproducible=options.reproducible)
    for warning in output.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    _emit(
        {
            "out": str(out_dir),
            "domain": output.model.domain.value,
            "objects": [o.id for o in output.model.objects],
            "metrics": {
                key: output.data.metrics[key]
                for key in ("node_count", "edge_count", "component_count")
                if key in output.data.metrics
            },
        }
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    bundle = Path(args.out)
    if not (bundle / "dashboard.json").is_file():
        print(f"error: no dashboard.json in {bundle}; run 'sbinet build' first", file=sys.stderr)
        return EXIT_INPUT

    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind(("127.0.0.1", args.port))
        probe.close()
    except OSError as exc:
        print(f"error: cannot bind port {args.port}: {exc}", file=sys.stderr)
        return EXIT_ENV

    import uvicorn

    from .service import create_app

    app = create_app(bundle_dir=bundle)
    print(f"serving {bundle} on http://127.0.0.1:{args.port}/", file=sys.stderr)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "inspect": cmd_inspect,
        "discover": cmd_discover,
        "build": cmd_build,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except EmptyDashboard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: invalid manifest: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
