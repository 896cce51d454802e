"""Command-line drivers.

Subcommands:
  serve            JSON-RPC tool server (WebSocket, or --stdio)
  run-session      drive a full scripted story session headlessly
  render-pipeline  one-shot prompt -> panorama -> projector frames
  rig-check        validate a calibration file
  bless-goldens    regenerate golden fixtures (explicit opt-in)

Every command is deterministic given its inputs and seed, and exits nonzero
on any error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

from .config import Config, assets_root
from .errors import StorycasterError

log = logging.getLogger(__name__)


def _load_config(path: str | None) -> Config:
    if path is None:
        return Config.load(assets_root() / "configs" / "default.json")
    return Config.load(path)


def _cmd_serve(args) -> int:
    from .server.service import ToolService
    from .server.stdio import serve_stdio
    from .server.ws import WebSocketServer

    config = _load_config(args.config)
    if args.backend:
        config.backend = args.backend
    service = ToolService(config)
    if args.stdio:
        serve_stdio(service)
        return 0
    static = Path(args.static).resolve() if args.static else None
    server = WebSocketServer(service, host=args.host, port=args.port, static_dir=static)
    print(f"storycaster server on ws://{args.host}:{args.port} (artifacts over HTTP)")
    try:
        asyncio.run(server.run())
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_run_session(args) -> int:
    from .artifacts import ArtifactStore
    from .backends import ScriptedTranscriber
    from .runtime import SessionRuntime

    config = _load_config(args.config)
    if args.seed is not None:
        config.seed = args.seed
    outdir = Path(args.outdir)
    runtime = SessionRuntime(
        config, artifact_store=ArtifactStore(outdir / "artifacts"), session_id="cli"
    )
    transcriber = ScriptedTranscriber.from_file(args.script)
    try:
        runtime.run_script(transcriber)
    finally:
        runtime.write_outputs(outdir)
    acts = runtime.narrator.ctx.acts_completed
    print(f"session complete: state={runtime.state.label()} acts={acts}")
    print(f"outputs in {outdir}")
    return 0


def _cmd_render_pipeline(args) -> int:
    from .pipeline import render_pipeline

    config = _load_config(args.config)
    manifest = render_pipeline(
        config,
        prompt=args.prompt,
        seed=args.seed if args.seed is not None else config.seed,
        outdir=args.outdir,
        rig_path=args.rig,
        control_strength=args.strength,
    )
    print(json.dumps(manifest, indent=2))
    return 0


def _cmd_rig_check(args) -> int:
    from .calibration import load_rig

    rig = load_rig(args.rig)
    print(f"rig ok: {len(rig.cameras)} cameras, {len(rig.projectors)} projectors")
    for model in rig.cameras + rig.projectors:
        kind = "camera" if model in rig.cameras else "projector"
        print(f"  {kind} {model.name}: {model.width}x{model.height} fx={model.fx:.1f}")
    return 0


def _cmd_bless_goldens(args) -> int:
    if not args.bless:
        print("refusing to regenerate goldens without --bless", file=sys.stderr)
        return 2
    import tempfile

    from .artifacts import ArtifactStore
    from .backends import ScriptedTranscriber
    from .runtime import SessionRuntime

    config = Config.load(assets_root() / "configs" / "small.json")
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    # goldens pin the event stream and transcript; artifact bytes are already
    # pinned by the content hashes inside the events, so they stay out of git
    with tempfile.TemporaryDirectory() as scratch:
        runtime = SessionRuntime(
            config, artifact_store=ArtifactStore(scratch), session_id="golden"
        )
        runtime.run_script(
            ScriptedTranscriber.from_file(assets_root() / "sessions" / "demo.txt")
        )
    (outdir / "transcript.txt").write_text(runtime.transcript_text())
    with (outdir / "events.jsonl").open("w") as fh:
        for event in runtime.events:
            fh.write(json.dumps(event, sort_keys=True) + "\n")
    print(f"goldens written to {outdir}")
    # keep the browser console's replay fixture in lockstep
    ui_fixtures = outdir.parent.parent.parent / "frontend" / "test" / "fixtures" / "demo"
    if ui_fixtures.is_dir():
        for name in ("transcript.txt", "events.jsonl"):
            (ui_fixtures / name).write_bytes((outdir / name).read_bytes())
        print(f"console fixtures refreshed in {ui_fixtures}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storycaster",
        description="Room-scale co-creative storytelling engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the JSON-RPC tool server")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", help="config JSON path (default: bundled)")
    p.add_argument("--backend", choices=["mock", "remote"], help="override provider kind")
    p.add_argument("--stdio", action="store_true", help="serve line-delimited JSON-RPC on stdio")
    p.add_argument("--static", help="serve a directory of static UI files over HTTP")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("run-session", help="run a scripted story session")
    p.add_argument("script", help="line-delimited utterance file")
    p.add_argument("--config", help="config JSON path (default: bundled)")
    p.add_argument("--outdir", default="session_out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_run_session)

    p = sub.add_parser("render-pipeline", help="prompt -> panorama -> projector frames")
    p.add_argument("--prompt", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--outdir", default="pipeline_out")
    p.add_argument("--rig", help="rig file (default: from config)")
    p.add_argument("--config", help="config JSON path (default: bundled)")
    p.add_argument("--strength", type=float, help="override depth control strength")
    p.set_defaults(func=_cmd_render_pipeline)

    p = sub.add_parser("rig-check", help="validate a calibration file")
    p.add_argument("rig")
    p.set_defaults(func=_cmd_rig_check)

    p = sub.add_parser("bless-goldens", help="regenerate golden fixtures")
    p.add_argument("--bless", action="store_true", help="confirm regeneration")
    p.add_argument("--outdir", default="tests/goldens/demo")
    p.set_defaults(func=_cmd_bless_goldens)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StorycasterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
