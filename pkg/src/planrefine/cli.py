"""Command-line entry point.

Subcommands wire the pipeline stages together: validate, refine, check,
render, export, prompt, pipeline. Configuration precedence is flags over
environment variables (PLANREFINE_*) over a JSON config file; exit codes
are 0 success, 1 input or parse error, 2 refinement or check warnings or
placement failures, 3 check errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from .checks import (
    DEFAULT_REQUIREMENTS,
    CheckReport,
    RoomRequirements,
    requirements_from_json,
    run_all_checks,
)
from .codec import emit_plan, parse_plan, sanitize_llm_response
from .errors import PlanError
from .export import export_bim_scripts, render_svg
from .model import (
    DEFAULT_CATALOG,
    FloorPlan,
    FurnitureCatalog,
    catalog_from_json,
    occupancy_from_plan,
    resolve_catalog,
)
from .prompts import LayoutBrief, TransportConfig, build_layout_prompt, build_script_prompt, fetch_layout
from .refine import (
    PlacementTrace,
    RefinerConfig,
    brute_force_feasible_set,
    is_feasible,
    refine_plan,
)
from .topology import build_topology

_ENV_PREFIX = "PLANREFINE_"

_SETTING_TYPES: dict[str, Callable] = {
    "delta": float,
    "lambda": float,
    "max_iters": int,
    "flush_tol": float,
    "grid": float,
    "catalog": str,
    "requirements": str,
    "transport": str,
    "transport_location": str,
    "model": str,
    "timeout": float,
    "retries": int,
    "format": str,
    "jobs": int,
}

_DEFAULTS = {
    "delta": 1.0,
    "lambda": 0.5,
    "max_iters": 10000,
    "flush_tol": 0.05,
    "grid": 0.5,
    "catalog": None,
    "requirements": None,
    "transport": "file",
    "transport_location": None,
    "model": "",
    "timeout": 30.0,
    "retries": 0,
    "format": "text",
    "jobs": 1,
}


def _resolve_settings(args: argparse.Namespace) -> dict:
    """Merge flag, environment, and config-file values per precedence."""
    config: dict = {}
    config_path = getattr(args, "config", None) or os.environ.get(
        _ENV_PREFIX + "CONFIG"
    )
    if config_path:
        with open(config_path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise PlanError(f"{config_path}: config file must hold a JSON object")
    settings = {}
    for key, cast in _SETTING_TYPES.items():
        attr = "step_lambda" if key == "lambda" else key
        flag = getattr(args, attr, None)
        env = os.environ.get(_ENV_PREFIX + key.upper())
        if flag is not None:
            settings[key] = flag
        elif env is not None:
            settings[key] = cast(env)
        elif key in config:
            settings[key] = cast(config[key])
        else:
            settings[key] = _DEFAULTS[key]
    return settings


def _refiner_config(settings: dict) -> RefinerConfig:
    return RefinerConfig(
        clearance_delta=settings["delta"],
        step_lambda=settings["lambda"],
        flush_tolerance=settings["flush_tol"],
        max_iterations=settings["max_iters"],
    )


def _load_catalog(settings: dict) -> FurnitureCatalog:
    if settings["catalog"]:
        with open(settings["catalog"], "r", encoding="utf-8") as fh:
            return catalog_from_json(fh.read())
    return DEFAULT_CATALOG


def _load_requirements(settings: dict) -> RoomRequirements:
    if settings["requirements"]:
        with open(settings["requirements"], "r", encoding="utf-8") as fh:
            return requirements_from_json(fh.read())
    return DEFAULT_REQUIREMENTS


def _load_plan(path: str, settings: dict) -> FloorPlan:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    plan = parse_plan(text)
    plan = resolve_catalog(plan, _load_catalog(settings))
    return build_topology(plan)


def _guard_output(out: str | None, *inputs: str) -> None:
    # Commands never overwrite their own inputs.
    if out is None or out == "-":
        return
    target = Path(out).resolve()
    for source in inputs:
        if Path(source).resolve() == target:
            raise PlanError(f"output path {out} would overwrite input {source}")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _trace_payload(traces: Sequence[PlacementTrace]) -> dict:
    out = []
    for trace in traces:
        out.append(
            {
                "item": trace.item_uid,
                "outcome": trace.outcome,
                "final_center": (
                    [trace.final_center.x, trace.final_center.y]
                    if trace.final_center is not None
                    else None
                ),
                "final_orientation": trace.final_orientation,
                "steps": [
                    {
                        "center": [s.center.x, s.center.y],
                        "orientation": s.orientation,
                        "in_room": s.verdict.in_room,
                        "clearance_ok": s.verdict.clearance_ok,
                        "flush_ok": s.verdict.flush_ok,
                    }
                    for s in trace.steps
                ],
            }
        )
    return {"traces": out}


def _plan_files(path: str) -> list[str]:
    p = Path(path)
    if p.is_dir():
        return [str(f) for f in sorted(p.glob("*.json"))]
    return [str(p)]


def _run_batch(
    files: list[str], jobs: int, worker: Callable[[str], tuple[int, str]]
) -> int:
    """Run a per-file worker, print outputs in input order, merge codes."""
    if len(files) == 1:
        code, text = worker(files[0])
        sys.stdout.write(text)
        return code
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, files))
    else:
        results = [worker(f) for f in files]
    worst = 0
    for path, (code, text) in zip(files, results):
        sys.stdout.write(f"== {path} ==\n")
        sys.stdout.write(text)
        worst = max(worst, code)
    return worst


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)

    def worker(path: str) -> tuple[int, str]:
        try:
            plan = _load_plan(path, settings)
        except (PlanError, OSError, json.JSONDecodeError) as exc:
            return 1, _diag(settings, "validate", exc)
        summary = {
            "command": "validate",
            "ok": True,
            "walls": len(plan.walls),
            "doors": len(plan.doors),
            "windows": len(plan.windows),
            "furniture": len(plan.furniture),
            "rooms": sorted(r.name for r in plan.rooms),
        }
        if settings["format"] == "structured":
            return 0, json.dumps(summary, indent=2) + "\n"
        rooms = ", ".join(summary["rooms"])
        return 0, (
            f"ok: {summary['walls']} walls, {summary['doors']} doors, "
            f"{summary['windows']} windows, {summary['furniture']} furniture "
            f"items, rooms: {rooms}\n"
        )

    return _run_batch(_plan_files(args.plan), settings["jobs"], worker)


def _diag(settings: dict, command: str, exc: Exception) -> str:
    if settings["format"] == "structured":
        payload = {
            "command": command,
            "ok": False,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        return json.dumps(payload, indent=2) + "\n"
    return f"error [{type(exc).__name__}] {exc}\n"


def _verify_report(
    plan: FloorPlan, traces: Sequence[PlacementTrace], cfg: RefinerConfig, grid: float
) -> tuple[list[str], bool]:
    """Re-check placed items and compare against the exhaustive oracle."""
    lines = []
    unsound = False
    by_uid = {item.uid: item for item in plan.furniture}
    for trace in traces:
        item = by_uid[trace.item_uid]
        room = plan.room_by_name(item.room_name)
        if room is None:
            lines.append(f"{trace.item_uid}: no room, skipped")
            continue
        occ = occupancy_from_plan(
            plan, exclude=item.uid, wall_half_thickness=cfg.wall_half_thickness
        )
        if trace.outcome == "placed":
            center = item.current_center()
            verdict = is_feasible(
                item, center, room, occ, cfg, orientation=item.orientation
            )
            if not verdict.ok:
                unsound = True
                lines.append(f"{trace.item_uid}: UNSOUND final position")
                continue
            cells = brute_force_feasible_set(item, room, occ, cfg, grid)
            near = any(
                math.hypot(x - center.x, y - center.y) <= 2 * cfg.step_lambda + 1e-9
                for x, y, _ in cells
            )
            tag = "near-oracle" if near else "far-from-oracle"
            lines.append(f"{trace.item_uid}: feasible, {tag}")
        else:
            cells = brute_force_feasible_set(item, room, occ, cfg, grid)
            tag = "oracle-agrees-infeasible" if not cells else "oracle-found-cells"
            lines.append(f"{trace.item_uid}: failed, {tag}")
    return lines, unsound


def cmd_refine(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    cfg = _refiner_config(settings)

    def worker(path: str) -> tuple[int, str]:
        try:
            _guard_output(args.output, path)
            if args.trace_out:
                _guard_output(args.trace_out, path)
            plan = _load_plan(path, settings)
            refined, traces = refine_plan(plan, cfg)
        except (PlanError, OSError, json.JSONDecodeError) as exc:
            return 1, _diag(settings, "refine", exc)
        failed = [t.item_uid for t in traces if t.outcome == "failed"]
        out_path = args.output
        if out_path is None and Path(path).is_file() and len(_plan_files(args.plan)) > 1:
            out_path = str(Path(path).with_suffix(".refined.json"))
        _write_text(out_path, emit_plan(refined))
        if args.trace_out:
            _write_text(
                args.trace_out,
                json.dumps(_trace_payload(traces), indent=2) + "\n",
            )
        text = ""
        exit_code = 0
        verify_lines: list[str] = []
        if args.verify:
            verify_lines, unsound = _verify_report(refined, traces, cfg, settings["grid"])
            if unsound:
                exit_code = 2
        if failed:
            exit_code = 2
        if settings["format"] == "structured":
            payload = {
                "command": "refine",
                "placed": [t.item_uid for t in traces if t.outcome == "placed"],
                "failed": failed,
                "verify": verify_lines,
            }
            text = json.dumps(payload, indent=2) + "\n"
        else:
            placed = sum(1 for t in traces if t.outcome == "placed")
            text = f"refined: {placed}/{len(traces)} items placed\n"
            for uid in failed:
                text += f"failed: {uid}\n"
            for line in verify_lines:
                text += f"verify: {line}\n"
        return exit_code, text

    return _run_batch(_plan_files(args.plan), settings["jobs"], worker)


def cmd_check(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    cfg = _refiner_config(settings)

    def worker(path: str) -> tuple[int, str]:
        try:
            plan = _load_plan(path, settings)
            requirements = _load_requirements(settings)
            report = run_all_checks(plan, requirements, cfg, settings["grid"])
        except (PlanError, OSError, json.JSONDecodeError) as exc:
            return 1, _diag(settings, "check", exc)
        if settings["format"] == "structured":
            payload = {"command": "check", **report.to_payload()}
            payload["exit_code"] = report.exit_code()
            return report.exit_code(), json.dumps(payload, indent=2) + "\n"
        return report.exit_code(), report.to_text()

    return _run_batch(_plan_files(args.plan), settings["jobs"], worker)


def cmd_render(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    try:
        _guard_output(args.output, args.plan)
        plan = _load_plan(args.plan, settings)
        svg = render_svg(plan, scale=args.scale)
        _write_text(args.output, svg)
    except (PlanError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stdout.write(_diag(settings, "render", exc))
        return 1
    if args.output and args.output != "-":
        sys.stdout.write(f"wrote {args.output}\n")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    try:
        plan = _load_plan(args.plan, settings)
        scripts = export_bim_scripts(plan)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for name in sorted(scripts):
            with open(out_dir / name, "w", encoding="utf-8") as fh:
                fh.write(scripts[name])
    except (PlanError, OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(_diag(settings, "export", exc))
        return 1
    for name in sorted(scripts):
        sys.stdout.write(f"wrote {out_dir / name}\n")
    return 0


def _load_brief(path: str) -> LayoutBrief:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise PlanError(f"{path}: brief must be a JSON object")
    furniture = data.get("furniture", {})
    if isinstance(furniture, dict):
        furniture_pairs = [(k, tuple(v)) for k, v in furniture.items()]
    else:
        furniture_pairs = [(k, tuple(v)) for k, v in furniture]
    return LayoutBrief(
        width=data.get("width", 0),
        length=data.get("length", 0),
        rooms=tuple(data.get("rooms", ())),
        furniture=furniture_pairs,
        notes=data.get("notes", ""),
    )


def cmd_prompt(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    try:
        if args.script_class:
            text = build_script_prompt(args.script_class)
        else:
            if not args.brief:
                raise PlanError("a brief file is required for layout prompts")
            text = build_layout_prompt(_load_brief(args.brief))
        _write_text(args.output, text)
    except (PlanError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stdout.write(_diag(settings, "prompt", exc))
        return 1
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    settings = _resolve_settings(args)
    cfg = _refiner_config(settings)
    out_dir = Path(args.out_dir)
    stage = "setup"
    try:
        out_dir.mkdir(parents=True, exist_ok=True)

        stage = "prompt"
        brief = _load_brief(args.brief)
        prompt = build_layout_prompt(brief)
        _write_text(str(out_dir / "prompt.txt"), prompt)

        stage = "fetch"
        location = settings["transport_location"]
        if not location:
            raise PlanError("no transport location configured")
        transport = TransportConfig(
            mode=settings["transport"],
            location=location,
            timeout=settings["timeout"],
            retries=settings["retries"],
        )
        raw = fetch_layout(prompt, transport)
        _write_text(str(out_dir / "response.txt"), raw)

        stage = "parse"
        plan = parse_plan(sanitize_llm_response(raw))
        plan = resolve_catalog(plan, _load_catalog(settings))

        stage = "topology"
        plan = build_topology(plan)
        _write_text(str(out_dir / "parsed.json"), emit_plan(plan))

        stage = "refine"
        refined, traces = refine_plan(plan, cfg)
        _write_text(str(out_dir / "refined.json"), emit_plan(refined))
        _write_text(
            str(out_dir / "traces.json"),
            json.dumps(_trace_payload(traces), indent=2) + "\n",
        )

        stage = "check"
        requirements = _load_requirements(settings)
        report = run_all_checks(refined, requirements, cfg, settings["grid"])
        if settings["format"] == "structured":
            _write_text(
                str(out_dir / "report.json"),
                json.dumps(report.to_payload(), indent=2) + "\n",
            )
        else:
            _write_text(str(out_dir / "report.txt"), report.to_text())

        stage = "render"
        _write_text(str(out_dir / "plan.svg"), render_svg(refined))

        stage = "export"
        scripts = export_bim_scripts(refined)
        scripts_dir = out_dir / "scripts"
        scripts_dir.mkdir(parents=True, exist_ok=True)
        for name in sorted(scripts):
            with open(scripts_dir / name, "w", encoding="utf-8") as fh:
                fh.write(scripts[name])
    except (PlanError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stdout.write(f"pipeline halted at {stage}: [{type(exc).__name__}] {exc}\n")
        return 1

    failed = [t.item_uid for t in traces if t.outcome == "failed"]
    sys.stdout.write(
        f"pipeline complete: {len(traces) - len(failed)}/{len(traces)} items "
        f"placed, {report.error_count} check error(s), "
        f"{report.warning_count} warning(s)\n"
    )
    if report.error_count:
        return 3
    if failed or report.warning_count:
        return 2
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file with default settings")
    parser.add_argument("--delta", type=float, help="clearance distance in feet")
    parser.add_argument(
        "--lambda", dest="step_lambda", type=float, help="refiner step in feet"
    )
    parser.add_argument("--max-iters", dest="max_iters", type=int, help="step budget")
    parser.add_argument(
        "--flush-tol", dest="flush_tol", type=float, help="wall-contact tolerance"
    )
    parser.add_argument("--grid", type=float, help="grid cell size in feet")
    parser.add_argument("--catalog", help="furniture catalog JSON file")
    parser.add_argument("--requirements", help="room requirements JSON file")
    parser.add_argument(
        "--transport", choices=("file", "endpoint"), help="layout response source"
    )
    parser.add_argument(
        "--transport-location",
        dest="transport_location",
        help="response file path or endpoint URL",
    )
    parser.add_argument("--model", help="model name sent to the endpoint")
    parser.add_argument("--timeout", type=float, help="endpoint timeout in seconds")
    parser.add_argument("--retries", type=int, help="endpoint retry count")
    parser.add_argument(
        "--format", choices=("text", "structured"), help="output format"
    )
    parser.add_argument("--jobs", type=int, help="parallel workers for batch input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planrefine",
        description="Floor-plan layout toolkit: validation, refinement, checks, export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a plan and derive its rooms")
    p.add_argument("plan", help="plan JSON file or directory of plans")
    _common_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("refine", help="repair furniture placements")
    p.add_argument("plan", help="plan JSON file or directory of plans")
    p.add_argument("-o", "--output", help="refined plan path (default stdout)")
    p.add_argument("--trace-out", dest="trace_out", help="write placement traces JSON")
    p.add_argument(
        "--verify",
        action="store_true",
        help="re-check placements against the exhaustive oracle",
    )
    _common_flags(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("check", help="run rule-based plan checks")
    p.add_argument("plan", help="plan JSON file or directory of plans")
    _common_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="render a plan to SVG")
    p.add_argument("plan", help="plan JSON file")
    p.add_argument("-o", "--output", help="SVG path (default stdout)")
    p.add_argument("--scale", type=float, default=10.0, help="pixels per foot")
    _common_flags(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("export", help="write BIM automation scripts")
    p.add_argument("plan", help="plan JSON file")
    p.add_argument("out_dir", help="directory for script files")
    _common_flags(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("prompt", help="emit generation prompts")
    p.add_argument("brief", nargs="?", help="brief JSON file (layout prompts)")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument(
        "--script-class",
        dest="script_class",
        choices=("walls", "doors", "windows", "furniture"),
        help="emit a script prompt for this element class instead",
    )
    _common_flags(p)
    p.set_defaults(func=cmd_prompt)

    p = sub.add_parser("pipeline", help="run brief to artifacts end to end")
    p.add_argument("brief", help="brief JSON file")
    p.add_argument("out_dir", help="directory for pipeline artifacts")
    _common_flags(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlanError as exc:
        sys.stdout.write(f"error [{type(exc).__name__}] {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
