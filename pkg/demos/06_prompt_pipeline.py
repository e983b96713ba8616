"""
From a design brief to checked artifacts
========================================

The pipeline starts with a brief (overall size, rooms, furniture per
room), renders it into a generation prompt, fetches the model response,
and pushes the parsed plan through refinement, checks, rendering, and
script export. Responses come from a transport: a canned file here, so
the whole run is deterministic and offline, or an HTTP endpoint in
production.
"""

import json
from pathlib import Path

from planrefine.checks import run_all_checks
from planrefine.codec import emit_plan, parse_plan, sanitize_llm_response
from planrefine.export import export_bim_scripts, render_svg
from planrefine.model import DEFAULT_CATALOG, resolve_catalog
from planrefine.prompts import LayoutBrief, TransportConfig, build_layout_prompt, fetch_layout
from planrefine.refine import refine_plan
from planrefine.topology import build_topology

ROOT = Path(__file__).resolve().parents[1]
OUT = Path(__file__).resolve().parent / "out" / "pipeline"
OUT.mkdir(parents=True, exist_ok=True)

# The brief names the rooms and what belongs in them.
raw = json.loads((ROOT / "fixtures" / "case_study_brief.json").read_text())
brief = LayoutBrief(**raw)
prompt = build_layout_prompt(brief)
(OUT / "prompt.txt").write_text(prompt)
print(f"prompt: {len(prompt.splitlines())} lines for "
      f"{brief.width:g}x{brief.length:g} ft, rooms {', '.join(brief.rooms)}")

# File transport replays a recorded response, prose wrapper and all.
transport = TransportConfig(
    mode="file", location=str(ROOT / "fixtures" / "llm_response_case_study.txt")
)
response = fetch_layout(prompt, transport)
print(f"response: {len(response)} chars")

# The sanitizer digs the JSON object out of surrounding chatter.
plan = parse_plan(sanitize_llm_response(response))
plan = resolve_catalog(build_topology(plan), DEFAULT_CATALOG)
print(f"parsed: {len(plan.rooms)} rooms, {len(plan.furniture)} furniture items")

refined, traces = refine_plan(plan)
placed = sum(1 for t in traces if t.outcome == "placed")
print(f"refined: {placed}/{len(traces)} items placed")

report = run_all_checks(refined)
print(f"checks: {report.error_count} error(s), {report.warning_count} warning(s)")

(OUT / "refined.json").write_text(emit_plan(refined))
(OUT / "plan.svg").write_text(render_svg(refined, traces=traces))
for name, source in export_bim_scripts(refined).items():
    (OUT / name).write_text(source)
print(f"artifacts in {OUT}")
