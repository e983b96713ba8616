"""
Checking placement feasibility and repairing a layout
=====================================================

Generated furniture positions routinely float mid-room or collide with
walls. A placement is feasible when it sits inside its room, keeps 1 ft
of clearance from every obstacle, and, for wall-adjacent items, touches
a bounding wall back-on. This demo probes the predicate directly, then
lets the greedy refiner walk every item of the apartment into place.
"""

import math
from pathlib import Path

from planrefine.codec import parse_plan
from planrefine.model import DEFAULT_CATALOG, occupancy_from_plan, resolve_catalog
from planrefine.refine import RefinerConfig, is_feasible, refine_plan
from planrefine.topology import build_topology

ROOT = Path(__file__).resolve().parents[1]

plan = resolve_catalog(
    build_topology(parse_plan((ROOT / "fixtures" / "case_study.json").read_text())),
    DEFAULT_CATALOG,
)
cfg = RefinerConfig()  # delta 1 ft, step 0.5 ft, flush tolerance 0.05 ft

# Probe the suggested positions: most wall-adjacent items start floating.
print("initial verdicts:")
for item in plan.furniture:
    room = plan.room_by_name(item.room_name)
    occ = occupancy_from_plan(plan, exclude=item.uid)
    v = is_feasible(item, item.initial_center, room, occ, cfg)
    print(f"  {item.uid}: in_room={v.in_room} clearance={v.clearance_ok} "
          f"flush={v.flush_ok}")

# The refiner seeks the nearest wall in half-foot steps, slides along it
# when the landing spot is blocked, and records every probe in a trace.
refined, traces = refine_plan(plan, cfg)

print("\nrefined placements:")
for trace in traces:
    item = next(i for i in refined.furniture if i.uid == trace.item_uid)
    c = item.current_center()
    moved = math.hypot(c.x - item.initial_center.x, c.y - item.initial_center.y)
    print(f"  {trace.item_uid}: ({c.x:g}, {c.y:g}) facing {item.orientation}, "
          f"moved {moved:.2f} ft in {len(trace.steps)} steps")

placed = sum(1 for t in traces if t.outcome == "placed")
print(f"\n{placed}/{len(traces)} items placed")
