"""
Deriving rooms from wall segments
=================================

Walls are just line segments; rooms are implicit. This demo shows how
the planar arrangement of wall centerlines is cut into faces, how faces
take their names from the furniture groups placed inside them, and how
each door or window finds its host wall and the rooms it connects.
"""

from pathlib import Path

from planrefine.codec import parse_plan
from planrefine.topology import build_topology

ROOT = Path(__file__).resolve().parents[1]

plan = build_topology(parse_plan((ROOT / "fixtures" / "case_study.json").read_text()))

# Five faces: four named by their furniture, one synthetic. The attached
# toilet holds no furniture, so it gets the generated name room_1.
print("rooms:")
for room in sorted(plan.rooms, key=lambda r: r.name):
    walls = ", ".join(sorted(room.bounding_walls))
    print(f"  {room.name}: {room.boundary.area():g} sq ft, bounded by {walls}")

total = sum(r.boundary.area() for r in plan.rooms)
print(f"total floor area: {total:g} sq ft")

# Openings resolve to the wall whose centerline fully contains their
# span. A door on an exterior wall connects a room to the outside.
print("\ndoors:")
for door in plan.doors:
    rooms = " <-> ".join(door.connects)
    print(f"  {door.uid} on {door.host_wall}: {rooms}")

print("\nwindows:")
for window in plan.windows:
    rooms = " <-> ".join(window.connects)
    print(f"  {window.uid} on {window.host_wall}: {rooms}")
