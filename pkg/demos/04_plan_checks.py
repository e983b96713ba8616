"""
Rule-based plan checking
========================

Three families of checks catch the mistakes layout generators actually
make: rooms missing their required furniture, openings that overlap or
sit on the wrong wall, and doorways that no longer admit a 1-ft-wide
path once furniture is in place. This demo runs them on a healthy plan
and then on two deliberately broken ones.
"""

import json
from pathlib import Path

from planrefine.checks import run_all_checks
from planrefine.codec import parse_plan
from planrefine.model import DEFAULT_CATALOG, resolve_catalog
from planrefine.refine import refine_plan
from planrefine.topology import build_topology

ROOT = Path(__file__).resolve().parents[1]


def load(text):
    return resolve_catalog(build_topology(parse_plan(text)), DEFAULT_CATALOG)


# A refined apartment passes cleanly.
plan = load((ROOT / "fixtures" / "case_study.json").read_text())
refined, _ = refine_plan(plan)
print("refined apartment:")
print(run_all_checks(refined).to_text())

# A window 1.5 ft from the entry door violates the 2 ft spacing rule,
# and a second window sits on an interior wall.
BROKEN_OPENINGS = {
    "walls": [
        {"start": [0, 0, 0], "end": [30, 0, 0]},
        {"start": [30, 0, 0], "end": [30, 40, 0]},
        {"start": [30, 40, 0], "end": [0, 40, 0]},
        {"start": [0, 40, 0], "end": [0, 0, 0]},
        {"start": [0, 20, 0], "end": [30, 20, 0]},
    ],
    "doors": [
        {"start": [12, 0, 0], "end": [15, 0, 0]},
        {"start": [12, 20, 0], "end": [15, 20, 0]},
    ],
    "windows": [
        {"start": [16.5, 0, 0], "end": [19.5, 0, 0]},
        {"start": [3, 20, 0], "end": [6, 20, 0]},
    ],
    "Furniture": {"Lounge": [{"name": "Sofa", "position": [5, 5, 0]}]},
}
print("window spacing and placement violations:")
print(run_all_checks(load(json.dumps(BROKEN_OPENINGS))).to_text())

# Wardrobes stacked along a doorway squeeze the path below 1 ft and
# crowd the door swing.
barricade = [
    {"name": "Wardrobe", "position": [17, y, 0]} for y in (2, 6, 10, 14, 18)
]
BLOCKED_PATH = {
    "walls": [
        {"start": [0, 0, 0], "end": [30, 0, 0]},
        {"start": [30, 0, 0], "end": [30, 20, 0]},
        {"start": [30, 20, 0], "end": [0, 20, 0]},
        {"start": [0, 20, 0], "end": [0, 0, 0]},
        {"start": [15, 0, 0], "end": [15, 20, 0]},
    ],
    "doors": [{"start": [15, 8, 0], "end": [15, 12, 0]}],
    "windows": [],
    "Furniture": {
        "West": [{"name": "Bench", "position": [3, 18, 0]}],
        "East": [{"name": "Bench", "position": [27, 18, 0]}] + barricade,
    },
}
print("crowded doorway:")
print(run_all_checks(load(json.dumps(BLOCKED_PATH))).to_text())
