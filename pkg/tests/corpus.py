"""Hand-built violation and connectivity scenarios shared by the unit and
acceptance suites.

Opening cases: a 30x40 envelope split at y=20, an exterior door on the
south wall and an interior door on the divider. Each case perturbs that
base and states the exact multiset of finding codes it must produce.

Connectivity cases: a 30x20 envelope split at x=15 with furniture groups
"West" and "East" naming the halves. Furniture barricades with carefully
aligned gaps drive the connected/narrow/blocked verdicts; the expected
verdict is stated per grid resolution.
"""

import json

from planrefine.codec import parse_plan
from planrefine.model import DEFAULT_CATALOG, resolve_catalog
from planrefine.topology import build_topology


def build_plan(walls, doors=(), windows=(), furniture=None):
    payload = {
        "walls": [{"start": [*s, 0], "end": [*e, 0]} for s, e in walls],
        "doors": [{"start": [*s, 0], "end": [*e, 0]} for s, e in doors],
        "windows": [{"start": [*s, 0], "end": [*e, 0]} for s, e in windows],
        "Furniture": furniture or {},
    }
    plan = build_topology(parse_plan(json.dumps(payload)))
    return resolve_catalog(plan, DEFAULT_CATALOG)


# ---------------------------------------------------------------------------
# Opening-rule corpus
# ---------------------------------------------------------------------------

_ENV = [((0, 0), (30, 0)), ((30, 0), (30, 40)), ((30, 40), (0, 40)), ((0, 40), (0, 0))]
_DIVIDER = ((0, 20), (30, 20))
_EXT_DOOR = ((12, 0), (15, 0))
_INT_DOOR = ((12, 20), (15, 20))
_STUB_WALL = ((0, 30), (10, 30))  # dangles at (10, 30)
_GROUP_A = {"A": [{"name": "Sofa", "position": [5, 5, 0]}]}


def _case(name, expected, doors=(), windows=(), walls=(), furniture=None):
    plan = build_plan(
        _ENV + [_DIVIDER] + list(walls),
        doors=[_EXT_DOOR, _INT_DOOR] + list(doors),
        windows=list(windows),
        furniture=furniture,
    )
    return name, plan, sorted(expected)


def opening_cases():
    """(name, plan, expected sorted finding codes) triples."""
    blocker = {
        "A": _GROUP_A["A"] + [{"name": "Sofa", "position": [13.5, 18, 0]}]
    }
    ext_blocker = {
        "A": _GROUP_A["A"] + [{"name": "Sofa", "position": [13.5, 1.6, 0]}]
    }
    clear = {"A": _GROUP_A["A"] + [{"name": "Sofa", "position": [25, 17, 0]}]}
    return [
        _case("clean_base", []),
        _case(
            "window_on_divider",
            ["WINDOW_ON_INTERIOR_WALL"],
            windows=[((5, 20), (8, 20))],
        ),
        _case(
            "window_1_5ft_from_door",
            ["WINDOW_DOOR_CLEARANCE"],
            windows=[((16.5, 0), (19.5, 0))],
        ),
        _case("window_exactly_2ft", [], windows=[((17, 0), (20, 0))]),
        _case(
            "window_1_99ft_from_door",
            ["WINDOW_DOOR_CLEARANCE"],
            windows=[((16.99, 0), (19.99, 0))],
        ),
        _case(
            "doors_partial_overlap",
            ["OPENING_OVERLAP"],
            doors=[((13, 20), (16, 20))],
        ),
        _case(
            "doors_identical_span",
            ["OPENING_OVERLAP"],
            doors=[((12, 20), (15, 20))],
        ),
        _case("orphan_door_midair", ["ORPHAN_OPENING"], doors=[((5, 10), (8, 10))]),
        _case(
            "orphan_window_midair", ["ORPHAN_OPENING"], windows=[((3, 25), (3, 28))]
        ),
        _case(
            "window_overhangs_stub",
            ["ORPHAN_OPENING"],
            walls=[_STUB_WALL],
            windows=[((8, 30), (12, 30))],
        ),
        _case(
            "windows_overlap_north",
            ["OPENING_OVERLAP"],
            windows=[((5, 40), (9, 40)), ((7, 40), (11, 40))],
        ),
        _case(
            "door_window_overlap",
            ["OPENING_OVERLAP"],
            windows=[((14, 0), (17, 0))],
        ),
        _case("window_far_wall", [], windows=[((30, 5), (30, 8))]),
        _case(
            "swing_blocked_by_sofa",
            ["DOOR_SWING_BLOCKED"],
            furniture=blocker,
        ),
        _case(
            "swing_crossed_by_wall",
            ["DOOR_SWING_BLOCKED"],
            walls=[((13, 16), (13, 19))],
            furniture=_GROUP_A,
        ),
        _case("swing_clear", [], furniture=clear),
        _case(
            "orphan_plus_interior_window",
            ["ORPHAN_OPENING", "WINDOW_ON_INTERIOR_WALL"],
            doors=[((5, 10), (8, 10))],
            windows=[((5, 20), (8, 20))],
        ),
        _case(
            "two_separate_overlaps",
            ["OPENING_OVERLAP", "OPENING_OVERLAP"],
            doors=[((13, 20), (16, 20))],
            windows=[((5, 40), (9, 40)), ((7, 40), (11, 40))],
        ),
        _case(
            "three_way_window_overlap",
            ["OPENING_OVERLAP"] * 3,
            windows=[((5, 40), (10, 40)), ((7, 40), (12, 40)), ((9, 40), (14, 40))],
        ),
        _case(
            "window_touching_door_edge",
            ["WINDOW_DOOR_CLEARANCE"],
            windows=[((15, 0), (18, 0))],
        ),
        _case(
            "window_on_stub_wall",
            ["WINDOW_ON_INTERIOR_WALL"],
            walls=[_STUB_WALL],
            windows=[((2, 30), (5, 30))],
        ),
        _case(
            "window_near_west_door",
            ["WINDOW_DOOR_CLEARANCE"],
            doors=[((0, 10), (0, 13))],
            windows=[((0, 14), (0, 17))],
        ),
        _case(
            "windows_overlap_east",
            ["OPENING_OVERLAP"],
            windows=[((30, 10), (30, 14)), ((30, 12), (30, 16))],
        ),
        _case(
            "exterior_swing_blocked",
            ["DOOR_SWING_BLOCKED"],
            furniture=ext_blocker,
        ),
    ]


# ---------------------------------------------------------------------------
# Connectivity corpus
# ---------------------------------------------------------------------------

_C_ENV = [((0, 0), (30, 0)), ((30, 0), (30, 20)), ((30, 20), (0, 20)), ((0, 20), (0, 0))]
_C_DIV = ((15, 0), (15, 20))
_MID_DOOR = ((15, 8), (15, 12))
_WEST = [{"name": "Bench", "position": [3, 18, 0]}]
_EAST = [{"name": "Bench", "position": [27, 18, 0]}]


def _wardrobes(centers):
    return [{"name": "Wardrobe", "position": [x, y, 0]} for x, y in centers]


def _conn_case(name, exp_half, exp_quarter, doors, east_extra=(), west_extra=(), walls=()):
    furniture = {
        "West": _WEST + list(west_extra),
        "East": _EAST + list(east_extra),
    }
    plan = build_plan(
        _C_ENV + [_C_DIV] + list(walls), doors=doors, furniture=furniture
    )
    return name, plan, {0.5: exp_half, 0.25: exp_quarter}


def connectivity_cases():
    """(name, plan, {cell: expected verdict}) triples."""
    barricade = _wardrobes([(18, y) for y in (1, 3, 5, 7, 9, 11, 13, 15, 17, 19)])
    beds = [
        {"name": "Bed", "position": [x, y, 0]}
        for x in (18.25, 22.5, 26.75)
        for y in (2.5, 7.5, 12.5, 17.5)
    ]
    # Stacked wardrobes leaving an aligned horizontal slot through the band.
    slot_1_25 = _wardrobes(
        [(18, y) for y in (1, 3, 5, 7, 8.5)] + [(18, y) for y in (11.75, 13.75, 15.75, 17.75, 19.25)]
    )
    slot_0_5 = _wardrobes(
        [(18, y) for y in (1, 3, 5, 7, 8.75)] + [(18, y) for y in (11.25, 13, 15, 17, 19)]
    )
    return [
        _conn_case("open_door", "connected", "connected", [_MID_DOOR]),
        _conn_case(
            "furniture_barricade", "blocked", "blocked", [_MID_DOOR],
            east_extra=barricade,
        ),
        _conn_case(
            "room_fully_packed", "blocked", "blocked", [_MID_DOOR],
            east_extra=beds,
        ),
        _conn_case(
            "slot_1_25ft_passes", "connected", "connected", [_MID_DOOR],
            east_extra=slot_1_25,
        ),
        _conn_case(
            "slot_0_5ft_narrow", "narrow", "narrow", [_MID_DOOR],
            east_extra=slot_0_5,
        ),
        _conn_case(
            "exterior_door_clear", "connected", "connected",
            [_MID_DOOR, ((5, 0), (8, 0))],
        ),
        _conn_case(
            "exterior_door_blocked", "blocked", "blocked",
            [_MID_DOOR, ((5, 0), (8, 0))],
            west_extra=[{"name": "Sofa", "position": [6.5, 1.6, 0]}],
        ),
        _conn_case(
            "l_path_around_stub", "connected", "connected",
            [((15, 16), (15, 19))],
            walls=[((20, 0), (20, 15))],
        ),
        _conn_case(
            "narrow_door_span", "narrow", "narrow",
            [((15, 9.5), (15, 10.25))],
        ),
        _conn_case(
            "redundant_doors", "connected", "connected",
            [((15, 2), (15, 5)), ((15, 14), (15, 17))],
            east_extra=_wardrobes([(18, 3.5)]),
        ),
    ]
