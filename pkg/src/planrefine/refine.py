"""Spatial feasibility predicate and the greedy wall-seeking placement repair.

A placement is feasible when three conditions hold at once: the footprint
box sits inside the room polygon (relaxed by the flush tolerance so wall
contact is possible), every obstacle keeps a clearance gap of at least
``clearance_delta``, and wall-adjacent items rest with their back edge
flush against one of the room's bounding walls. Freestanding items skip
the flush condition.

Infeasible placements are repaired by stepping the item toward the flush
line of the nearest wall in ``step_lambda`` increments, clamping the last
step so the back edge lands exactly on the wall, then sliding along the
wall in alternating steps. Walls are attempted nearest-first. Failure is
a first-class outcome recorded in the trace, never an exception.

The wall a flush item rests against is exempt from its clearance test, as
are wall segments collinear with it: contact and clearance cannot hold
simultaneously against the same plane. Door and window spans are never
exempt, so flush runs stop short of openings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import PlanError, SchemaError
from .geometry import (
    EPS,
    AlignedBox,
    Point2,
    Segment2,
    box_distance,
    box_inside_polygon,
    closest_point_on_segment,
    point_to_segment_distance,
)
from .model import (
    FloorPlan,
    FurnitureInstance,
    OccupancySet,
    RoomRegion,
    Wall,
)

_WALL_PREFIX = "wall_"


class ZeroDirection(PlanError):
    """The point already lies on the nearest wall; no step direction exists."""


@dataclass(frozen=True)
class RefinerConfig:
    """Tunable parameters of the feasibility predicate and the repair loop."""

    clearance_delta: float = 1.0  # minimum walking gap, feet
    step_lambda: float = 0.5  # movement per repair step, feet
    flush_tolerance: float = 0.05  # wall-contact tolerance, feet
    max_iterations: int = 10000  # hard cap on trace entries minus one
    rotation_allowed: bool = True
    wall_half_thickness: float = 0.0  # synthetic wall inflation for clearance

    def __post_init__(self):
        if self.clearance_delta < 0:
            raise ValueError("clearance_delta must be non-negative")
        if self.step_lambda <= 0:
            raise ValueError("step_lambda must be positive")
        if self.flush_tolerance < 0:
            raise ValueError("flush_tolerance must be non-negative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.wall_half_thickness < 0:
            raise ValueError("wall_half_thickness must be non-negative")


_CONFIG_FIELDS = (
    "clearance_delta",
    "step_lambda",
    "flush_tolerance",
    "max_iterations",
    "rotation_allowed",
    "wall_half_thickness",
)


def refiner_config_from_json(text: str) -> RefinerConfig:
    """Load a config file; absent fields keep their defaults."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("$", "config must be a JSON object")
    unknown = sorted(set(data) - set(_CONFIG_FIELDS))
    if unknown:
        raise SchemaError(f"$.{unknown[0]}", "unknown config field")
    try:
        return RefinerConfig(**data)
    except (TypeError, ValueError) as exc:
        raise SchemaError("$", str(exc)) from None


@dataclass(frozen=True)
class Feasibility:
    """Per-condition verdict: room containment, clearance, wall flushness."""

    in_room: bool
    clearance_ok: bool
    flush_ok: bool

    @property
    def ok(self) -> bool:
        return self.in_room and self.clearance_ok and self.flush_ok


@dataclass(frozen=True)
class TraceStep:
    center: Point2
    orientation: str
    verdict: Feasibility


@dataclass(frozen=True)
class PlacementTrace:
    """Ordered record of every candidate placement tried for one item."""

    item_uid: str
    steps: tuple[TraceStep, ...]
    outcome: str  # "placed" | "failed"
    final_center: Point2 | None = None
    final_orientation: str | None = None


# ---------------------------------------------------------------------------
# Feasibility predicate
# ---------------------------------------------------------------------------


def _edge_axis(orientation: str) -> str:
    """Axis of the back edge: horizontal for N/S, vertical for E/W."""
    return "h" if orientation in ("N", "S") else "v"


def _wall_is_parallel(box: AlignedBox, axis: str) -> bool:
    # Wall boxes are degenerate (or near-degenerate when inflated) along
    # their minor axis; the major axis tells the wall's direction.
    if axis == "h":
        return box.width >= box.height
    return box.height >= box.width


def _plane_gap(edge: Segment2, wall_box: AlignedBox, axis: str) -> float:
    """Distance from the back-edge line to the wall box along the normal."""
    if axis == "h":
        e = edge.start.y
        lo, hi = wall_box.min_corner.y, wall_box.max_corner.y
    else:
        e = edge.start.x
        lo, hi = wall_box.min_corner.x, wall_box.max_corner.x
    return max(lo - e, e - hi, 0.0)


def _projection_overlap(edge: Segment2, wall_box: AlignedBox, axis: str) -> float:
    if axis == "h":
        e_lo, e_hi = sorted((edge.start.x, edge.end.x))
        w_lo, w_hi = wall_box.min_corner.x, wall_box.max_corner.x
    else:
        e_lo, e_hi = sorted((edge.start.y, edge.end.y))
        w_lo, w_hi = wall_box.min_corner.y, wall_box.max_corner.y
    return min(e_hi, w_hi) - max(e_lo, w_lo)


def is_feasible(
    item: FurnitureInstance,
    p: Point2,
    room: RoomRegion,
    occ: OccupancySet,
    cfg: RefinerConfig,
    orientation: str | None = None,
) -> Feasibility:
    """Evaluate the three placement conditions for one candidate center."""
    o = item.orientation if orientation is None else orientation
    box = item.box_at(p, o)
    in_room = box_inside_polygon(box.deflated(cfg.flush_tolerance), room.boundary)

    wall_adjacent = bool(item.wall_adjacent)
    edge = item.back_edge(p, o) if wall_adjacent else None
    axis = _edge_axis(o)
    bounding = set(room.bounding_walls)

    flush_ok = not wall_adjacent
    clearance_ok = True
    for obox, sid in occ:
        exempt = False
        if wall_adjacent and sid.startswith(_WALL_PREFIX) and _wall_is_parallel(obox, axis):
            gap = _plane_gap(edge, obox, axis)
            if gap <= cfg.flush_tolerance + EPS:
                # Wall lies in the flush plane: exempt from clearance.
                exempt = True
                if sid in bounding and _projection_overlap(edge, obox, axis) > EPS:
                    flush_ok = True
        if exempt:
            continue
        if clearance_ok and box_distance(box, obox) < cfg.clearance_delta - EPS:
            clearance_ok = False
    return Feasibility(in_room=in_room, clearance_ok=clearance_ok, flush_ok=flush_ok)


# ---------------------------------------------------------------------------
# Nearest-wall direction
# ---------------------------------------------------------------------------


def nearest_wall_direction(
    p: Point2, walls: Sequence[Wall]
) -> tuple[tuple[float, float], str]:
    """Unit vector from p toward the closest point on the nearest wall.

    Ties go to the wall listed first. Raises :class:`ZeroDirection` when p
    already lies on the nearest wall.
    """
    if not walls:
        raise ValueError("walls must be non-empty")
    best_idx = min(
        range(len(walls)),
        key=lambda i: (point_to_segment_distance(p, walls[i].centerline), i),
    )
    wall = walls[best_idx]
    cp = closest_point_on_segment(p, wall.centerline)
    dx, dy = cp.x - p.x, cp.y - p.y
    norm = math.hypot(dx, dy)
    if norm <= EPS:
        raise ZeroDirection(f"point ({p.x}, {p.y}) lies on wall {wall.uid}")
    return (dx / norm, dy / norm), wall.uid


# ---------------------------------------------------------------------------
# Greedy wall-seeking placement
# ---------------------------------------------------------------------------


def _wall_segment_from_box(box: AlignedBox) -> Segment2:
    """Recover a wall centerline from its (possibly inflated) obstacle box."""
    cx = (box.min_corner.x + box.max_corner.x) / 2.0
    cy = (box.min_corner.y + box.max_corner.y) / 2.0
    if box.width >= box.height:
        return Segment2(Point2(box.min_corner.x, cy), Point2(box.max_corner.x, cy))
    return Segment2(Point2(cx, box.min_corner.y), Point2(cx, box.max_corner.y))


def _facing_orientation(axis: str, side: int) -> str:
    # side: +1 when the item sits on the positive side of the wall line.
    if axis == "h":
        return "S" if side > 0 else "N"
    return "W" if side > 0 else "E"


def _attempt_orientations(
    item: FurnitureInstance, wall_axis: str, side: int, cfg: RefinerConfig
) -> list[str]:
    if item.wall_adjacent:
        facing = _facing_orientation(wall_axis, side)
        if cfg.rotation_allowed:
            return [facing]
        return [item.orientation] if facing == item.orientation else []
    if cfg.rotation_allowed:
        return ["N", "E"]
    return [item.orientation]


def greedy_wall_placement(
    item: FurnitureInstance,
    room: RoomRegion,
    occ: OccupancySet,
    cfg: RefinerConfig,
) -> tuple[Point2 | None, PlacementTrace]:
    """Repair one item's placement; extends occ with the final box on success.

    Walls are tried nearest-first from the initial center; each attempt
    restarts there, steps to the wall's flush line (clearance line for
    freestanding items) and slides along it. The trace never exceeds
    ``max_iterations + 1`` entries.
    """
    if not item.resolved:
        raise ValueError(f"{item.uid} has no resolved footprint")
    p0 = item.initial_center
    steps: list[TraceStep] = []
    budget = cfg.max_iterations + 1
    exhausted = False

    def evaluate(p: Point2, o: str) -> Feasibility | None:
        nonlocal exhausted
        if len(steps) >= budget:
            exhausted = True
            return None
        verdict = is_feasible(item, p, room, occ, cfg, orientation=o)
        steps.append(TraceStep(center=p, orientation=o, verdict=verdict))
        return verdict

    def success(p: Point2, o: str) -> tuple[Point2, PlacementTrace]:
        occ.add(item.box_at(p, o), item.uid)
        trace = PlacementTrace(
            item_uid=item.uid,
            steps=tuple(steps),
            outcome="placed",
            final_center=p,
            final_orientation=o,
        )
        return p, trace

    verdict = evaluate(p0, item.orientation)
    if verdict is not None and verdict.ok:
        return success(p0, item.orientation)

    walls = _room_wall_segments(room, occ)
    order = sorted(
        range(len(walls)),
        key=lambda i: (point_to_segment_distance(p0, walls[i][0]), i),
    )
    room_bbox = room.boundary.bounding_box()
    for wi in order:
        seg, _uid = walls[wi]
        axis = seg.axis()
        side = _side_of(p0, seg, axis, room)
        for o in _attempt_orientations(item, axis, side, cfg):
            placed = _attempt(item, room_bbox, seg, axis, side, o, p0, cfg, evaluate)
            if exhausted:
                return None, PlacementTrace(item.uid, tuple(steps), "failed")
            if placed is not None:
                return success(placed, o)
    return None, PlacementTrace(item.uid, tuple(steps), "failed")


def _room_wall_segments(
    room: RoomRegion, occ: OccupancySet
) -> list[tuple[Segment2, str]]:
    boxes = {sid: box for box, sid in occ if sid.startswith(_WALL_PREFIX)}
    out = []
    for uid in room.bounding_walls:
        box = boxes.get(uid)
        if box is not None:
            out.append((_wall_segment_from_box(box), uid))
    return out


def _side_of(p: Point2, seg: Segment2, axis: str, room: RoomRegion) -> int:
    wall_c = seg.start.y if axis == "h" else seg.start.x
    coord = p.y if axis == "h" else p.x
    if abs(coord - wall_c) > EPS:
        return 1 if coord > wall_c else -1
    centroid = room.boundary.centroid()
    c_coord = centroid.y if axis == "h" else centroid.x
    return 1 if c_coord >= wall_c else -1


def _attempt(
    item: FurnitureInstance,
    room_bbox: AlignedBox,
    seg: Segment2,
    axis: str,
    side: int,
    orientation: str,
    p0: Point2,
    cfg: RefinerConfig,
    evaluate: Callable[[Point2, str], Feasibility | None],
) -> Point2 | None:
    box0 = item.box_at(p0, orientation)
    if axis == "h":
        half = box0.height / 2.0
        wall_c = seg.start.y
        span_lo, span_hi = sorted((seg.start.x, seg.end.x))
        par_extent = box0.width
    else:
        half = box0.width / 2.0
        wall_c = seg.start.x
        span_lo, span_hi = sorted((seg.start.y, seg.end.y))
        par_extent = box0.height

    offset = half if item.wall_adjacent else half + cfg.clearance_delta
    target_perp = wall_c + side * offset

    # Approach: lambda-steps toward the stop line, clamped to land exactly.
    p = p0
    while True:
        perp = p.y if axis == "h" else p.x
        if abs(perp - target_perp) <= EPS:
            if p is p0:
                verdict = evaluate(p, orientation)
                if verdict is None:
                    return None
                if verdict.ok:
                    return p
            break
        cp = closest_point_on_segment(p, seg)
        target = (
            Point2(cp.x, target_perp) if axis == "h" else Point2(target_perp, cp.y)
        )
        dist = math.hypot(target.x - p.x, target.y - p.y)
        step = min(cfg.step_lambda, dist)
        p = Point2(
            p.x + (target.x - p.x) / dist * step,
            p.y + (target.y - p.y) / dist * step,
        )
        verdict = evaluate(p, orientation)
        if verdict is None:
            return None
        if verdict.ok:
            return p

    # Slide: alternate directions along the wall from the contact point.
    par0 = p.x if axis == "h" else p.y
    if axis == "h":
        room_lo, room_hi = room_bbox.min_corner.x, room_bbox.max_corner.x
    else:
        room_lo, room_hi = room_bbox.min_corner.y, room_bbox.max_corner.y
    # The box must still intersect both the wall span and the room.
    lo = max(span_lo - par_extent, room_lo + par_extent / 2.0 - cfg.flush_tolerance)
    hi = min(span_hi + par_extent, room_hi - par_extent / 2.0 + cfg.flush_tolerance)

    k = 1
    while True:
        moved = False
        for sign in (1, -1):
            par = par0 + sign * k * cfg.step_lambda
            if par < lo - EPS or par > hi + EPS:
                continue
            moved = True
            cand = Point2(par, target_perp) if axis == "h" else Point2(target_perp, par)
            verdict = evaluate(cand, orientation)
            if verdict is None:
                return None
            if verdict.ok:
                return cand
        if not moved:
            return None
        k += 1


# ---------------------------------------------------------------------------
# Whole-plan refinement
# ---------------------------------------------------------------------------


def refine_plan(
    plan: FloorPlan, cfg: RefinerConfig | None = None
) -> tuple[FloorPlan, list[PlacementTrace]]:
    """Refine every item, room by room, sharing one growing occupancy set.

    Items are processed in room-name order, then input order within each
    room. Successful placements immediately become obstacles for later
    items. Failures leave the item unplaced; the plan is still returned.
    """
    cfg = cfg or RefinerConfig()
    occ = OccupancySet()
    for wall in plan.walls:
        occ.add(wall.box(cfg.wall_half_thickness), wall.uid)
    for opening in plan.openings:
        occ.add(opening.box(), opening.uid)

    order = sorted(
        range(len(plan.furniture)),
        key=lambda i: (plan.furniture[i].room_name, i),
    )
    updated: dict[str, FurnitureInstance] = {}
    traces: list[PlacementTrace] = []
    for idx in order:
        item = plan.furniture[idx]
        if not item.resolved:
            raise ValueError(f"{item.uid} has no resolved footprint; resolve the catalog first")
        room = plan.room_by_name(item.room_name)
        if room is None:
            traces.append(PlacementTrace(item.uid, (), "failed"))
            updated[item.uid] = replace(item, refined_center=None)
            continue
        center, trace = greedy_wall_placement(item, room, occ, cfg)
        traces.append(trace)
        if trace.outcome == "placed":
            updated[item.uid] = replace(
                item, refined_center=center, orientation=trace.final_orientation
            )
        else:
            updated[item.uid] = replace(item, refined_center=None)

    refined = plan.with_furniture(updated.get(f.uid, f) for f in plan.furniture)
    return refined, traces


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def brute_force_feasible_set(
    item: FurnitureInstance,
    room: RoomRegion,
    occ: OccupancySet,
    cfg: RefinerConfig,
    resolution: float,
) -> frozenset[tuple[float, float, str]]:
    """All grid centers (and permitted orientations) passing is_feasible.

    A dense reference search used by tests and the verify path; never part
    of the refinement loop itself.
    """
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if item.wall_adjacent:
        orientations = ("N", "E", "S", "W") if cfg.rotation_allowed else (item.orientation,)
    else:
        orientations = ("N", "E") if cfg.rotation_allowed else (item.orientation,)
    bbox = room.boundary.bounding_box()
    found: set[tuple[float, float, str]] = set()
    nx = int(math.floor((bbox.max_corner.x - bbox.min_corner.x) / resolution + EPS))
    ny = int(math.floor((bbox.max_corner.y - bbox.min_corner.y) / resolution + EPS))
    for ix in range(nx + 1):
        x = bbox.min_corner.x + ix * resolution
        for iy in range(ny + 1):
            y = bbox.min_corner.y + iy * resolution
            p = Point2(x, y)
            for o in orientations:
                if is_feasible(item, p, room, occ, cfg, orientation=o).ok:
                    found.add((round(x, 9), round(y, 9), o))
    return frozenset(found)
