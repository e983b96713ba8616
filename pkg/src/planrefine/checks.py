"""Rule-based plan validations: room contents, openings, circulation.

Checks never modify the plan; they produce a :class:`CheckReport` of
deterministically ordered findings. Severity drives the CLI exit code:
any error maps to 3, warnings only to 2, a clean report to 0.

The connectivity check rasterizes the plan onto a square grid whose cells
are centered at multiples of the cell size, so walls placed on half-foot
coordinates land strictly inside cells instead of on cell boundaries.
Wall cells are blocked, door spans punch openings through their host
wall, windows stay solid, and furniture blocks any cell its footprint
overlaps with positive area. Rooms are then connected when their anchor
cells (the free cell nearest each room centroid) share a flood-fill
component, and path width between rooms is estimated by the widest k x k
square that can slide from one anchor to the other.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import SchemaError
from .geometry import (
    EPS,
    AlignedBox,
    Point2,
    point_strictly_inside,
    segment_crosses_box_interior,
)
from .model import FloorPlan, Opening, RoomRegion
from .refine import RefinerConfig
from .topology import EXTERIOR

_REDESIGN_ACTION = "redesign the room or merge it with an adjacent zone"


@dataclass(frozen=True)
class Finding:
    """One structured result from a plan check."""

    severity: str  # "error" | "warning" | "info"
    code: str
    subject: str
    message: str
    suggested_action: str = ""


@dataclass(frozen=True)
class CheckReport:
    """All findings from a check run, deterministically ordered."""

    findings: tuple[Finding, ...]

    @property
    def error_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == "error")

    @property
    def warning_count(self) -> int:
        return sum(1 for f in self.findings if f.severity == "warning")

    def exit_code(self) -> int:
        """0 clean, 2 warnings only, 3 any error."""
        if self.error_count:
            return 3
        if self.warning_count:
            return 2
        return 0

    def to_text(self) -> str:
        if not self.findings:
            return "all checks passed\n"
        lines = []
        for f in self.findings:
            line = f"{f.severity.upper()} {f.code} [{f.subject}] {f.message}"
            if f.suggested_action:
                line += f" (suggest: {f.suggested_action})"
            lines.append(line)
        lines.append(f"{self.error_count} error(s), {self.warning_count} warning(s)")
        return "\n".join(lines) + "\n"

    def to_payload(self) -> dict:
        return {
            "findings": [
                {
                    "severity": f.severity,
                    "code": f.code,
                    "subject": f.subject,
                    "message": f.message,
                    "suggested_action": f.suggested_action,
                }
                for f in self.findings
            ],
            "summary": {
                "errors": self.error_count,
                "warnings": self.warning_count,
            },
        }


def _assemble(findings: Iterable[Finding]) -> CheckReport:
    ordered = sorted(
        findings, key=lambda f: (f.code, f.subject, f.message, f.severity)
    )
    return CheckReport(findings=tuple(ordered))


# ---------------------------------------------------------------------------
# Room requirements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RoomRule:
    required: tuple[str, ...]
    min_area: float  # square feet

    def __post_init__(self):
        if self.min_area <= 0:
            raise ValueError("minimum area must be positive")


@dataclass(frozen=True)
class RoomRequirements:
    """Expected furniture kinds and minimum area per room kind."""

    entries: Mapping[str, RoomRule]
    requirements_version: int = 1


# Minimum areas sit below common single-room sizes so ordinary plans pass;
# they exist to catch degenerate slivers.
DEFAULT_REQUIREMENTS = RoomRequirements(
    entries={
        "LivingHall": RoomRule(("Sofa", "TVUnit"), 120.0),
        "Kitchen": RoomRule(("DiningTable", "Bench"), 80.0),
        "OfficeRoom": RoomRule(("Sofa", "OfficeDesk"), 80.0),
        "Bedroom": RoomRule(("Bed", "Wardrobe"), 100.0),
    }
)


def requirements_from_json(text: str) -> RoomRequirements:
    """Load a requirements file: {"<Room>": {"required": [...], "min_area": n}}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("$", "requirements must be a JSON object")
    version = data.get("requirements_version", 1)
    if not isinstance(version, int):
        raise SchemaError("$.requirements_version", "must be an integer")
    entries: dict[str, RoomRule] = {}
    for name, rec in data.items():
        if name == "requirements_version":
            continue
        path = f"$.{name}"
        if not isinstance(rec, dict):
            raise SchemaError(path, "entry must be an object")
        required = rec.get("required", [])
        if not isinstance(required, list) or not all(isinstance(r, str) for r in required):
            raise SchemaError(f"{path}.required", "must be a list of strings")
        min_area = rec.get("min_area")
        if isinstance(min_area, bool) or not isinstance(min_area, (int, float)):
            raise SchemaError(f"{path}.min_area", "must be a number")
        if min_area <= 0:
            raise SchemaError(f"{path}.min_area", "must be positive")
        entries[name] = RoomRule(tuple(required), float(min_area))
    return RoomRequirements(entries=entries, requirements_version=version)


def requirements_to_json(requirements: RoomRequirements) -> str:
    data: dict[str, object] = {
        "requirements_version": requirements.requirements_version
    }
    for name in sorted(requirements.entries):
        rule = requirements.entries[name]
        data[name] = {"required": list(rule.required), "min_area": rule.min_area}
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Check 1: room contents
# ---------------------------------------------------------------------------


def check_room_contents(
    plan: FloorPlan, requirements: RoomRequirements
) -> list[Finding]:
    """Flag rooms missing required furniture kinds or under minimum area."""
    findings: list[Finding] = []
    groups = plan.furniture_groups()
    for room in plan.rooms:
        rule = requirements.entries.get(room.name)
        if rule is None:
            continue
        present = {item.name for item in groups.get(room.name, [])}
        for kind in rule.required:
            if kind not in present:
                findings.append(
                    Finding(
                        severity="error",
                        code="MISSING_FURNITURE",
                        subject=room.name,
                        message=f"required item {kind} is missing",
                        suggested_action=_REDESIGN_ACTION,
                    )
                )
        area = room.boundary.area()
        if area < rule.min_area - EPS:
            findings.append(
                Finding(
                    severity="error",
                    code="ROOM_TOO_SMALL",
                    subject=room.name,
                    message=(
                        f"area {area:.2f} sq ft is under the "
                        f"{rule.min_area:.2f} sq ft minimum"
                    ),
                    suggested_action=_REDESIGN_ACTION,
                )
            )
    return findings


# ---------------------------------------------------------------------------
# Check 2: openings
# ---------------------------------------------------------------------------

_WINDOW_DOOR_GAP = 2.0  # feet, minimum window-to-door-edge distance


def _is_exterior_wall(plan: FloorPlan, wall_uid: str) -> bool:
    wall = plan.wall_by_uid(wall_uid)
    s = wall.centerline
    ext = plan.extent
    if s.axis() == "v":
        x = s.start.x
        return abs(x - ext.min_corner.x) <= EPS or abs(x - ext.max_corner.x) <= EPS
    y = s.start.y
    return abs(y - ext.min_corner.y) <= EPS or abs(y - ext.max_corner.y) <= EPS


def _span_interval(opening: Opening) -> tuple[float, float]:
    s = opening.span
    if s.axis() == "h":
        return tuple(sorted((s.start.x, s.end.x)))
    return tuple(sorted((s.start.y, s.end.y)))


def check_openings(plan: FloorPlan) -> list[Finding]:
    """Flag orphan openings, overlaps, interior windows, tight window-door
    gaps, and blocked door swings."""
    findings: list[Finding] = []
    for opening in plan.openings:
        if opening.host_wall is None:
            findings.append(
                Finding(
                    severity="error",
                    code="ORPHAN_OPENING",
                    subject=opening.uid,
                    message="no wall collinearly contains this span",
                    suggested_action="move the opening onto a wall segment",
                )
            )
        elif opening.kind == "window" and not _is_exterior_wall(plan, opening.host_wall):
            findings.append(
                Finding(
                    severity="error",
                    code="WINDOW_ON_INTERIOR_WALL",
                    subject=opening.uid,
                    message=f"window sits on interior wall {opening.host_wall}",
                    suggested_action="move the window to an exterior wall",
                )
            )

    hosted = [o for o in plan.openings if o.host_wall is not None]
    for i in range(len(hosted)):
        for j in range(i + 1, len(hosted)):
            a, b = hosted[i], hosted[j]
            if a.host_wall != b.host_wall:
                continue
            a_lo, a_hi = _span_interval(a)
            b_lo, b_hi = _span_interval(b)
            overlap = min(a_hi, b_hi) - max(a_lo, b_lo)
            subject = "|".join(sorted((a.uid, b.uid)))
            if overlap > EPS:
                findings.append(
                    Finding(
                        severity="error",
                        code="OPENING_OVERLAP",
                        subject=subject,
                        message=f"spans overlap by {overlap:.2f} ft on {a.host_wall}",
                        suggested_action="separate the openings",
                    )
                )
            elif {a.kind, b.kind} == {"door", "window"} and -overlap < _WINDOW_DOOR_GAP - EPS:
                findings.append(
                    Finding(
                        severity="error",
                        code="WINDOW_DOOR_CLEARANCE",
                        subject=subject,
                        message=(
                            f"window is {-overlap:.2f} ft from a door edge, "
                            f"closer than {_WINDOW_DOOR_GAP:.0f} ft"
                        ),
                        suggested_action="move the window at least 2 ft from the door",
                    )
                )

    for door in plan.doors:
        finding = _check_swing(plan, door)
        if finding is not None:
            findings.append(finding)
    return findings


def _swing_room(plan: FloorPlan, door: Opening) -> RoomRegion | None:
    interior = [n for n in door.connects if n != EXTERIOR]
    rooms = [r for n in interior if (r := plan.room_by_name(n)) is not None]
    if not rooms:
        return None
    if len(rooms) == 1:
        return rooms[0]
    # Swing opens into the larger room; area ties break toward the first
    # room name in ascending order.
    return min(rooms, key=lambda r: (-r.boundary.area(), r.name))


def _check_swing(plan: FloorPlan, door: Opening) -> Finding | None:
    room = _swing_room(plan, door)
    if room is None:
        return None
    span = door.span
    side = span.length()
    lo_x, hi_x = sorted((span.start.x, span.end.x))
    lo_y, hi_y = sorted((span.start.y, span.end.y))
    mid = span.midpoint()
    if span.axis() == "h":
        up = Point2(mid.x, mid.y + _PROBE)
        into_positive = point_strictly_inside(up, room.boundary)
        y0 = lo_y if into_positive else lo_y - side
        square = AlignedBox(Point2(lo_x, y0), Point2(hi_x, y0 + side))
    else:
        right = Point2(mid.x + _PROBE, mid.y)
        into_positive = point_strictly_inside(right, room.boundary)
        x0 = lo_x if into_positive else lo_x - side
        square = AlignedBox(Point2(x0, lo_y), Point2(x0 + side, lo_y + side))

    blockers: list[str] = []
    for item in plan.furniture:
        if not item.resolved:
            continue
        box = item.box_at(item.current_center())
        if _positive_overlap(box, square):
            blockers.append(item.uid)
    for wall in plan.walls:
        s = wall.centerline
        if segment_crosses_box_interior(s.start, s.end, square):
            blockers.append(wall.uid)
    if not blockers:
        return None
    return Finding(
        severity="error",
        code="DOOR_SWING_BLOCKED",
        subject=door.uid,
        message=f"swing area into {room.name} is obstructed by {', '.join(sorted(blockers))}",
        suggested_action="clear the door swing area",
    )


_PROBE = 0.01


def _positive_overlap(a: AlignedBox, b: AlignedBox) -> bool:
    w = min(a.max_corner.x, b.max_corner.x) - max(a.min_corner.x, b.min_corner.x)
    h = min(a.max_corner.y, b.max_corner.y) - max(a.min_corner.y, b.min_corner.y)
    return w > EPS and h > EPS


# ---------------------------------------------------------------------------
# Check 3: connectivity
# ---------------------------------------------------------------------------


class _OccupancyGrid:
    """Rasterized plan: cells centered at multiples of ``cell``."""

    def __init__(self, plan: FloorPlan, cell: float):
        self.cell = cell
        ext = plan.extent
        self.ix0 = math.floor(ext.min_corner.x / cell) - 1
        self.iy0 = math.floor(ext.min_corner.y / cell) - 1
        ix1 = math.ceil(ext.max_corner.x / cell) + 1
        iy1 = math.ceil(ext.max_corner.y / cell) + 1
        self.nx = ix1 - self.ix0 + 1
        self.ny = iy1 - self.iy0 + 1
        self.free = np.ones((self.ny, self.nx), dtype=bool)
        self._rasterize(plan)

    def center(self, ix: int, iy: int) -> tuple[float, float]:
        return ((self.ix0 + ix) * self.cell, (self.iy0 + iy) * self.cell)

    def cell_of(self, p: Point2) -> tuple[int, int]:
        return (
            int(round(p.x / self.cell)) - self.ix0,
            int(round(p.y / self.cell)) - self.iy0,
        )

    def _rasterize(self, plan: FloorPlan) -> None:
        cell, half = self.cell, self.cell / 2.0
        ext = plan.extent
        # Outside the extent is not walkable.
        for iy in range(self.ny):
            for ix in range(self.nx):
                cx, cy = self.center(ix, iy)
                if not (
                    ext.min_corner.x - half <= cx <= ext.max_corner.x + half
                    and ext.min_corner.y - half <= cy <= ext.max_corner.y + half
                ):
                    self.free[iy, ix] = False

        blocked_by: dict[tuple[int, int], set[int]] = {}
        for widx, wall in enumerate(plan.walls):
            s = wall.centerline
            for ix, iy in self._cells_touching_segment(s.start, s.end):
                self.free[iy, ix] = False
                blocked_by.setdefault((ix, iy), set()).add(widx)

        wall_index = {w.uid: i for i, w in enumerate(plan.walls)}
        for door in plan.doors:
            host = wall_index.get(door.host_wall or "")
            if host is None:
                continue
            lo, hi = _span_interval(door)
            axis = door.span.axis()
            for (ix, iy), owners in blocked_by.items():
                if owners != {host}:
                    continue
                cx, cy = self.center(ix, iy)
                c = cx if axis == "h" else cy
                if c - half >= lo - EPS and c + half <= hi + EPS:
                    self.free[iy, ix] = True

        for item in plan.furniture:
            if not item.resolved:
                continue
            box = item.box_at(item.current_center())
            ix_lo = max(0, int(math.floor(box.min_corner.x / cell + 0.5)) - self.ix0)
            ix_hi = min(self.nx - 1, int(math.ceil(box.max_corner.x / cell - 0.5)) - self.ix0)
            iy_lo = max(0, int(math.floor(box.min_corner.y / cell + 0.5)) - self.iy0)
            iy_hi = min(self.ny - 1, int(math.ceil(box.max_corner.y / cell - 0.5)) - self.iy0)
            for iy in range(iy_lo, iy_hi + 1):
                for ix in range(ix_lo, ix_hi + 1):
                    cx, cy = self.center(ix, iy)
                    cbox = AlignedBox(
                        Point2(cx - half, cy - half), Point2(cx + half, cy + half)
                    )
                    if _positive_overlap(box, cbox):
                        self.free[iy, ix] = False

    def _cells_touching_segment(self, a: Point2, b: Point2):
        cell, half = self.cell, self.cell / 2.0
        lo_x, hi_x = sorted((a.x, b.x))
        lo_y, hi_y = sorted((a.y, b.y))
        ix_lo = max(0, int(math.floor((lo_x - half) / cell + 0.5)) - self.ix0)
        ix_hi = min(self.nx - 1, int(math.ceil((hi_x + half) / cell - 0.5)) - self.ix0)
        iy_lo = max(0, int(math.floor((lo_y - half) / cell + 0.5)) - self.iy0)
        iy_hi = min(self.ny - 1, int(math.ceil((hi_y + half) / cell - 0.5)) - self.iy0)
        for iy in range(iy_lo, iy_hi + 1):
            for ix in range(ix_lo, ix_hi + 1):
                cx, cy = self.center(ix, iy)
                if (
                    lo_x <= cx + half + EPS
                    and cx - half - EPS <= hi_x
                    and lo_y <= cy + half + EPS
                    and cy - half - EPS <= hi_y
                ):
                    yield ix, iy

    def components(self) -> np.ndarray:
        """4-neighbor flood-fill labels; -1 for blocked cells."""
        labels = np.full((self.ny, self.nx), -1, dtype=int)
        next_label = 0
        for iy in range(self.ny):
            for ix in range(self.nx):
                if not self.free[iy, ix] or labels[iy, ix] != -1:
                    continue
                queue = deque([(ix, iy)])
                labels[iy, ix] = next_label
                while queue:
                    x, y = queue.popleft()
                    for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                        nx_, ny_ = x + dx, y + dy
                        if (
                            0 <= nx_ < self.nx
                            and 0 <= ny_ < self.ny
                            and self.free[ny_, nx_]
                            and labels[ny_, nx_] == -1
                        ):
                            labels[ny_, nx_] = next_label
                            queue.append((nx_, ny_))
                next_label += 1
        return labels

    def anchor_for(self, room: RoomRegion) -> tuple[int, int] | None:
        """Free cell nearest the room centroid, center strictly inside."""
        centroid = room.boundary.centroid()
        best: tuple[float, int, int] | None = None
        for iy in range(self.ny):
            for ix in range(self.nx):
                if not self.free[iy, ix]:
                    continue
                cx, cy = self.center(ix, iy)
                if not point_strictly_inside(Point2(cx, cy), room.boundary):
                    continue
                d = (cx - centroid.x) ** 2 + (cy - centroid.y) ** 2
                key = (d, iy, ix)
                if best is None or key < best:
                    best = key
        if best is None:
            return None
        return best[2], best[1]

    def eroded(self, k: int) -> np.ndarray:
        """Top-left-anchored k x k erosion of the free grid."""
        a = self.free
        if k == 1:
            return a.copy()
        if a.shape[1] < k or a.shape[0] < k:
            return np.zeros((0, 0), dtype=bool)
        h = a[:, : a.shape[1] - k + 1].copy()
        for off in range(1, k):
            h &= a[:, off : a.shape[1] - k + 1 + off]
        v = h[: h.shape[0] - k + 1].copy()
        for off in range(1, k):
            v &= h[off : h.shape[0] - k + 1 + off]
        return v

    def square_positions(self, cell_xy: tuple[int, int], k: int, eroded: np.ndarray):
        """Eroded-grid positions whose k x k square covers the given cell."""
        ix, iy = cell_xy
        out = []
        for ty in range(max(0, iy - k + 1), min(eroded.shape[0] - 1, iy) + 1):
            for tx in range(max(0, ix - k + 1), min(eroded.shape[1] - 1, ix) + 1):
                if eroded[ty, tx]:
                    out.append((tx, ty))
        return out

    def squares_connected(
        self, a: tuple[int, int], b: tuple[int, int], k: int
    ) -> bool:
        """Can a k x k free square slide from covering cell a to covering b?"""
        er = self.eroded(k)
        if er.size == 0:
            return False
        starts = self.square_positions(a, k, er)
        goals = set(self.square_positions(b, k, er))
        if not starts or not goals:
            return False
        seen = set(starts)
        queue = deque(starts)
        while queue:
            pos = queue.popleft()
            if pos in goals:
                return True
            x, y = pos
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nxt = (x + dx, y + dy)
                if (
                    0 <= nxt[0] < er.shape[1]
                    and 0 <= nxt[1] < er.shape[0]
                    and er[nxt[1], nxt[0]]
                    and nxt not in seen
                ):
                    seen.add(nxt)
                    queue.append(nxt)
        return False


def check_connectivity(
    plan: FloorPlan, cfg: RefinerConfig | None = None, cell_size: float = 0.5
) -> list[Finding]:
    """Verify door-connected rooms reach each other with adequate width."""
    cfg = cfg or RefinerConfig()
    if not plan.rooms:
        return []
    grid = _OccupancyGrid(plan, cell_size)
    labels = grid.components()

    anchors: dict[str, tuple[int, int] | None] = {}
    findings: list[Finding] = []
    for room in plan.rooms:
        anchors[room.name] = grid.anchor_for(room)
        if anchors[room.name] is None:
            findings.append(
                Finding(
                    severity="error",
                    code="PATH_BLOCKED",
                    subject=room.name,
                    message="room has no free cells at this resolution",
                    suggested_action=_REDESIGN_ACTION,
                )
            )

    k_need = max(1, math.ceil(cfg.clearance_delta / cell_size - EPS))

    def width_findings(subject: str, a: tuple[int, int], b: tuple[int, int]):
        la = labels[a[1], a[0]]
        lb = labels[b[1], b[0]]
        if la != lb or la == -1:
            findings.append(
                Finding(
                    severity="error",
                    code="PATH_BLOCKED",
                    subject=subject,
                    message="no free path connects these points",
                    suggested_action="clear the blocking furniture or add a door",
                )
            )
            return
        if grid.squares_connected(a, b, k_need):
            return
        k = k_need - 1
        while k >= 1 and not grid.squares_connected(a, b, k):
            k -= 1
        width = k * cell_size
        findings.append(
            Finding(
                severity="warning",
                code="PATH_NARROW",
                subject=subject,
                message=(
                    f"widest path is about {width:.2f} ft, below the "
                    f"{cfg.clearance_delta:.2f} ft clearance"
                ),
                suggested_action="widen the passage between these rooms",
            )
        )

    seen_pairs: set[tuple[str, str]] = set()
    for door in plan.doors:
        interior = [n for n in door.connects if n != EXTERIOR]
        if EXTERIOR in door.connects and len(interior) == 1:
            room_name = interior[0]
            anchor = anchors.get(room_name)
            if anchor is None:
                continue
            mid_cell = grid.cell_of(door.span.midpoint())
            if not (
                0 <= mid_cell[0] < grid.nx
                and 0 <= mid_cell[1] < grid.ny
                and grid.free[mid_cell[1], mid_cell[0]]
            ):
                findings.append(
                    Finding(
                        severity="error",
                        code="PATH_BLOCKED",
                        subject=door.uid,
                        message=f"exterior door is not passable from {room_name}",
                        suggested_action="clear the door approach",
                    )
                )
                continue
            width_findings(door.uid, anchor, mid_cell)
        elif len(interior) == 2:
            pair = tuple(sorted(interior))
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            a = anchors.get(pair[0])
            b = anchors.get(pair[1])
            if a is None or b is None:
                continue
            width_findings("|".join(pair), a, b)
    return findings


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def run_all_checks(
    plan: FloorPlan,
    requirements: RoomRequirements | None = None,
    cfg: RefinerConfig | None = None,
    cell_size: float = 0.5,
) -> CheckReport:
    """Run the three checks and assemble a deterministic report."""
    requirements = requirements or DEFAULT_REQUIREMENTS
    cfg = cfg or RefinerConfig()
    findings: list[Finding] = []
    findings.extend(check_room_contents(plan, requirements))
    findings.extend(check_openings(plan))
    findings.extend(check_connectivity(plan, cfg, cell_size))
    return _assemble(findings)
