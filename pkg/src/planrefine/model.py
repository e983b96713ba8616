"""Floor-plan domain model: walls, openings, furniture, rooms, occupancy.

The types here are the vocabulary shared by the parser, the topology
extractor, the refiner and the checkers. Everything is an immutable value
except :class:`OccupancySet`, which grows append-only while a refinement
run places items one by one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping

from .errors import PlanError, SchemaError
from .geometry import AlignedBox, Point2, Polygon2, Segment2, box_from_center

# Orientation names the footprint edge that faces a wall: the item's back
# edge sits depth/2 from the center in that direction while its width runs
# parallel to the wall. "N" (back edge at max y) is the default convention.
ORIENTATIONS = ("N", "E", "S", "W")


class UnknownFurnitureKind(PlanError):
    """A plan references a furniture kind the catalog does not define."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no catalog entry for furniture kind {name!r}")


@dataclass(frozen=True)
class Wall:
    """A zero-thickness wall centerline."""

    uid: str
    centerline: Segment2
    height: float = 10.0

    def __post_init__(self):
        if not self.centerline.is_axis_aligned():
            raise ValueError(f"wall {self.uid} is not axis-aligned")

    def box(self, half_thickness: float = 0.0) -> AlignedBox:
        """Obstacle box for clearance tests, optionally inflated."""
        s = self.centerline
        lo_x, hi_x = sorted((s.start.x, s.end.x))
        lo_y, hi_y = sorted((s.start.y, s.end.y))
        t = max(half_thickness, 0.0)
        return AlignedBox(Point2(lo_x - t, lo_y - t), Point2(hi_x + t, hi_y + t))


@dataclass(frozen=True)
class Opening:
    """A door or window span lying on a host wall."""

    uid: str
    kind: str  # "door" | "window"
    span: Segment2
    host_wall: str | None = None  # wall uid, resolved by topology
    meta: tuple[tuple[str, float], ...] = ()  # pass-through scalars (sill height etc.)
    connects: tuple[str, ...] = ()  # room names, "exterior" for outside

    def __post_init__(self):
        if self.kind not in ("door", "window"):
            raise ValueError(f"opening kind must be door or window, got {self.kind!r}")

    def box(self) -> AlignedBox:
        s = self.span
        lo_x, hi_x = sorted((s.start.x, s.end.x))
        lo_y, hi_y = sorted((s.start.y, s.end.y))
        return AlignedBox(Point2(lo_x, lo_y), Point2(hi_x, hi_y))


@dataclass(frozen=True)
class FurnitureInstance:
    """One furniture item with its AI-suggested and refined centers."""

    uid: str
    name: str
    room_name: str
    initial_center: Point2
    footprint_width: float | None = None  # along the wall when flush
    footprint_depth: float | None = None  # toward the wall when flush
    wall_adjacent: bool | None = None
    orientation: str = "N"
    refined_center: Point2 | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("furniture name must be non-empty")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be one of {ORIENTATIONS}")
        for dim in (self.footprint_width, self.footprint_depth):
            if dim is not None and dim <= 0:
                raise ValueError(f"non-positive footprint for {self.name}")

    @property
    def resolved(self) -> bool:
        return self.footprint_width is not None and self.footprint_depth is not None

    def current_center(self) -> Point2:
        return self.refined_center if self.refined_center is not None else self.initial_center

    def box_at(self, center: Point2, orientation: str | None = None) -> AlignedBox:
        """Footprint box at a candidate center. E/W orientations swap the
        footprint sides so the back edge can face a vertical wall."""
        if not self.resolved:
            raise ValueError(f"{self.uid} has no resolved footprint")
        o = self.orientation if orientation is None else orientation
        w, d = self.footprint_width, self.footprint_depth
        if o in ("E", "W"):
            return box_from_center(center, d, w)
        return box_from_center(center, w, d)

    def back_edge(self, center: Point2, orientation: str | None = None) -> Segment2:
        """The wall-facing edge of the footprint at a candidate center."""
        o = self.orientation if orientation is None else orientation
        b = self.box_at(center, o)
        lo, hi = b.min_corner, b.max_corner
        if o == "N":
            return Segment2(Point2(lo.x, hi.y), Point2(hi.x, hi.y))
        if o == "S":
            return Segment2(Point2(lo.x, lo.y), Point2(hi.x, lo.y))
        if o == "E":
            return Segment2(Point2(hi.x, lo.y), Point2(hi.x, hi.y))
        return Segment2(Point2(lo.x, lo.y), Point2(lo.x, hi.y))


@dataclass(frozen=True)
class FurnitureSpec:
    """Catalog record: footprint in feet plus the wall-adjacency class."""

    width: float
    depth: float
    wall_adjacent: bool

    def __post_init__(self):
        if self.width <= 0 or self.depth <= 0:
            raise ValueError("catalog dimensions must be positive")


@dataclass(frozen=True)
class FurnitureCatalog:
    """Furniture-kind lookup table, loadable from a JSON file."""

    entries: Mapping[str, FurnitureSpec]
    catalog_version: int = 1

    def spec_for(self, name: str) -> FurnitureSpec:
        try:
            return self.entries[name]
        except KeyError:
            raise UnknownFurnitureKind(name) from None


# Default footprints in feet (width x depth). Wall-adjacent classes follow
# the convention that tables stand free while storage and seating back onto
# walls. Overridable via a catalog file.
DEFAULT_CATALOG = FurnitureCatalog(
    entries={
        "Sofa": FurnitureSpec(6.0, 3.0, True),
        "TVUnit": FurnitureSpec(5.0, 1.5, True),
        "OfficeDesk": FurnitureSpec(5.0, 2.5, True),
        "Bed": FurnitureSpec(6.5, 5.0, True),
        "Wardrobe": FurnitureSpec(6.0, 2.0, True),
        "DiningTable": FurnitureSpec(6.0, 3.5, False),
        "Bench": FurnitureSpec(4.0, 1.5, False),
    }
)


def catalog_from_json(text: str) -> FurnitureCatalog:
    """Load a catalog file: {"catalog_version": 1, "<Kind>": {"width": ...,
    "depth": ..., "wall_adjacent": ...}, ...}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("$", "catalog must be a JSON object")
    version = data.get("catalog_version", 1)
    if not isinstance(version, int):
        raise SchemaError("$.catalog_version", "must be an integer")
    entries: dict[str, FurnitureSpec] = {}
    for name, rec in data.items():
        if name == "catalog_version":
            continue
        path = f"$.{name}"
        if not isinstance(rec, dict):
            raise SchemaError(path, "catalog entry must be an object")
        try:
            width = float(rec["width"])
            depth = float(rec["depth"])
            wall_adjacent = bool(rec["wall_adjacent"])
        except KeyError as exc:
            raise SchemaError(path, f"missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError):
            raise SchemaError(path, "width/depth must be numbers") from None
        if width <= 0 or depth <= 0:
            raise SchemaError(path, "dimensions must be positive")
        entries[name] = FurnitureSpec(width, depth, wall_adjacent)
    return FurnitureCatalog(entries=entries, catalog_version=version)


def catalog_to_json(catalog: FurnitureCatalog) -> str:
    data: dict[str, object] = {"catalog_version": catalog.catalog_version}
    for name in sorted(catalog.entries):
        spec = catalog.entries[name]
        data[name] = {
            "width": spec.width,
            "depth": spec.depth,
            "wall_adjacent": spec.wall_adjacent,
        }
    return json.dumps(data, indent=2) + "\n"


@dataclass(frozen=True)
class RoomRegion:
    """A named room: polygonal boundary plus the walls that bound it."""

    name: str
    boundary: Polygon2
    bounding_walls: tuple[str, ...] = ()


@dataclass(frozen=True)
class FloorPlan:
    """The complete parsed layout."""

    extent: AlignedBox
    walls: tuple[Wall, ...]
    openings: tuple[Opening, ...]
    furniture: tuple[FurnitureInstance, ...]
    rooms: tuple[RoomRegion, ...] = ()

    @property
    def doors(self) -> tuple[Opening, ...]:
        return tuple(o for o in self.openings if o.kind == "door")

    @property
    def windows(self) -> tuple[Opening, ...]:
        return tuple(o for o in self.openings if o.kind == "window")

    def wall_by_uid(self, uid: str) -> Wall:
        for w in self.walls:
            if w.uid == uid:
                return w
        raise KeyError(uid)

    def room_by_name(self, name: str) -> RoomRegion | None:
        for r in self.rooms:
            if r.name == name:
                return r
        return None

    def furniture_groups(self) -> dict[str, list[FurnitureInstance]]:
        """Items grouped by room name, preserving input order."""
        groups: dict[str, list[FurnitureInstance]] = {}
        for item in self.furniture:
            groups.setdefault(item.room_name, []).append(item)
        return groups

    def with_furniture(self, furniture: Iterable[FurnitureInstance]) -> FloorPlan:
        return replace(self, furniture=tuple(furniture))

    def with_rooms(self, rooms: Iterable[RoomRegion]) -> FloorPlan:
        return replace(self, rooms=tuple(rooms))


@dataclass
class OccupancySet:
    """Obstacle boxes consulted by clearance tests. Append-only."""

    _obstacles: list[tuple[AlignedBox, str]] = field(default_factory=list)

    def add(self, box: AlignedBox, source_id: str) -> None:
        self._obstacles.append((box, source_id))

    def __iter__(self) -> Iterator[tuple[AlignedBox, str]]:
        return iter(self._obstacles)

    def __len__(self) -> int:
        return len(self._obstacles)

    def source_ids(self) -> list[str]:
        return [sid for _, sid in self._obstacles]


def resolve_catalog(plan: FloorPlan, catalog: FurnitureCatalog) -> FloorPlan:
    """Bind every furniture item to its catalog footprint.

    Fails atomically: either every name resolves or the original plan is
    left untouched and :class:`UnknownFurnitureKind` is raised.
    """
    resolved = []
    for item in plan.furniture:
        spec = catalog.spec_for(item.name)
        resolved.append(
            replace(
                item,
                footprint_width=spec.width,
                footprint_depth=spec.depth,
                wall_adjacent=spec.wall_adjacent,
            )
        )
    return plan.with_furniture(resolved)


def occupancy_from_plan(
    plan: FloorPlan,
    exclude: FurnitureInstance | str | None = None,
    wall_half_thickness: float = 0.0,
) -> OccupancySet:
    """Obstacle set: walls, openings, and already-refined furniture.

    The excluded item (instance or uid) never contributes its own box, so
    self-collision is impossible by construction.
    """
    skip = exclude.uid if isinstance(exclude, FurnitureInstance) else exclude
    occ = OccupancySet()
    for wall in plan.walls:
        occ.add(wall.box(wall_half_thickness), wall.uid)
    for opening in plan.openings:
        occ.add(opening.box(), opening.uid)
    for item in plan.furniture:
        if skip is not None and item.uid == skip:
            continue
        if item.refined_center is not None and item.resolved:
            occ.add(item.box_at(item.refined_center), item.uid)
    return occ
