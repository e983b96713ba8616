"""Deterministic floor-plan toolkit: parse JSON layouts, derive room
topology, repair furniture placements against clearance rules, run plan
checks, and export SVG renderings and BIM automation scripts."""

from .checks import (
    DEFAULT_REQUIREMENTS,
    CheckReport,
    Finding,
    RoomRequirements,
    RoomRule,
    check_connectivity,
    check_openings,
    check_room_contents,
    requirements_from_json,
    requirements_to_json,
    run_all_checks,
)
from .codec import emit_plan, parse_plan, sanitize_llm_response
from .errors import (
    GeometryError,
    NoJsonObjectFound,
    NonZeroElevation,
    PlanError,
    SchemaError,
)
from .export import UnsupportedElement, export_bim_scripts, render_svg
from .geometry import (
    EPS,
    AlignedBox,
    Point2,
    Polygon2,
    Segment2,
    box_distance,
    box_from_center,
    box_inside_polygon,
    point_strictly_inside,
)
from .model import (
    DEFAULT_CATALOG,
    FloorPlan,
    FurnitureCatalog,
    FurnitureInstance,
    FurnitureSpec,
    OccupancySet,
    Opening,
    RoomRegion,
    UnknownFurnitureKind,
    Wall,
    catalog_from_json,
    catalog_to_json,
    occupancy_from_plan,
    resolve_catalog,
)
from .prompts import (
    EmptyBrief,
    EmptyResponse,
    LayoutBrief,
    TransportConfig,
    TransportError,
    build_layout_prompt,
    build_script_prompt,
    fetch_layout,
)
from .refine import (
    Feasibility,
    PlacementTrace,
    RefinerConfig,
    TraceStep,
    brute_force_feasible_set,
    greedy_wall_placement,
    is_feasible,
    nearest_wall_direction,
    refine_plan,
    refiner_config_from_json,
)
from .topology import (
    EXTERIOR,
    AmbiguousRoomAssignment,
    FurnitureOutsideAllRooms,
    OpenEnvelope,
    build_topology,
    extract_rooms,
    host_openings,
    name_rooms,
)

__version__ = "1.0.0"

__all__ = [
    "EPS",
    "EXTERIOR",
    "AlignedBox",
    "AmbiguousRoomAssignment",
    "CheckReport",
    "DEFAULT_CATALOG",
    "DEFAULT_REQUIREMENTS",
    "EmptyBrief",
    "EmptyResponse",
    "Feasibility",
    "Finding",
    "FloorPlan",
    "FurnitureCatalog",
    "FurnitureInstance",
    "FurnitureOutsideAllRooms",
    "FurnitureSpec",
    "GeometryError",
    "LayoutBrief",
    "NoJsonObjectFound",
    "NonZeroElevation",
    "OccupancySet",
    "OpenEnvelope",
    "Opening",
    "PlacementTrace",
    "PlanError",
    "Point2",
    "Polygon2",
    "RefinerConfig",
    "RoomRegion",
    "RoomRequirements",
    "RoomRule",
    "SchemaError",
    "Segment2",
    "TraceStep",
    "TransportConfig",
    "TransportError",
    "UnknownFurnitureKind",
    "UnsupportedElement",
    "Wall",
    "box_distance",
    "box_from_center",
    "box_inside_polygon",
    "brute_force_feasible_set",
    "build_layout_prompt",
    "build_script_prompt",
    "build_topology",
    "catalog_from_json",
    "catalog_to_json",
    "check_connectivity",
    "check_openings",
    "check_room_contents",
    "emit_plan",
    "export_bim_scripts",
    "extract_rooms",
    "fetch_layout",
    "greedy_wall_placement",
    "host_openings",
    "is_feasible",
    "name_rooms",
    "nearest_wall_direction",
    "occupancy_from_plan",
    "parse_plan",
    "point_strictly_inside",
    "refine_plan",
    "refiner_config_from_json",
    "render_svg",
    "requirements_from_json",
    "requirements_to_json",
    "resolve_catalog",
    "run_all_checks",
    "sanitize_llm_response",
]
