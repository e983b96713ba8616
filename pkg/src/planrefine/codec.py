"""Parse and emit the JSON layout schema, plus raw-response sanitization.

A plan file is a JSON object with four top-level keys: ``walls``, ``doors``
and ``windows`` (lists of ``{"start": [x, y, 0], "end": [x, y, 0]}``) and
``Furniture`` (object mapping room name to a list of ``{"name": ...,
"position": [x, y, 0]}``). Coordinates are feet; the third component must be
zero and is dropped at parse time, then reattached on emission.

Emission is canonical: fixed key order, coordinates re-extended to three
components, numbers printed with minimal decimals (at most four fractional
digits). ``emit_plan(parse_plan(text))`` is a textual fixed point.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import GeometryError, NoJsonObjectFound, NonZeroElevation, SchemaError
from .geometry import EPS, AlignedBox, Point2, Segment2
from .model import FloorPlan, FurnitureInstance, Opening, Wall

# Opening fields other than start/end are carried through unchanged when
# they hold scalars (sill height and the like); nothing in the engine
# consumes them.
_RESERVED_OPENING_KEYS = ("start", "end")


def parse_plan(text: str, extent: AlignedBox | None = None) -> FloorPlan:
    """Parse plan text into a FloorPlan.

    The site extent defaults to the bounding box of all walls; pass
    ``extent`` to override. Geometry outside the extent is rejected, never
    clamped.
    """
    if not text.strip():
        raise SchemaError("$", "empty plan text")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError("$", "plan must be a JSON object")

    for key in ("walls", "doors", "windows"):
        if key not in data:
            raise SchemaError(f"$.{key}", "missing required key")
        if not isinstance(data[key], list):
            raise SchemaError(f"$.{key}", "must be a list")
    # The furniture key is accepted with either capitalization.
    if "Furniture" in data:
        furniture_data = data["Furniture"]
    elif "furniture" in data:
        furniture_data = data["furniture"]
    else:
        raise SchemaError("$.Furniture", "missing required key")
    if not isinstance(furniture_data, dict):
        raise SchemaError("$.Furniture", "must be an object of room name to item list")

    walls = tuple(
        _parse_wall(entry, i) for i, entry in enumerate(data["walls"])
    )
    openings: list[Opening] = []
    for kind, plural in (("door", "doors"), ("window", "windows")):
        for i, entry in enumerate(data[plural]):
            openings.append(_parse_opening(entry, kind, i))

    furniture: list[FurnitureInstance] = []
    for room_name, items in furniture_data.items():
        path = f"$.Furniture.{room_name}"
        if not isinstance(items, list):
            raise SchemaError(path, "room entry must be a list of items")
        for j, entry in enumerate(items):
            furniture.append(_parse_furniture(entry, room_name, j))

    if extent is None:
        extent = _walls_bounding_box(walls)
    plan = FloorPlan(
        extent=extent, walls=walls, openings=tuple(openings), furniture=tuple(furniture)
    )
    _check_within_extent(plan)
    return plan


def _parse_triple(value: Any, path: str) -> Point2:
    if not isinstance(value, list) or len(value) != 3:
        raise SchemaError(path, "coordinate must be a [x, y, 0] triple")
    for idx, comp in enumerate(value):
        if isinstance(comp, bool) or not isinstance(comp, (int, float)):
            raise SchemaError(f"{path}[{idx}]", "coordinate component must be a number")
    x, y, z = (float(c) for c in value)
    if abs(z) > EPS:
        raise NonZeroElevation(f"{path}: z must be 0, got {value[2]}")
    return Point2(x, y)


def _parse_segment(entry: Any, path: str) -> Segment2:
    if not isinstance(entry, dict):
        raise SchemaError(path, "must be an object with start and end")
    for key in ("start", "end"):
        if key not in entry:
            raise SchemaError(f"{path}.{key}", "missing required key")
    start = _parse_triple(entry["start"], f"{path}.start")
    end = _parse_triple(entry["end"], f"{path}.end")
    try:
        seg = Segment2(start, end)
    except ValueError:
        raise GeometryError(f"{path}: zero-length segment") from None
    return seg


def _parse_wall(entry: Any, index: int) -> Wall:
    path = f"$.walls[{index}]"
    seg = _parse_segment(entry, path)
    if not seg.is_axis_aligned():
        raise GeometryError(f"{path}: wall is not axis-aligned")
    return Wall(uid=f"wall_{index}", centerline=seg)


def _parse_opening(entry: Any, kind: str, index: int) -> Opening:
    path = f"$.{kind}s[{index}]"
    seg = _parse_segment(entry, path)
    if not seg.is_axis_aligned():
        raise GeometryError(f"{path}: {kind} span is not axis-aligned")
    meta = []
    for key in sorted(entry):
        if key in _RESERVED_OPENING_KEYS:
            continue
        value = entry[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{path}.{key}", "extra opening fields must be numbers")
        meta.append((key, float(value)))
    return Opening(uid=f"{kind}_{index}", kind=kind, span=seg, meta=tuple(meta))


def _parse_furniture(entry: Any, room_name: str, index: int) -> FurnitureInstance:
    path = f"$.Furniture.{room_name}[{index}]"
    if not isinstance(entry, dict):
        raise SchemaError(path, "furniture item must be an object")
    if "name" not in entry:
        raise SchemaError(f"{path}.name", "missing required key")
    name = entry["name"]
    if not isinstance(name, str) or not name:
        raise SchemaError(f"{path}.name", "must be a non-empty string")
    if "position" not in entry:
        raise SchemaError(f"{path}.position", "missing required key")
    center = _parse_triple(entry["position"], f"{path}.position")
    return FurnitureInstance(
        uid=f"{room_name}/{name}#{index}",
        name=name,
        room_name=room_name,
        initial_center=center,
    )


def _walls_bounding_box(walls: tuple[Wall, ...]) -> AlignedBox:
    if not walls:
        return AlignedBox(Point2(0.0, 0.0), Point2(0.0, 0.0))
    xs: list[float] = []
    ys: list[float] = []
    for w in walls:
        xs.extend((w.centerline.start.x, w.centerline.end.x))
        ys.extend((w.centerline.start.y, w.centerline.end.y))
    return AlignedBox(Point2(min(xs), min(ys)), Point2(max(xs), max(ys)))


def _check_within_extent(plan: FloorPlan) -> None:
    ext = plan.extent
    for w in plan.walls:
        for p in (w.centerline.start, w.centerline.end):
            if not ext.contains_point(p):
                raise GeometryError(f"wall {w.uid} endpoint ({p.x}, {p.y}) outside extent")
    for o in plan.openings:
        for p in (o.span.start, o.span.end):
            if not ext.contains_point(p):
                raise GeometryError(f"{o.uid} endpoint ({p.x}, {p.y}) outside extent")
    for f in plan.furniture:
        p = f.initial_center
        if not ext.contains_point(p):
            raise GeometryError(f"furniture {f.uid} center ({p.x}, {p.y}) outside extent")


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def _canonical_number(x: float) -> int | float:
    """Integers stay integers; other values keep at most 4 decimals."""
    if abs(x - round(x)) < 1e-9:
        return int(round(x))
    return round(x, 4)


def _triple(p: Point2) -> list[int | float]:
    return [_canonical_number(p.x), _canonical_number(p.y), 0]


def _opening_payload(o: Opening) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "start": _triple(o.span.start),
        "end": _triple(o.span.end),
    }
    for key, value in o.meta:
        payload[key] = _canonical_number(value)
    return payload


def emit_plan(plan: FloorPlan) -> str:
    """Serialize a plan to canonical text.

    Furniture positions use the refined center when present, the initial
    center otherwise. Room groups appear in the plan's encounter order, so
    ``parse_plan(emit_plan(p))`` reproduces ``p`` item for item.
    """
    furniture: dict[str, list[dict[str, Any]]] = {}
    for item in plan.furniture:
        furniture.setdefault(item.room_name, []).append(
            {"name": item.name, "position": _triple(item.current_center())}
        )
    payload = {
        "walls": [
            {"start": _triple(w.centerline.start), "end": _triple(w.centerline.end)}
            for w in plan.walls
        ],
        "doors": [_opening_payload(o) for o in plan.doors],
        "windows": [_opening_payload(o) for o in plan.windows],
        "Furniture": furniture,
    }
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Raw-response sanitization
# ---------------------------------------------------------------------------


def sanitize_llm_response(raw: str) -> str:
    """Extract the first balanced top-level JSON object from raw text.

    Strips surrounding prose and code-fence markers by construction: only
    the balanced object is returned. Brace counting is string-aware, so
    braces inside JSON strings do not confuse the scan.
    """
    start = raw.find("{")
    while start != -1:
        end = _balanced_end(raw, start)
        if end is not None:
            return raw[start : end + 1]
        start = raw.find("{", start + 1)
    raise NoJsonObjectFound("no balanced JSON object in response")


def _balanced_end(text: str, start: int) -> int | None:
    depth = 0
    in_string = False
    escaped = False
    for i in range(start, len(text)):
        ch = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return i
    return None
