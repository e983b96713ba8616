"""Plan exports: a deterministic SVG rendering and BIM automation scripts.

The SVG uses a y-up plan convention (plan north at the top of the image)
and draws walls, door and window spans, furniture footprints with labels,
and optionally the step trail left by the placement refiner.

The script exporter emits IronPython-style text for a BIM authoring
environment: a wall script that creates every wall inside a single
transaction, plus companion scripts that place doors, windows, and
furniture relative to those walls. Only the wall script follows a fixed
canonical form; the companions extend the same pattern to hosted and
freestanding families and say so in their headers.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from .errors import PlanError
from .model import FloorPlan
from .refine import PlacementTrace


class UnsupportedElement(PlanError):
    """Raised when an element cannot be expressed as a creation script."""


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_WALL_COLOR = "#26282b"
_DOOR_COLOR = "#c2802a"
_WINDOW_COLOR = "#2a7fc2"
_FURNITURE_FILL = "#bcd9c0"
_FURNITURE_EDGE = "#2e6b3a"
_TRACE_OK = "#2e8b57"
_TRACE_FAIL = "#b03636"
_ROOM_LABEL = "#8a8d92"


def _fmt(v: float) -> str:
    out = f"{v:.2f}"
    return "0.00" if out == "-0.00" else out


def render_svg(
    plan: FloorPlan,
    scale: float = 10.0,
    traces: Sequence[PlacementTrace] | None = None,
) -> str:
    """Render the plan to an SVG document string (scale in pixels per foot)."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    ext = plan.extent
    pad = 0.5 * scale
    width = (ext.max_corner.x - ext.min_corner.x) * scale + 2 * pad
    height = (ext.max_corner.y - ext.min_corner.y) * scale + 2 * pad

    def tx(x: float) -> float:
        return (x - ext.min_corner.x) * scale + pad

    def ty(y: float) -> float:
        # Flip so larger plan y is higher on screen.
        return (ext.max_corner.y - y) * scale + pad

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_fmt(width)} '
        f'{_fmt(height)}" width="{_fmt(width)}" height="{_fmt(height)}">'
    )
    parts.append(f'<rect width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>')

    for room in plan.rooms:
        c = room.boundary.centroid()
        parts.append(
            f'<text x="{_fmt(tx(c.x))}" y="{_fmt(ty(c.y))}" fill="{_ROOM_LABEL}" '
            f'font-size="{_fmt(1.1 * scale)}" font-style="italic" '
            f'text-anchor="middle">{escape(room.name)}</text>'
        )

    for wall in plan.walls:
        s = wall.centerline
        parts.append(
            f'<line x1="{_fmt(tx(s.start.x))}" y1="{_fmt(ty(s.start.y))}" '
            f'x2="{_fmt(tx(s.end.x))}" y2="{_fmt(ty(s.end.y))}" '
            f'stroke="{_WALL_COLOR}" stroke-width="{_fmt(0.35 * scale)}" '
            f'stroke-linecap="square"/>'
        )

    for opening in plan.openings:
        color = _DOOR_COLOR if opening.kind == "door" else _WINDOW_COLOR
        s = opening.span
        parts.append(
            f'<line x1="{_fmt(tx(s.start.x))}" y1="{_fmt(ty(s.start.y))}" '
            f'x2="{_fmt(tx(s.end.x))}" y2="{_fmt(ty(s.end.y))}" '
            f'stroke="{color}" stroke-width="{_fmt(0.45 * scale)}" '
            f'stroke-linecap="butt"><title>{escape(opening.uid)}</title></line>'
        )

    for item in plan.furniture:
        if not item.resolved:
            continue
        box = item.box_at(item.current_center())
        x, y = tx(box.min_corner.x), ty(box.max_corner.y)
        w = box.width * scale
        h = box.height * scale
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" fill="{_FURNITURE_FILL}" '
            f'stroke="{_FURNITURE_EDGE}" stroke-width="1">'
            f"<title>{escape(item.uid)}</title></rect>"
        )
        c = box.center()
        parts.append(
            f'<text x="{_fmt(tx(c.x))}" y="{_fmt(ty(c.y))}" '
            f'fill="{_FURNITURE_EDGE}" font-size="{_fmt(0.9 * scale)}" '
            f'text-anchor="middle" dominant-baseline="middle">'
            f"{escape(item.name)}</text>"
        )

    for trace in traces or ():
        color = _TRACE_OK if trace.outcome == "placed" else _TRACE_FAIL
        pts = [step.center for step in trace.steps]
        if len(pts) >= 2:
            coords = " ".join(f"{_fmt(tx(p.x))},{_fmt(ty(p.y))}" for p in pts)
            parts.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1" stroke-dasharray="3,2" opacity="0.7"/>'
            )
        for p in pts:
            parts.append(
                f'<circle cx="{_fmt(tx(p.x))}" cy="{_fmt(ty(p.y))}" r="2" '
                f'fill="{color}" opacity="0.7"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# BIM automation scripts
# ---------------------------------------------------------------------------

_SCRIPT_PRELUDE = """\
import clr
clr.AddReference('RevitAPI')
from Autodesk.Revit.DB import (
    BuiltInCategory, FamilySymbol, FilteredElementCollector, Level, Line,
    Transaction, Wall, WallType, XYZ,
)
from Autodesk.Revit.DB.Structure import StructuralType

doc = __revit__.ActiveUIDocument.Document
level = FilteredElementCollector(doc).OfClass(Level).FirstElement()
"""


def _r(v: float) -> str:
    return repr(round(float(v), 6))


def _walls_script(plan: FloorPlan) -> str:
    lines = [_SCRIPT_PRELUDE]
    lines.append(
        "wall_type = FilteredElementCollector(doc).OfClass(WallType).FirstElement()"
    )
    lines.append("")
    lines.append("t = Transaction(doc, 'Create walls')")
    lines.append("t.Start()")
    lines.append("walls = []")
    for wall in plan.walls:
        s = wall.centerline
        lines.append(
            f"line = Line.CreateBound(XYZ({_r(s.start.x)}, {_r(s.start.y)}, 0.0), "
            f"XYZ({_r(s.end.x)}, {_r(s.end.y)}, 0.0))"
        )
        lines.append(
            f"walls.append(Wall.Create(doc, line, wall_type.Id, level.Id, "
            f"{_r(wall.height)}, 0.0, False, False))"
        )
    lines.append("t.Commit()")
    return "\n".join(lines) + "\n"


_HOSTED_HELPER = """\
def wall_at(x1, y1, x2, y2):
    # Walls are matched by their location line endpoints, assuming the
    # wall script above ran against the same document.
    for w in FilteredElementCollector(doc).OfClass(Wall):
        c = w.Location.Curve
        a, b = c.GetEndPoint(0), c.GetEndPoint(1)
        for p, q in ((a, b), (b, a)):
            if (abs(p.X - x1) < 0.01 and abs(p.Y - y1) < 0.01
                    and abs(q.X - x2) < 0.01 and abs(q.Y - y2) < 0.01):
                return w
    raise ValueError('host wall not found')
"""


def _opening_script(plan: FloorPlan, kind: str) -> str:
    category = "OST_Doors" if kind == "door" else "OST_Windows"
    openings = [o for o in plan.openings if o.kind == kind]
    for opening in openings:
        if opening.host_wall is None:
            raise UnsupportedElement(
                f"{opening.uid} has no host wall to receive the family instance"
            )
    lines = [_SCRIPT_PRELUDE]
    lines.append(
        "# Extends the wall-creation pattern to wall-hosted families: the"
    )
    lines.append(
        "# first symbol of the category is placed at each span midpoint."
    )
    lines.append(
        f"symbol = FilteredElementCollector(doc).OfClass(FamilySymbol)"
        f".OfCategory(BuiltInCategory.{category}).FirstElement()"
    )
    lines.append("")
    lines.append(_HOSTED_HELPER)
    lines.append(f"t = Transaction(doc, 'Place {kind}s')")
    lines.append("t.Start()")
    lines.append("if not symbol.IsActive:")
    lines.append("    symbol.Activate()")
    for opening in openings:
        host = plan.wall_by_uid(opening.host_wall)
        hs = host.centerline
        mid = opening.span.midpoint()
        lines.append(
            f"host = wall_at({_r(hs.start.x)}, {_r(hs.start.y)}, "
            f"{_r(hs.end.x)}, {_r(hs.end.y)})"
        )
        lines.append(
            f"doc.Create.NewFamilyInstance(XYZ({_r(mid.x)}, {_r(mid.y)}, 0.0), "
            f"symbol, host, level, StructuralType.NonStructural)"
        )
    lines.append("t.Commit()")
    return "\n".join(lines) + "\n"


_ROTATIONS = {"N": 0.0, "E": -math.pi / 2.0, "S": math.pi, "W": math.pi / 2.0}


def _furniture_script(plan: FloorPlan) -> str:
    lines = [_SCRIPT_PRELUDE]
    lines.append("from Autodesk.Revit.DB import ElementTransformUtils")
    lines.append("")
    lines.append(
        "# Extends the wall-creation pattern to freestanding families: each"
    )
    lines.append(
        "# item uses the furniture symbol whose name matches, or the first"
    )
    lines.append("# available symbol, rotated from its default facing.")
    lines.append(
        "symbols = list(FilteredElementCollector(doc).OfClass(FamilySymbol)"
        ".OfCategory(BuiltInCategory.OST_Furniture))"
    )
    lines.append("by_name = {s.FamilyName: s for s in symbols}")
    lines.append("")
    lines.append("t = Transaction(doc, 'Place furniture')")
    lines.append("t.Start()")
    for item in plan.furniture:
        if not item.resolved:
            continue
        c = item.current_center()
        lines.append(f"symbol = by_name.get({item.name!r}, symbols[0])")
        lines.append("if not symbol.IsActive:")
        lines.append("    symbol.Activate()")
        lines.append(
            f"inst = doc.Create.NewFamilyInstance(XYZ({_r(c.x)}, {_r(c.y)}, 0.0), "
            f"symbol, StructuralType.NonStructural)"
        )
        angle = _ROTATIONS[item.orientation]
        if angle:
            lines.append(
                "axis = Line.CreateBound("
                f"XYZ({_r(c.x)}, {_r(c.y)}, 0.0), XYZ({_r(c.x)}, {_r(c.y)}, 1.0))"
            )
            lines.append(
                f"ElementTransformUtils.RotateElement(doc, inst.Id, axis, {_r(angle)})"
            )
    lines.append("t.Commit()")
    return "\n".join(lines) + "\n"


def export_bim_scripts(plan: FloorPlan) -> Mapping[str, str]:
    """Build creation scripts keyed by file name.

    Raises :class:`UnsupportedElement` if a door or window lacks a host
    wall, since hosted families cannot be placed without one.
    """
    scripts = {"walls.py": _walls_script(plan)}
    if plan.doors:
        scripts["doors.py"] = _opening_script(plan, "door")
    if plan.windows:
        scripts["windows.py"] = _opening_script(plan, "window")
    if any(item.resolved for item in plan.furniture):
        scripts["furniture.py"] = _furniture_script(plan)
    return scripts
