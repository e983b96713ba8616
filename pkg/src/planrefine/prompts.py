"""Prompt construction and transport for language-model layout generation.

The layout prompt asks a text model for a floor plan in the exact JSON
shape the codec parses; the script prompts ask for element-creation code
in the same style the exporter writes. Responses are fetched either from
a file of canned text or from an HTTP endpoint, so the rest of the
pipeline stays runnable with no network access.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import PlanError

_API_KEY_ENV = "PLANREFINE_API_KEY"


class EmptyBrief(PlanError):
    """Raised when a layout brief has no rooms or no positive extent."""


class TransportError(PlanError):
    """Raised when a response cannot be fetched from the transport."""


class EmptyResponse(PlanError):
    """Raised when the transport yields no usable text."""


@dataclass(frozen=True)
class LayoutBrief:
    """What the requested dwelling should contain.

    ``rooms`` holds the descriptive room phrases for the wall directive;
    ``furniture`` maps plain room names to the kinds each room needs, in
    presentation order.
    """

    width: float  # x extent, feet
    length: float  # y extent, feet
    rooms: tuple[str, ...]
    furniture: tuple[tuple[str, tuple[str, ...]], ...] = ()
    notes: str = ""

    def __init__(
        self,
        width: float,
        length: float,
        rooms: Sequence[str],
        furniture: Mapping[str, Sequence[str]] | Sequence[tuple[str, Sequence[str]]] = (),
        notes: str = "",
    ):
        if width <= 0 or length <= 0:
            raise EmptyBrief("brief extent must be positive in both directions")
        if not rooms:
            raise EmptyBrief("a layout brief must name at least one room")
        pairs = furniture.items() if isinstance(furniture, Mapping) else furniture
        object.__setattr__(self, "width", float(width))
        object.__setattr__(self, "length", float(length))
        object.__setattr__(self, "rooms", tuple(rooms))
        object.__setattr__(
            self,
            "furniture",
            tuple((room, tuple(kinds)) for room, kinds in pairs),
        )
        object.__setattr__(self, "notes", notes)


def _join_rooms(rooms: Sequence[str]) -> str:
    if len(rooms) == 1:
        return rooms[0]
    if len(rooms) == 2:
        return f"{rooms[0]} and {rooms[1]}"
    return ", ".join(rooms[:-1]) + f", and {rooms[-1]}"


_LAYOUT_TEMPLATE = """\
Generate a JSON object representing a floor plan for a single-story building
with overall dimensions of {w} feet in width (x-axis: 0 to {w}) and {l} feet in
length (y-axis: 0 to {l}). The output must be a JSON object with four top-level
keys: "walls", "doors", "windows", and "Furniture".

walls: Provide an array of objects where each object represents a wall segment
with "start" and "end" coordinates in the format [x, y, 0]. The exterior walls
must form a {w}x{l} ft rectangle. Include interior walls to define the following
rooms: {rooms}.
The AI should decide the placement and dimensions of these rooms.

doors: List each door with "start" and "end" coordinates. Place doors on wall
segments with no overlap. Ensure logical connectivity between rooms and include
at least one exterior entry door.

windows: Provide an array of "start" and "end" coordinates. Place only on
exterior walls, avoiding any overlap with doors. Each window must be at least
2 ft from any door edge.

Furniture: For each room, include furniture as objects with "name" and
"position" fields. Position is [x, y, 0], representing the center.
{furniture_lines}

Assume standard furniture dimensions and ensure no overlaps with walls,
doors, or other furniture. All furniture must respect a clearance of at
least 1 ft from walls, doors, windows, and other furniture. All components
must lie within the defined room boundaries.{notes_clause}

Note: Avoid unnecessary text or metadata. Output should be a clean JSON
object only.
"""


def build_layout_prompt(brief: LayoutBrief) -> str:
    """Render the layout-generation prompt for a brief."""
    furniture_lines = "\n".join(
        f"- {room}: {', '.join(kinds)}" for room, kinds in brief.furniture
    )
    notes_clause = f"\n{brief.notes}" if brief.notes else ""
    return _LAYOUT_TEMPLATE.format(
        w=f"{brief.width:g}",
        l=f"{brief.length:g}",
        rooms=_join_rooms(brief.rooms),
        furniture_lines=furniture_lines,
        notes_clause=notes_clause,
    )


_SCRIPT_COMMON = """\
Requirements:
- Import the necessary Revit API classes (e.g., Autodesk.Revit.DB).
- Begin a Transaction.
{body}
- Commit the Transaction.
- Do NOT generate {excluded}.
- Output only executable Python code. Do not include any explanations, comments, or markdown.
"""

_SCRIPT_HEADERS = {
    "walls": (
        'You are a Revit Python expert. Given the variable `data` that stores a '
        'JSON object with a top-level key "walls", where each element has "start" '
        'and "end" coordinates in the format [x, y, 0], generate a Python script '
        "that creates all the walls in Autodesk Revit.",
        "- For each wall segment:\n"
        "  - Create a Line using Line.CreateBound(XYZ(x1, y1, 0), XYZ(x2, y2, 0)).\n"
        "  - Use Wall.Create(doc, line, wallType.Id, level.Id, 10, 0, False, False) "
        "to place a 10-ft-high basic wall.\n"
        "- Use the first available wall type (wallType) and the first level (level) "
        "in the document.",
        "doors, windows, or furniture",
    ),
    "doors": (
        'You are a Revit Python expert. Given the variable `data` that stores a '
        'JSON object with a top-level key "doors", where each element has "start" '
        'and "end" coordinates in the format [x, y, 0], generate a Python script '
        "that creates all the doors in Autodesk Revit.",
        "- For each door span:\n"
        "  - Locate the wall whose location line contains the span.\n"
        "  - Place a door instance at the span midpoint with "
        "doc.Create.NewFamilyInstance, hosted on that wall.\n"
        "- Use the first available door symbol and the first level in the document.",
        "walls, windows, or furniture",
    ),
    "windows": (
        'You are a Revit Python expert. Given the variable `data` that stores a '
        'JSON object with a top-level key "windows", where each element has "start" '
        'and "end" coordinates in the format [x, y, 0], generate a Python script '
        "that creates all the windows in Autodesk Revit.",
        "- For each window span:\n"
        "  - Locate the wall whose location line contains the span.\n"
        "  - Place a window instance at the span midpoint with "
        "doc.Create.NewFamilyInstance, hosted on that wall.\n"
        "- Use the first available window symbol and the first level in the document.",
        "walls, doors, or furniture",
    ),
    "furniture": (
        'You are a Revit Python expert. Given the variable `data` that stores a '
        'JSON object with a top-level key "Furniture", where each room maps to a '
        'list of items with "name" and "position" fields and position is the '
        "center in the format [x, y, 0], generate a Python script that creates "
        "all the furniture in Autodesk Revit.",
        "- For each furniture item:\n"
        "  - Insert the item as a predefined Family instance placed by its single "
        "center point using doc.Create.NewFamilyInstance.\n"
        "  - Choose the furniture symbol whose name matches the item, or the first "
        "available furniture symbol.\n"
        "- Use the first available level in the document.",
        "walls, doors, or windows",
    ),
}

ELEMENT_CLASSES = tuple(_SCRIPT_HEADERS)


def build_script_prompt(element_class: str) -> str:
    """Render the script-generation prompt for one element class."""
    try:
        header, body, excluded = _SCRIPT_HEADERS[element_class]
    except KeyError:
        raise ValueError(
            f"element class must be one of {', '.join(ELEMENT_CLASSES)}"
        ) from None
    return header + "\n\n" + _SCRIPT_COMMON.format(body=body, excluded=excluded)


# ---------------------------------------------------------------------------
# Response transport
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransportConfig:
    """Where layout responses come from: a canned file or an endpoint."""

    mode: str  # "file" | "endpoint"
    location: str
    timeout: float = 30.0
    retries: int = 0

    def __post_init__(self):
        if self.mode not in ("file", "endpoint"):
            raise ValueError("transport mode must be 'file' or 'endpoint'")
        if not self.location:
            raise ValueError("transport location must be non-empty")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.retries < 0:
            raise ValueError("retries must be non-negative")


def _extract_message_text(body: str) -> str:
    """Pull the first message text out of a chat-completion-style reply.

    Plain-text bodies pass through unchanged.
    """
    try:
        data = json.loads(body)
    except json.JSONDecodeError:
        return body
    if isinstance(data, dict):
        choices = data.get("choices")
        if isinstance(choices, list) and choices:
            first = choices[0]
            if isinstance(first, dict):
                message = first.get("message")
                if isinstance(message, dict) and isinstance(message.get("content"), str):
                    return message["content"]
                if isinstance(first.get("text"), str):
                    return first["text"]
    return body


def fetch_layout(prompt: str, transport: TransportConfig) -> str:
    """Fetch raw response text for a prompt.

    File mode ignores the prompt and returns the file contents verbatim;
    endpoint mode POSTs a chat-completion request and returns the first
    message text. The API key, when needed, comes from the
    PLANREFINE_API_KEY environment variable.
    """
    if transport.mode == "file":
        try:
            with open(transport.location, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise TransportError(f"cannot read {transport.location}: {exc}") from None
    else:
        payload = json.dumps(
            {"messages": [{"role": "user", "content": prompt}]}
        ).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(_API_KEY_ENV)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        last_error: Exception | None = None
        raw = None
        for _ in range(transport.retries + 1):
            request = urllib.request.Request(
                transport.location, data=payload, headers=headers, method="POST"
            )
            try:
                with urllib.request.urlopen(request, timeout=transport.timeout) as resp:
                    raw = resp.read().decode("utf-8", errors="replace")
                break
            except (urllib.error.URLError, OSError, ValueError) as exc:
                last_error = exc
        if raw is None:
            raise TransportError(
                f"cannot reach {transport.location}: {last_error}"
            ) from None
        raw = _extract_message_text(raw)
    if not raw.strip():
        raise EmptyResponse(
            f"transport {transport.mode}:{transport.location} returned no text"
        )
    return raw
