"""Axis-aligned 2D primitives and the distance/containment predicates.

Coordinates are feet, stored as doubles; comparisons use the absolute
tolerance ``EPS``. Walls are zero-thickness centerlines, so boxes with zero
area are legal (degenerate thickness) while polygons must enclose area.
All types are immutable and every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Absolute comparison tolerance in feet. Absorbs float noise without masking
# design-scale (0.5 ft) errors.
EPS = 1e-6


@dataclass(frozen=True)
class Point2:
    """A point in plan coordinates (feet)."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True)
class Segment2:
    """A straight segment with distinct endpoints."""

    start: Point2
    end: Point2

    def __post_init__(self):
        if self.length() <= EPS:
            raise ValueError(f"zero-length segment at ({self.start.x}, {self.start.y})")

    def length(self) -> float:
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)

    def is_axis_aligned(self) -> bool:
        return abs(self.start.x - self.end.x) <= EPS or abs(self.start.y - self.end.y) <= EPS

    def axis(self) -> str:
        """'h' for horizontal, 'v' for vertical. Requires axis alignment."""
        if abs(self.start.y - self.end.y) <= EPS:
            return "h"
        if abs(self.start.x - self.end.x) <= EPS:
            return "v"
        raise ValueError("segment is not axis-aligned")

    def midpoint(self) -> Point2:
        return Point2((self.start.x + self.end.x) / 2.0, (self.start.y + self.end.y) / 2.0)


@dataclass(frozen=True)
class AlignedBox:
    """Axis-aligned box. Zero area is permitted (wall centerlines)."""

    min_corner: Point2
    max_corner: Point2

    def __post_init__(self):
        if self.min_corner.x > self.max_corner.x + EPS or self.min_corner.y > self.max_corner.y + EPS:
            raise ValueError("box corners out of order")

    @property
    def width(self) -> float:
        return self.max_corner.x - self.min_corner.x

    @property
    def height(self) -> float:
        return self.max_corner.y - self.min_corner.y

    def center(self) -> Point2:
        return Point2(
            (self.min_corner.x + self.max_corner.x) / 2.0,
            (self.min_corner.y + self.max_corner.y) / 2.0,
        )

    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        lo, hi = self.min_corner, self.max_corner
        return (lo, Point2(hi.x, lo.y), hi, Point2(lo.x, hi.y))

    def deflated(self, margin: float) -> AlignedBox:
        """Shrink by ``margin`` on every side, clamping at the center."""
        m = min(margin, self.width / 2.0, self.height / 2.0)
        return AlignedBox(
            Point2(self.min_corner.x + m, self.min_corner.y + m),
            Point2(self.max_corner.x - m, self.max_corner.y - m),
        )

    def intersects(self, other: AlignedBox) -> bool:
        """True when the closed boxes share at least one point (touching counts)."""
        return (
            self.min_corner.x <= other.max_corner.x + EPS
            and other.min_corner.x <= self.max_corner.x + EPS
            and self.min_corner.y <= other.max_corner.y + EPS
            and other.min_corner.y <= self.max_corner.y + EPS
        )

    def contains_point(self, p: Point2) -> bool:
        return (
            self.min_corner.x - EPS <= p.x <= self.max_corner.x + EPS
            and self.min_corner.y - EPS <= p.y <= self.max_corner.y + EPS
        )


@dataclass(frozen=True)
class Polygon2:
    """Simple polygon with counterclockwise vertices and positive area."""

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if self.signed_area() <= EPS:
            raise ValueError("polygon must be counterclockwise with positive area")
        if self._self_intersects():
            raise ValueError("polygon is self-intersecting")

    def signed_area(self) -> float:
        acc = 0.0
        for a, b in self.edges():
            acc += a.x * b.y - b.x * a.y
        return acc / 2.0

    def area(self) -> float:
        return abs(self.signed_area())

    def edges(self) -> list[tuple[Point2, Point2]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def bounding_box(self) -> AlignedBox:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return AlignedBox(Point2(min(xs), min(ys)), Point2(max(xs), max(ys)))

    def centroid(self) -> Point2:
        # Area-weighted centroid of the polygon region.
        a = self.signed_area()
        cx = cy = 0.0
        for p, q in self.edges():
            cross = p.x * q.y - q.x * p.y
            cx += (p.x + q.x) * cross
            cy += (p.y + q.y) * cross
        return Point2(cx / (6.0 * a), cy / (6.0 * a))

    def _self_intersects(self) -> bool:
        es = self.edges()
        n = len(es)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # adjacent edges share an endpoint by construction
                if _segments_cross(es[i], es[j]):
                    return True
        return False


def _orient(a: Point2, b: Point2, c: Point2) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _segments_cross(e1: tuple[Point2, Point2], e2: tuple[Point2, Point2]) -> bool:
    a, b = e1
    c, d = e2
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if ((d1 > EPS and d2 < -EPS) or (d1 < -EPS and d2 > EPS)) and (
        (d3 > EPS and d4 < -EPS) or (d3 < -EPS and d4 > EPS)
    ):
        return True
    # Collinear overlap also breaks simplicity.
    if abs(d1) <= EPS and abs(d2) <= EPS and abs(d3) <= EPS and abs(d4) <= EPS:
        if abs(a.x - b.x) <= EPS and abs(c.x - d.x) <= EPS:
            lo, hi = max(min(a.y, b.y), min(c.y, d.y)), min(max(a.y, b.y), max(c.y, d.y))
            return hi - lo > EPS
        lo, hi = max(min(a.x, b.x), min(c.x, d.x)), min(max(a.x, b.x), max(c.x, d.x))
        return hi - lo > EPS
    return False


def box_distance(a: AlignedBox, b: AlignedBox) -> float:
    """Euclidean gap between two boxes; zero when they overlap or touch."""
    dx = max(b.min_corner.x - a.max_corner.x, a.min_corner.x - b.max_corner.x, 0.0)
    dy = max(b.min_corner.y - a.max_corner.y, a.min_corner.y - b.max_corner.y, 0.0)
    return math.hypot(dx, dy)


def box_from_center(center: Point2, width: float, depth: float) -> AlignedBox:
    """Box of ``width`` (x) by ``depth`` (y) centered exactly on ``center``."""
    if width <= 0 or depth <= 0:
        raise ValueError(f"non-positive footprint {width} x {depth}")
    return AlignedBox(
        Point2(center.x - width / 2.0, center.y - depth / 2.0),
        Point2(center.x + width / 2.0, center.y + depth / 2.0),
    )


def point_on_polygon_boundary(p: Point2, poly: Polygon2, tol: float = EPS) -> bool:
    return any(
        point_to_segment_distance_raw(p, a, b) <= tol for a, b in poly.edges()
    )


def point_strictly_inside(p: Point2, poly: Polygon2) -> bool:
    """Strict interior membership (boundary contact is outside)."""
    if point_on_polygon_boundary(p, poly):
        return False
    # Crossing-number with the half-open rule on y-spans.
    inside = False
    for a, b in poly.edges():
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_cross > p.x:
                inside = not inside
    return inside


def box_inside_polygon(b: AlignedBox, poly: Polygon2) -> bool:
    """True iff all four corners are strictly inside and no polygon edge
    crosses the open interior of the box. Correct for non-convex rooms."""
    if not all(point_strictly_inside(c, poly) for c in b.corners()):
        return False
    for a, c in poly.edges():
        if _segment_crosses_open_box(a, c, b):
            return False
    return True


def _segment_crosses_open_box(a: Point2, c: Point2, box: AlignedBox) -> bool:
    # Liang-Barsky clip of segment a->c against the closed box; the segment
    # crosses the open interior iff the clipped portion has positive length
    # and its midpoint is strictly inside.
    dx, dy = c.x - a.x, c.y - a.y
    t0, t1 = 0.0, 1.0
    for p, q in (
        (-dx, a.x - box.min_corner.x),
        (dx, box.max_corner.x - a.x),
        (-dy, a.y - box.min_corner.y),
        (dy, box.max_corner.y - a.y),
    ):
        if abs(p) <= EPS:
            if q < -EPS:
                return False
            continue
        t = q / p
        if p < 0:
            if t > t1:
                return False
            t0 = max(t0, t)
        else:
            if t < t0:
                return False
            t1 = min(t1, t)
    if t1 - t0 <= EPS:
        return False
    tm = (t0 + t1) / 2.0
    mx, my = a.x + tm * dx, a.y + tm * dy
    return (
        box.min_corner.x + EPS < mx < box.max_corner.x - EPS
        and box.min_corner.y + EPS < my < box.max_corner.y - EPS
    )


def segment_crosses_box_interior(a: Point2, b: Point2, box: AlignedBox) -> bool:
    """True iff the open segment a->b passes through the open interior of
    the box. Touching the boundary does not count."""
    return _segment_crosses_open_box(a, b, box)


def point_to_segment_distance_raw(p: Point2, a: Point2, b: Point2) -> float:
    ax, ay = b.x - a.x, b.y - a.y
    px, py = p.x - a.x, p.y - a.y
    denom = ax * ax + ay * ay
    t = 0.0 if denom == 0 else max(0.0, min(1.0, (px * ax + py * ay) / denom))
    return math.hypot(px - t * ax, py - t * ay)


def point_to_segment_distance(p: Point2, s: Segment2) -> float:
    """Distance from a point to the closest point on a segment."""
    return point_to_segment_distance_raw(p, s.start, s.end)


def closest_point_on_segment(p: Point2, s: Segment2) -> Point2:
    ax, ay = s.end.x - s.start.x, s.end.y - s.start.y
    px, py = p.x - s.start.x, p.y - s.start.y
    denom = ax * ax + ay * ay
    t = 0.0 if denom == 0 else max(0.0, min(1.0, (px * ax + py * ay) / denom))
    return Point2(s.start.x + t * ax, s.start.y + t * ay)


def segments_collinear_overlap(a: Segment2, b: Segment2) -> Segment2 | None:
    """Shared collinear sub-segment of two axis-aligned segments, if its
    length is positive; None for parallel-but-offset, crossing, or
    point-touching pairs."""
    if not (a.is_axis_aligned() and b.is_axis_aligned()):
        return None
    if a.axis() != b.axis():
        return None
    if a.axis() == "h":
        if abs(a.start.y - b.start.y) > EPS:
            return None
        lo = max(min(a.start.x, a.end.x), min(b.start.x, b.end.x))
        hi = min(max(a.start.x, a.end.x), max(b.start.x, b.end.x))
        if hi - lo <= EPS:
            return None
        return Segment2(Point2(lo, a.start.y), Point2(hi, a.start.y))
    if abs(a.start.x - b.start.x) > EPS:
        return None
    lo = max(min(a.start.y, a.end.y), min(b.start.y, b.end.y))
    hi = min(max(a.start.y, a.end.y), max(b.start.y, b.end.y))
    if hi - lo <= EPS:
        return None
    return Segment2(Point2(a.start.x, lo), Point2(a.start.x, hi))
