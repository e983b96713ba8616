"""Derive room regions from the wall set and bind furniture and openings.

Walls are axis-aligned, so their x/y coordinates induce a grid over the
site extent. Every grid cell belongs to exactly one face: cells merge
across any cell interface not covered by a wall. Bounded faces become
rooms; the exterior is a pseudo-room named ``exterior``.

Face boundaries are traced as rectilinear polygons with the interior on
the left, which yields counterclockwise loops. A face with an interior
hole (walls forming an island) keeps its outer loop as the boundary; the
hole's walls still act as obstacles during refinement.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import replace
from typing import Mapping, Sequence

from .errors import PlanError
from .geometry import EPS, Point2, Polygon2, Segment2, point_strictly_inside
from .model import FloorPlan, FurnitureInstance, Opening, RoomRegion, Wall

logger = logging.getLogger(__name__)

EXTERIOR = "exterior"

# Offset used to probe which face lies on each side of an opening span.
# Far above float noise, far below any plausible wall spacing.
_PROBE_OFFSET = 0.01


class OpenEnvelope(PlanError):
    """Exterior walls do not close the site perimeter."""


class AmbiguousRoomAssignment(PlanError):
    """Two furniture groups claim the same face."""


class FurnitureOutsideAllRooms(PlanError):
    """An item's center lies on a wall or outside every face."""


def extract_rooms(plan: FloorPlan) -> list[RoomRegion]:
    """Split the extent into faces along wall centerlines.

    Returns unnamed RoomRegions (empty names) in deterministic bottom-left
    scan order. Raises :class:`OpenEnvelope` when the extent perimeter is
    not fully covered by walls.
    """
    grid = _ArrangementGrid.build(plan)
    return grid.rooms()


def name_rooms(
    rooms: Sequence[RoomRegion],
    furniture_groups: Mapping[str, Sequence[FurnitureInstance]],
) -> list[RoomRegion]:
    """Assign furniture-group names to faces by majority vote of item centers.

    Ties go to the face holding the group's first-listed item. Faces no
    group claims get synthetic names.
    """
    claimed: dict[int, str] = {}  # face index -> group name
    for group_name, items in furniture_groups.items():
        votes: dict[int, int] = defaultdict(int)
        first_face: dict[int, int] = {}  # face index -> earliest item position
        for pos, item in enumerate(items):
            face = _containing_face(item.initial_center, rooms)
            if face is None:
                raise FurnitureOutsideAllRooms(
                    f"item {item.uid} center ({item.initial_center.x}, "
                    f"{item.initial_center.y}) lies on a wall or outside every room"
                )
            votes[face] += 1
            first_face.setdefault(face, pos)
        best = max(votes.values())
        tied = [f for f, n in votes.items() if n == best]
        winner = min(tied, key=lambda f: first_face[f])
        if winner in claimed:
            raise AmbiguousRoomAssignment(
                f"groups {claimed[winner]!r} and {group_name!r} both map to the same face"
            )
        claimed[winner] = group_name

    named: list[RoomRegion] = []
    taken = set(claimed.values())
    counter = 1
    for idx, room in enumerate(rooms):
        if idx in claimed:
            named.append(replace(room, name=claimed[idx]))
            continue
        while f"room_{counter}" in taken:
            counter += 1
        synthetic = f"room_{counter}"
        taken.add(synthetic)
        counter += 1
        named.append(replace(room, name=synthetic))

    _warn_minority_items(furniture_groups, named)
    return named


def _warn_minority_items(
    furniture_groups: Mapping[str, Sequence[FurnitureInstance]],
    named: Sequence[RoomRegion],
) -> None:
    by_name = {r.name: r for r in named}
    for group_name, items in furniture_groups.items():
        room = by_name.get(group_name)
        if room is None:
            continue
        for item in items:
            if not point_strictly_inside(item.initial_center, room.boundary):
                logger.warning(
                    "item %s starts outside its room %s; refinement must move it",
                    item.uid,
                    group_name,
                )


def _containing_face(p: Point2, rooms: Sequence[RoomRegion]) -> int | None:
    for idx, room in enumerate(rooms):
        if point_strictly_inside(p, room.boundary):
            return idx
    return None


def host_openings(plan: FloorPlan) -> FloorPlan:
    """Resolve each opening to its host wall and the rooms it connects.

    Openings with no collinear containing wall keep ``host_wall=None``;
    the checks stage reports them. Idempotent.
    """
    hosted: list[Opening] = []
    for opening in plan.openings:
        host = _find_host(opening, plan.walls)
        connects = _connected_rooms(opening, plan.rooms)
        hosted.append(replace(opening, host_wall=host, connects=connects))
    return replace(plan, openings=tuple(hosted))


def _find_host(opening: Opening, walls: Sequence[Wall]) -> str | None:
    from .geometry import segments_collinear_overlap

    span_len = opening.span.length()
    for wall in walls:
        shared = segments_collinear_overlap(wall.centerline, opening.span)
        if shared is not None and abs(shared.length() - span_len) <= EPS:
            return wall.uid
    return None


def _connected_rooms(opening: Opening, rooms: Sequence[RoomRegion]) -> tuple[str, ...]:
    mid = opening.span.midpoint()
    if opening.span.axis() == "h":
        probes = (Point2(mid.x, mid.y + _PROBE_OFFSET), Point2(mid.x, mid.y - _PROBE_OFFSET))
    else:
        probes = (Point2(mid.x + _PROBE_OFFSET, mid.y), Point2(mid.x - _PROBE_OFFSET, mid.y))
    names = set()
    for probe in probes:
        face = _containing_face(probe, rooms)
        names.add(EXTERIOR if face is None else rooms[face].name)
    return tuple(sorted(names))


def build_topology(plan: FloorPlan) -> FloorPlan:
    """Extract faces, name them from furniture groups, host openings."""
    rooms = extract_rooms(plan)
    named = name_rooms(rooms, plan.furniture_groups())
    return host_openings(plan.with_rooms(named))


# ---------------------------------------------------------------------------
# Arrangement grid
# ---------------------------------------------------------------------------


class _ArrangementGrid:
    """Cell decomposition of the extent along wall coordinates."""

    def __init__(
        self,
        xs: list[float],
        ys: list[float],
        covered_v: dict[tuple[int, int], list[int]],
        covered_h: dict[tuple[int, int], list[int]],
        walls: Sequence[Wall],
    ):
        self.xs = xs
        self.ys = ys
        self.covered_v = covered_v  # (k, j): wall indices covering x=xs[k], cell row j
        self.covered_h = covered_h  # (i, l): wall indices covering y=ys[l], cell col i
        self.walls = walls
        self.nx = len(xs) - 1
        self.ny = len(ys) - 1

    @staticmethod
    def build(plan: FloorPlan) -> "_ArrangementGrid":
        if not plan.walls:
            raise OpenEnvelope("plan has no walls")
        ext = plan.extent
        xs_raw = {ext.min_corner.x, ext.max_corner.x}
        ys_raw = {ext.min_corner.y, ext.max_corner.y}
        for w in plan.walls:
            s = w.centerline
            xs_raw.update((s.start.x, s.end.x))
            ys_raw.update((s.start.y, s.end.y))
        xs = _dedup(sorted(xs_raw))
        ys = _dedup(sorted(ys_raw))
        if len(xs) < 2 or len(ys) < 2:
            raise OpenEnvelope("degenerate extent")

        covered_v: dict[tuple[int, int], list[int]] = defaultdict(list)
        covered_h: dict[tuple[int, int], list[int]] = defaultdict(list)
        for widx, w in enumerate(plan.walls):
            s = w.centerline
            if s.axis() == "v":
                k = _index_of(xs, s.start.x)
                lo, hi = sorted((s.start.y, s.end.y))
                for j in range(len(ys) - 1):
                    if ys[j] >= lo - EPS and ys[j + 1] <= hi + EPS:
                        covered_v[(k, j)].append(widx)
            else:
                l = _index_of(ys, s.start.y)
                lo, hi = sorted((s.start.x, s.end.x))
                for i in range(len(xs) - 1):
                    if xs[i] >= lo - EPS and xs[i + 1] <= hi + EPS:
                        covered_h[(i, l)].append(widx)

        grid = _ArrangementGrid(xs, ys, dict(covered_v), dict(covered_h), plan.walls)
        grid._check_envelope()
        return grid

    def _check_envelope(self) -> None:
        for j in range(self.ny):
            for k in (0, self.nx):
                if (k, j) not in self.covered_v:
                    raise OpenEnvelope(
                        f"perimeter gap at x={self.xs[k]}, "
                        f"y in [{self.ys[j]}, {self.ys[j + 1]}]"
                    )
        for i in range(self.nx):
            for l in (0, self.ny):
                if (i, l) not in self.covered_h:
                    raise OpenEnvelope(
                        f"perimeter gap at y={self.ys[l]}, "
                        f"x in [{self.xs[i]}, {self.xs[i + 1]}]"
                    )

    def rooms(self) -> list[RoomRegion]:
        face_of = self._merge_cells()
        faces = self._face_cells(face_of)
        regions = []
        for cells in faces:
            poly = self._trace_boundary(set(cells))
            wall_uids = self._bounding_walls(set(cells), face_of)
            regions.append(RoomRegion(name="", boundary=poly, bounding_walls=wall_uids))
        self._warn_dangling(face_of)
        return regions

    def _merge_cells(self) -> dict[tuple[int, int], int]:
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(c):
            root = c
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(c, c) != c:
                parent[c], c = root, parent[c]
            return root

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for k in range(1, self.nx):
            for j in range(self.ny):
                if (k, j) not in self.covered_v:
                    union((k - 1, j), (k, j))
        for l in range(1, self.ny):
            for i in range(self.nx):
                if (i, l) not in self.covered_h:
                    union((i, l - 1), (i, l))

        face_index: dict[tuple[int, int], int] = {}
        face_of: dict[tuple[int, int], int] = {}
        for j in range(self.ny):
            for i in range(self.nx):
                root = find((i, j))
                if root not in face_index:
                    face_index[root] = len(face_index)
                face_of[(i, j)] = face_index[root]
        return face_of

    def _face_cells(self, face_of: dict[tuple[int, int], int]) -> list[list[tuple[int, int]]]:
        n_faces = max(face_of.values()) + 1 if face_of else 0
        faces: list[list[tuple[int, int]]] = [[] for _ in range(n_faces)]
        for j in range(self.ny):
            for i in range(self.nx):
                faces[face_of[(i, j)]].append((i, j))
        return faces

    def _trace_boundary(self, cells: set[tuple[int, int]]) -> Polygon2:
        # Directed boundary edges on the vertex lattice, interior on the left.
        outgoing: dict[tuple[int, int], list[tuple[int, int]]] = defaultdict(list)
        edge_count = 0
        for (i, j) in cells:
            if (i, j - 1) not in cells:  # bottom: walk +x
                outgoing[(i, j)].append((i + 1, j))
                edge_count += 1
            if (i + 1, j) not in cells:  # right: walk +y
                outgoing[(i + 1, j)].append((i + 1, j + 1))
                edge_count += 1
            if (i, j + 1) not in cells:  # top: walk -x
                outgoing[(i + 1, j + 1)].append((i, j + 1))
                edge_count += 1
            if (i - 1, j) not in cells:  # left: walk -y
                outgoing[(i, j + 1)].append((i, j))
                edge_count += 1

        start = min(outgoing, key=lambda v: (v[1], v[0]))
        loop = [start]
        prev_dir: tuple[int, int] | None = None
        current = start
        used = 0
        while True:
            candidates = outgoing[current]
            if prev_dir is None:
                nxt = next(v for v in candidates if v == (current[0] + 1, current[1]))
            else:
                nxt = _pick_turn(current, prev_dir, candidates)
            candidates.remove(nxt)
            prev_dir = (nxt[0] - current[0], nxt[1] - current[1])
            current = nxt
            used += 1
            if current == start:
                break
            loop.append(current)
        if used < edge_count:
            logger.warning("face has an interior hole; boundary keeps the outer loop")

        verts = _simplify_collinear(loop)
        points = tuple(Point2(self.xs[i], self.ys[j]) for i, j in verts)
        return Polygon2(points)

    def _bounding_walls(
        self, cells: set[tuple[int, int]], face_of: dict[tuple[int, int], int]
    ) -> tuple[str, ...]:
        indices: set[int] = set()
        for (i, j) in cells:
            for key, covered, neighbor in (
                ((i, j), self.covered_v.get((i, j)), (i - 1, j)),
                ((i + 1, j), self.covered_v.get((i + 1, j)), (i + 1, j)),
                ((i, j), self.covered_h.get((i, j)), (i, j - 1)),
                ((i, j + 1), self.covered_h.get((i, j + 1)), (i, j + 1)),
            ):
                if not covered:
                    continue
                if neighbor not in face_of or neighbor not in cells:
                    indices.update(covered)
        return tuple(self.walls[i].uid for i in sorted(indices))

    def _warn_dangling(self, face_of: dict[tuple[int, int], int]) -> None:
        separating: set[int] = set()
        for (k, j), widxs in self.covered_v.items():
            left, right = (k - 1, j), (k, j)
            if face_of.get(left) != face_of.get(right):
                separating.update(widxs)
        for (i, l), widxs in self.covered_h.items():
            below, above = (i, l - 1), (i, l)
            if face_of.get(below) != face_of.get(above):
                separating.update(widxs)
        for idx, wall in enumerate(self.walls):
            if idx not in separating:
                logger.warning("wall %s is dangling: it splits no face", wall.uid)


def _pick_turn(
    current: tuple[int, int],
    prev_dir: tuple[int, int],
    candidates: list[tuple[int, int]],
) -> tuple[int, int]:
    # Prefer the sharpest clockwise turn so pinched faces stay one loop.
    right = (prev_dir[1], -prev_dir[0])
    straight = prev_dir
    left = (-prev_dir[1], prev_dir[0])
    for d in (right, straight, left):
        nxt = (current[0] + d[0], current[1] + d[1])
        if nxt in candidates:
            return nxt
    raise AssertionError("boundary walk has no continuation")


def _simplify_collinear(loop: list[tuple[int, int]]) -> list[tuple[int, int]]:
    # Drop lattice vertices where the walk continues in the same direction.
    out: list[tuple[int, int]] = []
    n = len(loop)
    for idx, v in enumerate(loop):
        prev_v = loop[idx - 1]
        next_v = loop[(idx + 1) % n]
        d_in = (v[0] - prev_v[0], v[1] - prev_v[1])
        d_out = (next_v[0] - v[0], next_v[1] - v[1])
        if d_in != d_out:
            out.append(v)
    return out


def _dedup(values: list[float]) -> list[float]:
    out: list[float] = []
    for v in values:
        if not out or v - out[-1] > EPS:
            out.append(v)
    return out


def _index_of(values: list[float], x: float) -> int:
    for i, v in enumerate(values):
        if abs(v - x) <= EPS:
            return i
    raise AssertionError(f"coordinate {x} missing from arrangement grid")
