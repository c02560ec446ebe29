"""Obstacle course model: geometry, editing, contact queries, finish detection.

All operations are pure: edits return a new CourseMap and never mutate
their input. Lengths are meters, angles radians. The robot footprint is
a disc (ROBOT_RADIUS) and contact is something to report, never a wall
that blocks motion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Any, Iterable

# Disc stand-in for the biped's footprint.
ROBOT_RADIUS = 0.12

WALL_ID = "wall"


class WorldError(ValueError):
    pass


class ParseError(WorldError):
    """Course document unreadable or structurally wrong."""


class InvalidGeometry(WorldError):
    """A CourseMap invariant would be violated; message names which."""


class DuplicateId(WorldError):
    pass


class UnknownId(WorldError):
    pass


def normalize_angle(theta: float) -> float:
    """Wrap into (-pi, pi]."""
    r = math.remainder(theta, math.tau)
    if r <= -math.pi:
        r += math.tau
    return r


@dataclass(frozen=True)
class Pose2D:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, corner (x, y), extent (w, h)."""

    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float


Shape = Rect | Circle


@dataclass(frozen=True)
class Obstacle:
    id: str
    shape: Shape


@dataclass(frozen=True)
class CourseMap:
    width: float
    height: float
    start: Pose2D
    finish_y: float
    obstacles: tuple[Obstacle, ...] = ()


def _shape_inside(shape: Shape, width: float, height: float) -> bool:
    if isinstance(shape, Rect):
        return shape.x >= 0 and shape.y >= 0 and shape.x + shape.w <= width and shape.y + shape.h <= height
    return shape.cx - shape.r >= 0 and shape.cy - shape.r >= 0 and shape.cx + shape.r <= width and shape.cy + shape.r <= height


def _shape_dims_valid(shape: Shape) -> bool:
    if isinstance(shape, Rect):
        vals = (shape.x, shape.y, shape.w, shape.h)
        positive = shape.w > 0 and shape.h > 0
    else:
        vals = (shape.cx, shape.cy, shape.r)
        positive = shape.r > 0
    return positive and all(math.isfinite(v) for v in vals)


def validate_course(m: CourseMap) -> None:
    """Raise InvalidGeometry naming the first violated invariant."""
    if not (math.isfinite(m.width) and m.width > 0):
        raise InvalidGeometry(f"width must be finite and > 0, got {m.width}")
    if not (math.isfinite(m.height) and m.height > 0):
        raise InvalidGeometry(f"height must be finite and > 0, got {m.height}")
    if not (math.isfinite(m.finish_y) and 0 < m.finish_y <= m.height):
        raise InvalidGeometry(f"finish_y must be in (0, {m.height}], got {m.finish_y}")

    seen: set[str] = set()
    for o in m.obstacles:
        if not o.id:
            raise InvalidGeometry("obstacle id must be non-empty")
        if o.id == WALL_ID:
            raise InvalidGeometry(f"obstacle id {WALL_ID!r} is reserved")
        if o.id in seen:
            raise InvalidGeometry(f"duplicate obstacle id {o.id!r}")
        seen.add(o.id)
        if not _shape_dims_valid(o.shape):
            raise InvalidGeometry(f"obstacle {o.id!r} has non-positive or non-finite dimensions")
        if not _shape_inside(o.shape, m.width, m.height):
            raise InvalidGeometry(f"obstacle {o.id!r} extends outside course bounds")

    if not (math.isfinite(m.start.x) and math.isfinite(m.start.y)):
        raise InvalidGeometry("start pose must be finite")
    if not (0 <= m.start.x <= m.width and 0 <= m.start.y <= m.height):
        raise InvalidGeometry("start pose outside course bounds")
    touching = [i for i in check_contact(m, (m.start.x, m.start.y), ROBOT_RADIUS) if i != WALL_ID]
    if touching:
        raise InvalidGeometry(f"start pose in contact with obstacle {touching[0]!r}")
    if m.finish_y <= m.start.y:
        raise InvalidGeometry("finish_y must be beyond start.y")


# ---------------------------------------------------------------------------
# distance helpers

def _dist_point_rect(px: float, py: float, rect: Rect) -> float:
    dx = max(rect.x - px, 0.0, px - (rect.x + rect.w))
    dy = max(rect.y - py, 0.0, py - (rect.y + rect.h))
    return math.hypot(dx, dy)


def _dist_seg_point(ax: float, ay: float, bx: float, by: float, px: float, py: float) -> float:
    vx, vy = bx - ax, by - ay
    ll = vx * vx + vy * vy
    if ll == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * vx + (py - ay) * vy) / ll
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    return math.hypot(px - (ax + t * vx), py - (ay + t * vy))


def _segments_intersect(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if v == 0 else (1 if v > 0 else -1)

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    d1, d2 = orient(p3, p4, p1), orient(p3, p4, p2)
    d3, d4 = orient(p1, p2, p3), orient(p1, p2, p4)
    if d1 != d2 and d3 != d4:
        return True
    if d1 == 0 and on_seg(p3, p4, p1):
        return True
    if d2 == 0 and on_seg(p3, p4, p2):
        return True
    if d3 == 0 and on_seg(p1, p2, p3):
        return True
    if d4 == 0 and on_seg(p1, p2, p4):
        return True
    return False


def _dist_seg_seg(a1, a2, b1, b2) -> float:
    if _segments_intersect(a1, a2, b1, b2):
        return 0.0
    return min(
        _dist_seg_point(*a1, *a2, *b1),
        _dist_seg_point(*a1, *a2, *b2),
        _dist_seg_point(*b1, *b2, *a1),
        _dist_seg_point(*b1, *b2, *a2),
    )


def _point_in_rect(px: float, py: float, rect: Rect) -> bool:
    return rect.x <= px <= rect.x + rect.w and rect.y <= py <= rect.y + rect.h


def _dist_seg_rect(a, b, rect: Rect) -> float:
    if _point_in_rect(*a, rect) or _point_in_rect(*b, rect):
        return 0.0
    corners = (
        (rect.x, rect.y),
        (rect.x + rect.w, rect.y),
        (rect.x + rect.w, rect.y + rect.h),
        (rect.x, rect.y + rect.h),
    )
    best = math.inf
    for i in range(4):
        d = _dist_seg_seg(a, b, corners[i], corners[(i + 1) % 4])
        if d < best:
            best = d
    return best


# ---------------------------------------------------------------------------
# contact queries

def check_contact(m: CourseMap, center: tuple[float, float], radius: float) -> list[str]:
    """Ids of every obstacle the disc intersects, plus "wall" if it crosses
    a course boundary. Empty list means clear.
    """
    cx, cy = center
    hits = []
    for o in m.obstacles:
        if isinstance(o.shape, Rect):
            hit = _dist_point_rect(cx, cy, o.shape) <= radius
        else:
            hit = math.hypot(cx - o.shape.cx, cy - o.shape.cy) <= radius + o.shape.r
        if hit:
            hits.append(o.id)
    if cx - radius < 0 or cx + radius > m.width or cy - radius < 0 or cy + radius > m.height:
        hits.append(WALL_ID)
    return hits


def sweep_contact(m: CourseMap, frm: tuple[float, float], to: tuple[float, float], radius: float) -> list[str]:
    """Contacts anywhere along the straight move from `frm` to `to`.

    Equals the union of check_contact over every intermediate position,
    so a thin obstacle crossed mid-step is still caught.
    """
    hits = []
    for o in m.obstacles:
        if isinstance(o.shape, Rect):
            hit = _dist_seg_rect(frm, to, o.shape) <= radius
        else:
            hit = _dist_seg_point(*frm, *to, o.shape.cx, o.shape.cy) <= radius + o.shape.r
        if hit:
            hits.append(o.id)
    lo_x, hi_x = min(frm[0], to[0]), max(frm[0], to[0])
    lo_y, hi_y = min(frm[1], to[1]), max(frm[1], to[1])
    if lo_x - radius < 0 or hi_x + radius > m.width or lo_y - radius < 0 or hi_y + radius > m.height:
        hits.append(WALL_ID)
    return hits


def reached_finish(m: CourseMap, p: Pose2D) -> bool:
    return p.y >= m.finish_y


# ---------------------------------------------------------------------------
# editing

def place_obstacle(m: CourseMap, o: Obstacle) -> CourseMap:
    if any(existing.id == o.id for existing in m.obstacles):
        raise DuplicateId(f"obstacle id {o.id!r} already on course")
    out = replace(m, obstacles=m.obstacles + (o,))
    validate_course(out)
    return out


def move_obstacle(m: CourseMap, oid: str, dx: float, dy: float) -> CourseMap:
    for i, o in enumerate(m.obstacles):
        if o.id == oid:
            if isinstance(o.shape, Rect):
                shape: Shape = replace(o.shape, x=o.shape.x + dx, y=o.shape.y + dy)
            else:
                shape = replace(o.shape, cx=o.shape.cx + dx, cy=o.shape.cy + dy)
            moved = replace(o, shape=shape)
            out = replace(m, obstacles=m.obstacles[:i] + (moved,) + m.obstacles[i + 1:])
            validate_course(out)
            return out
    raise UnknownId(f"no obstacle with id {oid!r}")


def remove_obstacle(m: CourseMap, oid: str) -> CourseMap:
    kept = tuple(o for o in m.obstacles if o.id != oid)
    if len(kept) == len(m.obstacles):
        raise UnknownId(f"no obstacle with id {oid!r}")
    return replace(m, obstacles=kept)


def set_start_pose(m: CourseMap, p: Pose2D) -> CourseMap:
    out = replace(m, start=p)
    validate_course(out)
    return out


# ---------------------------------------------------------------------------
# persistence

def _obstacle_to_dict(o: Obstacle) -> dict[str, Any]:
    if isinstance(o.shape, Rect):
        return {"id": o.id, "shape": "rect", "x": o.shape.x, "y": o.shape.y, "w": o.shape.w, "h": o.shape.h}
    return {"id": o.id, "shape": "circle", "cx": o.shape.cx, "cy": o.shape.cy, "r": o.shape.r}


def obstacle_from_dict(doc: Any) -> Obstacle:
    if not isinstance(doc, dict):
        raise ParseError("obstacle must be an object")
    oid = doc.get("id")
    if not isinstance(oid, str):
        raise ParseError("obstacle id must be a string")
    kind = doc.get("shape")
    try:
        if kind == "rect":
            shape: Shape = Rect(float(doc["x"]), float(doc["y"]), float(doc["w"]), float(doc["h"]))
        elif kind == "circle":
            shape = Circle(float(doc["cx"]), float(doc["cy"]), float(doc["r"]))
        else:
            raise ParseError(f"obstacle shape must be 'rect' or 'circle', got {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"obstacle {oid!r} has bad dimensions: {exc}") from None
    return Obstacle(id=oid, shape=shape)


def course_to_dict(m: CourseMap) -> dict[str, Any]:
    return {
        "width": m.width,
        "height": m.height,
        "start": {"x": m.start.x, "y": m.start.y, "theta": m.start.theta},
        "finish_y": m.finish_y,
        "obstacles": [_obstacle_to_dict(o) for o in m.obstacles],
    }


def course_from_dict(doc: Any) -> CourseMap:
    if not isinstance(doc, dict):
        raise ParseError("course must be a JSON object")
    try:
        start_doc = doc["start"]
        start = Pose2D(float(start_doc["x"]), float(start_doc["y"]), float(start_doc["theta"]))
        m = CourseMap(
            width=float(doc["width"]),
            height=float(doc["height"]),
            start=start,
            finish_y=float(doc["finish_y"]),
            obstacles=tuple(obstacle_from_dict(od) for od in doc.get("obstacles", [])),
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"course document malformed: {exc}") from None
    validate_course(m)
    return m


def load_course(data: bytes | str) -> CourseMap:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError, ValueError):
        raise ParseError("course file is not valid JSON") from None
    return course_from_dict(doc)


def save_course(m: CourseMap) -> bytes:
    return (json.dumps(course_to_dict(m), indent=2) + "\n").encode("utf-8")
