"""Independent reference implementations used to check the real ones.

Everything here deliberately avoids the package's analytic geometry and
kinematics code paths: contact comes from dense sampling, rays from
marching, poses from a separate fold over the command list, and the
multipart reader is hand-rolled.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from huro_teleop.world import Circle, CourseMap, Rect

SAMPLE_SPACING = 0.001  # 1 mm
MARCH_STEP = 0.0005  # 0.5 mm


# ---------------------------------------------------------------------------
# dense-sampling contact

def _boundary_points(shape) -> np.ndarray:
    if isinstance(shape, Rect):
        x2, y2 = shape.x + shape.w, shape.y + shape.h
        edges = []
        for (ax, ay), (bx, by) in (
            ((shape.x, shape.y), (x2, shape.y)),
            ((x2, shape.y), (x2, y2)),
            ((x2, y2), (shape.x, y2)),
            ((shape.x, y2), (shape.x, shape.y)),
        ):
            n = max(2, int(math.ceil(math.hypot(bx - ax, by - ay) / SAMPLE_SPACING)) + 1)
            t = np.linspace(0.0, 1.0, n)
            edges.append(np.column_stack((ax + t * (bx - ax), ay + t * (by - ay))))
        return np.concatenate(edges)
    n = max(8, int(math.ceil(math.tau * shape.r / SAMPLE_SPACING)))
    ang = np.linspace(0.0, math.tau, n, endpoint=False)
    return np.column_stack((shape.cx + shape.r * np.cos(ang), shape.cy + shape.r * np.sin(ang)))


def _inside(shape, px: float, py: float) -> bool:
    if isinstance(shape, Rect):
        return shape.x <= px <= shape.x + shape.w and shape.y <= py <= shape.y + shape.h
    return math.hypot(px - shape.cx, py - shape.cy) <= shape.r


def sampled_shape_distance(shape, boundary: np.ndarray, px: float, py: float) -> float:
    """Distance from a point to a shape, by brute-force boundary sampling."""
    if _inside(shape, px, py):
        return 0.0
    d = np.hypot(boundary[:, 0] - px, boundary[:, 1] - py)
    return float(d.min())


def sampled_disc_contact(m: CourseMap, boundaries: dict, center, radius: float) -> list[str]:
    """check_contact recomputed from sampled boundaries (1 mm resolution)."""
    cx, cy = center
    hits = [o.id for o in m.obstacles if sampled_shape_distance(o.shape, boundaries[o.id], cx, cy) <= radius]
    if cx - radius < 0 or cx + radius > m.width or cy - radius < 0 or cy + radius > m.height:
        hits.append("wall")
    return hits


def course_boundaries(m: CourseMap) -> dict:
    return {o.id: _boundary_points(o.shape) for o in m.obstacles}


# ---------------------------------------------------------------------------
# sampled sweep

def _point_shape_distances(shape, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Exact point-to-shape distance, vectorized over sample points."""
    if isinstance(shape, Rect):
        dx = np.maximum(np.maximum(shape.x - px, 0.0), px - (shape.x + shape.w))
        dy = np.maximum(np.maximum(shape.y - py, 0.0), py - (shape.y + shape.h))
        return np.hypot(dx, dy)
    return np.hypot(px - shape.cx, py - shape.cy) - shape.r


def sampled_sweep_contact(m: CourseMap, frm, to, radius: float) -> list[str]:
    """sweep_contact recomputed by placing the disc at 1 mm intervals."""
    length = math.hypot(to[0] - frm[0], to[1] - frm[1])
    n = max(2, int(math.ceil(length / SAMPLE_SPACING)) + 1)
    t = np.linspace(0.0, 1.0, n)
    px = frm[0] + t * (to[0] - frm[0])
    py = frm[1] + t * (to[1] - frm[1])
    hits = [o.id for o in m.obstacles if _point_shape_distances(o.shape, px, py).min() <= radius]
    if (px - radius).min() < 0 or (px + radius).max() > m.width or (py - radius).min() < 0 or (py + radius).max() > m.height:
        hits.append("wall")
    return hits


def sampled_sweep_min_distances(m: CourseMap, frm, to) -> dict[str, float]:
    """Minimum sampled center-to-shape distance per obstacle over the move
    (for classifying borderline cases)."""
    length = math.hypot(to[0] - frm[0], to[1] - frm[1])
    n = max(2, int(math.ceil(length / SAMPLE_SPACING)) + 1)
    t = np.linspace(0.0, 1.0, n)
    px = frm[0] + t * (to[0] - frm[0])
    py = frm[1] + t * (to[1] - frm[1])
    return {o.id: float(_point_shape_distances(o.shape, px, py).min()) for o in m.obstacles}


# ---------------------------------------------------------------------------
# ray marching

def marched_ray(m: CourseMap, origin, direction: float, step: float = MARCH_STEP) -> float:
    """cast_ray recomputed by marching along the ray in fixed steps."""
    dx, dy = math.cos(direction), math.sin(direction)
    t_max = math.hypot(m.width, m.height) + step
    t = np.arange(0.0, t_max, step)
    px = origin[0] + t * dx
    py = origin[1] + t * dy

    stop = (px < 0) | (px > m.width) | (py < 0) | (py > m.height)
    for o in m.obstacles:
        if isinstance(o.shape, Rect):
            inside = (
                (px >= o.shape.x) & (px <= o.shape.x + o.shape.w)
                & (py >= o.shape.y) & (py <= o.shape.y + o.shape.h)
            )
        else:
            inside = (px - o.shape.cx) ** 2 + (py - o.shape.cy) ** 2 <= o.shape.r**2
        stop |= inside

    idx = int(np.argmax(stop))
    if not stop[idx]:
        return float(t[-1])
    return float(t[idx])


# ---------------------------------------------------------------------------
# fold-based kinematics reference

ROBOT_RADIUS = 0.12  # restated here on purpose: the reference must not drift with the package constant silently
CRAWL_FACTOR = 0.5

_STEP_RANGE = (0.01, 0.50)
_TURN_RANGE = (0.01, 1.57)
_SHIFT_RANGE = (0.01, 0.30)


def _clip(v, lo, hi):
    return lo if v < lo else hi if v > hi else v


def fold_script(m: CourseMap, commands: list[dict]) -> dict:
    """Replay raw command payloads through a second, structurally different
    implementation: heading kept as a unit complex number, state in a dict.

    Returns final x, y, heading angle, contact count, and per-move contact
    id lists (sampled at 1 mm).
    """
    st = {
        "x": m.start.x,
        "y": m.start.y,
        "heading": cmath.exp(1j * m.start.theta),
        "posture": "standing",
        "step": 0.05,
        "turn": 0.15,
        "shift": 0.05,
        "contacts": 0,
        "finished": False,
        "moves": [],
    }

    def translate(dist, rotate=0.0):
        direction = st["heading"] * cmath.exp(1j * rotate)
        nx = _clip(st["x"] + dist * direction.real, 0.0, m.width)
        ny = _clip(st["y"] + dist * direction.imag, 0.0, m.height)
        ids = sampled_sweep_contact(m, (st["x"], st["y"]), (nx, ny), ROBOT_RADIUS)
        st["x"], st["y"] = nx, ny
        st["contacts"] += len(ids)
        st["moves"].append(ids)
        if ny >= m.finish_y:
            st["finished"] = True

    upright = ("standing", "crawling")
    for raw in commands:
        action = raw["action"]
        if action in ("walk_forward", "walk_backward"):
            if st["posture"] in upright:
                d = st["step"] * (CRAWL_FACTOR if st["posture"] == "crawling" else 1.0)
                translate(d if action == "walk_forward" else -d)
        elif action in ("turn_left", "turn_right"):
            if st["posture"] in upright:
                delta = st["turn"] if action == "turn_left" else -st["turn"]
                st["heading"] *= cmath.exp(1j * delta)
        elif action in ("shift_left", "shift_right"):
            if st["posture"] == "standing":
                rot = math.pi / 2 if action == "shift_left" else -math.pi / 2
                translate(st["shift"], rotate=rot)
        elif action == "crawl_forward":
            if st["posture"] in upright:
                st["posture"] = "crawling"
                translate(st["step"] * CRAWL_FACTOR)
        elif action == "get_up":
            if st["posture"] in ("fallen", "crawling"):
                st["posture"] = "standing"
        elif action == "start_pose":
            st["posture"] = "start_pose"
            st["x"], st["y"] = m.start.x, m.start.y
            st["heading"] = cmath.exp(1j * m.start.theta)
        elif action == "reset_pose":
            st["posture"] = "standing"
        elif action in ("head_pan", "head_tilt", "head_reset"):
            pass  # head aim does not move the body
        elif action == "set_coefficients":
            c = raw["coefficients"]
            st["step"] = _clip(float(c["step_m"]), *_STEP_RANGE)
            st["turn"] = _clip(float(c["turn_rad"]), *_TURN_RANGE)
            st["shift"] = _clip(float(c["shift_m"]), *_SHIFT_RANGE)
        else:
            raise AssertionError(f"reference cannot fold {action!r}")
    return st


def angle_diff(a: float, b: float) -> float:
    return abs(math.remainder(a - b, math.tau))


# ---------------------------------------------------------------------------
# independent MJPEG multipart reader

def parse_multipart(data: bytes, boundary: str = "frame") -> list[dict]:
    """Strict multipart/x-mixed-replace reader.

    Walks the byte stream part by part, insisting on exact delimiters and
    on Content-Length matching the payload slice. Raises on any deviation.
    """
    delim = b"--" + boundary.encode("ascii") + b"\r\n"
    parts = []
    pos = 0
    while pos < len(data):
        if data[pos : pos + len(delim)] != delim:
            raise ValueError(f"expected boundary at offset {pos}")
        pos += len(delim)
        header_end = data.index(b"\r\n\r\n", pos)
        headers = {}
        for line in data[pos:header_end].split(b"\r\n"):
            name, _, value = line.partition(b":")
            headers[name.strip().decode().lower()] = value.strip().decode()
        pos = header_end + 4
        length = int(headers["content-length"])
        payload = data[pos : pos + length]
        if len(payload) != length:
            raise ValueError("truncated payload")
        pos += length
        if data[pos : pos + 2] != b"\r\n":
            raise ValueError("missing part terminator")
        pos += 2
        parts.append({"headers": headers, "payload": payload})
    return parts
