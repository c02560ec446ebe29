"""First-person camera synthesized from the course model.

A 2D raycast per pixel column gives the distance to the nearest obstacle
or wall; column height falls off as 1/distance. Frames are flat-shaded
RGB (sky / wall / floor) so identical inputs always produce identical
buffers, and encode as baseline JPEG for the MJPEG stream.
"""

from __future__ import annotations

import hashlib
import io
import math
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from .protocol import Posture
from .robot_sim import HEAD_TILT_LIMIT, RobotState
from .world import Circle, CourseMap, Rect

# Distance (m) at which a wall column exactly fills the frame height.
WALL_SCALE_M = 1.0

SKY_COLOR = (126, 168, 222)
FLOOR_COLOR = (66, 118, 66)
BOUNDARY_COLOR = (148, 148, 156)


@dataclass(frozen=True)
class RenderConfig:
    width: int = 320
    height: int = 240
    fov: float = 1.047
    fps: float = 15.0
    jpeg_quality: int = 70

    def __post_init__(self):
        if self.width < 32:
            raise ValueError(f"width must be >= 32, got {self.width}")
        if self.height < 24:
            raise ValueError(f"height must be >= 24, got {self.height}")
        if not 0 < self.fov < math.pi:
            raise ValueError(f"fov must be in (0, pi), got {self.fov}")
        if not 1 <= self.fps <= 30:
            raise ValueError(f"fps must be in [1, 30], got {self.fps}")
        if not 1 <= self.jpeg_quality <= 100:
            raise ValueError(f"jpeg_quality must be in [1, 100], got {self.jpeg_quality}")


@dataclass(frozen=True)
class FrameBuffer:
    width: int
    height: int
    pixels: bytes = field(repr=False)

    def __post_init__(self):
        if len(self.pixels) != self.width * self.height * 3:
            raise ValueError("pixel array length must be width*height*3")


def obstacle_color(oid: str) -> tuple[int, int, int]:
    """Stable mid-brightness RGB derived from the obstacle id."""
    digest = hashlib.md5(oid.encode("utf-8")).digest()
    return (64 + digest[0] % 160, 64 + digest[1] % 160, 64 + digest[2] % 160)


def _ray_rect(ox: float, oy: float, dx: float, dy: float, rect: Rect) -> float | None:
    tmin, tmax = -math.inf, math.inf
    for o, d, lo, hi in ((ox, dx, rect.x, rect.x + rect.w), (oy, dy, rect.y, rect.y + rect.h)):
        if d == 0.0:
            if o < lo or o > hi:
                return None
        else:
            t1, t2 = (lo - o) / d, (hi - o) / d
            if t1 > t2:
                t1, t2 = t2, t1
            tmin = max(tmin, t1)
            tmax = min(tmax, t2)
    if tmax < tmin or tmax < 0:
        return None
    return max(tmin, 0.0)


def _ray_circle(ox: float, oy: float, dx: float, dy: float, c: Circle) -> float | None:
    fx, fy = ox - c.cx, oy - c.cy
    b = 2.0 * (fx * dx + fy * dy)
    cc = fx * fx + fy * fy - c.r * c.r
    disc = b * b - 4.0 * cc
    if disc < 0:
        return None
    sq = math.sqrt(disc)
    t2 = (-b + sq) / 2.0
    if t2 < 0:
        return None
    return max((-b - sq) / 2.0, 0.0)


def _ray_walls(ox: float, oy: float, dx: float, dy: float, w: float, h: float) -> float:
    best = math.inf
    if dx > 0:
        best = min(best, (w - ox) / dx)
    elif dx < 0:
        best = min(best, (0.0 - ox) / dx)
    if dy > 0:
        best = min(best, (h - oy) / dy)
    elif dy < 0:
        best = min(best, (0.0 - oy) / dy)
    return best


def cast_ray_hit(m: CourseMap, origin: tuple[float, float], direction: float) -> tuple[float, str | None]:
    """Distance to the nearest surface along the ray, plus what was hit
    (an obstacle id, or None for the course wall). Origin must lie inside
    the course, so the result is always finite.
    """
    ox, oy = origin
    dx, dy = math.cos(direction), math.sin(direction)
    best = _ray_walls(ox, oy, dx, dy, m.width, m.height)
    hit: str | None = None
    for o in m.obstacles:
        if isinstance(o.shape, Rect):
            t = _ray_rect(ox, oy, dx, dy, o.shape)
        else:
            t = _ray_circle(ox, oy, dx, dy, o.shape)
        if t is not None and t < best:
            best = t
            hit = o.id
    return best, hit


def cast_ray(m: CourseMap, origin: tuple[float, float], direction: float) -> float:
    return cast_ray_hit(m, origin, direction)[0]


def render_frame(m: CourseMap, s: RobotState, cfg: RenderConfig) -> FrameBuffer:
    """Raycast one camera frame from the robot's viewpoint.

    Head tilt shifts the horizon (full tilt = a third of the frame) and
    crawling drops it by a quarter (the viewpoint sits lower). Column
    color encodes what the ray hit.
    """
    w, h = cfg.width, cfg.height
    arr = np.empty((h, w, 3), dtype=np.uint8)

    horizon = h / 2.0 + (s.head_tilt / HEAD_TILT_LIMIT) * (h / 3.0)
    if s.posture is Posture.CRAWLING:
        horizon += h / 4.0

    base = s.pose.theta + s.head_pan
    origin = (s.pose.x, s.pose.y)
    colors = {o.id: obstacle_color(o.id) for o in m.obstacles}

    for j in range(w):
        bearing = base + cfg.fov * (j / (w - 1) - 0.5)
        dist, hit = cast_ray_hit(m, origin, bearing)
        wall_px = float(h) if dist <= 0 else min(float(h), WALL_SCALE_M * h / dist)
        top = max(0, min(h, int(round(horizon - wall_px / 2.0))))
        bottom = max(0, min(h, int(round(horizon + wall_px / 2.0))))
        color = BOUNDARY_COLOR if hit is None else colors[hit]
        arr[:top, j] = SKY_COLOR
        arr[top:bottom, j] = color
        arr[bottom:, j] = FLOOR_COLOR

    return FrameBuffer(width=w, height=h, pixels=arr.tobytes())


def encode_jpeg(f: FrameBuffer, quality: int = 70) -> bytes:
    """Baseline JPEG bytes for one frame (starts FF D8, ends FF D9)."""
    img = Image.frombytes("RGB", (f.width, f.height), f.pixels)
    buf = io.BytesIO()
    img.save(buf, format="JPEG", quality=quality)
    return buf.getvalue()


def decode_jpeg(data: bytes) -> FrameBuffer:
    """Inverse of encode_jpeg (lossy); used by telemetry tests and tools."""
    img = Image.open(io.BytesIO(data))
    img = img.convert("RGB")
    return FrameBuffer(width=img.width, height=img.height, pixels=img.tobytes())
