"""Network front door: topic registry, envelope routing, MJPEG framing.

The Gateway is transport-agnostic: sessions register a send callback and
feed decoded text frames in. The FastAPI layer in server.py binds this
to real WebSockets; tests bind it to plain lists. All registry mutations
and fan-out decisions happen in one logical owner, so per-topic delivery
order is exactly publish order.
"""

from __future__ import annotations

import asyncio
import time
from collections import deque
from typing import AsyncIterator, Callable

from .camera import RenderConfig, encode_jpeg, render_frame
from .config import Config
from .protocol import TOPIC_CMD, TOPIC_MAP, Envelope, ProtocolError, decode_envelope
from .teleop_node import TeleopNode
from .world import CourseMap

STATUS_TOPIC = "/status"
MJPEG_BOUNDARY = "frame"
MJPEG_CONTENT_TYPE = f"multipart/x-mixed-replace; boundary={MJPEG_BOUNDARY}"


class TopicRegistry:
    """Who is subscribed to (and advertising on) which topic."""

    def __init__(self):
        # insertion-ordered so fan-out order is reproducible
        self._subs: dict[str, dict[str, None]] = {}
        self._advertisers: dict[str, dict[str, None]] = {}

    def subscribe(self, topic: str, sid: str) -> None:
        self._subs.setdefault(topic, {})[sid] = None

    def unsubscribe(self, topic: str, sid: str) -> None:
        self._subs.get(topic, {}).pop(sid, None)

    def advertise(self, topic: str, sid: str) -> None:
        self._advertisers.setdefault(topic, {})[sid] = None

    def unadvertise(self, topic: str, sid: str) -> None:
        self._advertisers.get(topic, {}).pop(sid, None)

    def subscribers(self, topic: str) -> list[str]:
        return list(self._subs.get(topic, {}))

    def drop_session(self, sid: str) -> None:
        for subs in self._subs.values():
            subs.pop(sid, None)
        for ads in self._advertisers.values():
            ads.pop(sid, None)

    def sessions(self) -> set[str]:
        out: set[str] = set()
        for subs in self._subs.values():
            out.update(subs)
        for ads in self._advertisers.values():
            out.update(ads)
        return out


class Gateway:
    """Routes envelopes between sessions and the teleop node."""

    def __init__(self, config: Config, course: CourseMap):
        self.config = config
        self.node = TeleopNode(course)
        self.registry = TopicRegistry()
        self._senders: dict[str, Callable[[Envelope], None]] = {}
        self._session_seq = 0
        self._frame_times: deque[float] = deque(maxlen=120)

    # -- sessions ----------------------------------------------------------

    def open_session(self, send: Callable[[Envelope], None], sid: str | None = None) -> str:
        if sid is None:
            self._session_seq += 1
            sid = f"session-{self._session_seq}"
        self._senders[sid] = send
        return sid

    def close_session(self, sid: str) -> None:
        self._senders.pop(sid, None)
        self.registry.drop_session(sid)

    def _send(self, sid: str, e: Envelope) -> None:
        send = self._senders.get(sid)
        if send is not None:
            send(e)

    def _fan_out(self, e: Envelope) -> None:
        for sid in self.registry.subscribers(e.topic):
            self._send(sid, e)

    # -- routing -----------------------------------------------------------

    def handle_text(self, sid: str, text: str | bytes) -> None:
        """Decode one wire frame and route it. Malformed input is answered
        with a status envelope naming the failure; the session stays open.
        """
        try:
            e = decode_envelope(text)
        except ProtocolError as err:
            self._send(sid, self._status_error(f"{type(err).__name__}: {err}"))
            return
        self.route_envelope(sid, e)

    def route_envelope(self, sid: str, e: Envelope) -> None:
        if e.op == "subscribe":
            self.registry.subscribe(e.topic, sid)
            if e.topic == TOPIC_MAP:
                # latched: a new map subscriber immediately gets the course
                self._send(sid, self.node.map_envelope())
        elif e.op == "unsubscribe":
            self.registry.unsubscribe(e.topic, sid)
        elif e.op == "advertise":
            self.registry.advertise(e.topic, sid)
        elif e.op == "unadvertise":
            self.registry.unadvertise(e.topic, sid)
        elif e.op == "publish":
            self._fan_out(e)
            if e.topic in (TOPIC_CMD, TOPIC_MAP):
                for reply in self.node.handle_publish(e):
                    self._fan_out(reply)
                if e.topic == TOPIC_CMD and self.config.tick_mode == "lockstep":
                    self.advance(1.0 / self.config.tick_hz)
        # inbound status envelopes are informational; nothing to route

    def _status_error(self, reason: str) -> Envelope:
        return Envelope(op="status", topic=STATUS_TOPIC, msg={"level": "error", "msg": reason})

    # -- tick --------------------------------------------------------------

    def advance(self, dt: float) -> None:
        """Run one node tick and deliver everything it published."""
        for e in self.node.run_tick(dt):
            self._fan_out(e)

    # -- camera ------------------------------------------------------------

    def note_rendered_frame(self, now: float | None = None) -> None:
        """Track the camera render rate; telemetry reports it as FPS."""
        if now is None:
            now = time.monotonic()
        self._frame_times.append(now)
        window = [t for t in self._frame_times if t > now - 1.0]
        self.node.render_fps = float(len(window))


def mjpeg_part(jpeg: bytes) -> bytes:
    """One multipart part: boundary, JPEG headers, payload, trailing CRLF."""
    return (
        b"--frame\r\nContent-Type: image/jpeg\r\nContent-Length: "
        + str(len(jpeg)).encode("ascii")
        + b"\r\n\r\n"
        + jpeg
        + b"\r\n"
    )


async def mjpeg_stream(
    gateway: Gateway,
    cfg: RenderConfig,
    frame_limit: int | None = None,
    sleep=asyncio.sleep,
) -> AsyncIterator[bytes]:
    """Paced MJPEG parts rendered from the latest robot state.

    Each iteration renders the newest snapshot, so a slow consumer skips
    frames instead of accumulating a backlog.
    """
    period = 1.0 / cfg.fps
    sent = 0
    while frame_limit is None or sent < frame_limit:
        frame = render_frame(gateway.node.course, gateway.node.state, cfg)
        yield mjpeg_part(encode_jpeg(frame, cfg.jpeg_quality))
        gateway.note_rendered_frame()
        sent += 1
        await sleep(period)
