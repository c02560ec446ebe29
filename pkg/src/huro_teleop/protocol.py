"""JSON message envelope and topic payload schemas.

Everything the operator console and the gateway exchange goes through
here: one JSON object per WebSocket text frame. Encoding/decoding and
payload validation are pure functions so both sides (and the tests)
share a single definition of the wire format.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

OPS = frozenset({"advertise", "unadvertise", "publish", "subscribe", "unsubscribe", "status"})

# Ops that carry a msg payload; all others must not.
MSG_OPS = frozenset({"publish", "status"})

TOPIC_CMD = "/teleop/cmd"
TOPIC_STATE = "/teleop/state"
TOPIC_TELEMETRY = "/teleop/telemetry"
TOPIC_LOG = "/teleop/log"
TOPIC_MAP = "/teleop/map"

ACTIONS = frozenset({
    "walk_forward", "walk_backward",
    "turn_left", "turn_right",
    "shift_left", "shift_right",
    "crawl_forward", "get_up",
    "start_pose", "reset_pose",
    "head_pan", "head_tilt", "head_reset",
    "set_coefficients",
})

# Commands whose optional numeric value is actually used (radian deltas).
VALUE_ACTIONS = frozenset({"head_pan", "head_tilt"})

MAP_EDIT_ACTIONS = frozenset({"place_obstacle", "move_obstacle", "remove_obstacle", "set_start_pose"})

LOG_LEVELS = frozenset({"info", "warn", "error"})

STEP_RANGE = (0.01, 0.50)
TURN_RANGE = (0.01, 1.57)
SHIFT_RANGE = (0.01, 0.30)


class Posture(str, Enum):
    STANDING = "standing"
    CRAWLING = "crawling"
    FALLEN = "fallen"
    START_POSE = "start_pose"


POSTURES = frozenset(p.value for p in Posture)


class ProtocolError(ValueError):
    """Base for all decode/validation failures."""


class MalformedJson(ProtocolError):
    """Input is not a JSON object."""


class UnknownOp(ProtocolError):
    """Envelope op missing or outside the supported set."""


class MissingField(ProtocolError):
    """Required envelope field absent or of the wrong shape."""


class UnknownAction(ProtocolError):
    """Command action missing or not recognized."""


class NonFiniteValue(ProtocolError):
    """A numeric field is NaN, infinite, or not a number at all."""


class MissingCoefficients(ProtocolError):
    """set_coefficients without a complete coefficient set."""


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def _require_finite(name: str, x: Any) -> float:
    # bool is an int subclass; a JSON true/false is never a valid number here
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise NonFiniteValue(f"{name} must be a finite number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteValue(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class Envelope:
    """One pub/sub protocol message: op + topic, optional id, optional msg."""

    op: str
    topic: str
    msg: Any = None
    id: str | None = None


def encode_envelope(e: Envelope) -> str:
    """Serialize an invariant-satisfying Envelope to one line of JSON."""
    doc: dict[str, Any] = {"op": e.op, "topic": e.topic}
    if e.id is not None:
        doc["id"] = e.id
    if e.op in MSG_OPS:
        doc["msg"] = e.msg
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def decode_envelope(text: str | bytes) -> Envelope:
    """Parse one wire frame into an Envelope.

    Raises MalformedJson / UnknownOp / MissingField so the gateway can
    answer with a status envelope naming the exact failure. Never raises
    anything else, whatever bytes arrive.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError, ValueError):
        raise MalformedJson("frame is not valid JSON") from None
    if not isinstance(doc, dict):
        raise MalformedJson("envelope must be a JSON object")

    op = doc.get("op")
    if not isinstance(op, str) or op not in OPS:
        raise UnknownOp(f"unknown op {op!r}")

    topic = doc.get("topic")
    if not isinstance(topic, str) or not topic.startswith("/"):
        raise MissingField("topic must be a non-empty string starting with '/'")

    msg_id = doc.get("id")
    if msg_id is not None and not isinstance(msg_id, str):
        raise MissingField("id must be a string when present")

    if op in MSG_OPS:
        if "msg" not in doc:
            raise MissingField(f"msg required for op {op!r}")
        msg = doc["msg"]
    else:
        # tolerated on input, dropped so the invariant holds
        msg = None

    return Envelope(op=op, topic=topic, msg=msg, id=msg_id)


@dataclass(frozen=True)
class CoefficientSet:
    """Per-press movement magnitudes, always within their closed ranges."""

    step_m: float
    turn_rad: float
    shift_m: float

    @classmethod
    def clamped(cls, step_m: float, turn_rad: float, shift_m: float) -> "CoefficientSet":
        return cls(
            step_m=_clamp(float(step_m), *STEP_RANGE),
            turn_rad=_clamp(float(turn_rad), *TURN_RANGE),
            shift_m=_clamp(float(shift_m), *SHIFT_RANGE),
        )

    @classmethod
    def from_payload(cls, raw: Any) -> "CoefficientSet":
        if not isinstance(raw, dict):
            raise MissingCoefficients("coefficients must be an object")
        vals = {}
        for key in ("step_m", "turn_rad", "shift_m"):
            if key not in raw:
                raise MissingCoefficients(f"coefficients missing {key}")
            vals[key] = _require_finite(f"coefficients.{key}", raw[key])
        return cls.clamped(**vals)

    def to_payload(self) -> dict[str, float]:
        return {"step_m": self.step_m, "turn_rad": self.turn_rad, "shift_m": self.shift_m}


# Default per-press magnitudes; deliberately small so the first thing an
# operator tunes is immediately visible.
DEFAULT_COEFFICIENTS = CoefficientSet(step_m=0.05, turn_rad=0.15, shift_m=0.05)


@dataclass(frozen=True)
class CommandMsg:
    """Validated payload of /teleop/cmd."""

    action: str
    value: float | None = None
    coefficients: CoefficientSet | None = None

    def to_payload(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"action": self.action}
        if self.value is not None:
            doc["value"] = self.value
        if self.coefficients is not None:
            doc["coefficients"] = self.coefficients.to_payload()
        return doc


def validate_command(raw: Any) -> CommandMsg:
    """Check an inbound /teleop/cmd payload and normalize it.

    Out-of-range coefficients clamp instead of erroring so a mis-typed
    slider value never strands the operator. Fields an action does not
    use are dropped (after finiteness checks, so garbage still surfaces).
    """
    if not isinstance(raw, dict):
        raise UnknownAction("command payload must be a JSON object")
    action = raw.get("action")
    if not isinstance(action, str) or action not in ACTIONS:
        raise UnknownAction(f"unknown action {action!r}")

    value = None
    if "value" in raw and raw["value"] is not None:
        value = _require_finite("value", raw["value"])
    if action in VALUE_ACTIONS:
        value = 0.0 if value is None else value
    else:
        value = None

    coefficients = None
    if action == "set_coefficients":
        if "coefficients" not in raw:
            raise MissingCoefficients("set_coefficients requires coefficients")
        coefficients = CoefficientSet.from_payload(raw["coefficients"])

    return CommandMsg(action=action, value=value, coefficients=coefficients)


@dataclass(frozen=True)
class MapEdit:
    """Validated course-edit payload of an inbound /teleop/map publish.

    Actions: place_obstacle {obstacle}, move_obstacle {id,dx,dy},
    remove_obstacle {id}, set_start_pose {pose:{x,y,theta}}.
    """

    action: str
    obstacle: dict[str, Any] | None = None
    id: str | None = None
    dx: float = 0.0
    dy: float = 0.0
    pose: dict[str, float] | None = None


def validate_map_edit(raw: Any) -> MapEdit:
    if not isinstance(raw, dict):
        raise UnknownAction("map edit payload must be a JSON object")
    action = raw.get("action")
    if not isinstance(action, str) or action not in MAP_EDIT_ACTIONS:
        raise UnknownAction(f"unknown map edit {action!r}")

    if action == "place_obstacle":
        obstacle = raw.get("obstacle")
        if not isinstance(obstacle, dict):
            raise MissingField("place_obstacle requires an obstacle object")
        return MapEdit(action=action, obstacle=obstacle)

    if action == "remove_obstacle":
        oid = raw.get("id")
        if not isinstance(oid, str):
            raise MissingField("remove_obstacle requires id")
        return MapEdit(action=action, id=oid)

    if action == "move_obstacle":
        oid = raw.get("id")
        if not isinstance(oid, str):
            raise MissingField("move_obstacle requires id")
        dx = _require_finite("dx", raw.get("dx", 0.0))
        dy = _require_finite("dy", raw.get("dy", 0.0))
        return MapEdit(action=action, id=oid, dx=dx, dy=dy)

    # set_start_pose
    pose = raw.get("pose")
    if not isinstance(pose, dict):
        raise MissingField("set_start_pose requires a pose object")
    out = {}
    for key in ("x", "y", "theta"):
        if key not in pose:
            raise MissingField(f"pose missing {key}")
        out[key] = _require_finite(f"pose.{key}", pose[key])
    return MapEdit(action=action, pose=out)


@dataclass(frozen=True)
class StateMsg:
    """Snapshot of the robot published on /teleop/state."""

    x: float
    y: float
    theta: float
    head_pan: float
    head_tilt: float
    posture: str
    coefficients: CoefficientSet
    contact_count: int
    finished: bool

    def to_payload(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "y": self.y,
            "theta": self.theta,
            "head_pan": self.head_pan,
            "head_tilt": self.head_tilt,
            "posture": self.posture,
            "coefficients": self.coefficients.to_payload(),
            "contact_count": self.contact_count,
            "finished": self.finished,
        }

    @classmethod
    def from_payload(cls, raw: dict[str, Any]) -> "StateMsg":
        posture = raw["posture"]
        if posture not in POSTURES:
            raise MissingField(f"unknown posture {posture!r}")
        return cls(
            x=_require_finite("x", raw["x"]),
            y=_require_finite("y", raw["y"]),
            theta=_require_finite("theta", raw["theta"]),
            head_pan=_require_finite("head_pan", raw["head_pan"]),
            head_tilt=_require_finite("head_tilt", raw["head_tilt"]),
            posture=posture,
            coefficients=CoefficientSet.from_payload(raw["coefficients"]),
            contact_count=int(raw["contact_count"]),
            finished=bool(raw["finished"]),
        )


@dataclass(frozen=True)
class TelemetryMsg:
    """Once-per-second feedback published on /teleop/telemetry."""

    fps: float
    battery_v: float
    uptime_s: float

    def to_payload(self) -> dict[str, float]:
        return {"fps": self.fps, "battery_v": self.battery_v, "uptime_s": self.uptime_s}


@dataclass(frozen=True)
class LogMsg:
    """One backend log line published on /teleop/log."""

    level: str
    text: str
    t: float

    def to_payload(self) -> dict[str, Any]:
        return {"level": self.level, "text": self.text, "t": self.t}
