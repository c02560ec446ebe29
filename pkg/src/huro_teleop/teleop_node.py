"""The remote-control node: consumes /teleop/cmd, drives the simulator,
and publishes state, telemetry, map, and log feedback.

The node owns the single authoritative robot state and course map.
Inbound publishes only enqueue or edit; run_tick applies queued commands
in arrival order, so whatever the connection layer does, application
order equals arrival order. Bad input never stops the node: it becomes
a log entry.
"""

from __future__ import annotations

from collections import deque

from . import world
from .protocol import (
    TOPIC_CMD,
    TOPIC_LOG,
    TOPIC_MAP,
    TOPIC_STATE,
    TOPIC_TELEMETRY,
    CommandMsg,
    Envelope,
    LogMsg,
    MapEdit,
    ProtocolError,
    TelemetryMsg,
    validate_command,
    validate_map_edit,
)
from .robot_sim import Contact, Finished, PostureChanged, Rejected, apply_command, initial_state, snapshot, tick

LOG_CAPACITY = 500
TELEMETRY_PERIOD_S = 1.0


class TeleopNode:
    def __init__(self, course: world.CourseMap):
        self.course = course
        self.state = initial_state(course)
        self.uptime_s = 0.0
        self.render_fps = 0.0
        self._queue: deque[CommandMsg] = deque()
        self._log: deque[LogMsg] = deque(maxlen=LOG_CAPACITY)
        self._telemetry_acc = 0.0

    # -- feedback ----------------------------------------------------------

    def append_log(self, level: str, text: str) -> LogMsg:
        """Record one log entry (ring buffer of LOG_CAPACITY, oldest out)."""
        entry = LogMsg(level=level, text=text, t=self.uptime_s)
        self._log.append(entry)
        return entry

    def log_history(self) -> list[LogMsg]:
        return list(self._log)

    def _log_envelope(self, level: str, text: str) -> Envelope:
        return Envelope(op="publish", topic=TOPIC_LOG, msg=self.append_log(level, text).to_payload())

    def state_envelope(self) -> Envelope:
        return Envelope(op="publish", topic=TOPIC_STATE, msg=snapshot(self.state).to_payload())

    def map_envelope(self) -> Envelope:
        msg = {
            "course": world.course_to_dict(self.course),
            "robot": {"x": self.state.pose.x, "y": self.state.pose.y, "theta": self.state.pose.theta},
        }
        return Envelope(op="publish", topic=TOPIC_MAP, msg=msg)

    # -- inbound -----------------------------------------------------------

    def handle_publish(self, e: Envelope) -> list[Envelope]:
        """React to one inbound publish envelope.

        /teleop/cmd payloads are validated and queued for the next tick;
        /teleop/map payloads are course edits, applied immediately and
        answered with a fresh full-map broadcast. Anything invalid turns
        into a log envelope and nothing else.
        """
        assert e.op == "publish"
        if e.topic == TOPIC_CMD:
            try:
                cmd = validate_command(e.msg)
            except ProtocolError as err:
                return [self._log_envelope("error", f"{type(err).__name__}: {err}")]
            self._queue.append(cmd)
            return []

        if e.topic == TOPIC_MAP:
            try:
                edit = validate_map_edit(e.msg)
            except ProtocolError as err:
                return [self._log_envelope("error", f"{type(err).__name__}: {err}")]
            try:
                self.course = self._apply_edit(edit)
            except world.WorldError as err:
                return [self._log_envelope("warn", f"map edit rejected: {err}")]
            return [self.map_envelope()]

        return []

    def _apply_edit(self, edit: MapEdit) -> world.CourseMap:
        if edit.action == "place_obstacle":
            return world.place_obstacle(self.course, world.obstacle_from_dict(edit.obstacle))
        if edit.action == "move_obstacle":
            return world.move_obstacle(self.course, edit.id, edit.dx, edit.dy)
        if edit.action == "remove_obstacle":
            return world.remove_obstacle(self.course, edit.id)
        pose = edit.pose
        return world.set_start_pose(self.course, world.Pose2D(pose["x"], pose["y"], pose["theta"]))

    # -- tick --------------------------------------------------------------

    def run_tick(self, dt: float) -> list[Envelope]:
        """Apply queued commands in arrival order and emit feedback.

        Every tick carries one state envelope; telemetry rides along once
        per simulated second. Rejections and contacts become warn logs so
        nothing the operator did disappears silently.
        """
        if dt <= 0:
            raise ValueError(f"dt must be > 0, got {dt}")
        out: list[Envelope] = []

        while self._queue:
            cmd = self._queue.popleft()
            result = apply_command(self.state, cmd, self.course)
            self.state = result.state
            for event in result.events:
                if isinstance(event, Rejected):
                    out.append(self._log_envelope("warn", f"rejected {cmd.action}: {event.reason}"))
                elif isinstance(event, Contact):
                    out.append(self._log_envelope("warn", f"contact: {', '.join(event.ids)}"))
                elif isinstance(event, Finished):
                    out.append(self._log_envelope("info", "finish line reached"))
                elif isinstance(event, PostureChanged):
                    out.append(self._log_envelope("info", f"posture: {event.posture.value}"))

        self.state = tick(self.state, dt)
        self.uptime_s += dt
        out.append(self.state_envelope())

        self._telemetry_acc += dt
        while self._telemetry_acc >= TELEMETRY_PERIOD_S:
            self._telemetry_acc -= TELEMETRY_PERIOD_S
            msg = TelemetryMsg(fps=self.render_fps, battery_v=self.state.battery_v, uptime_s=self.uptime_s)
            out.append(Envelope(op="publish", topic=TOPIC_TELEMETRY, msg=msg.to_payload()))

        return out
