"""Discrete-step kinematic model of the humanoid.

One validated command produces one atomic step: a translation, a turn,
a posture change, or a head/coefficient update. Contact never blocks a
move; it is swept along the actual path, reported as an event, and
counted. Battery drains linearly with simulated time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .protocol import DEFAULT_COEFFICIENTS, CoefficientSet, CommandMsg, Posture, StateMsg
from .world import ROBOT_RADIUS, CourseMap, Pose2D, reached_finish, sweep_contact

HEAD_PAN_LIMIT = 1.2
HEAD_TILT_LIMIT = 0.6

BATTERY_FULL_V = 12.6
DRAIN_RATE_V_PER_S = 0.0005

# Crawling covers less ground per press than walking.
CRAWL_STEP_FACTOR = 0.5

_UPRIGHT = (Posture.STANDING, Posture.CRAWLING)


@dataclass(frozen=True)
class RobotState:
    pose: Pose2D
    head_pan: float = 0.0
    head_tilt: float = 0.0
    posture: Posture = Posture.STANDING
    battery_v: float = BATTERY_FULL_V
    coefficients: CoefficientSet = DEFAULT_COEFFICIENTS
    contact_count: int = 0
    finished: bool = False


@dataclass(frozen=True)
class Contact:
    ids: tuple[str, ...]


@dataclass(frozen=True)
class Finished:
    pass


@dataclass(frozen=True)
class Rejected:
    reason: str


@dataclass(frozen=True)
class PostureChanged:
    posture: Posture


Event = Contact | Finished | Rejected | PostureChanged


@dataclass(frozen=True)
class StepResult:
    state: RobotState
    events: tuple[Event, ...] = ()


def initial_state(m: CourseMap) -> RobotState:
    return RobotState(pose=m.start)


def _clamp(x: float, limit: float) -> float:
    return -limit if x < -limit else limit if x > limit else x


def _rejected(s: RobotState, reason: str) -> StepResult:
    return StepResult(s, (Rejected(reason),))


def _with_finish(s: RobotState, m: CourseMap, events: list) -> StepResult:
    if not s.finished and reached_finish(m, s.pose):
        s = replace(s, finished=True)
        events.append(Finished())
    return StepResult(s, tuple(events))


def _translate(s: RobotState, m: CourseMap, dist: float, bearing: float, events: list) -> StepResult:
    """Move the body `dist` meters along `bearing`, clamping the center to
    course bounds (the camera must keep a valid viewpoint), and sweep the
    actually-travelled path for contacts.
    """
    old = (s.pose.x, s.pose.y)
    nx = min(max(s.pose.x + dist * math.cos(bearing), 0.0), m.width)
    ny = min(max(s.pose.y + dist * math.sin(bearing), 0.0), m.height)
    contacts = sweep_contact(m, old, (nx, ny), ROBOT_RADIUS)
    s = replace(
        s,
        pose=Pose2D(nx, ny, s.pose.theta),
        contact_count=s.contact_count + len(contacts),
    )
    if contacts:
        events.append(Contact(tuple(contacts)))
    return _with_finish(s, m, events)


def apply_command(s: RobotState, c: CommandMsg, m: CourseMap) -> StepResult:
    """Apply one validated command; returns the new state plus events.

    Operator mistakes (moving while fallen, shifting while crawling) come
    back as Rejected events with the state untouched, never as errors.
    """
    a = c.action
    coeff = s.coefficients

    if a in ("walk_forward", "walk_backward"):
        if s.posture not in _UPRIGHT:
            return _rejected(s, f"cannot {a} while {s.posture.value}")
        step = coeff.step_m * (CRAWL_STEP_FACTOR if s.posture is Posture.CRAWLING else 1.0)
        if a == "walk_backward":
            step = -step
        return _translate(s, m, step, s.pose.theta, [])

    if a in ("turn_left", "turn_right"):
        if s.posture not in _UPRIGHT:
            return _rejected(s, f"cannot {a} while {s.posture.value}")
        delta = coeff.turn_rad if a == "turn_left" else -coeff.turn_rad
        s = replace(s, pose=Pose2D(s.pose.x, s.pose.y, s.pose.theta + delta))
        return StepResult(s)

    if a in ("shift_left", "shift_right"):
        if s.posture is not Posture.STANDING:
            return _rejected(s, f"cannot {a} while {s.posture.value}")
        bearing = s.pose.theta + (math.pi / 2 if a == "shift_left" else -math.pi / 2)
        return _translate(s, m, coeff.shift_m, bearing, [])

    if a == "crawl_forward":
        if s.posture not in _UPRIGHT:
            return _rejected(s, f"cannot crawl while {s.posture.value}")
        events: list[Event] = []
        if s.posture is Posture.STANDING:
            s = replace(s, posture=Posture.CRAWLING)
            events.append(PostureChanged(Posture.CRAWLING))
        return _translate(s, m, coeff.step_m * CRAWL_STEP_FACTOR, s.pose.theta, events)

    if a == "get_up":
        if s.posture not in (Posture.FALLEN, Posture.CRAWLING):
            return _rejected(s, f"cannot get_up while {s.posture.value}")
        s = replace(s, posture=Posture.STANDING)
        return StepResult(s, (PostureChanged(Posture.STANDING),))

    if a == "start_pose":
        events = [] if s.posture is Posture.START_POSE else [PostureChanged(Posture.START_POSE)]
        s = replace(s, posture=Posture.START_POSE, pose=m.start, head_pan=0.0, head_tilt=0.0)
        return StepResult(s, tuple(events))

    if a == "reset_pose":
        events = [] if s.posture is Posture.STANDING else [PostureChanged(Posture.STANDING)]
        s = replace(s, posture=Posture.STANDING, head_pan=0.0, head_tilt=0.0)
        return StepResult(s, tuple(events))

    if a == "head_pan":
        s = replace(s, head_pan=_clamp(s.head_pan + (c.value or 0.0), HEAD_PAN_LIMIT))
        return StepResult(s)

    if a == "head_tilt":
        s = replace(s, head_tilt=_clamp(s.head_tilt + (c.value or 0.0), HEAD_TILT_LIMIT))
        return StepResult(s)

    if a == "head_reset":
        return StepResult(replace(s, head_pan=0.0, head_tilt=0.0))

    if a == "set_coefficients":
        assert c.coefficients is not None, "validate_command guarantees coefficients"
        clamped = CoefficientSet.clamped(**c.coefficients.to_payload())
        return StepResult(replace(s, coefficients=clamped))

    raise AssertionError(f"unhandled action {a!r}")  # unreachable for validated commands


def tick(s: RobotState, dt: float) -> RobotState:
    """Advance simulated time: linear battery drain, floored at zero."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    return replace(s, battery_v=max(0.0, s.battery_v - DRAIN_RATE_V_PER_S * dt))


def snapshot(s: RobotState) -> StateMsg:
    return StateMsg(
        x=s.pose.x,
        y=s.pose.y,
        theta=s.pose.theta,
        head_pan=s.head_pan,
        head_tilt=s.head_tilt,
        posture=s.posture.value,
        coefficients=s.coefficients,
        contact_count=s.contact_count,
        finished=s.finished,
    )


def force_posture(s: RobotState, p: Posture) -> RobotState:
    """Test hook: the simulated robot never falls on its own, but get_up
    recovery still has to be exercisable.
    """
    return replace(s, posture=p)
