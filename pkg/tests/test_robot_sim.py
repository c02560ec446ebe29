import math
import random

import pytest

from huro_teleop.protocol import CoefficientSet, CommandMsg, Posture, validate_command
from huro_teleop.robot_sim import (
    BATTERY_FULL_V,
    HEAD_PAN_LIMIT,
    HEAD_TILT_LIMIT,
    Contact,
    Finished,
    PostureChanged,
    Rejected,
    RobotState,
    apply_command,
    force_posture,
    initial_state,
    snapshot,
    tick,
)
from huro_teleop.world import CourseMap, Pose2D

import oracles


def open_course() -> CourseMap:
    return CourseMap(width=20.0, height=20.0, start=Pose2D(10.0, 10.0, 0.0), finish_y=20.0)


def state_at(x, y, theta, course, **kw) -> RobotState:
    return RobotState(pose=Pose2D(x, y, theta), **kw)


def run(state, course, *actions, **payload_extra):
    for a in actions:
        state = apply_command(state, validate_command({"action": a, **payload_extra}), course).state
    return state


COEFF = CoefficientSet(step_m=0.10, turn_rad=0.30, shift_m=0.05)


class TestKinematicExamples:
    def test_walk_forward_along_x(self):
        m = open_course()
        s = RobotState(pose=Pose2D(0.0, 0.0, 0.0), coefficients=COEFF)
        out = apply_command(s, CommandMsg("walk_forward"), m).state
        assert out.pose.x == pytest.approx(0.10, abs=1e-15)
        assert out.pose.y == 0.0

    def test_walk_forward_heading_up(self):
        m = open_course()
        s = RobotState(pose=Pose2D(0.0, 0.0, math.pi / 2), coefficients=CoefficientSet(0.20, 0.30, 0.05))
        out = apply_command(s, CommandMsg("walk_forward"), m).state
        assert abs(out.pose.x - 0.0) < 1e-12
        assert abs(out.pose.y - 0.20) < 1e-12
        assert out.pose.theta == math.pi / 2

    def test_turn_normalization(self):
        m = open_course()
        s = RobotState(pose=Pose2D(10.0, 10.0, 3.00), coefficients=COEFF)
        out = apply_command(s, CommandMsg("turn_left"), m).state
        assert out.pose.theta == pytest.approx(3.30 - math.tau, abs=1e-12)

    def test_shift_right_at_heading_zero(self):
        m = open_course()
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0), coefficients=COEFF)
        out = apply_command(s, CommandMsg("shift_right"), m).state
        assert out.pose.x == pytest.approx(1.0, abs=1e-12)
        assert out.pose.y == pytest.approx(0.95, abs=1e-12)

    def test_fallen_walk_rejected(self):
        m = open_course()
        s = force_posture(RobotState(pose=Pose2D(1.0, 1.0, 0.0)), Posture.FALLEN)
        result = apply_command(s, CommandMsg("walk_forward"), m)
        assert result.state == s
        assert result.events == (Rejected("cannot walk_forward while fallen"),)


class TestPostures:
    def test_crawl_halves_step(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0), coefficients=COEFF)
        result = apply_command(s, CommandMsg("crawl_forward"), m)
        assert result.state.posture is Posture.CRAWLING
        assert PostureChanged(Posture.CRAWLING) in result.events
        assert result.state.pose.x == pytest.approx(5.05, abs=1e-12)
        again = apply_command(result.state, CommandMsg("walk_forward"), m).state
        assert again.pose.x == pytest.approx(5.10, abs=1e-12)

    def test_shift_while_crawling_rejected(self):
        m = open_course()
        s = force_posture(RobotState(pose=Pose2D(5.0, 5.0, 0.0)), Posture.CRAWLING)
        result = apply_command(s, CommandMsg("shift_left"), m)
        assert isinstance(result.events[0], Rejected)
        assert result.state == s

    def test_get_up_paths(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.3))
        for start in (Posture.FALLEN, Posture.CRAWLING):
            up = apply_command(force_posture(s, start), CommandMsg("get_up"), m)
            assert up.state.posture is Posture.STANDING
            assert up.state.pose == s.pose
        rejected = apply_command(s, CommandMsg("get_up"), m)
        assert isinstance(rejected.events[0], Rejected)

    def test_force_posture_idempotent(self):
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0))
        assert force_posture(s, Posture.STANDING) == s

    def test_start_pose_goes_home(self, default_course):
        s = RobotState(pose=Pose2D(2.0, 3.0, 0.4), head_pan=0.5, head_tilt=-0.2)
        out = apply_command(s, CommandMsg("start_pose"), default_course).state
        assert out.pose == default_course.start
        assert out.posture is Posture.START_POSE
        assert out.head_pan == 0.0 and out.head_tilt == 0.0

    def test_start_pose_then_walk_rejected_until_reset(self, default_course):
        s = RobotState(pose=Pose2D(2.0, 3.0, 0.4))
        s = apply_command(s, CommandMsg("start_pose"), default_course).state
        result = apply_command(s, CommandMsg("walk_forward"), default_course)
        assert isinstance(result.events[0], Rejected)
        s = apply_command(s, CommandMsg("reset_pose"), default_course).state
        assert s.posture is Posture.STANDING
        assert s.pose == default_course.start
        moved = apply_command(s, CommandMsg("walk_forward"), default_course)
        assert moved.events == ()


class TestHeadAndCoefficients:
    def test_head_pan_accumulates_and_clamps(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0))
        for _ in range(30):
            s = apply_command(s, CommandMsg("head_pan", value=0.1), m).state
        assert s.head_pan == HEAD_PAN_LIMIT

    def test_head_reset(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0), head_pan=0.7, head_tilt=-0.3)
        s = apply_command(s, CommandMsg("head_reset"), m).state
        assert (s.head_pan, s.head_tilt) == (0.0, 0.0)

    def test_head_bounds_under_random_script(self):
        m = open_course()
        rng = random.Random(31415)
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0))
        for _ in range(500):
            action = rng.choice(["head_pan", "head_tilt", "head_reset"])
            payload = {"action": action}
            if action != "head_reset":
                payload["value"] = rng.uniform(-2.0, 2.0)
            s = apply_command(s, validate_command(payload), m).state
            assert -HEAD_PAN_LIMIT <= s.head_pan <= HEAD_PAN_LIMIT
            assert -HEAD_TILT_LIMIT <= s.head_tilt <= HEAD_TILT_LIMIT

    def test_set_coefficients_takes_effect_immediately(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0))
        cmd = validate_command(
            {"action": "set_coefficients", "coefficients": {"step_m": 0.37, "turn_rad": 0.3, "shift_m": 0.05}}
        )
        s = apply_command(s, cmd, m).state
        out = apply_command(s, CommandMsg("walk_forward"), m).state
        assert out.pose.x - 5.0 == pytest.approx(0.37, abs=1e-15)

    def test_set_coefficients_clamps(self):
        m = open_course()
        s = RobotState(pose=Pose2D(5.0, 5.0, 0.0))
        s = apply_command(s, CommandMsg("set_coefficients", coefficients=CoefficientSet(9.0, 0.3, 0.05)), m).state
        assert s.coefficients.step_m == 0.50


class TestInversePairs:
    def test_turn_inverse_exact_from_zero(self):
        m = open_course()
        rng = random.Random(8)
        for _ in range(100):
            coeff = CoefficientSet.clamped(0.1, rng.uniform(0.01, 1.57), 0.05)
            s = RobotState(pose=Pose2D(5.0, 5.0, 0.0), coefficients=coeff)
            out = run(run(s, m, "turn_left"), m, "turn_right")
            assert out.pose.theta == 0.0

    def test_turn_inverse_general(self):
        m = open_course()
        rng = random.Random(9)
        for _ in range(300):
            coeff = CoefficientSet.clamped(0.1, rng.uniform(0.01, 1.57), 0.05)
            s = RobotState(pose=Pose2D(5.0, 5.0, rng.uniform(-math.pi, math.pi)), coefficients=coeff)
            out = run(run(s, m, "turn_left"), m, "turn_right")
            assert oracles.angle_diff(out.pose.theta, s.pose.theta) < 1e-12

    def test_walk_inverse(self):
        m = open_course()
        rng = random.Random(10)
        for _ in range(300):
            s = RobotState(
                pose=Pose2D(rng.uniform(3, 17), rng.uniform(3, 17), rng.uniform(-math.pi, math.pi)),
                coefficients=CoefficientSet.clamped(rng.uniform(0.01, 0.5), 0.3, 0.05),
            )
            out = run(s, m, "walk_forward", "walk_backward")
            assert math.hypot(out.pose.x - s.pose.x, out.pose.y - s.pose.y) < 1e-12

    def test_shift_inverse(self):
        m = open_course()
        rng = random.Random(11)
        for _ in range(300):
            s = RobotState(
                pose=Pose2D(rng.uniform(3, 17), rng.uniform(3, 17), rng.uniform(-math.pi, math.pi)),
                coefficients=CoefficientSet.clamped(0.1, 0.3, rng.uniform(0.01, 0.3)),
            )
            out = run(s, m, "shift_left", "shift_right")
            assert math.hypot(out.pose.x - s.pose.x, out.pose.y - s.pose.y) < 1e-12


class TestContactsAndFinish:
    def test_walk_into_obstacle_counts_and_completes(self, default_course):
        s = RobotState(pose=Pose2D(1.5, 1.2, math.pi / 2), coefficients=CoefficientSet(0.5, 0.3, 0.05))
        result = apply_command(s, CommandMsg("walk_forward"), default_course)
        assert result.state.pose.y == pytest.approx(1.7, abs=1e-12)  # move completed
        assert result.state.contact_count == 1
        assert result.events == (Contact(("gate_a",)),)

    def test_contact_count_non_decreasing_and_matches_oracle(self, default_course):
        rng = random.Random(12)
        s = initial_state(default_course)
        total = 0
        for _ in range(400):
            action = rng.choice(["walk_forward", "walk_backward", "turn_left", "turn_right", "shift_left", "shift_right"])
            before = (s.pose.x, s.pose.y)
            result = apply_command(s, CommandMsg(action), default_course)
            assert result.state.contact_count >= s.contact_count
            s = result.state
            ids = oracles.sampled_sweep_contact(default_course, before, (s.pose.x, s.pose.y), 0.12)
            total += len(ids)
            assert s.contact_count == total

    def test_finished_latches(self, default_course):
        s = RobotState(pose=Pose2D(1.0, default_course.finish_y - 0.05, math.pi / 2), coefficients=COEFF)
        result = apply_command(s, CommandMsg("walk_forward"), default_course)
        assert result.state.finished
        assert Finished() in result.events
        back = apply_command(result.state, CommandMsg("walk_backward"), default_course)
        assert back.state.finished
        assert Finished() not in back.events

    def test_center_clamped_to_bounds(self, default_course):
        s = RobotState(pose=Pose2D(0.05, 0.5, math.pi), coefficients=CoefficientSet(0.5, 0.3, 0.05))
        result = apply_command(s, CommandMsg("walk_forward"), default_course)
        assert result.state.pose.x == 0.0
        assert result.state.contact_count >= 1  # wall contact reported


class TestTick:
    def test_drain_example(self):
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0))
        assert tick(s, 100.0).battery_v == pytest.approx(12.55, abs=1e-12)

    def test_linearity(self):
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0))
        many = s
        for _ in range(50):
            many = tick(many, 0.02)
        assert many.battery_v == pytest.approx(tick(s, 1.0).battery_v, abs=1e-9)

    def test_floor_at_zero(self):
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0), battery_v=0.0001)
        out = tick(s, 10_000.0)
        assert out.battery_v == 0.0
        assert tick(out, 5.0).battery_v == 0.0

    def test_rejects_non_positive_dt(self):
        s = RobotState(pose=Pose2D(1.0, 1.0, 0.0))
        with pytest.raises(ValueError):
            tick(s, 0.0)

    def test_only_battery_changes(self):
        s = RobotState(pose=Pose2D(1.0, 2.0, 0.3), head_pan=0.2, contact_count=3)
        out = tick(s, 1.0)
        assert out.pose == s.pose
        assert out.head_pan == s.head_pan
        assert out.contact_count == s.contact_count


class TestSnapshot:
    def test_field_mapping(self, default_course):
        rng = random.Random(13)
        for _ in range(3):
            s = RobotState(
                pose=Pose2D(rng.uniform(0, 3), rng.uniform(0, 6), rng.uniform(-3, 3)),
                head_pan=rng.uniform(-1.2, 1.2),
                head_tilt=rng.uniform(-0.6, 0.6),
                posture=rng.choice(list(Posture)),
                battery_v=rng.uniform(1, 12.6),
                contact_count=rng.randint(0, 9),
                finished=rng.random() < 0.5,
            )
            msg = snapshot(s)
            assert (msg.x, msg.y, msg.theta) == (s.pose.x, s.pose.y, s.pose.theta)
            assert (msg.head_pan, msg.head_tilt) == (s.head_pan, s.head_tilt)
            assert msg.posture == s.posture.value
            assert msg.coefficients == s.coefficients
            assert msg.contact_count == s.contact_count
            assert msg.finished == s.finished

    def test_fresh_state(self, default_course):
        s = initial_state(default_course)
        msg = snapshot(s)
        assert msg.contact_count == 0
        assert msg.finished is False
        assert s.battery_v == BATTERY_FULL_V


class TestFoldOracle:
    def test_random_scripts_match_reference(self, default_course):
        rng = random.Random(4242)
        for _ in range(30):
            script = make_script(rng, rng.randint(10, 200))
            s = initial_state(default_course)
            for raw in script:
                s = apply_command(s, validate_command(raw), default_course).state
            ref = oracles.fold_script(default_course, script)
            assert abs(s.pose.x - ref["x"]) < 1e-9
            assert abs(s.pose.y - ref["y"]) < 1e-9
            assert oracles.angle_diff(s.pose.theta, math.atan2(ref["heading"].imag, ref["heading"].real)) < 1e-9
            assert s.contact_count == ref["contacts"]
            assert s.finished == ref["finished"]


def make_script(rng: random.Random, length: int) -> list[dict]:
    """Random raw command payloads, weighted toward motion."""
    script = []
    for _ in range(length):
        action = rng.choice(
            ["walk_forward"] * 6
            + ["walk_backward", "turn_left", "turn_right"] * 3
            + ["shift_left", "shift_right", "crawl_forward"] * 2
            + ["get_up", "start_pose", "reset_pose", "head_pan", "head_tilt", "head_reset", "set_coefficients"]
        )
        payload: dict = {"action": action}
        if action in ("head_pan", "head_tilt"):
            payload["value"] = rng.uniform(-0.5, 0.5)
        elif action == "set_coefficients":
            payload["coefficients"] = {
                "step_m": rng.uniform(-0.2, 0.8),
                "turn_rad": rng.uniform(-0.5, 2.0),
                "shift_m": rng.uniform(-0.1, 0.5),
            }
        script.append(payload)
    return script
