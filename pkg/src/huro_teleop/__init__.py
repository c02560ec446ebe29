"""Teleoperation stack for a simulated kid-size humanoid: JSON pub/sub
gateway over WebSocket, MJPEG camera stream, and a discrete-step obstacle
course simulator behind it.
"""

__version__ = "0.1.0"

from .config import Config, parse_cli
from .gateway import Gateway, TopicRegistry, mjpeg_part
from .protocol import (
    CoefficientSet,
    CommandMsg,
    Envelope,
    decode_envelope,
    encode_envelope,
    validate_command,
)
from .robot_sim import RobotState, apply_command, initial_state, snapshot
from .teleop_node import TeleopNode
from .world import CourseMap, Obstacle, Pose2D, check_contact, load_course, save_course, sweep_contact

__all__ = [
    "__version__",
    "Config",
    "parse_cli",
    "Gateway",
    "TopicRegistry",
    "mjpeg_part",
    "CoefficientSet",
    "CommandMsg",
    "Envelope",
    "decode_envelope",
    "encode_envelope",
    "validate_command",
    "RobotState",
    "apply_command",
    "initial_state",
    "snapshot",
    "TeleopNode",
    "CourseMap",
    "Obstacle",
    "Pose2D",
    "check_contact",
    "load_course",
    "save_course",
    "sweep_contact",
]
