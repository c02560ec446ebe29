"""Gateway configuration: defaults, JSON config file, CLI flags.

Precedence: CLI flags beat the HURO_TELEOP_CONFIG file, which beats the
built-in defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .camera import RenderConfig

CONFIG_ENV_VAR = "HURO_TELEOP_CONFIG"

TICK_MODES = ("wall", "lockstep")


class CliError(ValueError):
    pass


class UnknownFlag(CliError):
    pass


class InvalidValue(CliError):
    pass


@dataclass
class Config:
    host: str = "0.0.0.0"
    port: int = 9090
    course_path: str | None = None
    tick_hz: float = 20.0
    tick_mode: str = "wall"
    render: RenderConfig = field(default_factory=RenderConfig)
    static_dir: str | None = None


USAGE = """\
usage: huro-teleop [flags]

  --host HOST          bind address (default 0.0.0.0)
  --port PORT          TCP port, 1-65535 (default 9090)
  --course PATH        course JSON file (default: bundled 3-obstacle course)
  --tick-hz HZ         simulation tick rate, 1-100 (default 20)
  --tick-mode MODE     'wall' (real-time loop) or 'lockstep' (one tick per
                       command; deterministic replays) (default wall)
  --cam-width PX       camera width, >= 32 (default 320)
  --cam-height PX      camera height, >= 24 (default 240)
  --cam-fps HZ         camera frame rate, 1-30 (default 15)
  --cam-quality Q      JPEG quality, 1-100 (default 70)
  --static-dir PATH    operator console assets served at / and /static

environment:
  HURO_TELEOP_CONFIG   path to a JSON file mirroring these fields; CLI
                       flags override it
"""

# flag -> (settings key, parser)
_FLAGS: dict[str, tuple[str, Any]] = {
    "--host": ("host", str),
    "--port": ("port", int),
    "--course": ("course", str),
    "--tick-hz": ("tick_hz", float),
    "--tick-mode": ("tick_mode", str),
    "--cam-width": ("cam_width", int),
    "--cam-height": ("cam_height", int),
    "--cam-fps": ("cam_fps", float),
    "--cam-quality": ("cam_quality", int),
    "--static-dir": ("static_dir", str),
}

_RENDER_KEYS = {"cam_width": "width", "cam_height": "height", "cam_fps": "fps", "cam_quality": "jpeg_quality"}


def _settings_from_file(path: str) -> dict[str, Any]:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidValue(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidValue(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidValue(f"config file {path} must hold a JSON object")

    settings: dict[str, Any] = {}
    for key in ("host", "port", "course", "tick_hz", "tick_mode", "static_dir"):
        if key in doc:
            settings[key] = doc[key]
    render = doc.get("render", {})
    if not isinstance(render, dict):
        raise InvalidValue("config 'render' must be an object")
    for cam_key, render_key in _RENDER_KEYS.items():
        if render_key in render:
            settings[cam_key] = render[render_key]
    return settings


def _settings_from_argv(argv: list[str]) -> dict[str, Any]:
    settings: dict[str, Any] = {}
    i = 0
    while i < len(argv):
        arg = argv[i]
        if "=" in arg and arg.startswith("--"):
            flag, raw = arg.split("=", 1)
        else:
            flag, raw = arg, None
        if flag not in _FLAGS:
            raise UnknownFlag(f"unknown flag {flag!r}")
        key, parse = _FLAGS[flag]
        if raw is None:
            i += 1
            if i >= len(argv):
                raise InvalidValue(f"{flag} needs a value")
            raw = argv[i]
        try:
            settings[key] = parse(raw)
        except ValueError:
            raise InvalidValue(f"{flag}: cannot parse {raw!r}") from None
        i += 1
    return settings


def _build_config(settings: Mapping[str, Any]) -> Config:
    cfg = Config()
    try:
        if "host" in settings:
            cfg.host = str(settings["host"])
        if "port" in settings:
            cfg.port = int(settings["port"])
        if "course" in settings and settings["course"] is not None:
            cfg.course_path = str(settings["course"])
        if "tick_hz" in settings:
            cfg.tick_hz = float(settings["tick_hz"])
        if "tick_mode" in settings:
            cfg.tick_mode = str(settings["tick_mode"])
        if "static_dir" in settings and settings["static_dir"] is not None:
            cfg.static_dir = str(settings["static_dir"])
        render_kwargs = {
            render_key: settings[cam_key]
            for cam_key, render_key in _RENDER_KEYS.items()
            if cam_key in settings
        }
        cfg.render = RenderConfig(**render_kwargs)
    except (TypeError, ValueError) as exc:
        raise InvalidValue(str(exc)) from None

    if not 1 <= cfg.port <= 65535:
        raise InvalidValue(f"port must be in [1, 65535], got {cfg.port}")
    if not 1 <= cfg.tick_hz <= 100:
        raise InvalidValue(f"tick-hz must be in [1, 100], got {cfg.tick_hz}")
    if cfg.tick_mode not in TICK_MODES:
        raise InvalidValue(f"tick-mode must be one of {TICK_MODES}, got {cfg.tick_mode!r}")
    return cfg


def parse_cli(argv: list[str], env: Mapping[str, str] | None = None) -> Config:
    """Resolve the effective Config from argv and the environment."""
    env = os.environ if env is None else env
    settings: dict[str, Any] = {}
    config_path = env.get(CONFIG_ENV_VAR)
    if config_path:
        settings.update(_settings_from_file(config_path))
    settings.update(_settings_from_argv(argv))
    return _build_config(settings)
