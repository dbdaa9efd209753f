"""Scene + trajectory JSON files.

    {"reflectors": [{"distance_m": 2.0, "amplitude": 1.0}],
     "trajectory": [{"t_s": 0.0, "v_mps": 0.02}]}

Reflectors may also carry ``appear_frame`` / ``disappear_frame`` for
transient (multipath-like) returns. A missing trajectory means a stationary
ego.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from radvel.errors import ConfigError
from radvel.models import EgoTrajectory, Reflector, Scene, VelocitySegment
from radvel.simulator.motion import validate_trajectory

_REFLECTOR_KEYS = {"distance_m", "amplitude", "appear_frame", "disappear_frame"}
_SEGMENT_KEYS = {"t_s", "v_mps"}


def _check_keys(obj: Any, allowed: set[str], required: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{what} must be a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"unknown {what} keys: {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"{what} missing keys: {', '.join(missing)}")


def _list(obj: Any, what: str) -> list:
    if not isinstance(obj, list):
        raise ConfigError(f"{what} must be a JSON array")
    return obj


def _number(obj: dict, key: str, what: str, default: float | None = None) -> float:
    value = obj.get(key, default)
    # bool is an int subclass
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{what} '{key}' must be a number, got {value!r}")
    return float(value)


def _frame_index(obj: dict, key: str, what: str) -> int | None:
    value = obj.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"{what} '{key}' must be a non-negative integer or null, got {value!r}")
    return value


def scene_from_dict(raw: Any) -> tuple[Scene, EgoTrajectory]:
    """Build a scene and trajectory, rejecting unknown keys and mistyped values.

    Raises:
        ConfigError: on any shape or type problem.
    """
    _check_keys(raw, {"reflectors", "trajectory"}, {"reflectors"}, "scene")

    reflectors = []
    for i, item in enumerate(_list(raw["reflectors"], "scene 'reflectors'")):
        what = f"reflector {i}"
        _check_keys(item, _REFLECTOR_KEYS, {"distance_m"}, what)
        reflectors.append(
            Reflector(
                distance_m=_number(item, "distance_m", what),
                amplitude=_number(item, "amplitude", what, default=1.0),
                appear_frame=_frame_index(item, "appear_frame", what),
                disappear_frame=_frame_index(item, "disappear_frame", what),
            )
        )

    segments = []
    trajectory = raw.get("trajectory")
    if trajectory is None or trajectory == []:
        trajectory = [{"t_s": 0.0, "v_mps": 0.0}]
    for i, item in enumerate(_list(trajectory, "scene 'trajectory'")):
        what = f"trajectory segment {i}"
        _check_keys(item, _SEGMENT_KEYS, _SEGMENT_KEYS, what)
        segments.append(VelocitySegment(_number(item, "t_s", what), _number(item, "v_mps", what)))

    traj = validate_trajectory(EgoTrajectory(segments=tuple(segments)))
    return Scene(reflectors=tuple(reflectors)), traj


def scene_to_dict(scene: Scene, traj: EgoTrajectory) -> dict[str, Any]:
    reflectors = []
    for r in scene.reflectors:
        item: dict[str, Any] = {"distance_m": r.distance_m, "amplitude": r.amplitude}
        if r.appear_frame is not None:
            item["appear_frame"] = r.appear_frame
        if r.disappear_frame is not None:
            item["disappear_frame"] = r.disappear_frame
        reflectors.append(item)
    return {
        "reflectors": reflectors,
        "trajectory": [{"t_s": s.start_s, "v_mps": s.velocity_mps} for s in traj.segments],
    }


def load_scene(path: str | Path) -> tuple[Scene, EgoTrajectory]:
    """Load a scene/trajectory JSON file."""
    with open(path, "r") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
    return scene_from_dict(raw)


def save_scene(scene: Scene, traj: EgoTrajectory, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(scene_to_dict(scene, traj), indent=2) + "\n")
    return path
