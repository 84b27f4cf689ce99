"""
Text form of scene scripts.

Example::

    width = 320
    height = 240
    num_frames = 60
    interval_k = 5
    camera_dx = 2.0
    camera_zoom = 1.0
    noise_sigma = 0.2
    # shape x y width height du dv
    object = rectangle 140 100 40 30 0 1.5
"""

from pathlib import Path
from typing import Any, Dict, List, Union

from ..utils.errors import ConfigError
from ..utils.fileops import read_text
from ..utils.keyvalue import convert, parse_key_values
from ..utils.tables import format_value
from .scene import CameraMotion, SceneObject, SceneScript

_SCRIPT_KEYS = {
    "width": int,
    "height": int,
    "num_frames": int,
    "interval_k": int,
    "noise_sigma": float,
    "rng_seed": int,
}
_CAMERA_KEYS = {
    "camera_dx": "dx",
    "camera_dy": "dy",
    "camera_rotation": "rotation",
    "camera_zoom": "zoom",
}
_CENTER_KEYS = ("zoom_center_x", "zoom_center_y")


def _parse_object(value: str, source: str, line: int) -> SceneObject:
    parts = value.split()
    if len(parts) not in (5, 7):
        raise ConfigError(f"{source}:{line}: object needs 'shape x y width height [du dv]', got {value!r}")
    numbers = [convert(part, float, "object", source, line) for part in parts[1:]]
    return SceneObject(parts[0], *numbers)


def parse_scene_script(text: str, source: str = "<script>") -> SceneScript:
    """
    Parse a scene script.

    Raises
    ------
    ConfigError
        On unknown or repeated keys, malformed values, a lone zoom center
        coordinate, or a script that fails validation
    """
    values: Dict[str, Any] = {}
    camera: Dict[str, Any] = {}
    center: Dict[str, float] = {}
    objects: List[SceneObject] = []
    seen = set()

    for key, value, line in parse_key_values(text, source):
        if key == "object":
            objects.append(_parse_object(value, source, line))
            continue
        if key in seen:
            raise ConfigError(f"{source}:{line}: duplicate key {key}")
        seen.add(key)
        if key in _SCRIPT_KEYS:
            values[key] = convert(value, _SCRIPT_KEYS[key], key, source, line)
        elif key in _CAMERA_KEYS:
            camera[_CAMERA_KEYS[key]] = convert(value, float, key, source, line)
        elif key in _CENTER_KEYS:
            center[key] = convert(value, float, key, source, line)
        else:
            raise ConfigError(f"{source}:{line}: unknown key {key}")

    if center:
        if len(center) != 2:
            raise ConfigError(f"{source}: zoom_center_x and zoom_center_y must be given together")
        camera["zoom_center"] = (center["zoom_center_x"], center["zoom_center_y"])

    return SceneScript(camera=CameraMotion(**camera), objects=tuple(objects), **values)


def load_scene_script(path: Union[str, Path]) -> SceneScript:
    return parse_scene_script(read_text(path), source=str(path))


def format_scene_script(script: SceneScript) -> str:
    """Text that ``parse_scene_script`` reads back to an equal script."""
    cam = script.camera
    lines = [
        f"width = {script.width}",
        f"height = {script.height}",
        f"num_frames = {script.num_frames}",
        f"interval_k = {script.interval_k}",
        f"camera_dx = {format_value(cam.dx)}",
        f"camera_dy = {format_value(cam.dy)}",
        f"camera_rotation = {format_value(cam.rotation)}",
        f"camera_zoom = {format_value(cam.zoom)}",
    ]
    if cam.zoom_center is not None:
        lines.append(f"zoom_center_x = {format_value(cam.zoom_center[0])}")
        lines.append(f"zoom_center_y = {format_value(cam.zoom_center[1])}")
    lines.append(f"noise_sigma = {format_value(script.noise_sigma)}")
    lines.append(f"rng_seed = {script.rng_seed}")
    for obj in script.objects:
        numbers = " ".join(format_value(n) for n in (obj.x, obj.y, obj.width, obj.height, obj.du, obj.dv))
        lines.append(f"object = {obj.shape} {numbers}")
    return "\n".join(lines) + "\n"
