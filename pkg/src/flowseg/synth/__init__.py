"""Synthetic ground-truth flow sequences."""

from .export import HOMOGRAPHY_FILE, HOMOGRAPHY_HEADER, frame_name, write_sequence
from .scene import (
    CameraMotion,
    GroundTruthFrame,
    SceneObject,
    SceneScript,
    Shape,
    camera_homography,
    compose_homographies,
    generate_frame,
    generate_sequence,
)
from .script import format_scene_script, load_scene_script, parse_scene_script

__all__ = [
    "HOMOGRAPHY_FILE",
    "HOMOGRAPHY_HEADER",
    "CameraMotion",
    "GroundTruthFrame",
    "SceneObject",
    "SceneScript",
    "Shape",
    "camera_homography",
    "compose_homographies",
    "format_scene_script",
    "frame_name",
    "generate_frame",
    "generate_sequence",
    "load_scene_script",
    "parse_scene_script",
    "write_sequence",
]
