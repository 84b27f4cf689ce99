"""Shared fixtures: synthetic scenes and exactly known flow fields."""

from __future__ import annotations

from typing import Tuple

import numpy as np
import pytest

from flowseg.core import FlowField, Homography
from flowseg.detector import ideal_background_flow
from flowseg.synth import CameraMotion, SceneObject, SceneScript
from flowseg.utils import logs


@pytest.fixture(autouse=True)
def _isolated_log_dir(tmp_path_factory, monkeypatch):
    monkeypatch.setattr(logs, "LOG_DIR", tmp_path_factory.mktemp("logs"))


# ── Helpers ──────────────────────────────────────────────────────────────


def zoom_about(scale: float, center: Tuple[float, float]) -> Homography:
    cx, cy = center
    return Homography(np.array([[scale, 0.0, (1 - scale) * cx], [0.0, scale, (1 - scale) * cy], [0.0, 0.0, 1.0]]))


def flow_from_homography(h: Homography, width: int = 320, height: int = 240, interval_k: int = 5) -> FlowField:
    """Noise-free field whose every pixel moves as the camera does."""
    ideal = ideal_background_flow(h, width, height, interval_k=interval_k)
    return FlowField(ideal.vectors, interval_k=interval_k)


def projective_homography() -> Homography:
    return Homography(
        np.array(
            [
                [1.01, 0.02, 3.0],
                [-0.01, 0.99, -2.0],
                [1e-5, -2e-5, 1.0],
            ]
        )
    )


def translation_script(noise_sigma: float = 0.0, num_frames: int = 60, **kwargs) -> SceneScript:
    """320x240, camera panning 2 px/frame, one 40x30 rectangle sliding down."""
    return SceneScript(
        width=320,
        height=240,
        num_frames=num_frames,
        interval_k=5,
        camera=CameraMotion(dx=2.0),
        objects=(SceneObject("rectangle", 140, 60, 40, 30, 0.0, 1.5),),
        noise_sigma=noise_sigma,
        **kwargs,
    )


def zoom_script(num_frames: int = 15) -> SceneScript:
    """Camera zooming 1% per frame about the image center, one object moving tangentially."""
    return SceneScript(
        width=320,
        height=240,
        num_frames=num_frames,
        interval_k=5,
        camera=CameraMotion(zoom=1.01),
        objects=(SceneObject("rectangle", 230, 100, 40, 30, 0.0, 1.0),),
        noise_sigma=0.0,
    )


def static_script(num_frames: int = 8) -> SceneScript:
    return SceneScript(width=32, height=24, num_frames=num_frames, interval_k=5, noise_sigma=0.0)


@pytest.fixture
def translation_scene() -> SceneScript:
    return translation_script()


@pytest.fixture
def zoom_scene() -> SceneScript:
    return zoom_script()
