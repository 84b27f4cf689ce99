"""
Synthetic flow sequences with exact ground truth.

The camera applies the same motion every frame: a rotation about the image
center, a zoom about ``zoom_center`` and a translation. Objects are
rectangles or ellipses that slide by a constant displacement per frame and
overwrite the background flow inside their region.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.fields import pixel_grid
from ..core.types import FlowField, ForegroundMask, Homography
from ..detector.background import ideal_background_flow
from ..utils.errors import ConfigError, DegenerateHomography, NonInvertibleComposition

MIN_FRAME_SIZE = 4


class Shape(StrEnum):
    RECTANGLE = "rectangle"
    ELLIPSE = "ellipse"


@dataclass(frozen=True)
class SceneObject:
    """
    Moving region, given by its bounding box at frame 0 and a per-frame
    displacement ``(du, dv)`` in pixels.
    """

    shape: Shape
    x: float
    y: float
    width: float
    height: float
    du: float = 0.0
    dv: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "shape", Shape(self.shape))
        except ValueError:
            raise ConfigError(f"Unknown object shape {self.shape!r}")

    def origin(self, t: int) -> Tuple[float, float]:
        return self.x + t * self.du, self.y + t * self.dv

    def region(self, t: int, frame_width: int, frame_height: int) -> np.ndarray:
        """Boolean grid of the pixels covered at frame ``t``."""
        xs, ys = pixel_grid(frame_width, frame_height)
        x0, y0 = self.origin(t)
        if self.shape == Shape.RECTANGLE:
            return (xs >= x0) & (xs < x0 + self.width) & (ys >= y0) & (ys < y0 + self.height)
        cx = x0 + (self.width - 1) / 2
        cy = y0 + (self.height - 1) / 2
        return ((xs - cx) / (self.width / 2)) ** 2 + ((ys - cy) / (self.height / 2)) ** 2 <= 1.0


@dataclass(frozen=True)
class CameraMotion:
    """Per-frame camera motion, ``H_{t->t-1} = T(dx, dy) Z(zoom) R(rotation)``."""

    dx: float = 0.0
    dy: float = 0.0
    rotation: float = 0.0
    zoom: float = 1.0
    zoom_center: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class SceneScript:
    """
    Description of a synthetic sequence.

    Raises
    ------
    ConfigError
        If sizes are invalid, ``num_frames <= interval_k`` or an object
        leaves the frame at any time
    """

    width: int = 320
    height: int = 240
    num_frames: int = 60
    interval_k: int = 5
    camera: CameraMotion = field(default_factory=CameraMotion)
    objects: Tuple[SceneObject, ...] = ()
    noise_sigma: float = 0.2
    rng_seed: int = 0

    def __post_init__(self):
        if self.width < MIN_FRAME_SIZE or self.height < MIN_FRAME_SIZE:
            raise ConfigError(f"Frame of {self.width}x{self.height} is below the {MIN_FRAME_SIZE}x{MIN_FRAME_SIZE} minimum")
        if self.interval_k < 1:
            raise ConfigError(f"interval_k must be >= 1, got {self.interval_k}")
        if self.num_frames <= self.interval_k:
            raise ConfigError(f"num_frames ({self.num_frames}) must exceed interval_k ({self.interval_k})")
        camera = (self.camera.dx, self.camera.dy, self.camera.rotation, self.camera.zoom)
        if not np.all(np.isfinite(camera)):
            raise ConfigError(f"camera motion must be finite, got {self.camera}")
        if not self.camera.zoom > 0:
            raise ConfigError(f"camera zoom must be > 0, got {self.camera.zoom}")
        if not self.noise_sigma >= 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.rng_seed < 0:
            raise ConfigError(f"rng_seed must be >= 0, got {self.rng_seed}")
        object.__setattr__(self, "objects", tuple(self.objects))
        for index, obj in enumerate(self.objects):
            if obj.width <= 0 or obj.height <= 0:
                raise ConfigError(f"Object {index} must have a positive size")
            # motion is linear, so the first and last frames bound every position
            for t in (0, self.num_frames - 1):
                x0, y0 = obj.origin(t)
                if x0 < 0 or y0 < 0 or x0 + obj.width > self.width or y0 + obj.height > self.height:
                    raise ConfigError(f"Object {index} leaves the {self.width}x{self.height} frame at frame {t}")

    @property
    def center(self) -> Tuple[float, float]:
        return self.width / 2, self.height / 2


@dataclass(frozen=True)
class GroundTruthFrame:
    """Flow of frame ``index`` against frame ``index - k`` and its ground truth."""

    index: int
    flow: FlowField
    gt_mask: ForegroundMask
    gt_homography: Homography


def _about(matrix: np.ndarray, center: Tuple[float, float]) -> np.ndarray:
    cx, cy = center
    to_origin = np.array([[1.0, 0.0, -cx], [0.0, 1.0, -cy], [0.0, 0.0, 1.0]])
    back = np.array([[1.0, 0.0, cx], [0.0, 1.0, cy], [0.0, 0.0, 1.0]])
    return back @ matrix @ to_origin


def camera_homography(script: SceneScript) -> Homography:
    """Single-frame camera homography ``H_{t->t-1}`` of a script."""
    cam = script.camera
    c, s = np.cos(cam.rotation), np.sin(cam.rotation)
    rotation = _about(np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]), script.center)
    zoom = _about(np.diag([cam.zoom, cam.zoom, 1.0]), cam.zoom_center or script.center)
    translation = np.array([[1.0, 0.0, cam.dx], [0.0, 1.0, cam.dy], [0.0, 0.0, 1.0]])
    return Homography(translation @ zoom @ rotation)


def compose_homographies(per_frame: Sequence[Homography]) -> Homography:
    """
    Chain single-frame homographies given in temporal order
    ``t->t-1, t-1->t-2, ...`` into ``H_{t->t-k}``.

    Raises
    ------
    NonInvertibleComposition
        If the list is empty or the product cannot be normalized
    """
    if not per_frame:
        raise NonInvertibleComposition("Cannot compose an empty list of homographies")
    product = Homography.identity()
    try:
        for h in per_frame:
            product = h @ product
        return product
    except DegenerateHomography as e:
        raise NonInvertibleComposition(f"Composed homography cannot be normalized: {e}")


def generate_frame(script: SceneScript, t: int) -> GroundTruthFrame:
    """
    Build the flow of frame ``t`` against frame ``t - k``.

    Noise is drawn from a stream derived from ``(rng_seed, t)``, so frames
    can be generated in any order.

    Raises
    ------
    ConfigError
        If ``t`` is outside ``[k, num_frames)`` or the camera motion maps
        pixels to infinity
    """
    k = script.interval_k
    if not k <= t < script.num_frames:
        raise ConfigError(f"Frame {t} outside [{k}, {script.num_frames})")

    h = compose_homographies([camera_homography(script)] * k)
    background = ideal_background_flow(h, script.width, script.height, interval_k=k)
    if not np.all(background.valid):
        raise ConfigError("Camera motion maps part of the frame to infinity")

    vectors = np.array(background.vectors)
    gt = np.zeros((script.height, script.width), dtype=bool)
    for obj in script.objects:
        region = obj.region(t, script.width, script.height)
        vectors[region] = (-k * obj.du, -k * obj.dv)
        gt |= region

    if script.noise_sigma > 0:
        rng = np.random.default_rng([script.rng_seed, t])
        vectors += rng.normal(0.0, script.noise_sigma, vectors.shape)

    return GroundTruthFrame(
        index=t,
        flow=FlowField(vectors, interval_k=k),
        gt_mask=ForegroundMask(gt),
        gt_homography=h,
    )


def generate_sequence(script: SceneScript, workers: int = 1) -> List[GroundTruthFrame]:
    """
    Generate frames ``k .. num_frames - 1`` of a script.

    The result does not depend on ``workers``.
    """
    frames = range(script.interval_k, script.num_frames)
    if workers <= 1:
        return [generate_frame(script, t) for t in frames]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: generate_frame(script, t), frames))
