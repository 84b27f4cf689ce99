"""Ideal background flow induced by camera motion alone."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.fields import pixel_grid
from ..core.types import FlowField, Homography, frozen_array
from ..utils.errors import InvalidField
from .params import DetectorConfig

MIN_FIELD_SIZE = 4


@dataclass(frozen=True, eq=False)
class BackgroundFlow(FlowField):
    """
    Flow field with a validity grid.

    Pixels whose projection is undefined carry a zero vector and
    ``valid == False``; judges treat them as background.
    """

    valid: Optional[np.ndarray] = None

    def __post_init__(self):
        super().__post_init__()
        if self.valid is None:
            valid = np.ones((self.height, self.width), dtype=bool)
        else:
            valid = np.array(self.valid, dtype=bool, copy=True)
            if valid.shape != (self.height, self.width):
                raise InvalidField(f"Validity grid shape {valid.shape} does not match {self.width}x{self.height}")
        object.__setattr__(self, "valid", frozen_array(valid))


def valid_pixels(field: FlowField) -> np.ndarray:
    """Validity grid of a field; plain fields are valid everywhere."""
    if isinstance(field, BackgroundFlow):
        return field.valid
    return np.ones((field.height, field.width), dtype=bool)


def ideal_background_flow(h: Homography, width: int, height: int, interval_k: int = 1) -> BackgroundFlow:
    """
    Flow every pixel would have if only the camera moved.

    ``f(p) = H p - p`` in inhomogeneous coordinates.

    Raises
    ------
    InvalidField
        If width or height is below 4
    """
    if width < MIN_FIELD_SIZE or height < MIN_FIELD_SIZE:
        raise InvalidField(f"Frame of {width}x{height} is below the {MIN_FIELD_SIZE}x{MIN_FIELD_SIZE} minimum")

    xs, ys = pixel_grid(width, height)
    grid = np.stack([xs, ys], axis=-1)
    flow = h.apply(grid) - grid
    valid = np.all(np.isfinite(flow), axis=-1)
    flow[~valid] = 0.0
    return BackgroundFlow(flow, interval_k=interval_k, valid=valid)


def adaptive_threshold(h: Homography, cfg: DetectorConfig) -> float:
    """
    Magnitude threshold ``a1 + a2 * sqrt(H(1,3)**2 + H(2,3)**2)``.

    The translation terms grow with camera speed, so fast pans get a more
    tolerant threshold.
    """
    return cfg.a1 + cfg.a2 * h.translation_norm
