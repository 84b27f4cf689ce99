"""Dense per-pixel arithmetic on flow fields."""

from typing import Tuple, Union

import numpy as np

from ..utils.errors import DimensionMismatch
from .types import FlowField, ForegroundMask


def flow_magnitude(field: FlowField) -> np.ndarray:
    """
    Per-pixel Euclidean length of the flow vectors.

    Returns
    -------
    np.ndarray
        ``(height, width)`` grid of ``sqrt(u**2 + v**2)``
    """
    return np.hypot(field.u, field.v)


def pixel_grid(width: int, height: int) -> Tuple[np.ndarray, np.ndarray]:
    """``(xs, ys)`` coordinate grids of shape ``(height, width)``."""
    ys, xs = np.mgrid[0:height, 0:width]
    return xs.astype(np.float64), ys.astype(np.float64)


def check_same_shape(*grids: Union[FlowField, ForegroundMask]) -> None:
    """
    Raises
    ------
    DimensionMismatch
        If the fields or masks do not all share width and height
    """
    sizes = {(g.width, g.height) for g in grids}
    if len(sizes) > 1:
        shown = ", ".join(f"{w}x{h}" for w, h in sorted(sizes))
        raise DimensionMismatch(f"Grid dimensions differ: {shown}")
