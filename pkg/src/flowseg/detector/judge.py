"""
Dual-mode foreground judge.

In the normal mode a pixel is foreground when its flow departs from the
ideal background flow by more than the adaptive threshold. When the camera
zooms evidently the background flow is radial with a strong magnitude
gradient, so a single magnitude threshold no longer fits the whole frame;
the judge then compares flow directions instead.
"""

from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.fields import check_same_shape
from ..core.types import FlowField, ForegroundMask, PixelCoord
from ..utils.errors import TooFewSamples
from .background import valid_pixels

SINGULAR_RATIO = 1e-9

Point = Tuple[float, float]


class JudgeMode(StrEnum):
    MAGNITUDE = "magnitude"
    COSINE = "cosine"


@dataclass(frozen=True)
class ModeDecision:
    """Selected judge plus the evidence behind the choice."""

    mode: JudgeMode
    vanishing_point: Optional[Point]
    magnitude_gradient: float


def magnitude_mask(flow: FlowField, ideal: FlowField, t_a: float) -> ForegroundMask:
    """
    Foreground where ``||f - f_ideal|| > t_a``.

    Pixels without a defined ideal flow are background.

    Raises
    ------
    DimensionMismatch
        If the fields differ in size
    """
    check_same_shape(flow, ideal)
    distance = np.hypot(*np.moveaxis(flow.vectors - ideal.vectors, -1, 0))
    return ForegroundMask((distance > t_a) & valid_pixels(ideal))


def cosine_mask(flow: FlowField, ideal: FlowField, t_c: float, eps_mag: float, t_a: float) -> ForegroundMask:
    """
    Foreground where ``cos(f, f_ideal) < t_c``.

    Where either vector is shorter than ``eps_mag`` the direction is not
    trusted and the magnitude rule with threshold ``t_a`` decides.

    Raises
    ------
    DimensionMismatch
        If the fields differ in size
    """
    check_same_shape(flow, ideal)
    actual_len = np.hypot(flow.u, flow.v)
    ideal_len = np.hypot(ideal.u, ideal.v)
    directed = (actual_len >= eps_mag) & (ideal_len >= eps_mag)

    dot = flow.u * ideal.u + flow.v * ideal.v
    with np.errstate(divide="ignore", invalid="ignore"):
        cosine = np.where(directed, dot / (actual_len * ideal_len), 1.0)

    fallback = np.hypot(flow.u - ideal.u, flow.v - ideal.v) > t_a
    labels = np.where(directed, cosine < t_c, fallback)
    return ForegroundMask(labels & valid_pixels(ideal))


def vanishing_point(samples: Sequence[Tuple[PixelCoord, Point]]) -> Optional[Point]:
    """
    Least-squares intersection of the flow lines through sample pixels.

    Row ``i`` of the system is ``(v_i, -u_i) . p0 = v_i x_i - u_i y_i``.

    Returns
    -------
    Optional[Point]
        ``(x, y)`` of the intersection, or None when the lines are (nearly)
        parallel and the normal matrix is singular

    Raises
    ------
    TooFewSamples
        If fewer than two samples are given
    """
    if len(samples) < 2:
        raise TooFewSamples(f"Need at least 2 samples for a vanishing point, got {len(samples)}")

    xy = np.array([(coord.x, coord.y) for coord, _ in samples], dtype=np.float64)
    uv = np.array([vector for _, vector in samples], dtype=np.float64)
    a = np.column_stack([uv[:, 1], -uv[:, 0]])
    b = uv[:, 1] * xy[:, 0] - uv[:, 0] * xy[:, 1]

    normal = a.T @ a
    if np.linalg.det(normal) <= SINGULAR_RATIO * np.trace(normal) ** 2:
        return None
    x0, y0 = np.linalg.solve(normal, a.T @ b)
    return float(x0), float(y0)


def magnitude_gradient(ideal: FlowField) -> float:
    """
    Mean norm of the spatial gradient of the flow magnitude.

    Central differences inside the frame, one-sided at the borders. For a
    zoom by ``s`` the result is ``|s - 1|``.
    """
    magnitude = np.hypot(ideal.u, ideal.v)
    d_dy, d_dx = np.gradient(magnitude)
    norms = np.hypot(d_dx, d_dy)[valid_pixels(ideal)]
    return float(norms.mean()) if norms.size else 0.0


def zoom_indicator(vp: Optional[Point], grad: float, width: int, height: int, t_g: float) -> ModeDecision:
    """
    Select the cosine judge iff the vanishing point exists, lies in
    ``[0, width] x [0, height]`` and ``grad > t_g``.
    """
    zooming = (
        vp is not None
        and 0.0 <= vp[0] <= width
        and 0.0 <= vp[1] <= height
        and grad > t_g
    )
    mode = JudgeMode.COSINE if zooming else JudgeMode.MAGNITUDE
    return ModeDecision(mode=mode, vanishing_point=vp, magnitude_gradient=float(grad))
