"""Per-frame moving object detection."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.types import FlowField, ForegroundMask, Homography
from ..homography import homography_to_row, ransac_estimate
from ..utils.errors import FrameFailed, IntervalMismatch, NoValidHypothesis
from ..utils.logs import logger
from ..utils.tables import format_value
from .background import adaptive_threshold, ideal_background_flow
from .judge import (
    JudgeMode,
    ModeDecision,
    cosine_mask,
    magnitude_gradient,
    magnitude_mask,
    vanishing_point,
    zoom_indicator,
)
from .params import DetectorConfig

TELEMETRY_HEADER = (
    ["frame"]
    + [f"h{row}{col}" for row in range(1, 4) for col in range(1, 4)]
    + ["mode", "vp_x", "vp_y", "magnitude_gradient", "threshold_used", "foreground_pixels", "failed"]
)


@dataclass(frozen=True)
class FrameDetection:
    """Foreground mask of one frame with the intermediates that produced it."""

    mask: ForegroundMask
    homography: Homography
    mode: ModeDecision
    threshold_used: float
    inlier_fraction: float = 1.0
    failed: bool = False


def detect_frame(flow: FlowField, cfg: DetectorConfig) -> FrameDetection:
    """
    Detect moving pixels in one flow field.

    Estimates the camera homography, builds the ideal background flow,
    decides whether zooming is evident and applies the matching judge.

    Parameters
    ----------
    flow : FlowField
        Flow from frame t to frame t-k
    cfg : DetectorConfig
        Detector settings; ``cfg.interval_k`` must equal ``flow.interval_k``

    Returns
    -------
    FrameDetection
        Mask, homography, mode decision and the threshold applied

    Raises
    ------
    IntervalMismatch
        If the flow interval differs from the configured one
    FrameFailed
        If no homography hypothesis could be formed
    """
    if flow.interval_k != cfg.interval_k:
        raise IntervalMismatch(f"Flow interval {flow.interval_k} differs from configured interval {cfg.interval_k}")

    try:
        estimate = ransac_estimate(flow, cfg.ransac)
    except NoValidHypothesis as e:
        raise FrameFailed(f"Background model unavailable: {e}") from e

    h = estimate.homography
    ideal = ideal_background_flow(h, flow.width, flow.height, interval_k=flow.interval_k)

    samples = [(coord, flow.at(coord)) for coord in estimate.sample_points]
    decision = zoom_indicator(
        vanishing_point(samples),
        magnitude_gradient(ideal),
        flow.width,
        flow.height,
        cfg.t_g,
    )

    t_a = adaptive_threshold(h, cfg)
    if decision.mode is JudgeMode.COSINE:
        mask = cosine_mask(flow, ideal, cfg.t_c, cfg.eps_mag, t_a)
        threshold = cfg.t_c
    else:
        mask = magnitude_mask(flow, ideal, t_a)
        threshold = t_a

    logger.debug(
        f"Frame judged in {decision.mode} mode, gradient {decision.magnitude_gradient:.4f}, "
        f"{mask.foreground_count} foreground pixels"
    )
    return FrameDetection(
        mask=mask,
        homography=h,
        mode=decision,
        threshold_used=threshold,
        inlier_fraction=estimate.inlier_fraction,
    )


def detect_or_fallback(flow: FlowField, cfg: DetectorConfig, frame: Optional[str] = None) -> FrameDetection:
    """
    ``detect_frame`` with the stream policy for failed frames.

    A failed frame yields an all-background mask, the identity homography
    and ``failed=True`` instead of an exception.
    """
    try:
        return detect_frame(flow, cfg)
    except FrameFailed as e:
        logger.warning(f"Frame {frame if frame is not None else '?'} failed: {e}")
        identity = Homography.identity()
        return FrameDetection(
            mask=ForegroundMask.empty(flow.width, flow.height),
            homography=identity,
            mode=ModeDecision(JudgeMode.MAGNITUDE, None, 0.0),
            threshold_used=adaptive_threshold(identity, cfg),
            inlier_fraction=0.0,
            failed=True,
        )


def telemetry_row(frame: str, detection: FrameDetection) -> List[str]:
    """One telemetry CSV row, in ``TELEMETRY_HEADER`` order."""
    vp: Tuple[str, str] = ("", "")
    if detection.mode.vanishing_point is not None:
        vp = tuple(format_value(c) for c in detection.mode.vanishing_point)  # type: ignore[assignment]
    return [
        frame,
        *(format_value(value) for value in homography_to_row(detection.homography)),
        str(detection.mode.mode),
        *vp,
        format_value(detection.mode.magnitude_gradient),
        format_value(detection.threshold_used),
        str(detection.mask.foreground_count),
        "1" if detection.failed else "0",
    ]
