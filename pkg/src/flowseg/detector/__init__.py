"""Background modeling and foreground extraction."""

from .background import BackgroundFlow, adaptive_threshold, ideal_background_flow, valid_pixels
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
from .pipeline import (
    TELEMETRY_HEADER,
    FrameDetection,
    detect_frame,
    detect_or_fallback,
    telemetry_row,
)

__all__ = [
    "TELEMETRY_HEADER",
    "BackgroundFlow",
    "DetectorConfig",
    "FrameDetection",
    "JudgeMode",
    "ModeDecision",
    "adaptive_threshold",
    "cosine_mask",
    "detect_frame",
    "detect_or_fallback",
    "ideal_background_flow",
    "magnitude_gradient",
    "magnitude_mask",
    "telemetry_row",
    "valid_pixels",
    "vanishing_point",
    "zoom_indicator",
]
