"""Evaluation metrics for foreground masks."""

from .scores import (
    FrameScore,
    SRCurve,
    default_thresholds,
    frame_score,
    pooled_score,
    score_counts,
    success_rate_curve,
    video_f_measure,
)

__all__ = [
    "FrameScore",
    "SRCurve",
    "default_thresholds",
    "frame_score",
    "pooled_score",
    "score_counts",
    "success_rate_curve",
    "video_f_measure",
]
