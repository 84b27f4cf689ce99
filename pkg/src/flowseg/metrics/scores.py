"""
Frame-averaged F-Measure and Success Rate.

Scores are computed per frame first and averaged over the video, so
frames with small foregrounds weigh as much as frames with large ones.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core.fields import check_same_shape
from ..core.types import ForegroundMask
from ..utils.errors import ConfigError, EmptySequence


@dataclass(frozen=True)
class FrameScore:
    """Pixel confusion counts of one frame and the ratios derived from them."""

    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f_measure: float

    @property
    def empty_gt(self) -> bool:
        return self.tp + self.fn == 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class SRCurve:
    """Success Rate sampled at ascending F-Measure thresholds."""

    thresholds: Tuple[float, ...]
    rates: Tuple[float, ...]

    def rate_at(self, threshold: float) -> float:
        """Rate at the sampled threshold closest to ``threshold``."""
        index = int(np.argmin(np.abs(np.asarray(self.thresholds) - threshold)))
        return self.rates[index]


def score_counts(tp: int, fp: int, fn: int, tn: int) -> FrameScore:
    """
    Build a score from confusion counts.

    An empty ground truth scores 1 when the prediction is empty too and 0
    otherwise; an empty prediction against a non-empty ground truth scores 0.
    """
    if tp + fn == 0:
        perfect = 1.0 if fp == 0 else 0.0
        precision = perfect
        recall = perfect
        f_measure = perfect
    elif tp + fp == 0:
        precision, recall, f_measure = 0.0, 0.0, 0.0
    else:
        precision = tp / (tp + fp)
        recall = tp / (tp + fn)
        f_measure = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return FrameScore(tp, fp, fn, tn, precision, recall, f_measure)


def frame_score(pred: ForegroundMask, gt: ForegroundMask) -> FrameScore:
    """
    Pixel-wise precision, recall and F-Measure of one frame.

    Raises
    ------
    DimensionMismatch
        If the masks differ in size
    """
    check_same_shape(pred, gt)
    p, g = pred.labels, gt.labels
    tp = int(np.count_nonzero(p & g))
    fp = int(np.count_nonzero(p & ~g))
    fn = int(np.count_nonzero(~p & g))
    tn = int(np.count_nonzero(~p & ~g))
    return score_counts(tp, fp, fn, tn)


def video_f_measure(scores: Sequence[FrameScore]) -> float:
    """
    Mean of the per-frame F-Measures.

    Raises
    ------
    EmptySequence
        If no scores are given
    """
    if not scores:
        raise EmptySequence("Cannot average the F-Measure of zero frames")
    return float(np.mean([score.f_measure for score in scores]))


def pooled_score(scores: Sequence[FrameScore]) -> FrameScore:
    """Score of all frames' pixels pooled into one confusion table."""
    if not scores:
        raise EmptySequence("Cannot pool zero frames")
    return score_counts(
        sum(s.tp for s in scores),
        sum(s.fp for s in scores),
        sum(s.fn for s in scores),
        sum(s.tn for s in scores),
    )


def default_thresholds(step: float = 0.01) -> List[float]:
    """
    Thresholds ``0, step, 2 step, ..., 1``.

    Raises
    ------
    ConfigError
        If step is not in (0, 1]
    """
    if not 0 < step <= 1:
        raise ConfigError(f"Threshold step must lie in (0, 1], got {step}")
    count = int(round(1.0 / step))
    values = [round(i * step, 10) for i in range(count + 1) if i * step <= 1.0 + 1e-9]
    if values[-1] < 1.0:
        values.append(1.0)
    return values


def success_rate_curve(fm_list: Sequence[float], thresholds: Sequence[float]) -> SRCurve:
    """
    Fraction of frames whose F-Measure strictly exceeds each threshold.

    Raises
    ------
    EmptySequence
        If fm_list is empty
    ConfigError
        If thresholds are not ascending within [0, 1]
    """
    if len(fm_list) == 0:
        raise EmptySequence("Cannot compute a success rate over zero frames")
    levels = np.asarray(thresholds, dtype=np.float64)
    if not np.all((levels >= 0) & (levels <= 1)) or np.any(np.diff(levels) < 0):
        raise ConfigError("Thresholds must be ascending within [0, 1]")

    fm = np.asarray(fm_list, dtype=np.float64)
    rates = (fm[None, :] > levels[:, None]).mean(axis=1)
    return SRCurve(tuple(float(t) for t in levels), tuple(float(r) for r in rates))
