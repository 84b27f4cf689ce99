"""Tests for the F-Measure and Success Rate metrics."""

from __future__ import annotations

import numpy as np
import pytest

from flowseg.core import ForegroundMask
from flowseg.metrics import (
    default_thresholds,
    frame_score,
    pooled_score,
    score_counts,
    success_rate_curve,
    video_f_measure,
)
from flowseg.utils.errors import ConfigError, DimensionMismatch, EmptySequence


def _mask(width: int, height: int, pixels) -> ForegroundMask:
    labels = np.zeros((height, width), dtype=bool)
    for x, y in pixels:
        labels[y, x] = True
    return ForegroundMask(labels)


class TestFrameScore:
    def test_identical_masks(self):
        mask = _mask(10, 10, [(1, 1), (2, 2), (3, 3)])
        score = frame_score(mask, mask)
        assert (score.precision, score.recall, score.f_measure) == (1.0, 1.0, 1.0)

    def test_random_masks_agree_with_themselves(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            labels = rng.random((24, 32)) < 0.3
            labels[0, 0] = True
            assert frame_score(ForegroundMask(labels), ForegroundMask(labels)).f_measure == 1.0

    def test_half_recall(self):
        gt = _mask(10, 10, [(x, 0) for x in range(10)])
        pred = _mask(10, 10, [(x, 0) for x in range(5)])
        score = frame_score(pred, gt)
        assert score.precision == 1.0
        assert score.recall == 0.5
        assert score.f_measure == pytest.approx(2 / 3)

    def test_both_empty(self):
        empty = ForegroundMask.empty(8, 8)
        score = frame_score(empty, empty)
        assert score.f_measure == 1.0
        assert score.empty_gt

    def test_prediction_on_empty_ground_truth(self):
        score = frame_score(_mask(8, 8, [(1, 1)]), ForegroundMask.empty(8, 8))
        assert score.f_measure == 0.0

    def test_empty_prediction(self):
        score = frame_score(ForegroundMask.empty(8, 8), _mask(8, 8, [(1, 1)]))
        assert (score.precision, score.recall, score.f_measure) == (0.0, 0.0, 0.0)

    def test_counts(self):
        score = frame_score(_mask(4, 4, [(0, 0), (1, 0)]), _mask(4, 4, [(1, 0), (2, 0)]))
        assert (score.tp, score.fp, score.fn, score.tn) == (1, 1, 1, 13)
        assert score.total == 16

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            frame_score(ForegroundMask.empty(4, 4), ForegroundMask.empty(4, 5))


class TestVideoFMeasure:
    def test_all_perfect(self):
        assert video_f_measure([score_counts(5, 0, 0, 5)] * 4) == 1.0

    def test_mean(self):
        assert video_f_measure([score_counts(5, 0, 0, 5), score_counts(0, 5, 5, 0)]) == 0.5

    def test_frames_weigh_equally(self):
        large_gt = _mask(100, 100, [(x, y) for x in range(100) for y in range(10)])
        small_gt = _mask(100, 100, [(x, 0) for x in range(10)])
        small_pred = _mask(100, 100, [(x, 0) for x in range(8, 18)])
        scores = [frame_score(large_gt, large_gt), frame_score(small_pred, small_gt)]
        assert scores[1].f_measure == pytest.approx(0.2)
        assert video_f_measure(scores) == pytest.approx(0.6)
        assert pooled_score(scores).f_measure > 0.99

    def test_empty(self):
        with pytest.raises(EmptySequence):
            video_f_measure([])
        with pytest.raises(EmptySequence):
            pooled_score([])


class TestSuccessRate:
    def test_all_perfect(self):
        curve = success_rate_curve([1.0, 1.0, 1.0], [0.0, 0.5, 0.99])
        assert curve.rates == (1.0, 1.0, 1.0)

    def test_direct_count(self):
        curve = success_rate_curve([0.9, 0.4, 0.6], [0.5])
        assert curve.rates[0] == pytest.approx(2 / 3)

    def test_strict_at_one(self):
        curve = success_rate_curve([1.0, 1.0], default_thresholds())
        assert curve.rate_at(1.0) == 0.0

    def test_non_increasing(self):
        fm = np.random.default_rng(5).random(50)
        rates = success_rate_curve(fm, default_thresholds()).rates
        assert all(a >= b for a, b in zip(rates, rates[1:]))

    def test_rejects_unordered_thresholds(self):
        with pytest.raises(ConfigError) as exc:
            success_rate_curve([0.5], [0.5, 0.2])
        assert exc.value.exit_code == 1

    def test_empty(self):
        with pytest.raises(EmptySequence):
            success_rate_curve([], [0.5])


class TestDefaultThresholds:
    def test_hundredths(self):
        thresholds = default_thresholds()
        assert len(thresholds) == 101
        assert thresholds[0] == 0.0
        assert thresholds[50] == 0.5
        assert thresholds[-1] == 1.0

    def test_coarse_step(self):
        assert default_thresholds(0.25) == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_rejects_bad_step(self):
        with pytest.raises(ConfigError):
            default_thresholds(0.0)
