"""Tests for the background model, the dual-mode judge and frame detection."""

from __future__ import annotations

import numpy as np
import pytest

from flowseg.core import FlowField, Homography, PixelCoord
from flowseg.detector import (
    TELEMETRY_HEADER,
    BackgroundFlow,
    DetectorConfig,
    JudgeMode,
    adaptive_threshold,
    cosine_mask,
    detect_frame,
    detect_or_fallback,
    ideal_background_flow,
    magnitude_gradient,
    magnitude_mask,
    telemetry_row,
    vanishing_point,
    zoom_indicator,
)
from flowseg.homography import RansacConfig
from flowseg.metrics import frame_score
from flowseg.synth import generate_frame
from flowseg.utils.errors import (
    ConfigError,
    DimensionMismatch,
    FrameFailed,
    IntervalMismatch,
    InvalidField,
    TooFewSamples,
)

from conftest import flow_from_homography, translation_script, zoom_about, zoom_script


# ── Background model ─────────────────────────────────────────────────────


class TestIdealBackgroundFlow:
    def test_identity(self):
        ideal = ideal_background_flow(Homography.identity(), 16, 12)
        assert np.all(ideal.vectors == 0.0)
        assert np.all(ideal.valid)

    def test_translation(self):
        ideal = ideal_background_flow(Homography.translation(3.0, -2.0), 16, 12)
        np.testing.assert_allclose(ideal.u, 3.0)
        np.testing.assert_allclose(ideal.v, -2.0)

    def test_zoom_about_origin(self):
        ideal = ideal_background_flow(Homography(np.diag([1.05, 1.05, 1.0])), 320, 240)
        np.testing.assert_allclose(ideal.at(PixelCoord(100, 40)), (5.0, 2.0), atol=1e-9)

    def test_points_at_infinity_are_invalid(self):
        h = Homography(np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-0.25, 0.0, 1.0]]))
        ideal = ideal_background_flow(h, 8, 8)
        assert not ideal.valid[0, 4]
        assert ideal.at(PixelCoord(4, 0)) == (0.0, 0.0)
        assert ideal.valid.sum() == 56

    def test_too_small(self):
        with pytest.raises(InvalidField):
            ideal_background_flow(Homography.identity(), 3, 8)


class TestAdaptiveThreshold:
    def test_static_camera(self):
        assert adaptive_threshold(Homography.identity(), DetectorConfig()) == pytest.approx(0.5)

    def test_translation_terms(self):
        assert adaptive_threshold(Homography.translation(3.0, 4.0), DetectorConfig()) == pytest.approx(2.0)

    def test_monotone_in_translation(self):
        rng = np.random.default_rng(4)
        cfg = DetectorConfig()
        for _ in range(50):
            h = np.eye(3) + np.diag(rng.uniform(-0.05, 0.05, 3))
            h[1, 2] = rng.uniform(-5, 5)
            small, large = sorted(np.abs(rng.uniform(-10, 10, 2)))
            h[0, 2] = small
            lower = adaptive_threshold(Homography(h), cfg)
            h[0, 2] = large
            assert adaptive_threshold(Homography(h), cfg) >= lower


# ── Judges ───────────────────────────────────────────────────────────────


class TestMagnitudeMask:
    def test_agreeing_flow(self):
        ideal = ideal_background_flow(Homography.translation(1.0, 1.0), 10, 8)
        assert magnitude_mask(ideal, ideal, 0.0).foreground_count == 0

    def test_single_pixel(self):
        ideal = FlowField(np.zeros((8, 10, 2)))
        vectors = np.zeros((8, 10, 2))
        vectors[3, 4] = (0.6, 0.8)
        mask = magnitude_mask(FlowField(vectors), ideal, 0.99)
        assert mask.foreground_count == 1
        assert mask.labels[3, 4]

    def test_threshold_is_strict(self):
        vectors = np.zeros((4, 4, 2))
        vectors[0, 0] = (1.0, 0.0)
        assert magnitude_mask(FlowField(vectors), FlowField(np.zeros((4, 4, 2))), 1.0).foreground_count == 0

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(3)
        flow = FlowField(rng.normal(0.0, 2.0, (24, 32, 2)))
        ideal = FlowField(rng.normal(0.0, 2.0, (24, 32, 2)))
        previous = magnitude_mask(flow, ideal, 0.0).labels
        for t_a in np.linspace(0.1, 30.0, 30):
            labels = magnitude_mask(flow, ideal, float(t_a)).labels
            assert not np.any(labels & ~previous)
            previous = labels
        assert not previous.any()

    def test_invalid_ideal_pixels_are_background(self):
        ideal = BackgroundFlow(np.zeros((4, 4, 2)), valid=np.eye(4, dtype=bool))
        mask = magnitude_mask(FlowField(np.full((4, 4, 2), 5.0)), ideal, 1.0)
        assert mask.foreground_count == 4

    def test_synthetic_rectangle(self):
        script = translation_script(num_frames=10)
        frame = generate_frame(script, 5)
        ideal = ideal_background_flow(frame.gt_homography, 320, 240, interval_k=5)
        assert magnitude_mask(frame.flow, ideal, 2.0) == frame.gt_mask

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            magnitude_mask(FlowField(np.zeros((4, 4, 2))), FlowField(np.zeros((4, 5, 2))), 1.0)


class TestCosineMask:
    def test_agreeing_flow(self):
        ideal = FlowField(np.full((6, 6, 2), 0.5))
        assert cosine_mask(ideal, ideal, 0.99, 0.1, 1.0).foreground_count == 0

    def test_perpendicular_pixel(self):
        ideal = FlowField(np.tile([1.0, 0.0], (6, 6, 1)))
        vectors = np.array(ideal.vectors)
        vectors[2, 3] = (0.0, 1.0)
        mask = cosine_mask(FlowField(vectors), ideal, 0.99, 0.1, 1.0)
        assert mask.foreground_count == 1
        assert mask.labels[2, 3]

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(4)
        flow = FlowField(rng.normal(0.0, 2.0, (24, 32, 2)))
        ideal = FlowField(rng.normal(0.0, 2.0, (24, 32, 2)))
        previous = cosine_mask(flow, ideal, 1.0, 0.1, 1.0).labels
        for t_c in np.linspace(0.99, -1.0, 30):
            labels = cosine_mask(flow, ideal, float(t_c), 0.1, 1.0).labels
            assert not np.any(labels & ~previous)
            previous = labels

    def test_short_vectors_fall_back_to_magnitude(self):
        ideal = FlowField(np.zeros((4, 4, 2)))
        vectors = np.zeros((4, 4, 2))
        vectors[0, 0] = (0.05, 0.0)
        vectors[1, 1] = (2.0, 0.0)
        mask = cosine_mask(FlowField(vectors), ideal, 0.99, 0.1, 1.0)
        assert not mask.labels[0, 0]
        assert mask.labels[1, 1]
        assert mask.foreground_count == 1

    def test_tangential_object_in_zoom(self):
        script = zoom_script()
        frame = generate_frame(script, 5)
        ideal = ideal_background_flow(frame.gt_homography, 320, 240, interval_k=5)
        mask = cosine_mask(frame.flow, ideal, 0.99, 0.1, adaptive_threshold(frame.gt_homography, DetectorConfig()))
        disagreement = np.count_nonzero(mask.labels != frame.gt_mask.labels)
        assert disagreement <= 0.01 * frame.gt_mask.foreground_count


class TestVanishingPoint:
    def test_zoom_out_lines_meet_at_center(self):
        c = np.array([160.0, 120.0])
        coords = [PixelCoord(20, 30), PixelCoord(300, 10), PixelCoord(40, 220), PixelCoord(250, 200)]
        samples = [(p, tuple(0.05 * (np.array(p, dtype=float) - c))) for p in coords]
        np.testing.assert_allclose(vanishing_point(samples), c, atol=1e-6)

    def test_parallel_lines(self):
        coords = [PixelCoord(20, 30), PixelCoord(300, 10), PixelCoord(40, 220), PixelCoord(250, 200)]
        assert vanishing_point([(p, (3.0, 0.0)) for p in coords]) is None

    def test_zero_flow(self):
        assert vanishing_point([(PixelCoord(1, 2), (0.0, 0.0)), (PixelCoord(5, 5), (0.0, 0.0))]) is None

    def test_too_few_samples(self):
        with pytest.raises(TooFewSamples):
            vanishing_point([(PixelCoord(1, 2), (1.0, 0.0))])


class TestMagnitudeGradient:
    def test_constant_field(self):
        assert magnitude_gradient(FlowField(np.full((10, 10, 2), 3.0))) == 0.0

    def test_evident_zoom(self):
        ideal = ideal_background_flow(zoom_about(1.05, (160.0, 120.0)), 320, 240)
        assert magnitude_gradient(ideal) == pytest.approx(0.05, rel=0.02)

    def test_slight_zoom_stays_below_trigger(self):
        ideal = ideal_background_flow(zoom_about(1.02, (160.0, 120.0)), 320, 240)
        grad = magnitude_gradient(ideal)
        assert grad == pytest.approx(0.02, rel=0.02)
        assert grad < DetectorConfig().t_g


class TestZoomIndicator:
    def test_evident_zoom(self):
        assert zoom_indicator((160.0, 120.0), 0.05, 320, 240, 0.032).mode is JudgeMode.COSINE

    def test_no_vanishing_point(self):
        assert zoom_indicator(None, 0.5, 320, 240, 0.032).mode is JudgeMode.MAGNITUDE

    def test_vanishing_point_outside(self):
        assert zoom_indicator((500.0, 120.0), 0.05, 320, 240, 0.032).mode is JudgeMode.MAGNITUDE

    def test_weak_gradient(self):
        assert zoom_indicator((160.0, 120.0), 0.02, 320, 240, 0.032).mode is JudgeMode.MAGNITUDE

    def test_frame_border_counts_as_inside(self):
        assert zoom_indicator((320.0, 0.0), 0.05, 320, 240, 0.032).mode is JudgeMode.COSINE


# ── Frame detection ──────────────────────────────────────────────────────


class TestDetectFrame:
    def test_static_scene(self):
        detection = detect_frame(FlowField(np.zeros((48, 64, 2)), interval_k=5), DetectorConfig())
        np.testing.assert_allclose(detection.homography.h, np.eye(3), atol=1e-9)
        assert detection.mask.foreground_count == 0
        assert detection.mode.mode is JudgeMode.MAGNITUDE
        assert detection.threshold_used == pytest.approx(0.5)
        assert not detection.failed

    def test_translation_frame(self):
        frame = generate_frame(translation_script(num_frames=10), 7)
        detection = detect_frame(frame.flow, DetectorConfig())
        assert detection.homography.element(1, 3) == pytest.approx(10.0, abs=1e-6)
        assert detection.mode.mode is JudgeMode.MAGNITUDE
        assert frame_score(detection.mask, frame.gt_mask).f_measure >= 0.99

    def test_zoom_frame(self):
        script = zoom_script()
        frame = generate_frame(script, 6)
        detection = detect_frame(frame.flow, DetectorConfig())
        assert detection.mode.mode is JudgeMode.COSINE
        np.testing.assert_allclose(detection.mode.vanishing_point, script.center, atol=2.0)
        assert detection.threshold_used == DetectorConfig().t_c

    @pytest.mark.parametrize("gain", [1.0, 1.2, 1.6, 2.0])
    def test_stronger_zoom_stays_cosine(self, gain):
        field = flow_from_homography(zoom_about(1 + 0.05 * gain, (160.0, 120.0)))
        detection = detect_frame(field, DetectorConfig())
        assert detection.mode.mode is JudgeMode.COSINE
        np.testing.assert_allclose(detection.mode.vanishing_point, (160.0, 120.0), atol=1e-6)

    def test_interval_mismatch(self):
        with pytest.raises(IntervalMismatch):
            detect_frame(FlowField(np.zeros((48, 64, 2)), interval_k=3), DetectorConfig())

    def test_failed_frame(self):
        field = _collapsing_field()
        with pytest.raises(FrameFailed):
            detect_frame(field, DetectorConfig(ransac=RansacConfig(iterations=3)))

    def test_fallback_policy(self):
        field = _collapsing_field()
        detection = detect_or_fallback(field, DetectorConfig(ransac=RansacConfig(iterations=3)), frame="0007")
        assert detection.failed
        assert detection.mask.foreground_count == 0
        assert detection.homography == Homography.identity()
        assert detection.inlier_fraction == 0.0

    def test_telemetry_row(self):
        detection = detect_or_fallback(_collapsing_field(), DetectorConfig(ransac=RansacConfig(iterations=3)))
        row = telemetry_row("0007", detection)
        assert len(row) == len(TELEMETRY_HEADER)
        record = dict(zip(TELEMETRY_HEADER, row))
        assert record["mode"] == "magnitude"
        assert record["vp_x"] == record["vp_y"] == ""
        assert record["failed"] == "1"
        assert record["h11"] == "1.0"


def _collapsing_field() -> FlowField:
    ys, xs = np.mgrid[0:16, 0:16]
    # every pixel flows onto the same target, so no sample can be solved
    return FlowField(np.stack([3.0 - xs, 3.0 - ys], axis=-1), interval_k=5)


class TestDetectorConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"interval_k": 0},
            {"a1_per_frame": -0.1},
            {"a1_per_frame": float("nan")},
            {"a2": float("nan")},
            {"t_g": 0.0},
            {"t_c": 1.5},
            {"t_c": float("nan")},
            {"eps_mag": 0.0},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ConfigError):
            DetectorConfig(**kwargs)

    def test_static_part_scales_with_interval(self):
        assert DetectorConfig(interval_k=2).a1 == pytest.approx(0.2)
