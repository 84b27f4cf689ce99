"""Tests for the detection benchmark."""

from __future__ import annotations

import numpy as np
import pytest

from flowseg.cli import entry_point
from flowseg.commands import profile_stages, run_bench
from flowseg.commands.bench import STAGES, linear_fit_r_squared
from flowseg.detector import DetectorConfig
from flowseg.synth import CameraMotion, SceneObject, SceneScript, format_scene_script, generate_sequence
from flowseg.utils.errors import ConfigError
from flowseg.utils.tables import read_csv

from conftest import translation_script


def _small_flows(num_frames: int = 8):
    script = SceneScript(
        width=64,
        height=48,
        num_frames=num_frames,
        camera=CameraMotion(dx=1.0),
        objects=(SceneObject("rectangle", 20, 10, 12, 10, 0.5, 0.0),),
        noise_sigma=0.1,
    )
    return [frame.flow for frame in generate_sequence(script)]


def test_linear_fit():
    assert linear_fit_r_squared([1, 2, 3, 4], [3, 5, 7, 9]) == pytest.approx(1.0)
    assert linear_fit_r_squared([1, 2, 3, 4], [1, 3, 1, 3]) < 0.5


def test_repetitions_do_not_change_masks():
    flows = _small_flows()
    once = run_bench(flows, DetectorConfig(), repetitions=1, iterations=[10, 20])
    many = run_bench(flows, DetectorConfig(), repetitions=10, iterations=[10, 20])
    assert len(once.frame_times_ms) == 3
    assert len(many.frame_times_ms) == 30
    assert [d.mask for d in once.detections] == [d.mask for d in many.detections]


def test_report_fields():
    report = run_bench(_small_flows(), DetectorConfig(), iterations=[10, 20, 30])
    assert set(report.stage_ms) == set(STAGES)
    assert report.median_ms <= report.p95_ms
    assert [row.iterations for row in report.sweep] == [10, 20, 30]
    assert [row.ideal_success for row in report.sweep] == sorted(row.ideal_success for row in report.sweep)


def test_profile_stages():
    timings = profile_stages(_small_flows()[0], DetectorConfig())
    assert list(timings) == list(STAGES)
    assert all(ms >= 0.0 for ms in timings.values())


def test_rejects_bad_input():
    with pytest.raises(ConfigError):
        run_bench(_small_flows(), DetectorConfig(), repetitions=0)
    with pytest.raises(ConfigError):
        run_bench([], DetectorConfig())


def test_bench_command(tmp_path):
    script_path = tmp_path / "s.cfg"
    script_path.write_text(format_scene_script(SceneScript(width=64, height=48, num_frames=7, noise_sigma=0.0)))
    assert entry_point(["synth", "--script", str(script_path), "--out", str(tmp_path / "seq")]) == 0
    report = tmp_path / "iterations.csv"
    assert entry_point(["bench", "--flows", str(tmp_path / "seq"), "--report", str(report)]) == 0
    rows = read_csv(report, ["iterations", "median_ms", "ideal_success"])
    assert [int(row[0]) for row in rows] == list(range(10, 101, 10))


@pytest.mark.slow
def test_real_time_budget_and_linearity():
    flows = [frame.flow for frame in generate_sequence(translation_script(noise_sigma=0.2, num_frames=25))]
    report = run_bench(flows, DetectorConfig(), repetitions=3)
    assert report.median_ms <= 32.0
    assert report.r_squared >= 0.95
    assert np.all(np.isfinite(report.frame_times_ms))
