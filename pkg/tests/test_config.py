"""Tests for run configuration files."""

from __future__ import annotations

import pytest

from flowseg.config import RunConfig, format_run_config, load_run_config, parse_run_config
from flowseg.detector import DetectorConfig
from flowseg.homography import RansacConfig
from flowseg.utils.errors import ConfigError, FileOperationError


def test_defaults():
    cfg = load_run_config(None)
    assert cfg == RunConfig()
    assert cfg.detector.interval_k == 5
    assert cfg.detector.ransac.iterations == 50
    assert cfg.threshold_step == 0.01


def test_partial_file_keeps_defaults():
    cfg = parse_run_config("iterations = 40\nt_c = 0.95  # stricter direction test\nworkers = 2\n")
    assert cfg.detector.ransac == RansacConfig(iterations=40)
    assert cfg.detector.t_c == 0.95
    assert cfg.detector.a2 == DetectorConfig().a2
    assert cfg.workers == 2


def test_round_trip():
    cfg = RunConfig(
        detector=DetectorConfig(interval_k=3, a2=0.25, ransac=RansacConfig(grid_rows=3, inlier_tol=0.75, rng_seed=9)),
        threshold_step=0.05,
    )
    assert parse_run_config(format_run_config(cfg)) == cfg


def test_format_lists_every_key():
    keys = [line.split(" = ")[0] for line in format_run_config(RunConfig()).splitlines()]
    assert "interval_k" in keys and "rng_seed" in keys and "threshold_step" in keys
    assert len(keys) == len(set(keys)) == 15


@pytest.mark.parametrize(
    "text",
    [
        "speed = 3\n",
        "a2 = 0.1\na2 = 0.2\n",
        "iterations = many\n",
        "iterations = 0\n",
        "sample_n = 5\n",
        "t_c = 2\n",
        "threshold_step = 0\n",
        "a2 = nan\n",
        "a1_per_frame = inf\n",
        "inlier_tol = inf\n",
        "workers = 0\n",
        "a2: 0.1\n",
    ],
)
def test_rejects(text):
    with pytest.raises(ConfigError):
        parse_run_config(text)


def test_error_names_the_line():
    with pytest.raises(ConfigError, match=r"run\.cfg:2"):
        parse_run_config("a2 = 0.1\nbogus = 1\n", source="run.cfg")


def test_missing_file(tmp_path):
    with pytest.raises(FileOperationError):
        load_run_config(tmp_path / "absent.cfg")
