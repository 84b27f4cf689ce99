"""
Timing of the detection stage.

Flow files are decoded before the clock starts; only ``detect_frame``
work is measured.
"""

import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import BENCH_ITERATIONS, load_run_config
from ..core.io import load_flow
from ..core.types import FlowField
from ..detector import (
    DetectorConfig,
    FrameDetection,
    JudgeMode,
    adaptive_threshold,
    cosine_mask,
    detect_or_fallback,
    ideal_background_flow,
    magnitude_gradient,
    magnitude_mask,
    vanishing_point,
    zoom_indicator,
)
from ..homography import ideal_success_rate, ransac_estimate
from ..utils.errors import ConfigError, NoValidHypothesis
from ..utils.logs import logger
from ..utils.tables import format_value, write_csv
from .detect import find_flow_files

STAGES = ("homography", "background", "zoom_judge", "foreground")


@dataclass(frozen=True)
class IterationTiming:
    iterations: int
    median_ms: float
    ideal_success: float


@dataclass(frozen=True)
class BenchReport:
    """Per-frame timings, stage breakdown and the iteration sweep."""

    frame_times_ms: Tuple[float, ...]
    median_ms: float
    p95_ms: float
    stage_ms: Dict[str, float]
    sweep: Tuple[IterationTiming, ...]
    r_squared: float
    detections: Tuple[FrameDetection, ...]


def _time_frames(flows: Sequence[FlowField], cfg: DetectorConfig, repetitions: int) -> Tuple[List[float], List[FrameDetection]]:
    times = []
    detections: List[FrameDetection] = []
    for _ in range(repetitions):
        detections = []
        for flow in flows:
            start = time.perf_counter()
            detections.append(detect_or_fallback(flow, cfg))
            times.append((time.perf_counter() - start) * 1000.0)
    return times, detections


def profile_stages(flow: FlowField, cfg: DetectorConfig) -> Dict[str, float]:
    """
    Milliseconds spent in each stage of one detection.

    Returns an empty dict for frames whose homography cannot be estimated.
    """
    timings = {}
    start = time.perf_counter()
    try:
        estimate = ransac_estimate(flow, cfg.ransac)
    except NoValidHypothesis:
        return {}
    timings["homography"] = time.perf_counter() - start

    start = time.perf_counter()
    ideal = ideal_background_flow(estimate.homography, flow.width, flow.height, interval_k=flow.interval_k)
    timings["background"] = time.perf_counter() - start

    start = time.perf_counter()
    samples = [(coord, flow.at(coord)) for coord in estimate.sample_points]
    decision = zoom_indicator(vanishing_point(samples), magnitude_gradient(ideal), flow.width, flow.height, cfg.t_g)
    timings["zoom_judge"] = time.perf_counter() - start

    start = time.perf_counter()
    t_a = adaptive_threshold(estimate.homography, cfg)
    if decision.mode is JudgeMode.COSINE:
        cosine_mask(flow, ideal, cfg.t_c, cfg.eps_mag, t_a)
    else:
        magnitude_mask(flow, ideal, t_a)
    timings["foreground"] = time.perf_counter() - start

    return {stage: seconds * 1000.0 for stage, seconds in timings.items()}


def linear_fit_r_squared(x: Sequence[float], y: Sequence[float]) -> float:
    """Coefficient of determination of the least-squares line through ``(x, y)``."""
    x_arr, y_arr = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    slope, intercept = np.polyfit(x_arr, y_arr, 1)
    residual = np.sum((y_arr - (slope * x_arr + intercept)) ** 2)
    total = np.sum((y_arr - y_arr.mean()) ** 2)
    return float(1.0 - residual / total) if total > 0 else 1.0


def run_bench(
    flows: Sequence[FlowField],
    cfg: DetectorConfig,
    repetitions: int = 1,
    iterations: Sequence[int] = BENCH_ITERATIONS,
) -> BenchReport:
    """
    Time detection over preloaded flow fields.

    Parameters
    ----------
    flows : Sequence[FlowField]
        Frames to detect on
    cfg : DetectorConfig
        Detector settings of the main measurement
    repetitions : int
        Passes over all frames
    iterations : Sequence[int]
        RANSAC iteration counts of the sweep

    Raises
    ------
    ConfigError
        If repetitions is below 1 or no flows are given
    """
    if repetitions < 1:
        raise ConfigError(f"repetitions must be >= 1, got {repetitions}")
    if not flows:
        raise ConfigError("No flow fields to benchmark")

    times, detections = _time_frames(flows, cfg, repetitions)

    stage_runs = [profile_stages(flow, cfg) for flow in flows for _ in range(repetitions)]
    stage_runs = [run for run in stage_runs if run]
    stage_ms = {stage: float(np.median([run[stage] for run in stage_runs])) if stage_runs else 0.0 for stage in STAGES}

    sweep = []
    for count in iterations:
        sweep_cfg = replace(cfg, ransac=replace(cfg.ransac, iterations=count))
        sweep_times, _ = _time_frames(flows, sweep_cfg, repetitions)
        sweep.append(IterationTiming(count, float(np.median(sweep_times)), ideal_success_rate(cfg.ransac.sample_n, count)))

    r_squared = linear_fit_r_squared([s.iterations for s in sweep], [s.median_ms for s in sweep]) if len(sweep) > 1 else 1.0

    return BenchReport(
        frame_times_ms=tuple(times),
        median_ms=float(np.median(times)),
        p95_ms=float(np.percentile(times, 95)),
        stage_ms=stage_ms,
        sweep=tuple(sweep),
        r_squared=r_squared,
        detections=tuple(detections),
    )


def cmd_bench(
    flow_dir: Union[str, Path],
    config_path: Optional[Union[str, Path]] = None,
    repetitions: int = 1,
    report_path: Optional[Union[str, Path]] = None,
) -> int:
    """
    Benchmark detection on a directory of flow files.

    Logs the median and 95th percentile per-frame time, the per-stage
    breakdown and the time against RANSAC iterations table; optionally
    writes the table to ``report_path`` as CSV.

    Returns
    -------
    int
        Exit code, 0 on success
    """
    cfg = load_run_config(config_path)
    flows = [load_flow(path, interval_k=cfg.detector.interval_k) for path in find_flow_files(flow_dir)]
    first = flows[0]
    logger.info(f"Benchmarking {len(flows)} frames of {first.width}x{first.height}, {repetitions} repetitions...")

    report = run_bench(flows, cfg.detector, repetitions)

    logger.info(f"Per-frame detection: median {report.median_ms:.2f} ms, p95 {report.p95_ms:.2f} ms")
    for stage in STAGES:
        logger.info(f"  {stage:<12} {report.stage_ms[stage]:8.3f} ms")
    logger.info("iterations  median_ms  ideal_success")
    for row in report.sweep:
        logger.info(f"{row.iterations:>10}  {row.median_ms:9.3f}  {row.ideal_success:13.4f}")
    logger.info(f"Linear fit of time against iterations: R^2 = {report.r_squared:.4f}")

    if report_path is not None:
        write_csv(
            report_path,
            ["iterations", "median_ms", "ideal_success"],
            [[str(r.iterations), format_value(r.median_ms), format_value(r.ideal_success)] for r in report.sweep],
        )
    return 0
