"""Run configuration and defaults for flowseg."""

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

from .detector import DetectorConfig
from .homography import RansacConfig
from .utils.errors import ConfigError
from .utils.fileops import read_text
from .utils.keyvalue import convert, parse_key_values
from .utils.tables import format_value

# Success-rate curve sampling
DEFAULT_THRESHOLD_STEP = 0.01

# RANSAC iteration sweep of the benchmark
BENCH_ITERATIONS = list(range(10, 101, 10))

_DETECTOR_KEYS: Dict[str, Callable[[str], Any]] = {
    "interval_k": int,
    "a1_per_frame": float,
    "a2": float,
    "t_g": float,
    "t_c": float,
    "eps_mag": float,
}
_RANSAC_KEYS: Dict[str, Callable[[str], Any]] = {
    "sample_n": int,
    "iterations": int,
    "grid_rows": int,
    "grid_cols": int,
    "inlier_tol": float,
    "eval_stride": int,
    "rng_seed": int,
}
_RUN_KEYS: Dict[str, Callable[[str], Any]] = {
    "threshold_step": float,
    "workers": int,
}


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a command needs besides its paths.

    Parameters
    ----------
    detector : DetectorConfig
        Detector and RANSAC settings
    threshold_step : float
        Spacing of the success-rate curve thresholds
    workers : int
        Frames processed concurrently by ``detect``
    """

    detector: DetectorConfig = field(default_factory=DetectorConfig)
    threshold_step: float = DEFAULT_THRESHOLD_STEP
    workers: int = 1

    def __post_init__(self):
        if not 0 < self.threshold_step <= 1:
            raise ConfigError(f"threshold_step must lie in (0, 1], got {self.threshold_step}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")


def parse_run_config(text: str, source: str = "<config>") -> RunConfig:
    """
    Parse ``key = value`` text into a RunConfig.

    Keys left out keep their defaults.

    Raises
    ------
    ConfigError
        On unknown or repeated keys, malformed values or values that break
        a config invariant
    """
    groups: Dict[str, Dict[str, Any]] = {"detector": {}, "ransac": {}, "run": {}}
    tables = (("detector", _DETECTOR_KEYS), ("ransac", _RANSAC_KEYS), ("run", _RUN_KEYS))

    for key, value, line in parse_key_values(text, source):
        for group, table in tables:
            if key in table:
                if key in groups[group]:
                    raise ConfigError(f"{source}:{line}: duplicate key {key}")
                groups[group][key] = convert(value, table[key], key, source, line)
                break
        else:
            raise ConfigError(f"{source}:{line}: unknown key {key}")

    defaults = RunConfig()
    ransac = RansacConfig(**{**_as_dict(defaults.detector.ransac), **groups["ransac"]})
    detector_values = {k: v for k, v in _as_dict(defaults.detector).items() if k != "ransac"}
    detector = DetectorConfig(**{**detector_values, **groups["detector"]}, ransac=ransac)
    return RunConfig(detector=detector, **groups["run"])


def load_run_config(path: Optional[Union[str, Path]]) -> RunConfig:
    """Read a config file; ``None`` gives the defaults."""
    if path is None:
        return RunConfig()
    return parse_run_config(read_text(path), source=str(path))


def format_run_config(cfg: RunConfig) -> str:
    """Every key of ``cfg`` as text that parses back to an equal config."""
    values = {
        **{k: v for k, v in _as_dict(cfg.detector).items() if k != "ransac"},
        **_as_dict(cfg.detector.ransac),
        "threshold_step": cfg.threshold_step,
        "workers": cfg.workers,
    }
    return "".join(f"{key} = {format_value(value)}\n" for key, value in values.items())


def _as_dict(instance: Any) -> Dict[str, Any]:
    return {f.name: getattr(instance, f.name) for f in fields(instance)}
