"""Detector tunables."""

from dataclasses import dataclass, field

from ..homography import RansacConfig
from ..utils.errors import ConfigError


@dataclass(frozen=True)
class DetectorConfig:
    """
    Parameters of the background model and the dual-mode judge.

    Parameters
    ----------
    interval_k : int
        Frame interval of the input flow
    a1_per_frame : float
        Static threshold part per frame of interval, ``a1 = a1_per_frame * k``
    a2 : float
        Gain of the camera-speed dependent threshold part
    t_g : float
        Magnitude-gradient level above which zooming is evident
    t_c : float
        Cosine threshold of the direction judge
    eps_mag : float
        Flow length below which a direction is not trusted
    ransac : RansacConfig
        Homography estimation settings
    """

    interval_k: int = 5
    a1_per_frame: float = 0.1
    a2: float = 0.3
    t_g: float = 0.032
    t_c: float = 0.99
    eps_mag: float = 0.1
    ransac: RansacConfig = field(default_factory=RansacConfig)

    def __post_init__(self):
        if self.interval_k < 1:
            raise ConfigError(f"interval_k must be >= 1, got {self.interval_k}")
        if not self.a1_per_frame >= 0:
            raise ConfigError(f"a1_per_frame must be >= 0, got {self.a1_per_frame}")
        if not self.a2 >= 0:
            raise ConfigError(f"a2 must be >= 0, got {self.a2}")
        if not self.t_g > 0:
            raise ConfigError(f"t_g must be > 0, got {self.t_g}")
        if not -1.0 <= self.t_c <= 1.0:
            raise ConfigError(f"t_c must lie in [-1, 1], got {self.t_c}")
        if not self.eps_mag > 0:
            raise ConfigError(f"eps_mag must be > 0, got {self.eps_mag}")

    @property
    def a1(self) -> float:
        return self.a1_per_frame * self.interval_k
