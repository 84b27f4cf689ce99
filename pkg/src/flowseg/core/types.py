"""
Immutable value types shared by every stage of the pipeline.

Coordinates follow the image convention used by the file formats: ``x`` is
the column, ``y`` the row, origin at the top-left pixel. Dense grids are
numpy arrays indexed ``[y, x]``.
"""

from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from ..utils.errors import DataError, DegenerateHomography, InvalidField, NonFinite

NORMALIZE_EPS = 1e-12


class PixelCoord(NamedTuple):
    """Integer pixel location, ``x`` = column and ``y`` = row."""

    x: int
    y: int


def frozen_array(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FlowField:
    """
    Dense displacement field between frame t and frame t-k.

    Parameters
    ----------
    vectors : np.ndarray
        ``(height, width, 2)`` array of ``(u, v)`` displacements in pixels.
        A pixel ``p`` in frame t corresponds to ``p + vectors[y, x]`` in
        frame t-k.
    interval_k : int
        The frame interval k; not stored in flow files.

    Raises
    ------
    InvalidField
        If the array shape is not ``(h, w, 2)`` with ``h, w >= 1``
    NonFinite
        If any component is NaN or infinite
    """

    vectors: np.ndarray
    interval_k: int = 1

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=np.float64, copy=True)
        if vectors.ndim != 3 or vectors.shape[2] != 2 or 0 in vectors.shape[:2]:
            raise InvalidField(f"Flow vectors must have shape (h, w, 2), got {vectors.shape}")
        if not np.all(np.isfinite(vectors)):
            raise NonFinite("Flow field contains NaN or Inf values")
        if self.interval_k < 1:
            raise InvalidField(f"interval_k must be >= 1, got {self.interval_k}")
        object.__setattr__(self, "vectors", frozen_array(vectors))

    @property
    def width(self) -> int:
        return self.vectors.shape[1]

    @property
    def height(self) -> int:
        return self.vectors.shape[0]

    @property
    def u(self) -> np.ndarray:
        return self.vectors[..., 0]

    @property
    def v(self) -> np.ndarray:
        return self.vectors[..., 1]

    def at(self, coord: PixelCoord) -> Tuple[float, float]:
        """Flow vector at a pixel."""
        u, v = self.vectors[coord.y, coord.x]
        return float(u), float(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlowField):
            return NotImplemented
        return self.interval_k == other.interval_k and np.array_equal(self.vectors, other.vectors)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Homography:
    """
    3x3 projective transform normalized so that ``h[2, 2] == 1``.

    Element access through ``element(row, col)`` uses 1-based indices, so
    ``element(1, 3)`` and ``element(2, 3)`` are the translation terms.

    Raises
    ------
    DegenerateHomography
        If the bottom-right element is below 1e-12 in magnitude before
        normalization
    NonFinite
        If any entry is NaN or infinite
    """

    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=np.float64, copy=True)
        if h.shape != (3, 3):
            raise DataError(f"Homography must be 3x3, got shape {h.shape}")
        if not np.all(np.isfinite(h)):
            raise NonFinite("Homography contains NaN or Inf values")
        if abs(h[2, 2]) < NORMALIZE_EPS:
            raise DegenerateHomography(f"Cannot normalize homography, h33 = {h[2, 2]:.3g}")
        h = h / h[2, 2]
        h[2, 2] = 1.0
        if not np.all(np.isfinite(h)):
            raise NonFinite("Homography overflowed during normalization")
        object.__setattr__(self, "h", frozen_array(h))

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    @classmethod
    def translation(cls, dx: float, dy: float) -> "Homography":
        return cls(np.array([[1.0, 0.0, dx], [0.0, 1.0, dy], [0.0, 0.0, 1.0]]))

    def element(self, row: int, col: int) -> float:
        """Matrix entry with 1-based ``(row, col)`` indices."""
        return float(self.h[row - 1, col - 1])

    @property
    def translation_norm(self) -> float:
        """``sqrt(H(1,3)**2 + H(2,3)**2)``."""
        return float(np.hypot(self.h[0, 2], self.h[1, 2]))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """
        Project ``(N, 2)`` pixel points through the transform.

        Points whose homogeneous ``w`` is below 1e-12 in magnitude map to
        ``inf``.
        """
        points = np.asarray(points, dtype=np.float64)
        x, y = points[..., 0], points[..., 1]
        h = self.h
        w = h[2, 0] * x + h[2, 1] * y + h[2, 2]
        px = h[0, 0] * x + h[0, 1] * y + h[0, 2]
        py = h[1, 0] * x + h[1, 1] * y + h[1, 2]
        valid = np.abs(w) >= NORMALIZE_EPS
        safe_w = np.where(valid, w, 1.0)
        out = np.stack([px / safe_w, py / safe_w], axis=-1)
        out[~valid] = np.inf
        return out

    def __matmul__(self, other: "Homography") -> "Homography":
        return Homography(self.h @ other.h)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homography):
            return NotImplemented
        return np.array_equal(self.h, other.h)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class ForegroundMask:
    """
    Per-pixel foreground labels; ``labels[y, x]`` is True for foreground.
    """

    labels: np.ndarray

    def __post_init__(self):
        labels = np.array(self.labels, dtype=bool, copy=True)
        if labels.ndim != 2 or 0 in labels.shape:
            raise InvalidField(f"Mask labels must be a non-empty 2D grid, got {labels.shape}")
        object.__setattr__(self, "labels", frozen_array(labels))

    @classmethod
    def empty(cls, width: int, height: int) -> "ForegroundMask":
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def foreground_count(self) -> int:
        return int(np.count_nonzero(self.labels))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ForegroundMask):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]
