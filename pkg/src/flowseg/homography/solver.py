"""
Linear least-squares homography fitting.

Each correspondence ``(x, y) -> (u, w)`` contributes two rows of the
8-unknown system obtained by fixing ``h33 = 1``::

    x h11 + y h12 + h13 - u x h31 - u y h32 = u
    x h21 + y h22 + h23 - w x h31 - w y h32 = w

Both point sets are centered and scaled to a mean distance of sqrt(2)
before solving; the result is mapped back to pixel coordinates.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core.types import FlowField, Homography, PixelCoord
from ..utils.errors import DataError, DegenerateHomography, DegenerateSample, TooFewPairs

MIN_PAIRS = 4
COLLINEAR_AREA = 1e-6
_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class PointPair:
    """Pixel ``p`` in frame t and its flow target ``q = p + f(p)`` in frame t-k."""

    p: PixelCoord
    q: Tuple[float, float]


def pairs_from_field(field: FlowField, coords: Iterable[PixelCoord]) -> List[PointPair]:
    """Build correspondences ``q = p + flow(p)`` for the given pixels."""
    pairs = []
    for coord in coords:
        u, v = field.at(coord)
        pairs.append(PointPair(coord, (coord.x + u, coord.y + v)))
    return pairs


def _normalizer(points: np.ndarray) -> Tuple[float, np.ndarray]:
    center = points.mean(axis=0)
    mean_dist = np.hypot(*(points - center).T).mean()
    if mean_dist < 1e-12:
        raise DegenerateSample("All points coincide")
    return _SQRT2 / mean_dist, center


def _has_collinear_triple(points: np.ndarray) -> bool:
    for i, j, k in combinations(range(len(points)), 3):
        a, b, c = points[i], points[j], points[k]
        area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if area < COLLINEAR_AREA:
            return True
    return False


def solve_points(src: np.ndarray, dst: np.ndarray, minimal: bool = False) -> Homography:
    """
    Array form of ``solve_homography``.

    Parameters
    ----------
    src, dst : np.ndarray
        ``(N, 2)`` source pixels and their targets
    minimal : bool, optional
        Also reject samples with any collinear source triple; meant for
        minimal samples, where such a triple leaves the system
        underdetermined, by default False

    Raises
    ------
    TooFewPairs
        If N < 4
    DegenerateSample
        If the system is rank deficient or the sample has a collinear triple
    """
    src = np.asarray(src, dtype=np.float64)
    dst = np.asarray(dst, dtype=np.float64)
    n = len(src)
    if n < MIN_PAIRS:
        raise TooFewPairs(f"Need at least {MIN_PAIRS} point pairs, got {n}")
    if minimal and _has_collinear_triple(src):
        raise DegenerateSample("Sample contains three collinear source points")

    s_scale, s_center = _normalizer(src)
    d_scale, d_center = _normalizer(dst)
    x, y = ((src - s_center) * s_scale).T
    u, w = ((dst - d_center) * d_scale).T

    zeros, ones = np.zeros(n), np.ones(n)
    a = np.empty((2 * n, 8))
    a[0::2] = np.column_stack([x, y, ones, zeros, zeros, zeros, -u * x, -u * y])
    a[1::2] = np.column_stack([zeros, zeros, zeros, x, y, ones, -w * x, -w * y])
    b = np.empty(2 * n)
    b[0::2], b[1::2] = u, w

    solution, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < 8:
        raise DegenerateSample(f"Linear system is rank deficient (rank {rank})")

    normalized = np.append(solution, 1.0).reshape(3, 3)
    t_src = np.array([[s_scale, 0, -s_scale * s_center[0]], [0, s_scale, -s_scale * s_center[1]], [0, 0, 1]])
    t_dst_inv = np.array([[1 / d_scale, 0, d_center[0]], [0, 1 / d_scale, d_center[1]], [0, 0, 1]])
    try:
        return Homography(t_dst_inv @ normalized @ t_src)
    except DegenerateHomography as e:
        raise DegenerateSample(str(e))


def solve_homography(pairs: Sequence[PointPair]) -> Homography:
    """
    Least-squares homography from point correspondences.

    Parameters
    ----------
    pairs : Sequence[PointPair]
        At least four correspondences with distinct source pixels

    Returns
    -------
    Homography
        ``H`` with ``H(3,3) = 1`` minimizing the algebraic residual; exact for
        four non-degenerate pairs

    Raises
    ------
    TooFewPairs
        If fewer than four pairs are given
    DegenerateSample
        If three source points are collinear (four-pair case) or the system
        is rank deficient
    """
    if len(pairs) < MIN_PAIRS:
        raise TooFewPairs(f"Need at least {MIN_PAIRS} point pairs, got {len(pairs)}")
    src = np.array([(pair.p.x, pair.p.y) for pair in pairs], dtype=np.float64)
    dst = np.array([pair.q for pair in pairs], dtype=np.float64)
    if len({(pair.p.x, pair.p.y) for pair in pairs}) < len(pairs):
        raise DegenerateSample("Point pairs share a source pixel")
    return solve_points(src, dst, minimal=len(pairs) == MIN_PAIRS)


def reprojection_residuals(h: Homography, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Vectorized ``reprojection_residual``; ``inf`` where the projection is undefined."""
    projected = h.apply(src)
    residuals = np.hypot(*(projected - dst).T)
    return np.where(np.isfinite(residuals), residuals, np.inf)


def reprojection_residual(h: Homography, pair: PointPair) -> float:
    """
    Distance in pixels between ``h`` applied to ``pair.p`` and ``pair.q``.

    Returns ``inf`` when the projected homogeneous ``w`` is below 1e-12.
    """
    src = np.array([[pair.p.x, pair.p.y]], dtype=np.float64)
    dst = np.array([pair.q], dtype=np.float64)
    return float(reprojection_residuals(h, src, dst)[0])


def corner_error(estimate: Homography, reference: Homography, width: int, height: int) -> float:
    """Largest disagreement, in pixels, between two transforms at the frame corners."""
    corners = np.array([[0, 0], [width - 1, 0], [0, height - 1], [width - 1, height - 1]], dtype=np.float64)
    return float(np.max(reprojection_residuals(estimate, corners, reference.apply(corners))))


def homography_to_row(h: Homography) -> List[float]:
    """Row-major list of the nine entries."""
    return [float(value) for value in h.h.ravel()]


def homography_from_row(values: Sequence[float]) -> Homography:
    if len(values) != 9:
        raise DataError(f"Expected 9 homography values, got {len(values)}")
    return Homography(np.asarray(values, dtype=np.float64).reshape(3, 3))
