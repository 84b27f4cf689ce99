"""
Grid-stratified RANSAC over a dense flow field.

Every round draws ``sample_n`` distinct cells of a ``grid_rows x
grid_cols`` partition of the frame and one pixel inside each, fits an exact
homography to that minimal sample and counts inliers on a stride-spaced
evaluation grid. The best hypothesis is refit on all of its inliers.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..core.types import FlowField, Homography, PixelCoord
from ..utils.errors import ConfigError, DegenerateSample, InvalidField, NoValidHypothesis
from ..utils.logs import logger
from .solver import PointPair, pairs_from_field, reprojection_residuals, solve_points

MIN_FIELD_SIZE = 4


@dataclass(frozen=True)
class RansacConfig:
    """
    RANSAC tunables.

    Parameters
    ----------
    sample_n : int
        Points per minimal sample; a homography needs exactly 4
    iterations : int
        Rounds attempted, degenerate rounds included
    grid_rows, grid_cols : int
        Sampling grid; 4 x 4 gives 16 cells
    inlier_tol : float
        Reprojection distance in pixels below which a pixel is an inlier
    eval_stride : int
        Spacing in pixels of the inlier evaluation grid
    rng_seed : int
        Seed of the per-round random streams
    """

    sample_n: int = 4
    iterations: int = 50
    grid_rows: int = 4
    grid_cols: int = 4
    inlier_tol: float = 1.0
    eval_stride: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        if self.sample_n != 4:
            raise ConfigError(f"sample_n must be 4 for a homography, got {self.sample_n}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ConfigError(f"Grid must have at least one row and column, got {self.grid_rows}x{self.grid_cols}")
        if self.grid_rows * self.grid_cols < self.sample_n:
            raise ConfigError(
                f"Grid of {self.grid_rows}x{self.grid_cols} cells cannot hold {self.sample_n} distinct samples"
            )
        if not self.inlier_tol > 0:
            raise ConfigError(f"inlier_tol must be > 0, got {self.inlier_tol}")
        if self.eval_stride < 1:
            raise ConfigError(f"eval_stride must be >= 1, got {self.eval_stride}")
        if self.rng_seed < 0:
            raise ConfigError(f"rng_seed must be >= 0, got {self.rng_seed}")


@dataclass(frozen=True)
class RansacResult:
    """Outcome of ``ransac_estimate``."""

    homography: Homography
    inlier_fraction: float
    iterations_used: int
    sample_points: Tuple[PixelCoord, ...]


def round_rng(seed: int, round_index: int) -> np.random.Generator:
    """Independent stream for one round, derived from ``(seed, round_index)``."""
    return np.random.default_rng([seed, round_index])


def _check_field(field: FlowField, cfg: RansacConfig) -> None:
    if field.width < MIN_FIELD_SIZE or field.height < MIN_FIELD_SIZE:
        raise InvalidField(f"Field of {field.width}x{field.height} is below the {MIN_FIELD_SIZE}x{MIN_FIELD_SIZE} minimum")
    if field.width < cfg.grid_cols or field.height < cfg.grid_rows:
        raise InvalidField(
            f"Field of {field.width}x{field.height} is smaller than the {cfg.grid_cols}x{cfg.grid_rows} sampling grid"
        )


def _sample_coords(width: int, height: int, cfg: RansacConfig, rng: np.random.Generator) -> np.ndarray:
    cells = rng.choice(cfg.grid_rows * cfg.grid_cols, size=cfg.sample_n, replace=False)
    rows, cols = np.divmod(cells, cfg.grid_cols)
    x_edges = np.arange(cfg.grid_cols + 1) * width // cfg.grid_cols
    y_edges = np.arange(cfg.grid_rows + 1) * height // cfg.grid_rows
    xs = rng.integers(x_edges[cols], x_edges[cols + 1])
    ys = rng.integers(y_edges[rows], y_edges[rows + 1])
    return np.column_stack([xs, ys])


def cell_of(coord: PixelCoord, width: int, height: int, cfg: RansacConfig) -> int:
    """Index ``row * grid_cols + col`` of the grid cell holding a pixel."""
    col = int(np.searchsorted(np.arange(1, cfg.grid_cols + 1) * width // cfg.grid_cols, coord.x, side="right"))
    row = int(np.searchsorted(np.arange(1, cfg.grid_rows + 1) * height // cfg.grid_rows, coord.y, side="right"))
    return row * cfg.grid_cols + col


def stratified_sample(field: FlowField, cfg: RansacConfig, rng: np.random.Generator) -> List[PointPair]:
    """
    Draw one minimal sample spread over distinct grid cells.

    Parameters
    ----------
    field : FlowField
        Field to sample correspondences from
    cfg : RansacConfig
        Grid shape and sample size
    rng : np.random.Generator
        Random stream; cells are chosen uniformly without replacement and
        the pixel uniformly within each cell

    Returns
    -------
    List[PointPair]
        ``sample_n`` pairs with ``q = p + flow(p)``
    """
    _check_field(field, cfg)
    coords = _sample_coords(field.width, field.height, cfg, rng)
    return pairs_from_field(field, (PixelCoord(int(x), int(y)) for x, y in coords))


def evaluation_grid(field: FlowField, stride: int) -> Tuple[np.ndarray, np.ndarray]:
    """Source pixels on a stride-spaced grid and their flow targets."""
    ys, xs = np.mgrid[0 : field.height : stride, 0 : field.width : stride]
    src = np.column_stack([xs.ravel(), ys.ravel()]).astype(np.float64)
    dst = src + field.vectors[ys.ravel(), xs.ravel()]
    return src, dst


def ransac_estimate(field: FlowField, cfg: RansacConfig) -> RansacResult:
    """
    Robustly estimate the dominant homography of a flow field.

    Runs exactly ``cfg.iterations`` rounds. Degenerate rounds are skipped
    but still count as attempted. Ties keep the earliest hypothesis.

    Returns
    -------
    RansacResult
        The inlier refit of the best hypothesis (the hypothesis itself if
        the refit degenerates) and the pixels of its minimal sample

    Raises
    ------
    InvalidField
        If the field is smaller than 4x4 or than the sampling grid
    NoValidHypothesis
        If every round was degenerate
    """
    _check_field(field, cfg)
    src, dst = evaluation_grid(field, cfg.eval_stride)

    best_h = None
    best_count = -1
    best_inliers = None
    best_sample = None

    for round_index in range(cfg.iterations):
        coords = _sample_coords(field.width, field.height, cfg, round_rng(cfg.rng_seed, round_index))
        sample_src = coords.astype(np.float64)
        sample_dst = sample_src + field.vectors[coords[:, 1], coords[:, 0]]
        try:
            hypothesis = solve_points(sample_src, sample_dst, minimal=True)
        except DegenerateSample as e:
            logger.debug(f"RANSAC round {round_index} skipped: {e}")
            continue

        inliers = reprojection_residuals(hypothesis, src, dst) < cfg.inlier_tol
        count = int(np.count_nonzero(inliers))
        if count > best_count:
            best_h, best_count, best_inliers, best_sample = hypothesis, count, inliers, coords

    if best_h is None:
        raise NoValidHypothesis(f"All {cfg.iterations} RANSAC rounds were degenerate")

    homography = best_h
    if best_count >= 4:
        try:
            homography = solve_points(src[best_inliers], dst[best_inliers])
        except DegenerateSample as e:
            logger.debug(f"Inlier refit degenerate, keeping minimal-sample fit: {e}")

    fraction = float(np.mean(reprojection_residuals(homography, src, dst) < cfg.inlier_tol))
    logger.debug(f"RANSAC kept {best_count}/{len(src)} inliers, refit inlier fraction {fraction:.4f}")

    return RansacResult(
        homography=homography,
        inlier_fraction=fraction,
        iterations_used=cfg.iterations,
        sample_points=tuple(PixelCoord(int(x), int(y)) for x, y in best_sample),
    )


def ideal_success_rate(n: int, iterations: int) -> float:
    """
    Probability that at least one of ``iterations`` samples of ``n`` points
    is outlier-free when half the pixels are background.

    Returns
    -------
    float
        ``1 - (1 - 0.5**n) ** iterations``

    Raises
    ------
    ConfigError
        If n or iterations is below 1
    """
    if n < 1 or iterations < 1:
        raise ConfigError(f"n and iterations must be >= 1, got n={n}, iterations={iterations}")
    return 1.0 - (1.0 - 0.5**n) ** iterations


def success_rate_table(n: int, iterations: Sequence[int]) -> List[Tuple[int, float]]:
    """``(iterations, ideal_success_rate)`` for each iteration count."""
    return [(it, ideal_success_rate(n, it)) for it in iterations]
