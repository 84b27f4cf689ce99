"""Homography estimation from dense flow."""

from .ransac import (
    RansacConfig,
    RansacResult,
    ideal_success_rate,
    ransac_estimate,
    round_rng,
    stratified_sample,
    success_rate_table,
)
from .solver import (
    PointPair,
    corner_error,
    homography_from_row,
    homography_to_row,
    pairs_from_field,
    reprojection_residual,
    reprojection_residuals,
    solve_homography,
    solve_points,
)

__all__ = [
    "PointPair",
    "RansacConfig",
    "RansacResult",
    "corner_error",
    "homography_from_row",
    "homography_to_row",
    "ideal_success_rate",
    "pairs_from_field",
    "ransac_estimate",
    "reprojection_residual",
    "reprojection_residuals",
    "round_rng",
    "solve_homography",
    "solve_points",
    "stratified_sample",
    "success_rate_table",
]
