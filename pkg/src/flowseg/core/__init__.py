"""Core types, field arithmetic and file codecs for flowseg."""

from .fields import check_same_shape, flow_magnitude, pixel_grid
from .io import (
    load_flow,
    load_mask,
    read_flow,
    read_mask,
    save_flow,
    save_mask,
    write_flow,
    write_mask,
)
from .types import FlowField, ForegroundMask, Homography, PixelCoord

__all__ = [
    "FlowField",
    "ForegroundMask",
    "Homography",
    "PixelCoord",
    "check_same_shape",
    "flow_magnitude",
    "load_flow",
    "load_mask",
    "pixel_grid",
    "read_flow",
    "read_mask",
    "save_flow",
    "save_mask",
    "write_flow",
    "write_mask",
]
