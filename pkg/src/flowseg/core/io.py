"""
Binary codecs for flow fields (Middlebury ``.flo``) and masks (PGM ``P5``).

Layout of a flow file, all little-endian::

    float32  202021.25          ('P', 'I', 'E', 'H')
    int32    width
    int32    height
    float32  u, v               width * height pairs, row-major, top row first
"""

import re
from pathlib import Path
from typing import Union

import numpy as np

from ..utils.errors import (
    BadHeader,
    BadMagic,
    DimensionOverflow,
    FlowFormatError,
    NonFinite,
    TruncatedFile,
)
from ..utils.fileops import read_bytes, safe_write
from .types import FlowField, ForegroundMask

FLO_MAGIC = 202021.25
FLO_HEADER_BYTES = 12
MAX_DIMENSION = 2**15

PGM_MAXVAL = 255
PGM_THRESHOLD = 128

_PGM_HEADER = re.compile(
    rb"\AP5"
    rb"(?:\s|#[^\n]*\n)+(\d+)"
    rb"(?:\s|#[^\n]*\n)+(\d+)"
    rb"(?:\s|#[^\n]*\n)+(\d+)"
    rb"\s"
)


def read_flow(data: bytes, interval_k: int = 1) -> FlowField:
    """
    Decode a Middlebury flow file.

    Parameters
    ----------
    data : bytes
        Complete file contents
    interval_k : int, optional
        Frame interval the field was estimated over; the format has no slot
        for it, by default 1

    Returns
    -------
    FlowField
        Decoded field

    Raises
    ------
    TruncatedFile
        If there are fewer bytes than the header promises
    BadMagic
        If the leading float is not 202021.25
    DimensionOverflow
        If width or height is <= 0 or > 2**15
    NonFinite
        If any payload value is NaN or Inf
    FlowFormatError
        If bytes follow the payload
    """
    if len(data) < FLO_HEADER_BYTES:
        if len(data) >= 4 and np.frombuffer(data, "<f4", count=1)[0] != FLO_MAGIC:
            raise BadMagic("Magic number incorrect, not a .flo file")
        raise TruncatedFile(f"Flow header needs {FLO_HEADER_BYTES} bytes, got {len(data)}")

    magic = np.frombuffer(data, "<f4", count=1)[0]
    if magic != FLO_MAGIC:
        raise BadMagic(f"Magic number incorrect ({magic!r}), not a .flo file")

    width, height = (int(n) for n in np.frombuffer(data, "<i4", count=2, offset=4))
    for name, size in (("width", width), ("height", height)):
        if size <= 0 or size > MAX_DIMENSION:
            raise DimensionOverflow(f"Flow {name} {size} outside (0, {MAX_DIMENSION}]")

    expected = FLO_HEADER_BYTES + width * height * 2 * 4
    if len(data) < expected:
        raise TruncatedFile(f"Flow file of {width}x{height} needs {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise FlowFormatError(f"{len(data) - expected} unexpected bytes after flow payload")

    payload = np.frombuffer(data, "<f4", count=width * height * 2, offset=FLO_HEADER_BYTES)
    if not np.all(np.isfinite(payload)):
        raise NonFinite("Flow payload contains NaN or Inf values")

    return FlowField(payload.reshape(height, width, 2), interval_k=interval_k)


def write_flow(field: FlowField) -> bytes:
    """
    Encode a flow field as a Middlebury flow file.

    Vectors are stored as float32; fields decoded by ``read_flow``
    re-encode to the identical bytes.
    """
    header = np.array([FLO_MAGIC], "<f4").tobytes()
    header += np.array([field.width, field.height], "<i4").tobytes()
    return header + field.vectors.astype("<f4").tobytes()


def read_mask(data: bytes) -> ForegroundMask:
    """
    Decode a binary PGM mask.

    Values >= 128 are foreground, everything else background.

    Raises
    ------
    BadHeader
        If the header is not ``P5`` with maxval 255 and positive dimensions
    TruncatedFile
        If fewer than width * height pixel bytes follow the header
    """
    match = _PGM_HEADER.match(data)
    if match is None:
        raise BadHeader("Mask is not a binary PGM (P5) file")

    width, height, maxval = (int(g) for g in match.groups())
    if maxval != PGM_MAXVAL:
        raise BadHeader(f"Mask maxval must be {PGM_MAXVAL}, got {maxval}")
    if width <= 0 or height <= 0:
        raise BadHeader(f"Mask dimensions must be positive, got {width}x{height}")

    offset = match.end()
    if len(data) - offset < width * height:
        raise TruncatedFile(
            f"Mask of {width}x{height} needs {width * height} pixel bytes, got {len(data) - offset}"
        )

    pixels = np.frombuffer(data, np.uint8, count=width * height, offset=offset)
    return ForegroundMask(pixels.reshape(height, width) >= PGM_THRESHOLD)


def write_mask(mask: ForegroundMask) -> bytes:
    """Encode a mask as binary PGM with values 0 and 255."""
    header = f"P5\n{mask.width} {mask.height}\n{PGM_MAXVAL}\n".encode("ascii")
    pixels = np.where(mask.labels, PGM_MAXVAL, 0).astype(np.uint8)
    return header + pixels.tobytes()


def load_flow(path: Union[str, Path], interval_k: int = 1) -> FlowField:
    return read_flow(read_bytes(path), interval_k=interval_k)


def save_flow(path: Union[str, Path], field: FlowField) -> Path:
    return safe_write(path, write_flow(field))


def load_mask(path: Union[str, Path]) -> ForegroundMask:
    return read_mask(read_bytes(path))


def save_mask(path: Union[str, Path], mask: ForegroundMask) -> Path:
    return safe_write(path, write_mask(mask))
