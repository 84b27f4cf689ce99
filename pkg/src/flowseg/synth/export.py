"""Writing synthetic sequences to disk."""

from pathlib import Path
from typing import Sequence, Union

from ..core.io import save_flow, save_mask
from ..homography import homography_to_row
from ..utils.fileops import ensure_dir, safe_write
from ..utils.logs import logger
from ..utils.tables import format_value, write_csv
from .scene import GroundTruthFrame, SceneScript
from .script import format_scene_script

HOMOGRAPHY_FILE = "homographies.csv"
HOMOGRAPHY_HEADER = ["frame"] + [f"h{row}{col}" for row in range(1, 4) for col in range(1, 4)]


def frame_name(index: int) -> str:
    return f"{index:04d}"


def write_sequence(script: SceneScript, frames: Sequence[GroundTruthFrame], out_dir: Union[str, Path]) -> Path:
    """
    Write a generated sequence.

    Produces ``NNNN.flo`` and ``NNNN_gt.pgm`` per frame, ``homographies.csv``
    with the ground-truth ``H_{t->t-k}`` rows and ``script.cfg`` echoing the
    script.

    Returns
    -------
    Path
        The output directory
    """
    out = ensure_dir(out_dir)
    for frame in frames:
        name = frame_name(frame.index)
        save_flow(out / f"{name}.flo", frame.flow)
        save_mask(out / f"{name}_gt.pgm", frame.gt_mask)

    rows = [
        [frame_name(frame.index), *(format_value(v) for v in homography_to_row(frame.gt_homography))]
        for frame in frames
    ]
    write_csv(out / HOMOGRAPHY_FILE, HOMOGRAPHY_HEADER, rows)
    safe_write(out / "script.cfg", format_scene_script(script))
    logger.info(f"Wrote {len(frames)} synthetic frames to {out}")
    return out
