"""Synthetic sequence generation command."""

from pathlib import Path
from typing import Union

from ..synth import generate_sequence, load_scene_script, write_sequence
from ..utils.logs import logger


def cmd_synth(script_path: Union[str, Path], out_dir: Union[str, Path]) -> int:
    """
    Generate the sequence described by a scene script.

    Returns
    -------
    int
        Exit code, 0 on success

    Raises
    ------
    ConfigError
        If the script is invalid
    """
    script = load_scene_script(script_path)
    logger.info(
        f"Generating {script.num_frames - script.interval_k} frames of "
        f"{script.width}x{script.height} flow (k={script.interval_k})..."
    )
    write_sequence(script, generate_sequence(script), out_dir)
    return 0
