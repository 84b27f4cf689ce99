"""Detection over a directory of flow files."""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple, Union

from ..config import RunConfig, format_run_config, load_run_config
from ..core.io import load_flow, save_mask
from ..detector import TELEMETRY_HEADER, FrameDetection, detect_or_fallback, telemetry_row
from ..utils.errors import DataError
from ..utils.fileops import ensure_dir, list_files, safe_write
from ..utils.logs import logger
from ..utils.tables import write_csv

EFFECTIVE_CONFIG = "effective.cfg"
TELEMETRY_FILE = "telemetry.csv"


def find_flow_files(flow_dir: Union[str, Path]) -> List[Path]:
    """
    Sorted ``*.flo`` files of a directory.

    Raises
    ------
    DataError
        If there are none
    """
    files = list_files(flow_dir, "*.flo")
    if not files:
        raise DataError(f"no flow files in {flow_dir}")
    return files


def detect_files(files: List[Path], cfg: RunConfig) -> List[Tuple[str, FrameDetection]]:
    """
    Run detection on flow files, in input order.

    Frames are independent; with ``cfg.workers > 1`` they run on a thread
    pool and results are still returned in input order.
    """

    def process(path: Path) -> Tuple[str, FrameDetection]:
        flow = load_flow(path, interval_k=cfg.detector.interval_k)
        return path.stem, detect_or_fallback(flow, cfg.detector, frame=path.stem)

    if cfg.workers <= 1:
        return [process(path) for path in files]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(process, files))


def cmd_detect(
    flow_dir: Union[str, Path],
    out_dir: Union[str, Path],
    config_path: Optional[Union[str, Path]] = None,
) -> int:
    """
    Detect moving objects in every flow file of a directory.

    Parameters
    ----------
    flow_dir : Union[str, Path]
        Directory of ``*.flo`` files, processed in name order
    out_dir : Union[str, Path]
        Receives one ``<stem>.pgm`` mask per flow file, ``telemetry.csv``
        and ``effective.cfg``
    config_path : Optional[Union[str, Path]]
        Run config; defaults apply when omitted

    Returns
    -------
    int
        Exit code, 0 on success; failed frames are flagged, not fatal

    Raises
    ------
    DataError
        If the directory holds no flow files or a file cannot be read
    ConfigError
        If the config is invalid
    """
    cfg = load_run_config(config_path)
    files = find_flow_files(flow_dir)
    out = ensure_dir(out_dir)

    logger.info(f"Detecting moving objects in {len(files)} flow files...")
    results = detect_files(files, cfg)

    rows = []
    for name, detection in results:
        save_mask(out / f"{name}.pgm", detection.mask)
        rows.append(telemetry_row(name, detection))
    write_csv(out / TELEMETRY_FILE, TELEMETRY_HEADER, rows)
    safe_write(out / EFFECTIVE_CONFIG, format_run_config(cfg))

    failed = sum(detection.failed for _, detection in results)
    cosine = sum(detection.mode.mode == "cosine" for _, detection in results)
    logger.info(f"Wrote {len(results)} masks to {out} ({cosine} in cosine mode, {failed} failed)")
    return 0
