"""Scoring predicted masks against ground truth."""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..config import load_run_config
from ..core.io import load_mask
from ..detector import TELEMETRY_HEADER
from ..homography import corner_error, homography_from_row
from ..metrics import (
    FrameScore,
    default_thresholds,
    frame_score,
    pooled_score,
    success_rate_curve,
    video_f_measure,
)
from ..synth import HOMOGRAPHY_FILE, HOMOGRAPHY_HEADER
from ..utils.errors import DataError, EmptySequence
from ..utils.fileops import list_files
from ..utils.logs import logger
from ..utils.tables import format_value, read_csv, write_csv
from .detect import TELEMETRY_FILE

REPORT_HEADER = ["frame", "tp", "fp", "fn", "tn", "precision", "recall", "f_measure", "empty_gt"]
CURVE_HEADER = ["t_fm", "success_rate"]
GT_SUFFIX = "_gt"


def frame_of(path: Path) -> str:
    """Frame name of a mask file; ``0005.pgm`` and ``0005_gt.pgm`` both give ``0005``."""
    stem = path.stem
    return stem[: -len(GT_SUFFIX)] if stem.endswith(GT_SUFFIX) else stem


def _masks_by_frame(directory: Union[str, Path]) -> Dict[str, Path]:
    masks: Dict[str, Path] = {}
    for path in list_files(directory, "*.pgm"):
        name = frame_of(path)
        if name in masks:
            raise DataError(f"Frame {name} has two masks in {directory}: {masks[name].name} and {path.name}")
        masks[name] = path
    return masks


def score_dirs(pred_dir: Union[str, Path], gt_dir: Union[str, Path]) -> List[Tuple[str, FrameScore]]:
    """
    Pair the ``*.pgm`` files of two directories by frame name and score them.

    Raises
    ------
    EmptySequence
        If there are no masks
    DataError
        If a frame has a mask on one side only
    DimensionMismatch
        If a pair of masks differs in size
    """
    preds = _masks_by_frame(pred_dir)
    gts = _masks_by_frame(gt_dir)
    if not preds and not gts:
        raise EmptySequence(f"No masks found in {pred_dir}")
    missing = sorted(gts.keys() - preds.keys())
    extra = sorted(preds.keys() - gts.keys())
    if missing or extra:
        raise DataError(
            f"{len(preds)} predicted masks but {len(gts)} ground-truth masks; "
            f"unpredicted frames: {', '.join(missing) or 'none'}; frames without ground truth: {', '.join(extra) or 'none'}"
        )

    scores = []
    for name in sorted(preds):
        score = frame_score(load_mask(preds[name]), load_mask(gts[name]))
        if score.empty_gt:
            logger.debug(f"Frame {name} has an empty ground truth")
        scores.append((name, score))
    return scores


def homography_errors(
    pred_dir: Union[str, Path], gt_dir: Union[str, Path], width: int, height: int
) -> Dict[str, float]:
    """
    Corner error, in pixels, of each detected homography against the ground truth.

    Uses ``telemetry.csv`` from a detection run and ``homographies.csv``
    from a synthetic sequence. Returns an empty mapping when either file is
    absent; only frames present in both are compared.

    Raises
    ------
    DataError
        If either file is malformed
    """
    telemetry_path = Path(pred_dir) / TELEMETRY_FILE
    truth_path = Path(gt_dir) / HOMOGRAPHY_FILE
    if not telemetry_path.is_file() or not truth_path.is_file():
        return {}

    def rows_by_frame(path: Path, header: List[str]) -> Dict[str, List[float]]:
        entries = {}
        for row in read_csv(path, header):
            try:
                entries[row[0]] = [float(v) for v in row[1:10]]
            except (ValueError, IndexError):
                raise DataError(f"Malformed homography row for frame {row[0] if row else '?'} in {path}")
        return entries

    detected = rows_by_frame(telemetry_path, TELEMETRY_HEADER)
    truth = rows_by_frame(truth_path, HOMOGRAPHY_HEADER)
    return {
        name: corner_error(homography_from_row(detected[name]), homography_from_row(truth[name]), width, height)
        for name in sorted(detected.keys() & truth.keys())
    }


def report_rows(scores: List[Tuple[str, FrameScore]]) -> List[List[str]]:
    """Per-frame rows followed by the ``video`` and ``pooled`` summary rows."""
    rows = []
    for name, s in scores:
        rows.append(
            [
                name,
                *(str(n) for n in (s.tp, s.fp, s.fn, s.tn)),
                *(format_value(r) for r in (s.precision, s.recall, s.f_measure)),
                "1" if s.empty_gt else "0",
            ]
        )

    frames = [s for _, s in scores]
    rows.append(
        [
            "video",
            "",
            "",
            "",
            "",
            format_value(float(np.mean([s.precision for s in frames]))),
            format_value(float(np.mean([s.recall for s in frames]))),
            format_value(video_f_measure(frames)),
            str(sum(s.empty_gt for s in frames)),
        ]
    )
    pooled = pooled_score(frames)
    rows.append(
        [
            "pooled",
            *(str(n) for n in (pooled.tp, pooled.fp, pooled.fn, pooled.tn)),
            *(format_value(r) for r in (pooled.precision, pooled.recall, pooled.f_measure)),
            "",
        ]
    )
    return rows


def cmd_eval(
    pred_dir: Union[str, Path],
    gt_dir: Union[str, Path],
    report_path: Union[str, Path],
    curve_path: Union[str, Path],
    config_path: Optional[Union[str, Path]] = None,
) -> int:
    """
    Score a directory of predicted masks against ground truth.

    Parameters
    ----------
    pred_dir, gt_dir : Union[str, Path]
        Directories of ``*.pgm`` masks, paired by frame name; a
        ``telemetry.csv`` in ``pred_dir`` is checked against
        ``homographies.csv`` in ``gt_dir`` when both exist
    report_path : Union[str, Path]
        Per-frame report CSV with ``video`` and ``pooled`` summary rows
    curve_path : Union[str, Path]
        Success-rate curve CSV
    config_path : Optional[Union[str, Path]]
        Run config supplying ``threshold_step``

    Returns
    -------
    int
        Exit code, 0 on success
    """
    cfg = load_run_config(config_path)
    scores = score_dirs(pred_dir, gt_dir)

    write_csv(report_path, REPORT_HEADER, report_rows(scores))

    fm_list = [s.f_measure for _, s in scores]
    curve = success_rate_curve(fm_list, default_thresholds(cfg.threshold_step))
    write_csv(curve_path, CURVE_HEADER, [[format_value(t), format_value(r)] for t, r in zip(curve.thresholds, curve.rates)])

    empty = sum(s.empty_gt for _, s in scores)
    if empty:
        logger.warning(f"{empty} of {len(scores)} frames have an empty ground truth")
    logger.info(
        f"Video F-Measure {video_f_measure([s for _, s in scores]):.4f}, "
        f"success rate at 0.5: {curve.rate_at(0.5):.4f} over {len(scores)} frames"
    )

    first = load_mask(list_files(gt_dir, "*.pgm")[0])
    errors = homography_errors(pred_dir, gt_dir, first.width, first.height)
    if errors:
        values = list(errors.values())
        logger.info(
            f"Homography corner error over {len(values)} frames: "
            f"median {float(np.median(values)):.3f} px, max {max(values):.3f} px"
        )
    return 0
