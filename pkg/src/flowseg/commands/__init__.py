"""Command implementations behind the flowseg CLI."""

from .bench import BenchReport, cmd_bench, profile_stages, run_bench
from .detect import cmd_detect, detect_files, find_flow_files
from .evaluate import cmd_eval, homography_errors, score_dirs
from .synthesize import cmd_synth

__all__ = [
    "BenchReport",
    "cmd_bench",
    "cmd_detect",
    "cmd_eval",
    "cmd_synth",
    "detect_files",
    "find_flow_files",
    "homography_errors",
    "profile_stages",
    "run_bench",
    "score_dirs",
]
