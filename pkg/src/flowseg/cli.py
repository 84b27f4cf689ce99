import argparse
import sys
from typing import NoReturn, Optional, Sequence

from .utils.errors import EXIT_CONFIG, FlowsegError
from .utils.logs import setup_logging


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def create_parser() -> argparse.ArgumentParser:
    """
    Create and return the argument parser for flowseg.

    Returns
    -------
    argparse.ArgumentParser
        Configured argument parser for the application

    Notes
    -----
    Configures the following commands:
    - detect : Detect moving objects in a directory of flow files
    - eval : Score predicted masks against ground truth
    - synth : Generate a synthetic sequence from a scene script
    - bench : Time detection per frame and against RANSAC iterations
    """
    parser = ArgumentParser(
        prog="flowseg",
        description="Optical-flow based moving object detection"
    )

    parser.add_argument(
        "-v", "--verbose",
        action="store_true",
        help="Enable verbose output"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    detect_parser = subparsers.add_parser(
        "detect",
        help="Detect moving objects in a directory of flow files"
    )
    detect_parser.add_argument("--flows", required=True, help="Directory of .flo files")
    detect_parser.add_argument("--out", required=True, help="Output directory for masks and telemetry")
    detect_parser.add_argument("--config", help="Run config file (key = value)")

    eval_parser = subparsers.add_parser(
        "eval",
        help="Score predicted masks against ground truth"
    )
    eval_parser.add_argument("--pred", required=True, help="Directory of predicted .pgm masks")
    eval_parser.add_argument("--gt", required=True, help="Directory of ground-truth .pgm masks")
    eval_parser.add_argument("--report", required=True, help="Per-frame report CSV to write")
    eval_parser.add_argument("--curve", required=True, help="Success-rate curve CSV to write")
    eval_parser.add_argument("--config", help="Run config file supplying threshold_step")

    synth_parser = subparsers.add_parser(
        "synth",
        help="Generate a synthetic sequence from a scene script"
    )
    synth_parser.add_argument("--script", required=True, help="Scene script file")
    synth_parser.add_argument("--out", required=True, help="Output directory for the sequence")

    bench_parser = subparsers.add_parser(
        "bench",
        help="Time detection per frame and against RANSAC iterations"
    )
    bench_parser.add_argument("--flows", required=True, help="Directory of .flo files")
    bench_parser.add_argument("--config", help="Run config file (key = value)")
    bench_parser.add_argument("--reps", type=int, default=1, help="Passes over all frames")
    bench_parser.add_argument("--report", help="CSV file for the iterations table")

    return parser


def entry_point(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for flowseg.

    Parameters
    ----------
    argv : Optional[Sequence[str]]
        Arguments to parse instead of ``sys.argv[1:]``

    Returns
    -------
    int
        Exit code, where:
        - 0 indicates success
        - 1 indicates a usage or configuration error
        - 2 indicates a data error
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    logger = setup_logging(args.verbose)

    try:
        if args.command == "detect":
            from .commands import cmd_detect
            return cmd_detect(args.flows, args.out, args.config)

        elif args.command == "eval":
            from .commands import cmd_eval
            return cmd_eval(args.pred, args.gt, args.report, args.curve, args.config)

        elif args.command == "synth":
            from .commands import cmd_synth
            return cmd_synth(args.script, args.out)

        elif args.command == "bench":
            from .commands import cmd_bench
            return cmd_bench(args.flows, args.config, args.reps, args.report)

    except FlowsegError as e:
        logger.error(str(e))
        if args.verbose:
            logger.exception("Detailed traceback:")
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}")
        if args.verbose:
            logger.exception("Detailed traceback:")
        return 1

    return 0


def main() -> None:
    sys.exit(entry_point())
