"""Logging configuration for flowseg."""

import logging
import sys
from pathlib import Path

# ANSI color codes
COLORS = {
    "BLUE": "\033[94m",
    "ORANGE": "\033[93m",
    "RED": "\033[91m",
    "RESET": "\033[0m",
}

LOG_DIR = Path.home() / ".flowseg" / "logs"

logger = logging.getLogger("flowseg")


class ColoredFormatter(logging.Formatter):
    """A custom formatter that adds colors to log messages based on level."""

    LEVEL_COLORS = {
        logging.INFO: COLORS["BLUE"],
        logging.WARNING: COLORS["ORANGE"],
        logging.ERROR: COLORS["RED"],
        logging.CRITICAL: COLORS["RED"],
    }

    def format(self, record):
        """
        Format the log record with appropriate color.

        Parameters
        ----------
        record : logging.LogRecord
            The log record to format

        Returns
        -------
        str
            The formatted log message with color codes
        """
        message = super().format(record)
        color = self.LEVEL_COLORS.get(record.levelno)
        if color:
            return f"{color}{message}{COLORS['RESET']}"
        return message


def setup_logging(verbose: bool = False) -> logging.Logger:
    """
    Setup logging configuration.

    Parameters
    ----------
    verbose : bool, optional
        If True, set console logging level to DEBUG, by default False

    Returns
    -------
    logging.Logger
        Logger instance configured for the application

    Notes
    -----
    - Console logging uses colors for INFO and above
    - File logging includes all debug messages and lives in
      ~/.flowseg/logs/; it is skipped if that directory is not writable
    - Calling this again replaces the handlers installed before
    """
    level = logging.DEBUG if verbose else logging.INFO
    logger.setLevel(logging.DEBUG)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setFormatter(ColoredFormatter("%(message)s"))
    console_handler.setLevel(level)
    logger.addHandler(console_handler)

    try:
        LOG_DIR.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(LOG_DIR / "flowseg.log")
    except OSError:
        logger.debug(f"File logging disabled, cannot write to {LOG_DIR}")
    else:
        file_handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    return logger
