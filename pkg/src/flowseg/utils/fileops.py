"""Utility functions for file operations."""

from pathlib import Path
from typing import List, Union

from .errors import FileOperationError
from .logs import logger


def ensure_dir(path: Union[str, Path]) -> Path:
    """
    Ensure a directory exists, create it if it doesn't.

    Parameters
    ----------
    path : Union[str, Path]
        Path to the directory

    Returns
    -------
    Path
        Path object pointing to the directory

    Raises
    ------
    FileOperationError
        If directory creation fails or path exists but is not a directory
    """
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise FileOperationError(f"Failed to create directory {path}: {str(e)}")

    if not path.is_dir():
        raise FileOperationError(f"Path exists but is not a directory: {path}")

    return path


def read_bytes(path: Union[str, Path]) -> bytes:
    """
    Read a whole file as bytes.

    Raises
    ------
    FileOperationError
        If the file is missing or unreadable
    """
    path = Path(path)
    try:
        return path.read_bytes()
    except OSError as e:
        raise FileOperationError(f"Failed to read {path}: {str(e)}")


def read_text(path: Union[str, Path]) -> str:
    """Text counterpart of ``read_bytes``."""
    path = Path(path)
    try:
        return path.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise FileOperationError(f"Failed to read {path}: {str(e)}")


def safe_write(path: Union[str, Path], content: Union[str, bytes]) -> Path:
    """
    Write text or bytes to a file, replacing it if present.

    Parameters
    ----------
    path : Union[str, Path]
        Path to write to
    content : Union[str, bytes]
        Content to write

    Returns
    -------
    Path
        Path to the written file

    Raises
    ------
    FileOperationError
        If the write fails
    """
    path = Path(path)

    try:
        # Ensure the parent directory exists
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(content, bytes):
            path.write_bytes(content)
        else:
            # csv rows carry their own line endings
            with path.open("w", newline="") as handle:
                handle.write(content)
    except OSError as e:
        raise FileOperationError(f"Failed to write to {path}: {str(e)}")

    return path


def list_files(directory: Union[str, Path], pattern: str) -> List[Path]:
    """
    List files in a directory matching a glob pattern, sorted by name.

    Parameters
    ----------
    directory : Union[str, Path]
        Directory to scan
    pattern : str
        Glob pattern such as ``"*.flo"``

    Returns
    -------
    List[Path]
        Matching regular files in name order

    Raises
    ------
    FileOperationError
        If directory is not a directory
    """
    directory = Path(directory)

    if not directory.is_dir():
        raise FileOperationError(f"Not a directory: {directory}")

    files = sorted(p for p in directory.glob(pattern) if p.is_file())
    logger.debug(f"Found {len(files)} files matching {pattern} in {directory}")
    return files
