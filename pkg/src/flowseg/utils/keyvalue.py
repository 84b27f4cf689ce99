"""Parsing of flat ``key = value`` files."""

import math
import re
from typing import Callable, List, Tuple, TypeVar

from .errors import ConfigError
from .logs import logger

T = TypeVar("T")

_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")


def parse_key_values(text: str, source: str = "<config>") -> List[Tuple[str, str, int]]:
    """
    Split text into ``(key, value, line_number)`` entries.

    Blank lines and everything after ``#`` are ignored.

    Raises
    ------
    ConfigError
        If a non-empty line is not of the form ``key = value``
    """
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _LINE.match(line)
        if not match:
            raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw.strip()!r}")
        key, value = match.groups()
        logger.debug(f"{source}:{number}: {key} = {value}")
        entries.append((key, value, number))
    return entries


def convert(value: str, kind: Callable[[str], T], key: str, source: str, line: int) -> T:
    """
    Convert a raw value, reporting failures as ``ConfigError``.

    Floats must be finite.
    """
    try:
        result = kind(value)
    except ValueError:
        raise ConfigError(f"{source}:{line}: invalid value {value!r} for {key}")
    if isinstance(result, float) and not math.isfinite(result):
        raise ConfigError(f"{source}:{line}: {key} must be finite, got {value!r}")
    return result
