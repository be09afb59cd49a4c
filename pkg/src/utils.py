import logging
import sys
from typing import Dict, Iterable, List, Optional


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """Get a configured logger with timestamps and module names.

    Logs go to stderr so tables written to stdout stay machine readable.

    Args:
        name: Name of the logger (typically __name__)
        level: Optional logging level (defaults to INFO)

    Returns:
        Configured logger instance
    """
    if level is None:
        level = logging.INFO

    logger = logging.getLogger(name)

    # Don't add handlers if they already exist
    if logger.handlers:
        return logger

    logger.setLevel(level)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    handler.setFormatter(formatter)

    logger.addHandler(handler)

    return logger


def set_log_level(level: int) -> None:
    """Set the level of every toolkit logger created so far."""
    for name, logger in logging.root.manager.loggerDict.items():
        if name.startswith("src") and isinstance(logger, logging.Logger):
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)


def parse_param_overrides(items: Optional[Iterable[str]]) -> Dict[str, float]:
    """Parse repeated ``name=value`` command-line overrides.

    Args:
        items: Strings such as ``"a20=0.5"``

    Returns:
        Mapping from parameter name to float value

    Raises:
        ValueError: If an item is not of the form name=number
    """
    overrides: Dict[str, float] = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ValueError(f"parameter override '{item}' is not of the form name=value")
        try:
            overrides[name] = float(value)
        except ValueError as e:
            raise ValueError(f"parameter override '{item}' has a non-numeric value") from e
    return overrides


def chunk_ranges(flags: List[bool], positions: List[float]) -> List[tuple]:
    """Group consecutive True flags into (first, last) position ranges."""
    ranges = []
    start = None
    for i, flag in enumerate(flags):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            ranges.append((positions[start], positions[i - 1]))
            start = None
    if start is not None:
        ranges.append((positions[start], positions[len(flags) - 1]))
    return ranges
