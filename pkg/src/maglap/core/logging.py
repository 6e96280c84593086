"""
Logging configuration for maglap.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional, Union

from .config import LOG_FILENAME, LOG_MAX_BYTES, LOG_BACKUP_COUNT, LOG_ENCODING


def setup_logging(
        log_dir: Optional[Union[str, Path]] = None,
        level: str = "INFO",
        quiet: bool = False,
) -> logging.Logger:
    """
    Sets up logging configuration for a maglap run.

    Log records always go to a rotating file; they are echoed to stderr
    unless ``quiet`` is set, so that stdout stays reserved for reports.

    Args:
        log_dir: Directory for the log file (current directory if None)
        level: Logging level name
        quiet: Suppress the stderr echo

    Returns:
        The logger instance configured for maglap.
    """
    log_path = Path(log_dir) / LOG_FILENAME if log_dir else Path(LOG_FILENAME)
    if log_path.parent and not log_path.parent.exists():
        log_path.parent.mkdir(parents=True, exist_ok=True)

    handlers: List[logging.Handler] = [
        RotatingFileHandler(
            log_path,
            maxBytes=LOG_MAX_BYTES,
            backupCount=LOG_BACKUP_COUNT,
            encoding=LOG_ENCODING
        )
    ]
    if not quiet:
        handlers.append(logging.StreamHandler(sys.stderr))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)-5.5s] %(name)s (%(filename)s:%(lineno)d) - %(message)s",
        handlers=handlers,
        force=True  # Override any existing configuration
    )

    return logging.getLogger("maglap")


def get_logger(name: str) -> logging.Logger:
    """
    Gets a logger instance for the given name.

    Args:
        name: The name for the logger (typically __name__)

    Returns:
        A logger instance.
    """
    return logging.getLogger(name)
