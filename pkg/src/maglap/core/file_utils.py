"""
File utilities for maglap: experiment config files and output directories.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .exceptions import ConfigurationError
from .logging import get_logger

log = get_logger(__name__)

CONFIG_SUFFIX = ".json"


def validate_config_path(config_path_str: Optional[str]) -> Path:
    """
    Validates and resolves an experiment config path.

    Args:
        config_path_str: String representation of the config path

    Returns:
        Resolved Path object

    Raises:
        ConfigurationError: If the path is empty, missing or not a JSON file
    """
    if not config_path_str:
        raise ConfigurationError("No config path provided.")

    config_path = Path(config_path_str)
    log.debug(f"Validating config path: {config_path}")

    if not config_path.is_file():
        raise ConfigurationError(f"Config file not found or is not a regular file: {config_path}")

    if config_path.suffix.lower() != CONFIG_SUFFIX:
        raise ConfigurationError(
            f"Unsupported config extension: '{config_path.suffix}'. Only {CONFIG_SUFFIX} is supported."
        )

    return config_path


def load_config_file(config_path_str: Optional[str]) -> Dict[str, Any]:
    """
    Reads an experiment config file into a plain mapping.

    Args:
        config_path_str: String representation of the config path

    Returns:
        The decoded JSON object

    Raises:
        ConfigurationError: If the file is invalid or does not hold a JSON object
    """
    config_path = validate_config_path(config_path_str)
    try:
        with config_path.open("r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as e:
        log.error(f"Malformed config file {config_path}: {e}")
        raise ConfigurationError(f"Malformed JSON in {config_path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {config_path} must contain a JSON object.")

    log.info(f"Loaded config file: {config_path}")
    return data


def ensure_output_dir(out_dir: Union[str, Path]) -> Path:
    """
    Creates the output directory if needed.

    Args:
        out_dir: Output directory

    Returns:
        The directory as a Path
    """
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_resolved_config(out_dir: Union[str, Path], command: str, resolved: Dict[str, Any]) -> Path:
    """
    Writes the resolved config of a run next to its CSV output.

    Keys are sorted so that identical runs produce identical files.

    Args:
        out_dir: Output directory
        command: Subcommand name, used as the file stem
        resolved: Fully resolved configuration mapping

    Returns:
        Path of the written file
    """
    path = ensure_output_dir(out_dir) / f"{command}_config.json"
    with path.open("w", encoding="utf-8") as handle:
        json.dump(resolved, handle, indent=2, sort_keys=True)
        handle.write("\n")
    log.info(f"Resolved config written to {path}")
    return path
