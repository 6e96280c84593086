"""
Experiment factory mapping subcommand names to experiment classes.
"""

from typing import Dict, List, Type

from ..core.exceptions import ConfigurationError
from ..core.logging import get_logger
from .base import Experiment
from .config import ExperimentConfig
from .experiments import (
    CountingExperiment,
    CylinderExperiment,
    DiskCurvesExperiment,
    InvariantsExperiment,
    PolygonSweepExperiment,
    SemicontinuityExperiment,
)

log = get_logger(__name__)


class ExperimentFactory:
    """Factory class for creating experiments."""

    # Registry of subcommand names to experiment classes
    _EXPERIMENT_REGISTRY: Dict[str, Type[Experiment]] = {
        "disk-curves": DiskCurvesExperiment,
        "polygon-sweep": PolygonSweepExperiment,
        "cylinder": CylinderExperiment,
        "counting": CountingExperiment,
        "invariants": InvariantsExperiment,
        "semicontinuity": SemicontinuityExperiment,
    }

    @classmethod
    def create_experiment(cls, config: ExperimentConfig) -> Experiment:
        """
        Creates the experiment for the configured subcommand.

        Args:
            config: Validated configuration; ``config.command`` selects the class.

        Returns:
            An instance of the registered Experiment subclass.

        Raises:
            ConfigurationError: If no experiment is registered for the command.
        """
        if config.command not in cls._EXPERIMENT_REGISTRY:
            available = ", ".join(cls._EXPERIMENT_REGISTRY.keys())
            raise ConfigurationError(f"Unknown experiment: '{config.command}'. Available: {available}")

        experiment_class = cls._EXPERIMENT_REGISTRY[config.command]
        log.info(f"Creating {experiment_class.__name__} for '{config.command}'")
        return experiment_class(config)

    @classmethod
    def get_supported_commands(cls) -> List[str]:
        """
        Returns the registered subcommand names.

        Returns:
            List of subcommand strings
        """
        return list(cls._EXPERIMENT_REGISTRY.keys())

    @classmethod
    def register_experiment(cls, command: str, experiment_class: Type[Experiment]) -> None:
        """
        Registers a new experiment (for extensibility).

        Args:
            command: Subcommand name
            experiment_class: Class that implements the Experiment interface
        """
        log.info(f"Registering experiment '{command}' with class {experiment_class.__name__}")
        cls._EXPERIMENT_REGISTRY[command] = experiment_class
