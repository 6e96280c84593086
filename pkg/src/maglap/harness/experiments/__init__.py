"""
Harness experiments, one per subcommand.
"""

from .counting import CountingExperiment
from .cylinder import CylinderExperiment
from .disk_curves import DiskCurvesExperiment
from .invariants import InvariantsExperiment
from .polygon_sweep import PolygonSweepExperiment
from .semicontinuity import SemicontinuityExperiment

__all__ = [
    "CountingExperiment",
    "CylinderExperiment",
    "DiskCurvesExperiment",
    "InvariantsExperiment",
    "PolygonSweepExperiment",
    "SemicontinuityExperiment",
]
