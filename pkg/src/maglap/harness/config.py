"""
Experiment configuration: domains, field values, index ranges, refinement
levels, gauge and tolerances, with per-command defaults.
"""

import copy
import math
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Mapping, Optional

from ..core.config import DEFAULT_TOLERANCES, FIBER_DEFAULT_GRID, FIBER_MIN_GRID, SUPPORTED_COMMANDS
from ..core.exceptions import ConfigurationError, MaglapError
from ..eigen.solver import SUPPORTED_METHODS
from ..fem.field import Gauge
from ..geometry.polygon import (
    ConvexPolygon,
    circumscribed_polygon,
    convex_hull_polygon,
    random_convex_polygon,
    rectangle,
    regular_polygon,
)

DOMAIN_KINDS = ("square", "rectangle", "regular", "circumscribed", "random", "hull", "disk")


@dataclass(frozen=True)
class DomainSpec:
    """
    A named planar domain.

    Attributes:
        kind: One of ``DOMAIN_KINDS``; ``disk`` is the unit disk, solved by its fibers.
        params: Constructor parameters of the kind.
        seed: Seed of a ``random`` polygon.
        label: Name used in reports and CSV rows.
    """

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise ConfigurationError(f"Unknown domain kind '{self.kind}'. Available: {', '.join(DOMAIN_KINDS)}")

    @property
    def name(self) -> str:
        """The label, or one derived from the kind and parameters."""
        if self.label:
            return self.label
        p = self.params
        if self.kind == "regular":
            return f"regular{p.get('n', '?')}"
        if self.kind == "circumscribed":
            return f"P{p.get('n', '?')}"
        if self.kind == "random":
            return f"random{p.get('n_vertices', '?')}_s{self.seed}"
        return self.kind

    def reseeded(self, base_seed: int) -> "DomainSpec":
        """The same domain with its seed offset by ``base_seed``."""
        if self.seed is None or base_seed == 0:
            return self
        return replace(self, seed=self.seed + base_seed)

    @property
    def is_disk(self) -> bool:
        return self.kind == "disk"

    def build(self) -> ConvexPolygon:
        """
        Constructs the polygon.

        Raises:
            ConfigurationError: For the disk, missing parameters or invalid values.
        """
        p = self.params
        try:
            if self.kind == "square":
                return rectangle(0.0, 0.0, 1.0, 1.0)
            if self.kind == "rectangle":
                return rectangle(p["x0"], p["y0"], p["x1"], p["y1"])
            if self.kind == "regular":
                return regular_polygon(int(p["n"]), float(p.get("radius", 1.0)))
            if self.kind == "circumscribed":
                return circumscribed_polygon(float(p.get("radius", 1.0)), int(p["n"]))
            if self.kind == "random":
                if self.seed is None:
                    raise ConfigurationError(f"Random domain '{self.name}' has no seed.")
                return random_convex_polygon(int(p["n_vertices"]), self.seed, float(p.get("radius", 1.0)))
            if self.kind == "hull":
                return convex_hull_polygon(p["points"])
        except KeyError as e:
            raise ConfigurationError(f"Domain '{self.name}' is missing parameter {e}") from e
        except MaglapError as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(f"Domain '{self.name}' is invalid: {e}") from e
        raise ConfigurationError("The unit disk has no polygon; it is solved through its fibers.")

    def to_mapping(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed, "label": self.label}

    @classmethod
    def from_mapping(cls, data: Any) -> "DomainSpec":
        if isinstance(data, str):
            return cls(kind=data)
        if not isinstance(data, Mapping):
            raise ConfigurationError(f"Domain entry must be a name or an object, got {data!r}")
        unknown = set(data) - {"kind", "params", "seed", "label"}
        if unknown:
            raise ConfigurationError(f"Unknown domain keys: {', '.join(sorted(unknown))}")
        if "kind" not in data:
            raise ConfigurationError(f"Domain entry {data!r} has no 'kind'")
        return cls(
            kind=data["kind"],
            params=dict(data.get("params") or {}),
            seed=data.get("seed"),
            label=data.get("label") or "",
        )


@dataclass
class ExperimentConfig:
    """
    Resolved settings of one harness run.

    Attributes:
        command: Subcommand name.
        domains: Domains to sweep.
        b_values: Field intensities.
        k_max: Highest eigenvalue index tested (``k = 1..k_max``).
        refine_levels: Mesh refinement levels, nondecreasing; the last one is
            tested and the one before it gives the Richardson tolerance.
        gauge: Vector potential used by the finite element path.
        tolerances: Named tolerances.
        out_dir: Output directory.
        seed: Base seed for random domains.
        n_values: Angular indices (disk curves) or polygon edge counts (semicontinuity).
        q_values: Landau level indices for the counting check.
        lengths: Cylinder length per domain.
        fiber_grid: Radial elements of the fiber oracle.
        eigen_method: Dense eigen route.
    """

    command: str
    domains: List[DomainSpec] = field(default_factory=list)
    b_values: List[float] = field(default_factory=lambda: [1.0])
    k_max: int = 5
    refine_levels: List[int] = field(default_factory=lambda: [3, 4])
    gauge: Gauge = Gauge.LANDAU
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    out_dir: str = "maglap_out"
    seed: int = 0
    n_values: List[int] = field(default_factory=list)
    q_values: List[int] = field(default_factory=lambda: [0, 1])
    lengths: List[float] = field(default_factory=list)
    fiber_grid: int = FIBER_DEFAULT_GRID
    eigen_method: str = "hermitian"

    @property
    def tested_refine(self) -> int:
        return self.refine_levels[-1]

    @property
    def reference_refine(self) -> int:
        """Coarser level paired with the tested one for the Richardson tolerance."""
        if len(self.refine_levels) >= 2 and self.refine_levels[-2] < self.refine_levels[-1]:
            return self.refine_levels[-2]
        return max(self.refine_levels[-1] - 1, 0)

    def resolved_domains(self) -> List[DomainSpec]:
        """Domains with random seeds offset by the run seed."""
        return [domain.reseeded(self.seed) for domain in self.domains]

    def tol(self, name: str) -> float:
        try:
            return float(self.tolerances[name])
        except KeyError as e:
            raise ConfigurationError(f"Unknown tolerance '{name}'") from e

    def validate(self) -> "ExperimentConfig":
        """
        Checks the invariants of the configuration.

        Raises:
            ConfigurationError: On the first violated invariant.
        """
        if self.command not in SUPPORTED_COMMANDS:
            raise ConfigurationError(
                f"Unknown command '{self.command}'. Available: {', '.join(SUPPORTED_COMMANDS)}"
            )
        if not self.b_values:
            raise ConfigurationError("At least one field intensity is required.")
        for b in self.b_values:
            if not (isinstance(b, (int, float)) and math.isfinite(b) and b > 0.0):
                raise ConfigurationError(f"Field intensities must be positive, got {b!r}")
        if isinstance(self.k_max, bool) or int(self.k_max) != self.k_max or self.k_max < 1:
            raise ConfigurationError(f"k_max must be an integer >= 1, got {self.k_max!r}")
        if not self.refine_levels:
            raise ConfigurationError("At least one refinement level is required.")
        if any(int(r) != r or r < 0 for r in self.refine_levels):
            raise ConfigurationError(f"Refinement levels must be non-negative integers, got {self.refine_levels}")
        if any(b < a for a, b in zip(self.refine_levels, self.refine_levels[1:])):
            raise ConfigurationError(f"Refinement levels must be nondecreasing, got {self.refine_levels}")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigurationError(f"Unknown tolerance names: {', '.join(sorted(unknown))}")
        for name, value in self.tolerances.items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0.0):
                raise ConfigurationError(f"Tolerance '{name}' must be a non-negative number, got {value!r}")
        if any(int(q) != q or q < 0 for q in self.q_values):
            raise ConfigurationError(f"Landau level indices must be non-negative integers, got {self.q_values}")
        if any(not (math.isfinite(length) and length > 0.0) for length in self.lengths):
            raise ConfigurationError(f"Cylinder lengths must be positive, got {self.lengths}")
        if int(self.fiber_grid) != self.fiber_grid or self.fiber_grid < 2 * FIBER_MIN_GRID:
            raise ConfigurationError(f"fiber_grid must be an integer >= {2 * FIBER_MIN_GRID}, got {self.fiber_grid}")
        if self.eigen_method not in SUPPORTED_METHODS:
            raise ConfigurationError(
                f"Unknown eigen method '{self.eigen_method}'. Available: {', '.join(SUPPORTED_METHODS)}"
            )
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigurationError(f"Seed must be a non-negative integer, got {self.seed!r}")
        return self

    def to_mapping(self) -> Dict[str, Any]:
        """Plain JSON-compatible mapping of the resolved configuration."""
        return {
            "command": self.command,
            "domains": [domain.to_mapping() for domain in self.domains],
            "b_values": list(self.b_values),
            "k_max": self.k_max,
            "refine_levels": list(self.refine_levels),
            "gauge": self.gauge.value,
            "tolerances": dict(sorted(self.tolerances.items())),
            "out_dir": self.out_dir,
            "seed": self.seed,
            "n_values": list(self.n_values),
            "q_values": list(self.q_values),
            "lengths": list(self.lengths),
            "fiber_grid": self.fiber_grid,
            "eigen_method": self.eigen_method,
        }

    @classmethod
    def from_mapping(cls, command: str, data: Optional[Mapping[str, Any]] = None) -> "ExperimentConfig":
        """
        Builds a configuration from the command defaults overlaid with ``data``.

        Tolerances in ``data`` are merged into the defaults, all other keys replace them.

        Raises:
            ConfigurationError: Unknown keys, a mismatching ``command`` or invalid values.
        """
        base = default_config(command)
        if not data:
            return base.validate()

        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        if data.get("command", command) != command:
            raise ConfigurationError(f"Config file is for '{data['command']}', not '{command}'")

        updates: Dict[str, Any] = {}
        for key, value in data.items():
            if key == "command":
                continue
            if key == "domains":
                updates[key] = [DomainSpec.from_mapping(entry) for entry in value]
            elif key == "gauge":
                updates[key] = _parse_gauge(value)
            elif key == "tolerances":
                if not isinstance(value, Mapping):
                    raise ConfigurationError("'tolerances' must be an object of name: value pairs")
                merged = dict(base.tolerances)
                merged.update(value)
                updates[key] = merged
            else:
                updates[key] = copy.deepcopy(value)
        return base.with_overrides(**updates)

    def with_overrides(self, **updates: Any) -> "ExperimentConfig":
        """A validated copy with the given fields replaced; ``None`` values are ignored."""
        resolved = copy.deepcopy(self)
        for key, value in updates.items():
            if value is None:
                continue
            if not hasattr(resolved, key):
                raise ConfigurationError(f"Unknown config field '{key}'")
            setattr(resolved, key, value)
        return resolved.validate()


def _parse_gauge(value: Any) -> Gauge:
    try:
        return Gauge(value)
    except ValueError as e:
        raise ConfigurationError(
            f"Unknown gauge '{value}'. Available: {', '.join(g.value for g in Gauge)}"
        ) from e


def parse_tolerance_overrides(items: List[str]) -> Dict[str, float]:
    """
    Parses repeated ``name=value`` tolerance flags.

    Raises:
        ConfigurationError: Malformed items, unknown names or non-numeric values.
    """
    overrides: Dict[str, float] = {}
    for item in items:
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ConfigurationError(f"Tolerance override must look like name=value, got '{item}'")
        if name not in DEFAULT_TOLERANCES:
            raise ConfigurationError(
                f"Unknown tolerance '{name}'. Available: {', '.join(sorted(DEFAULT_TOLERANCES))}"
            )
        try:
            overrides[name] = float(raw)
        except ValueError as e:
            raise ConfigurationError(f"Tolerance '{name}' needs a number, got '{raw}'") from e
    return overrides


def _quarter_grid() -> List[float]:
    return [0.25 * i for i in range(1, 17)]


def default_config(command: str) -> ExperimentConfig:
    """
    Default configuration of a subcommand.

    Raises:
        ConfigurationError: For an unknown command.
    """
    if command not in SUPPORTED_COMMANDS:
        raise ConfigurationError(f"Unknown command '{command}'. Available: {', '.join(SUPPORTED_COMMANDS)}")

    if command == "disk-curves":
        return ExperimentConfig(
            command=command,
            domains=[DomainSpec("disk")],
            b_values=_quarter_grid() + [4.5, 5.0, 6.0],
            k_max=4,
            n_values=list(range(-3, 5)),
        )
    if command == "polygon-sweep":
        return ExperimentConfig(
            command=command,
            domains=[
                DomainSpec("square"),
                DomainSpec("regular", {"n": 5, "radius": 1.0}),
                DomainSpec("random", {"n_vertices": 6}, seed=0),
                DomainSpec("random", {"n_vertices": 6}, seed=1),
                DomainSpec("random", {"n_vertices": 6}, seed=2),
            ],
            b_values=[0.5, 1.0, 2.0, 4.0],
            k_max=5,
            refine_levels=[3, 4],
        )
    if command == "cylinder":
        return ExperimentConfig(
            command=command,
            domains=[DomainSpec("disk"), DomainSpec("regular", {"n": 6, "radius": 1.0})],
            b_values=[1.0, 2.0],
            k_max=8,
            refine_levels=[3, 4],
            lengths=[math.pi, 2.0],
        )
    if command == "counting":
        return ExperimentConfig(
            command=command,
            domains=[DomainSpec("disk"), DomainSpec("square")],
            b_values=[1.0],
            refine_levels=[3, 4],
            q_values=[0, 1],
        )
    if command == "invariants":
        return ExperimentConfig(
            command=command,
            domains=[DomainSpec("square")],
            b_values=[1.0, 2.0],
            k_max=3,
            refine_levels=[4, 5],
        )
    return ExperimentConfig(
        command=command,
        domains=[DomainSpec("disk")],
        b_values=[1.0],
        k_max=1,
        refine_levels=[2, 3],
        n_values=[8, 16, 32, 64],
    )
