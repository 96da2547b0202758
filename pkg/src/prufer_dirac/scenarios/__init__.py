"""Figure and table reproduction runs, their configuration and the CLI."""

from .config import Scenario, ScenarioConfig, SweepSpec, config_from_dict, load_config
from .runner import RunManifest, build_grid, run, sweep

__all__ = [
    "RunManifest",
    "Scenario",
    "ScenarioConfig",
    "SweepSpec",
    "build_grid",
    "config_from_dict",
    "load_config",
    "run",
    "sweep",
]
