"""Scenario configuration loaded from YAML.

Example::

    scenario: solutions        # potential | portrait | phase-compare | solutions | classify | sweep
    params:
      Z: 1
      epsilon: 1.2
      kappa: -1
      alpha_fs: 7.2973525693e-3   # optional
    rho_max: 10.0
    grid: 2000
    tolerances:
      rtol: 1.0e-10
      atol: 1.0e-12
      initial_step: 1.0e-3
      min_step: 1.0e-15
      phase_track: 1.0e-6
    output_dir: out
    emit_svg: false
    match_window: [10.0, 20.0]
    sweep:
      z: [1, 10, 137]
      kappa: [-1, 1]
      workers: 2

Every key except ``scenario`` and ``params`` is optional. The environment
variable ``PRUFER_DIRAC_OUTPUT_DIR`` overrides ``output_dir`` and nothing else.
"""

from __future__ import annotations

import enum
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import yaml

from ..errors import ParameterError
from ..integrate import Tolerances
from ..model import ALPHA_FS, PhysicalParams, barrier_radius

OUTPUT_ENV = "PRUFER_DIRAC_OUTPUT_DIR"
MIN_GRID = 16


class Scenario(enum.Enum):
    POTENTIAL = "potential"
    PORTRAIT = "portrait"
    PHASE_COMPARE = "phase-compare"
    SOLUTIONS = "solutions"
    CLASSIFY = "classify"
    SWEEP = "sweep"


@dataclass(frozen=True)
class SweepSpec:
    z: tuple[int, ...] = (1, 10, 137)
    kappa: tuple[int, ...] = (-1, 1)
    workers: int = 2


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: Scenario
    params: PhysicalParams
    rho_max: float = 10.0
    grid: int = 2000
    tolerances: Tolerances = field(default_factory=Tolerances)
    output_dir: Path = Path("out")
    emit_svg: bool = False
    match_window: tuple[float, float] = (10.0, 20.0)
    sweep: SweepSpec = field(default_factory=SweepSpec)

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if isinstance(self.grid, bool) or int(self.grid) != self.grid or self.grid < MIN_GRID:
            raise ParameterError(f"grid must be an integer >= {MIN_GRID}, got {self.grid!r}")
        object.__setattr__(self, "grid", int(self.grid))
        lo, hi = self.match_window
        if not 0.0 < lo < hi:
            raise ParameterError("match_window must satisfy 0 < lo < hi")
        if self.sweep.workers < 1:
            raise ParameterError("sweep.workers must be >= 1")
        if self.params.epsilon > -1.0 and not self.rho_max > barrier_radius(self.params):
            raise ParameterError(f"rho_max must exceed rho_cl = {barrier_radius(self.params)}")

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.value,
            "params": asdict(self.params),
            "rho_max": self.rho_max,
            "grid": self.grid,
            "tolerances": asdict(self.tolerances),
            "output_dir": str(self.output_dir),
            "emit_svg": self.emit_svg,
            "match_window": list(self.match_window),
            "sweep": {"z": list(self.sweep.z), "kappa": list(self.sweep.kappa), "workers": self.sweep.workers},
        }


def _float(v, name):
    try:
        return float(v)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a number, got {v!r}") from None


def config_from_dict(data: dict, *, apply_env: bool = True) -> ScenarioConfig:
    """Validate a parsed mapping and build a :class:`ScenarioConfig`."""
    if not isinstance(data, dict):
        raise ParameterError("configuration must be a mapping")
    known = {"scenario", "params", "rho_max", "grid", "tolerances", "output_dir", "emit_svg", "match_window", "sweep"}
    unknown = set(data) - known
    if unknown:
        raise ParameterError(f"unknown configuration keys: {sorted(unknown)}")
    try:
        scenario = Scenario(str(data.get("scenario", "")).lower())
    except ValueError:
        raise ParameterError(f"unknown scenario {data.get('scenario')!r}") from None
    p = data.get("params") or {}
    if not isinstance(p, dict) or not {"Z", "epsilon", "kappa"} <= set(p):
        raise ParameterError("params needs Z, epsilon and kappa")
    params = PhysicalParams(
        Z=p["Z"], epsilon=_float(p["epsilon"], "epsilon"), kappa=p["kappa"],
        alpha_fs=_float(p.get("alpha_fs", ALPHA_FS), "alpha_fs"),
    )
    tol_data = data.get("tolerances") or {}
    tol_fields = {"rtol", "atol", "initial_step", "min_step", "phase_track", "max_steps"}
    if set(tol_data) - tol_fields:
        raise ParameterError(f"unknown tolerance keys: {sorted(set(tol_data) - tol_fields)}")
    tol = Tolerances(**{k: (int(v) if k == "max_steps" else _float(v, k)) for k, v in tol_data.items()})
    sw = data.get("sweep") or {}
    sweep = SweepSpec(
        z=tuple(int(z) for z in sw.get("z", SweepSpec.z)),
        kappa=tuple(int(k) for k in sw.get("kappa", SweepSpec.kappa)),
        workers=int(sw.get("workers", SweepSpec.workers)),
    )
    out = data.get("output_dir", "out")
    if apply_env and os.environ.get(OUTPUT_ENV):
        out = os.environ[OUTPUT_ENV]
    window = data.get("match_window", (10.0, 20.0))
    if len(window) != 2:
        raise ParameterError("match_window needs two numbers")
    return ScenarioConfig(
        scenario=scenario,
        params=params,
        rho_max=_float(data.get("rho_max", 10.0), "rho_max"),
        grid=data.get("grid", 2000),
        tolerances=tol,
        output_dir=Path(out),
        emit_svg=bool(data.get("emit_svg", False)),
        match_window=(_float(window[0], "match_window"), _float(window[1], "match_window")),
        sweep=sweep,
    )


def load_config(path: str | os.PathLike, *, apply_env: bool = True) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ParameterError(f"cannot parse {path}: {exc}") from None
    return config_from_dict(data, apply_env=apply_env)
