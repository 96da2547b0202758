"""Command-line entry point.

Exit codes: 0 when the run completes, 2 on invalid input, 3 when a solver fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import ParameterError
from ..model import PhysicalParams
from .config import Scenario, ScenarioConfig, SweepSpec, load_config
from .runner import run

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3

_COMMANDS = {
    "potential": Scenario.POTENTIAL,
    "portrait": Scenario.PORTRAIT,
    "phase-compare": Scenario.PHASE_COMPARE,
    "solve": Scenario.SOLUTIONS,
    "classify": Scenario.CLASSIFY,
    "sweep": Scenario.SWEEP,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prufer-dirac", description="Pruefer-phase solver for the radial Dirac-Coulomb problem.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", type=Path, help="YAML scenario file")
        cmd.add_argument("--out", type=Path, help="output directory")
        cmd.add_argument("--svg", action="store_true", help="also write SVG plots")
        cmd.add_argument("--z", type=int, nargs="+", help="charge number (several values for sweep)")
        cmd.add_argument("--kappa", type=int, nargs="+", help="Dirac quantum number (several values for sweep)")
        cmd.add_argument("--epsilon", type=float, help="energy in units of m c^2")
        cmd.add_argument("--rho-max", type=float, help="outer radius in Compton wavelengths")
        cmd.add_argument("--tol", type=float, help="relative tolerance; absolute tolerance is set to tol/100")
    return parser


def _one(values, name, default):
    if values is None:
        return default
    if len(values) != 1:
        raise ParameterError(f"--{name} takes one value for this command")
    return values[0]


def config_from_args(args) -> ScenarioConfig:
    scenario = _COMMANDS[args.command]
    if args.config is not None:
        cfg = load_config(args.config).with_(scenario=scenario)
    else:
        cfg = ScenarioConfig(scenario=scenario, params=PhysicalParams(Z=1, epsilon=1.2, kappa=-1))
    changes = {}
    if scenario is Scenario.SWEEP:
        changes["sweep"] = SweepSpec(
            z=tuple(args.z) if args.z else cfg.sweep.z,
            kappa=tuple(args.kappa) if args.kappa else cfg.sweep.kappa,
            workers=cfg.sweep.workers,
        )
        z, kappa = cfg.params.Z, cfg.params.kappa
    else:
        z = _one(args.z, "z", cfg.params.Z)
        kappa = _one(args.kappa, "kappa", cfg.params.kappa)
    eps = cfg.params.epsilon if args.epsilon is None else args.epsilon
    changes["params"] = cfg.params.with_(Z=z, kappa=kappa, epsilon=eps)
    if args.rho_max is not None:
        changes["rho_max"] = args.rho_max
    if args.tol is not None:
        changes["tolerances"] = cfg.tolerances.with_(rtol=args.tol, atol=args.tol * 1e-2)
    if args.out is not None:
        changes["output_dir"] = args.out
    if args.svg:
        changes["emit_svg"] = True
    return cfg.with_(**changes)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        manifest = run(cfg)
    except ParameterError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"{manifest.status}: {manifest.path}")
    if not manifest.completed:
        print(manifest.error, file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
