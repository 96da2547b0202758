"""Scenario execution: grids, CSV tables, plots and run manifests."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .. import __version__
from ..analytic import analytic_phase_curve, coulomb_continuum_grid, wrap_ray
from ..dirac import convergence_distance, match_normalization, solve_new_solution, solve_reference
from ..effective import u_eff_f, u_eff_g
from ..errors import ParameterError, PoleError, PruferDiracError
from ..model import PhysicalParams, barrier_radius, derive
from ..portrait import Kind, general_solution_near_zero, singular_points, trace_portrait
from .config import Scenario, ScenarioConfig
from .output import sha256_file, write_csv, write_json, write_rows, write_svg

COMPLETED = "Completed"
SOLVER_FAILURE = "SolverFailure"
MANIFEST_NAME = "manifest.json"
REFERENCE_SEED = 1e-4


@dataclass
class RunManifest:
    config: dict
    derived: dict
    version: str
    checksums: dict[str, str]
    duration_s: float
    status: str
    error: str = ""
    results: dict = field(default_factory=dict)
    path: Path | None = None

    @property
    def completed(self) -> bool:
        return self.status == COMPLETED

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("path")
        return d


def build_grid(rho_cl: float, rho_max: float, n: int, split: float = 1.0) -> np.ndarray:
    """``n`` strictly increasing radii starting at ``rho_cl``.

    Half of the nodes are log-spaced in ``rho - rho_cl`` from ``1e-4 rho_cl``
    up to ``split`` (shrunk if the range is short); the rest are uniform up
    to ``rho_max``.
    """
    if n < 3:
        raise ParameterError("grid needs at least 3 nodes")
    span = rho_max - rho_cl
    if not span > 0.0:
        raise ParameterError("rho_max must exceed rho_cl")
    split = min(split, 0.5 * span)
    d_min = min(1e-4 * rho_cl, 1e-3 * split)
    n_log = n // 2
    n_lin = n - 1 - n_log
    near = rho_cl + np.geomspace(d_min, split, n_log)
    far = np.linspace(rho_cl + split, rho_max, n_lin + 1)[1:]
    grid = np.concatenate([[rho_cl], near, far])
    assert len(grid) == n and np.all(np.diff(grid) > 0.0)
    return grid


def potential_grid(params: PhysicalParams, rho_max: float, n: int) -> np.ndarray:
    """Log-spaced radii from ``rho_cl / 100`` to ``rho_max``, covering both sides of the barrier."""
    rho_cl = barrier_radius(params)
    return np.geomspace(1e-2 * rho_cl, rho_max, n)


def _derived_dict(params: PhysicalParams) -> dict:
    try:
        return asdict(derive(params))
    except PruferDiracError:
        return {}


def _safe(fn, rho, params):
    try:
        return fn(rho, params)
    except PoleError:
        return math.nan


def _potential(cfg: ScenarioConfig, out: Path) -> tuple[list[Path], dict]:
    p = cfg.params
    rho = potential_grid(p, cfg.rho_max, cfg.grid)
    v = p.z_alpha / rho
    uf = np.array([_safe(u_eff_f, r, p) for r in rho])
    ug = np.array([_safe(u_eff_g, r, p) for r in rho])
    files = [write_csv(out / "potential.csv", ["rho", "V", "U_eff_F", "U_eff_G"], [rho, v, uf, ug])]
    if cfg.emit_svg:
        clip = 50.0 * max(1.0, float(np.nanmax(v[rho > barrier_radius(p)])))
        files.append(
            write_svg(
                out / "potential.svg",
                [("V", rho, v), ("U_eff_F", rho, np.where(np.abs(uf) < clip, uf, np.nan))],
                title="potential",
                logx=True,
            )
        )
    return files, {"rho_cl": barrier_radius(p)}


def _classify(cfg: ScenarioConfig, out: Path) -> tuple[list[Path], dict]:
    rows = []
    for kappa in (cfg.params.kappa, -cfg.params.kappa):
        for sp in singular_points(cfg.params.with_(kappa=kappa)):
            rows.append((kappa, sp.k, sp.phi_k, sp.lambda1, sp.lambda2, sp.delta_k, sp.kind.value))
    path = write_rows(out / "classify.csv", ["kappa", "k", "phi_k", "lambda1", "lambda2", "delta_k", "kind"], rows)
    return [path], {"points": len(rows)}


def _portrait(cfg: ScenarioConfig, out: Path) -> tuple[list[Path], dict]:
    p = cfg.params
    hi = min(cfg.rho_max, 3.0 * barrier_radius(p))
    lo = 1e-9
    grid = np.geomspace(lo, hi, cfg.grid)
    points = singular_points(p)
    write_rows(
        out / "singular_points.csv",
        ["k", "phi_k", "lambda1", "lambda2", "delta_k", "kind"],
        [(sp.k, sp.phi_k, sp.lambda1, sp.lambda2, sp.delta_k, sp.kind.value) for sp in points],
    )
    seeds = [(hi, phi) for phi in np.linspace(-math.pi, math.pi, 17)[:-1]]
    # Saddle separatrices: the C = 0 member of the near-origin family,
    # shifted by the multiple of pi that lands on each saddle.
    base = general_solution_near_zero(p, 0.0, 0, 1e-6)
    for sp in points:
        if sp.kind is Kind.SADDLE:
            seeds.append((1e-6, base + math.pi * round((sp.phi_k - base) / math.pi)))
    curves = trace_portrait(p, seeds, (lo, hi), cfg.tolerances, grid=grid)
    columns, names = [grid], ["rho"]
    for i, c in enumerate(curves):
        col = np.full(len(grid), math.nan)
        idx = np.searchsorted(c.rho, grid)
        hit = (idx < len(c.rho)) & (c.rho[np.minimum(idx, len(c.rho) - 1)] == grid)
        col[hit] = c.phi[idx[hit]]
        columns.append(col)
        names.append(f"curve_{i}")
    files = [out / "singular_points.csv", write_csv(out / "portrait.csv", names, columns)]
    if cfg.emit_svg:
        files.append(
            write_svg(out / "portrait.svg", [(n, grid, c) for n, c in zip(names[1:], columns[1:])], title="portrait", logx=True)
        )
    failed = [i for i, c in enumerate(curves) if not c.completed]
    return files, {"curves": len(curves), "failed_curves": failed}


def _solve_pair(cfg: ScenarioConfig, grid: np.ndarray):
    p = cfg.params
    rho_end = max(cfg.rho_max, cfg.match_window[1])
    sol = solve_new_solution(p, rho_end, cfg.tolerances, grid=grid)
    return sol, sol.sample(grid)


def _phase_compare(cfg: ScenarioConfig, out: Path) -> tuple[list[Path], dict]:
    p = cfg.params
    grid = build_grid(barrier_radius(p), cfg.rho_max, cfg.grid)
    ref = solve_reference(p, REFERENCE_SEED, cfg.rho_max, cfg.tolerances, grid=grid)
    phi_ref, _ = ref.sample(grid)
    sol, (phi_new, _) = _solve_pair(cfg, grid)
    phi_an = analytic_phase_curve(p, grid)
    dev_ref = np.abs(wrap_ray(phi_ref - phi_an))
    dev_new = np.abs(wrap_ray(phi_new - phi_an))
    files = [
        write_csv(
            out / "phase_compare.csv",
            ["rho", "phi_reference", "phi_new", "phi_analytic", "dev_reference", "dev_new"],
            [grid, phi_ref, phi_new, phi_an, dev_ref, dev_new],
        )
    ]
    if cfg.emit_svg:
        files.append(
            write_svg(
                out / "phase_compare.svg",
                [("reference", grid, phi_ref), ("new", grid, phi_new), ("analytic", grid, phi_an)],
                title="phase",
            )
        )
    return files, {
        "max_dev_reference": float(dev_ref.max()),
        "delta": convergence_distance(sol, grid),
    }


def _solutions(cfg: ScenarioConfig, out: Path) -> tuple[list[Path], dict]:
    p = cfg.params
    rho_cl = barrier_radius(p)
    grid = build_grid(rho_cl, cfg.rho_max, cfg.grid)
    sol, (phi_new, ln_p) = _solve_pair(cfg, grid)
    scale = match_normalization(sol, p, cfg.match_window)
    amp = scale * np.exp(ln_p)
    f_new, g_new = amp * np.sin(phi_new), amp * np.cos(phi_new)
    f_an, g_an = coulomb_continuum_grid(p, grid)
    phi_an = analytic_phase_curve(p, grid)
    files = [
        write_csv(out / "phi.csv", ["rho", "phi_new", "phi_analytic"], [grid, phi_new, phi_an]),
        write_csv(out / "fg.csv", ["rho", "F_new", "G_new", "F_analytic", "G_analytic"], [grid, f_new, g_new, f_an, g_an]),
        write_csv(
            out / "density.csv",
            ["rho", "w_D_new", "w_D_analytic"],
            [grid, (f_new**2 + g_new**2) * grid**2, (f_an**2 + g_an**2) * grid**2],
        ),
    ]
    if cfg.emit_svg:
        files += [
            write_svg(out / "phi.svg", [("new", grid, phi_new), ("analytic", grid, phi_an)], title="phase"),
            write_svg(out / "fg.svg", [("F new", grid, f_new), ("G new", grid, g_new), ("F analytic", grid, f_an), ("G analytic", grid, g_an)], title="F, G"),
        ]
    return files, {
        "rho_cl": rho_cl,
        "norm_scale": scale,
        "g_at_rho_cl": float(g_new[0]),
        "delta": convergence_distance(sol, grid),
    }


_HANDLERS = {
    Scenario.POTENTIAL: _potential,
    Scenario.CLASSIFY: _classify,
    Scenario.PORTRAIT: _portrait,
    Scenario.PHASE_COMPARE: _phase_compare,
    Scenario.SOLUTIONS: _solutions,
}


def _finish(cfg, out, files, results, status, error, start) -> RunManifest:
    manifest = RunManifest(
        config=cfg.to_dict(),
        derived=_derived_dict(cfg.params),
        version=__version__,
        checksums={Path(f).relative_to(out).as_posix(): sha256_file(f) for f in files},
        duration_s=time.perf_counter() - start,
        status=status,
        error=error,
        results=results,
        path=out / MANIFEST_NAME,
    )
    write_json(manifest.path, manifest.to_dict())
    return manifest


def run(config: ScenarioConfig) -> RunManifest:
    """Execute one scenario, write its files and ``manifest.json`` into ``config.output_dir``.

    Solver errors do not raise; they end up in the manifest with status
    ``SolverFailure``. Configuration and I/O errors do raise.
    """
    if config.scenario is Scenario.SWEEP:
        return _run_sweep(config)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    try:
        files, results = _HANDLERS[config.scenario](config, out)
    except (ParameterError, OSError):
        raise
    except PruferDiracError as exc:
        return _finish(config, out, [], {}, SOLVER_FAILURE, f"{type(exc).__name__}: {exc}", start)
    return _finish(config, out, files, results, COMPLETED, "", start)


def cell_dir(base: Path, z: int, kappa: int) -> Path:
    return Path(base) / f"z{z}_kappa{kappa:+d}"


def sweep(base: ScenarioConfig, z_list, kappa_list) -> list[RunManifest]:
    """Run the solutions scenario for every ``(Z, kappa)`` pair.

    Cells run concurrently (``base.sweep.workers``) in their own
    subdirectories. A ``summary.csv`` is written to ``base.output_dir``.
    """
    cells = [(int(z), int(k)) for z in z_list for k in kappa_list]
    if not cells:
        return []
    configs = [
        base.with_(
            scenario=Scenario.SOLUTIONS,
            params=base.params.with_(Z=z, kappa=k),
            output_dir=cell_dir(base.output_dir, z, k),
        )
        for z, k in cells
    ]
    with ThreadPoolExecutor(max_workers=min(base.sweep.workers, len(configs))) as pool:
        manifests = list(pool.map(run, configs))
    rows = []
    for (z, k), m in zip(cells, manifests):
        r = m.results
        rows.append(
            (
                z,
                k,
                barrier_radius(base.params.with_(Z=z, kappa=k)),
                float(r.get("g_at_rho_cl", math.nan)),
                float(r.get("delta", math.nan)),
                m.status,
            )
        )
    write_rows(Path(base.output_dir) / "summary.csv", ["z", "kappa", "rho_cl", "g_at_rho_cl", "delta", "status"], rows)
    return manifests


def _run_sweep(config: ScenarioConfig) -> RunManifest:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    manifests = sweep(config, config.sweep.z, config.sweep.kappa)
    files = [out / "summary.csv"] if manifests else []
    status = COMPLETED if all(m.completed for m in manifests) else SOLVER_FAILURE
    results = {
        "cells": [
            {"dir": m.path.parent.relative_to(out).as_posix(), "status": m.status, **m.results} for m in manifests
        ]
    }
    error = "; ".join(m.error for m in manifests if m.error)
    return _finish(config, out, files, results, status, error, start)
