"""Second-order (Schroedinger-type) form of the radial problem.

Effective potentials for the upper and lower components, the maps from a
Dirac pair to the second-order wave functions, a finite-difference residual
of the second-order equation and local power-law fits near the barrier.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .analytic import RadialPair
from .errors import DomainError, FitError, ParameterError, PoleError
from .model import PhysicalParams, barrier_radius

POLE_GUARD = 1e-12
RESIDUAL_FLOOR = 1e-30
BARRIER_OFFSETS = (1e-4, 1e-5, 1e-6)


class Branch(enum.Enum):
    F = "F"
    G = "G"


@dataclass(frozen=True)
class EffectivePotentialSample:
    rho: float
    u_f: float
    u_g: float
    v: float


@dataclass(frozen=True)
class SchrSolutionSample:
    rho: float
    f_schr: float
    g_schr: float = 0.0


def lower_pole(params: PhysicalParams) -> float | None:
    """Zero of ``eps - 1 - Z alpha/rho``; ``None`` when ``eps <= 1`` (no positive root)."""
    if params.epsilon <= 1.0:
        return None
    return params.z_alpha / (params.epsilon - 1.0)


def _check_rho(rho: float):
    if not (rho > 0.0 and math.isfinite(rho)):
        raise DomainError(f"rho must be positive and finite, got {rho}")


def _u_eff(rho: float, params: PhysicalParams, shift: float, pole: float | None) -> float:
    _check_rho(rho)
    za, eps, kappa = params.z_alpha, params.epsilon, params.kappa
    if pole is not None and abs(rho - pole) < POLE_GUARD * pole:
        raise PoleError(f"effective potential has a pole at rho = {pole!r}")
    v = za / rho
    dv = -za / rho**2
    d2v = 2.0 * za / rho**3
    # eps + shift - V, written as (eps + shift)(rho - pole)/rho to avoid
    # cancellation close to the pole.
    if pole is None:
        den = eps + shift - v
    else:
        den = (eps + shift) * (rho - pole) / rho
    return (
        eps * v
        - 0.5 * v * v
        + kappa * (kappa + 1) / (2.0 * rho * rho)
        + 0.25 * d2v / den
        + 0.375 * dv * dv / (den * den)
        - 0.5 * kappa * dv / (rho * den)
    )


def u_eff_f(rho: float, params: PhysicalParams) -> float:
    """Effective potential of the upper-component equation; pole at ``rho_cl``."""
    pole = barrier_radius(params) if params.epsilon > -1.0 else None
    return _u_eff(float(rho), params, 1.0, pole)


def u_eff_g(rho: float, params: PhysicalParams) -> float:
    """Effective potential of the lower-component equation; pole at ``Z alpha/(eps - 1)``."""
    return _u_eff(float(rho), params, -1.0, lower_pole(params))


def potential_sample(rho: float, params: PhysicalParams) -> EffectivePotentialSample:
    return EffectivePotentialSample(
        rho=float(rho), u_f=u_eff_f(rho, params), u_g=u_eff_g(rho, params), v=params.z_alpha / rho
    )


def schr_from_dirac(pair: RadialPair, params: PhysicalParams, branch: Branch = Branch.F) -> float:
    """Second-order wave function from one component of a Dirac pair.

    ``F_Schr = (eps + 1 - V)^(-1/2) rho F`` and
    ``G_Schr = (|eps| + 1 + V)^(-1/2) rho G``. The F map is singular at the
    barrier; there it returns 0 when ``F = 0`` and raises otherwise.
    """
    branch = Branch(branch)
    rho = pair.rho
    _check_rho(rho)
    v = params.z_alpha / rho
    if branch is Branch.G:
        return rho * pair.g / math.sqrt(abs(params.epsilon) + 1.0 + v)
    rho_cl = barrier_radius(params)
    if rho == rho_cl:
        if pair.f == 0.0:
            return 0.0
        raise PoleError("F map is singular at rho_cl for nonzero F")
    if rho < rho_cl:
        raise DomainError(f"F map is undefined inside the barrier (rho = {rho} < rho_cl = {rho_cl})")
    den = (params.epsilon + 1.0) * (rho - rho_cl) / rho
    return rho * pair.f / math.sqrt(den)


def schr_from_dirac_grid(rho, f, g, params: PhysicalParams) -> tuple[np.ndarray, np.ndarray]:
    """Vector form of :func:`schr_from_dirac` for both branches."""
    rho = np.asarray(rho, dtype=float)
    rho_cl = barrier_radius(params)
    if np.any(rho <= rho_cl):
        raise DomainError("F map needs rho > rho_cl at every node")
    fs = rho * np.asarray(f) / np.sqrt((params.epsilon + 1.0) * (rho - rho_cl) / rho)
    gs = rho * np.asarray(g) / np.sqrt(abs(params.epsilon) + 1.0 + params.z_alpha / rho)
    return fs, gs


def second_derivative(values, h: float) -> np.ndarray:
    """Five-point central second difference at the interior nodes ``2..n-3``."""
    y = np.asarray(values, dtype=float)
    return (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]) / (12.0 * h * h)


def schr_residual(samples: Sequence[SchrSolutionSample], params: PhysicalParams, branch: Branch = Branch.F) -> float:
    """Relative residual of ``u'' + 2 (E - U_eff) u = 0`` on uniform samples.

    ``max |u''_num + 2 (E - U_eff) u|`` over interior nodes divided by
    ``max |2 E u|`` over the same nodes (floored at 1e-30).
    """
    branch = Branch(branch)
    if len(samples) < 5:
        raise ParameterError("residual needs at least 5 samples")
    rho = np.array([s.rho for s in samples], dtype=float)
    u = np.array([s.f_schr if branch is Branch.F else s.g_schr for s in samples], dtype=float)
    steps = np.diff(rho)
    h = float(steps.mean())
    if h <= 0.0 or np.max(np.abs(steps - h)) > 1e-8 * h:
        raise ParameterError("samples must be uniformly spaced and increasing")
    pole = barrier_radius(params) if branch is Branch.F else lower_pole(params)
    if pole is not None and rho[0] <= pole <= rho[-1]:
        raise PoleError(f"sample window [{rho[0]}, {rho[-1]}] contains the pole at {pole!r}")
    potential = u_eff_f if branch is Branch.F else u_eff_g
    e_schr = 0.5 * (params.epsilon**2 - 1.0)
    inner = slice(2, len(rho) - 2)
    u_eff = np.array([potential(r, params) for r in rho[inner]])
    numer = np.abs(second_derivative(u, h) + 2.0 * (e_schr - u_eff) * u[inner])
    denom = max(float(np.max(np.abs(2.0 * e_schr * u[inner]))), RESIDUAL_FLOOR)
    return float(np.max(numer)) / denom


def fit_local_exponent(samples: Iterable[tuple[float, float]], x0: float) -> float:
    """Least-squares slope of ``ln|f|`` against ``ln|rho - x0|``.

    ``samples`` are ``(rho, f)`` pairs, all on one side of ``x0`` and
    spanning at least one decade in distance from it.
    """
    data = np.asarray(list(samples), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
        raise FitError("need at least two (rho, value) samples")
    dist = data[:, 0] - x0
    if np.all(dist < 0.0):
        dist = -dist
    if not np.all(dist > 0.0):
        raise DomainError("samples must lie strictly on one side of x0")
    if math.log10(dist.max() / dist.min()) < 1.0 - 1e-12:
        raise FitError("samples span less than one decade in distance from x0")
    mag = np.abs(data[:, 1])
    if np.any(mag == 0.0) or not np.all(np.isfinite(mag)):
        raise FitError("values must be finite and nonzero")
    slope, _ = np.polyfit(np.log(dist), np.log(mag), 1)
    return float(slope)


def barrier_coefficient(params: PhysicalParams, offsets: Sequence[float] = BARRIER_OFFSETS) -> float:
    """Richardson estimate of ``lim (rho - rho_cl)^2 U_eff^F`` as ``rho -> rho_cl+``.

    ``offsets`` are relative to ``rho_cl``; the polynomial through
    ``d^2 U(rho_cl + d)`` at those offsets is evaluated at ``d = 0``.
    """
    rho_cl = barrier_radius(params)
    d = np.asarray(offsets, dtype=float) * rho_cl
    vals = np.array([x * x * u_eff_f(rho_cl + x, params) for x in d])
    coef = np.polyfit(d, vals, len(d) - 1)
    return float(coef[-1])
