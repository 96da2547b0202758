"""Radial Dirac system in Coulomb form and its Pruefer phase/amplitude form.

With ``F = P sin(Phi)`` and ``G = P cos(Phi)`` the pair of first-order radial
equations becomes

    dPhi/drho   = eps - Z alpha/rho + cos(2 Phi) - (kappa/rho) sin(2 Phi)
    dlnP/drho   = -1/rho + (kappa/rho) cos(2 Phi) + sin(2 Phi)

The phase equation is autonomous in ``Phi``; ``ln P`` is a quadrature
along the phase trajectory. Both are integrated together.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    RadialPair,
    analytic_phase,
    coulomb_continuum,
    coulomb_continuum_grid,
    wrap_ray,
)
from .errors import DomainError, FitError, IntegrationError, ParameterError, ToleranceError
from .integrate import IvpResult, Tolerances, integrate_ivp
from .model import PhysicalParams, barrier_radius, gamma_of

DEFAULT_WINDOW = (10.0, 20.0)
CONVERGENCE_THRESHOLD = 0.01


class BoundaryKind(enum.Enum):
    BARRIER_ZERO = "BarrierZero"
    ANALYTIC_SEED = "AnalyticSeed"
    BARRIER_INWARD = "BarrierInward"


@dataclass(frozen=True)
class PhaseState:
    phi: float
    ln_p: float
    rho: float = math.nan


@dataclass
class RadialSolution:
    """Phase trajectory on a strictly increasing grid.

    ``F``, ``G`` and the density are derived from ``phi``, ``ln_p`` and
    ``norm_scale`` on access, so rescaling never leaves them stale.
    """

    rho: np.ndarray
    phi: np.ndarray
    ln_p: np.ndarray
    params: PhysicalParams
    boundary_kind: BoundaryKind
    norm_scale: float = 1.0
    ivp: IvpResult | None = field(default=None, repr=False)

    @property
    def grid(self) -> np.ndarray:
        return self.rho

    @property
    def amplitude(self) -> np.ndarray:
        return self.norm_scale * np.exp(self.ln_p)

    @property
    def f(self) -> np.ndarray:
        return self.amplitude * np.sin(self.phi)

    @property
    def g(self) -> np.ndarray:
        return self.amplitude * np.cos(self.phi)

    @property
    def density(self) -> np.ndarray:
        return (self.f**2 + self.g**2) * self.rho**2

    @property
    def states(self) -> list[PhaseState]:
        return [PhaseState(float(p), float(q), float(r)) for r, p, q in zip(self.rho, self.phi, self.ln_p)]

    @property
    def pairs(self) -> list[RadialPair]:
        return [RadialPair(float(a), float(b), float(r)) for a, b, r in zip(self.f, self.g, self.rho)]

    def sample(self, rho) -> tuple[np.ndarray, np.ndarray]:
        """``(phi, ln_p)`` at arbitrary radii inside the solved range."""
        rho = np.asarray(rho, dtype=float)
        if self.ivp is None:
            return np.interp(rho, self.rho, self.phi), np.interp(rho, self.rho, self.ln_p)
        y = self.ivp.sample(rho)
        return y[..., 0], y[..., 1]

    def sample_pairs(self, rho) -> tuple[np.ndarray, np.ndarray]:
        phi, ln_p = self.sample(rho)
        amp = self.norm_scale * np.exp(ln_p)
        return amp * np.sin(phi), amp * np.cos(phi)


def _require_positive(rho):
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")


def dirac_rhs(rho: float, pair: RadialPair, params: PhysicalParams) -> tuple[float, float]:
    """``(dF/drho, dG/drho)`` of the radial Dirac system."""
    _require_positive(rho)
    v = params.z_alpha / rho
    eps, kappa = params.epsilon, params.kappa
    df = (eps + 1.0 - v) * pair.g - (1.0 + kappa) / rho * pair.f
    dg = -(eps - 1.0 - v) * pair.f - (1.0 - kappa) / rho * pair.g
    return df, dg


def pruefer_rhs(rho: float, phi: float, params: PhysicalParams) -> float:
    _require_positive(rho)
    return (
        params.epsilon
        - params.z_alpha / rho
        + math.cos(2.0 * phi)
        - params.kappa / rho * math.sin(2.0 * phi)
    )


def lnp_rhs(rho: float, phi: float, params: PhysicalParams) -> float:
    _require_positive(rho)
    return -1.0 / rho + params.kappa / rho * math.cos(2.0 * phi) + math.sin(2.0 * phi)


def reconstruct(state: PhaseState, scale: float = 1.0) -> RadialPair:
    amp = scale * math.exp(state.ln_p)
    return RadialPair(f=amp * math.sin(state.phi), g=amp * math.cos(state.phi), rho=state.rho)


def radial_density(pair: RadialPair) -> float:
    return (pair.f * pair.f + pair.g * pair.g) * pair.rho * pair.rho


def _pruefer_system(params: PhysicalParams):
    eps, za, kappa = params.epsilon, params.z_alpha, float(params.kappa)
    cos, sin = math.cos, math.sin

    def rhs(rho, y):
        c2 = cos(2.0 * y[0])
        s2 = sin(2.0 * y[0])
        inv = 1.0 / rho
        return np.array(
            (eps - za * inv + c2 - kappa * inv * s2, -inv + kappa * inv * c2 + s2)
        )

    return rhs


def _direct_system(params: PhysicalParams):
    eps, za, kappa = params.epsilon, params.z_alpha, float(params.kappa)

    def rhs(rho, y):
        v = za / rho
        f, g = y[0], y[1]
        return np.array(
            ((eps + 1.0 - v) * g - (1.0 + kappa) / rho * f, -(eps - 1.0 - v) * f - (1.0 - kappa) / rho * g)
        )

    return rhs


def _run(rhs, y0, span, tol, grid, what):
    res = integrate_ivp(rhs, y0, span, tol, t_eval=grid)
    if not res.completed:
        raise IntegrationError(
            f"{what}: integration stopped at rho = {res.location!r} ({res.status.value}): {res.message}",
            location=res.location,
            status=res.status,
        )
    return res


def _barrier_tolerances(tol: Tolerances | None, rho_cl: float) -> Tolerances:
    tol = tol or Tolerances()
    first = min(tol.initial_step, 1e-3 * rho_cl)
    return tol.with_(initial_step=first, min_step=min(tol.min_step, first))


def _as_solution(res: IvpResult, params, kind, norm_scale=1.0) -> RadialSolution:
    rho, y = res.nodes, res.values
    if rho[-1] < rho[0]:
        rho, y = rho[::-1], y[::-1]
    return RadialSolution(
        rho=rho.copy(),
        phi=y[:, 0].copy(),
        ln_p=y[:, 1].copy(),
        params=params,
        boundary_kind=kind,
        norm_scale=norm_scale,
        ivp=res,
    )


def solve_pruefer(params, rho0, phi0, ln_p0, rho_end, tol=None, grid=None) -> IvpResult:
    """Integrate the phase/amplitude pair from ``rho0`` to ``rho_end``."""
    _require_positive(rho0)
    _require_positive(rho_end)
    return _run(_pruefer_system(params), [phi0, ln_p0], (rho0, rho_end), tol, grid, "pruefer")


def solve_direct(params, rho0, f0, g0, rho_end, tol=None, grid=None) -> IvpResult:
    """Integrate ``(F, G)`` directly from the first-order system."""
    _require_positive(rho0)
    _require_positive(rho_end)
    return _run(_direct_system(params), [f0, g0], (rho0, rho_end), tol, grid, "direct")


def solve_new_solution(params: PhysicalParams, rho_max: float, tol: Tolerances | None = None, grid=None) -> RadialSolution:
    """Solution with ``Phi(rho_cl) = 0``, ``ln P(rho_cl) = 0``, integrated outward.

    ``(rho_cl, 0)`` is a stationary point of the phase equation, not a
    singularity, so integration starts exactly at the barrier. Near it
    ``Phi ~ (eps+1)^2 / (2 Z alpha) (rho - rho_cl)^2`` and ``F ~ (rho - rho_cl)^2``.
    ``grid`` nodes inside the range are hit exactly.
    """
    params.require_continuum()
    rho_cl = barrier_radius(params)
    if not rho_max > rho_cl + 1.0:
        raise ParameterError(f"rho_max must exceed rho_cl + 1 = {rho_cl + 1.0}")
    tol = _barrier_tolerances(tol, rho_cl)
    res = _run(_pruefer_system(params), [0.0, 0.0], (rho_cl, rho_max), tol, grid, "barrier solution")
    return _as_solution(res, params, BoundaryKind.BARRIER_ZERO)


def solve_reference(
    params: PhysicalParams, rho_seed: float, rho_max: float, tol: Tolerances | None = None, grid=None
) -> RadialSolution:
    """Outward run seeded with the analytic phase and amplitude at ``rho_seed``.

    Raises ToleranceError if the phase leaves the analytic one by more than
    ``tol.phase_track`` at any output node.
    """
    params.require_continuum()
    if not 0.0 < rho_seed <= rho_max:
        raise ParameterError("need 0 < rho_seed <= rho_max")
    tol = tol or Tolerances()
    seed = coulomb_continuum(params, rho_seed)
    phi0 = analytic_phase(params, rho_seed)
    ln_p0 = math.log(math.hypot(seed.f, seed.g))
    if rho_max == rho_seed:
        return RadialSolution(
            rho=np.array([rho_seed]),
            phi=np.array([phi0]),
            ln_p=np.array([ln_p0]),
            params=params,
            boundary_kind=BoundaryKind.ANALYTIC_SEED,
        )
    res = _run(_pruefer_system(params), [phi0, ln_p0], (rho_seed, rho_max), tol, grid, "reference solution")
    sol = _as_solution(res, params, BoundaryKind.ANALYTIC_SEED)
    check = sol.rho if grid is None else np.asarray(grid, dtype=float)
    dev = tracking_deviation(sol, check)
    if dev > tol.phase_track:
        raise ToleranceError(f"reference phase deviates from analytic by {dev:.3g} > {tol.phase_track:.3g}")
    return sol


def tracking_deviation(sol: RadialSolution, rho) -> float:
    """Max ray distance between the solution phase and the analytic phase."""
    rho = np.asarray(rho, dtype=float)
    phi, _ = sol.sample(rho)
    f, g = coulomb_continuum_grid(sol.params, rho)
    return float(np.max(np.abs(wrap_ray(phi - np.arctan2(f, g)))))


def match_normalization(sol: RadialSolution, params: PhysicalParams, window=DEFAULT_WINDOW) -> float:
    """Least-squares amplitude matching of ``sol`` to the analytic pair on ``window``.

    The scale minimizes the summed squared differences of both components
    over the solution nodes in the window; it is stored in ``sol.norm_scale``.
    """
    lo, hi = map(float, window)
    if not lo < hi:
        raise ParameterError("window must satisfy lo < hi")
    if lo < sol.rho[0] or hi > sol.rho[-1]:
        raise ParameterError(f"window [{lo}, {hi}] outside solution range [{sol.rho[0]}, {sol.rho[-1]}]")
    mask = (sol.rho >= lo) & (sol.rho <= hi)
    if mask.sum() < 8:
        raise FitError(f"only {int(mask.sum())} solution nodes in window [{lo}, {hi}]")
    rho = sol.rho[mask]
    unit = np.exp(sol.ln_p[mask])
    fn, gn = unit * np.sin(sol.phi[mask]), unit * np.cos(sol.phi[mask])
    fa, ga = coulomb_continuum_grid(params, rho)
    denom = float(np.dot(fn, fn) + np.dot(gn, gn))
    if denom == 0.0:
        raise FitError("solution vanishes on the matching window")
    scale = float(np.dot(fn, fa) + np.dot(gn, ga)) / denom
    resid = math.sqrt(np.mean((scale * fn - fa) ** 2 + (scale * gn - ga) ** 2))
    ref = math.sqrt(np.mean(fa**2 + ga**2))
    if resid > 0.1 * ref:
        raise FitError(f"matching residual {resid:.3g} exceeds 10% of analytic RMS {ref:.3g}")
    sol.norm_scale = scale
    return scale


def integrate_inward(
    params: PhysicalParams, phi_at_rho_cl: float, rho_min: float, tol: Tolerances | None = None, grid=None
) -> RadialSolution:
    """Leftward run from the barrier towards the origin.

    Generic phases are drawn into the node of the phase equation as
    ``rho -> 0`` and the amplitude diverges there.
    """
    rho_cl = barrier_radius(params)
    if not 0.0 < rho_min < rho_cl:
        raise ParameterError(f"need 0 < rho_min < rho_cl = {rho_cl}")
    tol = _barrier_tolerances(tol, rho_cl)
    res = _run(_pruefer_system(params), [phi_at_rho_cl, 0.0], (rho_cl, rho_min), tol, grid, "inward run")
    return _as_solution(res, params, BoundaryKind.BARRIER_INWARD)


def node_phase(params: PhysicalParams, k: int = 0) -> float:
    """``arctan((-kappa - gamma) / (Z alpha)) + k pi``: the node approached as rho -> 0."""
    gamma, kappa = gamma_of(params), params.kappa
    # For kappa < 0, -kappa - gamma = (Z alpha)^2 / (|kappa| + gamma) avoids cancellation.
    top = params.z_alpha**2 / (gamma - kappa) if kappa < 0 else -kappa - gamma
    return math.atan(top / params.z_alpha) + k * math.pi


def barrier_curvature(sol: RadialSolution, offsets=None) -> float:
    """Fit ``Phi = c d^2 + c3 d^3 + c4 d^4`` near the barrier and return ``c``.

    ``offsets`` are distances ``d`` from ``rho_cl``; the default spans
    ``[1e-4, 1e-2] * rho_cl``.
    """
    rho_cl = barrier_radius(sol.params)
    d = np.geomspace(1e-4, 1e-2, 25) * rho_cl if offsets is None else np.asarray(offsets, dtype=float)
    phi, _ = sol.sample(rho_cl + d)
    coef = np.polyfit(d, phi / d**2, 2)
    return float(coef[-1])


def curvature_closed_form(params: PhysicalParams) -> float:
    """``(eps+1)^2 / (2 Z alpha)`` from expanding the phase equation at the barrier."""
    return (params.epsilon + 1.0) ** 2 / (2.0 * params.z_alpha)


def convergence_distance(sol: RadialSolution, rho, threshold: float = CONVERGENCE_THRESHOLD) -> float:
    """First ``rho - rho_cl`` on ``rho`` where the ray distance to the analytic phase is below ``threshold``.

    Returns ``inf`` if it never drops below.
    """
    rho = np.asarray(rho, dtype=float)
    phi, _ = sol.sample(rho)
    f, g = coulomb_continuum_grid(sol.params, rho)
    dev = np.abs(wrap_ray(phi - np.arctan2(f, g)))
    hit = np.nonzero(dev < threshold)[0]
    if hit.size == 0:
        return math.inf
    return float(rho[hit[0]] - barrier_radius(sol.params))


def phase_deviation(sol: RadialSolution, rho) -> np.ndarray:
    """Ray distance ``|Phi_sol - Phi_analytic|`` (mod pi) at each radius."""
    rho = np.asarray(rho, dtype=float)
    phi, _ = sol.sample(rho)
    f, g = coulomb_continuum_grid(sol.params, rho)
    return np.abs(wrap_ray(phi - np.arctan2(f, g)))
