"""Equilibria of the phase equation on the line ``rho = 0``.

Multiplying the phase equation by ``rho`` and using ``t = ln rho`` gives the
autonomous planar system

    drho/dt = rho
    dPhi/dt = eps rho - Z alpha + rho cos(2 Phi) - kappa sin(2 Phi)

whose equilibria sit at ``rho = 0``, ``sin(2 Phi_k) = -Z alpha / kappa``.
The Jacobian there is ``[[1, 0], [eps + cos 2Phi_k, -2 kappa cos 2Phi_k]]``.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, ExistenceError, ParameterError
from .integrate import Status, Tolerances, integrate_ivp
from .model import PhysicalParams, gamma_of

RHO_FLOOR = 1e-12
K_RANGE = (-2, 2)


class Kind(enum.Enum):
    NODE = "Node"
    SADDLE = "Saddle"


@dataclass(frozen=True)
class SingularPoint:
    k: int
    phi_k: float
    lambda1: float
    lambda2: float
    delta_k: float
    kind: Kind
    # Remaining Jacobian entries (a = 1, b = 0 are fixed).
    c: float
    d: float


def _check_existence(params: PhysicalParams) -> float:
    ratio = params.z_alpha / params.kappa
    if abs(ratio) >= 1.0:
        raise ExistenceError(f"no equilibria: |Z alpha / kappa| = {abs(ratio):.6g} >= 1")
    return ratio


def singular_point(params: PhysicalParams, k: int) -> SingularPoint:
    ratio = _check_existence(params)
    k = int(k)
    sign = 1.0 if k % 2 else -1.0  # (-1)^(k+1)
    phi = 0.5 * sign * math.asin(ratio) + 0.5 * math.pi * k
    cos2 = math.cos(2.0 * phi)
    lambda2 = -2.0 * params.kappa * cos2
    delta = 1.0 * lambda2
    assert delta != 0.0 and lambda2 != 1.0
    return SingularPoint(
        k=k,
        phi_k=phi,
        lambda1=1.0,
        lambda2=lambda2,
        delta_k=delta,
        kind=Kind.NODE if delta > 0.0 else Kind.SADDLE,
        c=params.epsilon + cos2,
        d=lambda2,
    )


def singular_points(params: PhysicalParams, k_min: int = K_RANGE[0], k_max: int = K_RANGE[1]) -> list[SingularPoint]:
    """Classified equilibria ``Phi_k`` for ``k_min <= k <= k_max``."""
    _check_existence(params)
    if k_min > k_max:
        raise ParameterError("need k_min <= k_max")
    return [singular_point(params, k) for k in range(k_min, k_max + 1)]


def lambda2_closed_form(params: PhysicalParams, k: int) -> float:
    """``2 sign(kappa) (-1)^(k+1) sqrt(kappa^2 - (Z alpha)^2)``."""
    sign = 1.0 if k % 2 else -1.0
    return 2.0 * math.copysign(1.0, params.kappa) * sign * gamma_of(params)


def classify(point: SingularPoint) -> Kind:
    assert point.delta_k != 0.0
    return Kind.NODE if point.delta_k > 0.0 else Kind.SADDLE


def _near_zero_parts(params, c_param, rho):
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    gamma = gamma_of(params)
    if math.isinf(c_param):
        return gamma, 0.0, 0.0
    x = rho ** (-2.0 * gamma)
    cx = c_param * x
    den = 1.0 - cx
    if den == 0.0:
        raise DomainError(f"C rho^(-2 gamma) = 1 at rho = {rho!r}")
    q = 2.0 * gamma / den
    dq = -4.0 * gamma * gamma * cx / (rho * den * den)
    return gamma, q, dq


def _shifted(q: float, params: PhysicalParams, gamma: float) -> float:
    """``q - kappa - gamma`` without cancellation in the two separatrix limits."""
    kappa, za2 = params.kappa, params.z_alpha**2
    if q == 0.0 and kappa < 0:
        return za2 / (gamma - kappa)
    if q == 2.0 * gamma and kappa > 0:
        return -za2 / (gamma + kappa)
    return q - kappa - gamma


def general_solution_near_zero(params: PhysicalParams, c_param: float, k: int, rho: float) -> float:
    """Closed-form phase for small ``rho`` in the family labelled by ``C``.

    ``Phi = arctan((2 gamma / (1 - C rho^(-2 gamma)) - kappa - gamma) / (Z alpha)) + k pi``.
    ``C = 0`` gives the saddle separatrix; ``C = +-inf`` (``math.inf``) is
    handled as an exact limit and gives the node value.
    """
    gamma, q, _ = _near_zero_parts(params, float(c_param), float(rho))
    return math.atan(_shifted(q, params, gamma) / params.z_alpha) + k * math.pi


def general_solution_slope(params: PhysicalParams, c_param: float, rho: float) -> float:
    """``dPhi/drho`` of :func:`general_solution_near_zero` (independent of ``k``)."""
    gamma, q, dq = _near_zero_parts(params, float(c_param), float(rho))
    u = _shifted(q, params, gamma) / params.z_alpha
    return dq / (params.z_alpha * (1.0 + u * u))


def near_zero_residual(params: PhysicalParams, c_param: float, k: int, rho: float) -> float:
    """``rho Phi' + Z alpha + kappa sin(2 Phi)`` for the closed-form family."""
    phi = general_solution_near_zero(params, c_param, k, rho)
    slope = general_solution_slope(params, c_param, rho)
    return rho * slope + params.z_alpha + params.kappa * math.sin(2.0 * phi)


@dataclass
class PhaseCurve:
    seed: tuple[float, float]
    rho: np.ndarray
    phi: np.ndarray
    status: Status
    message: str = ""

    @property
    def completed(self) -> bool:
        return self.status is Status.COMPLETED


def _phase_only(params: PhysicalParams):
    eps, za, kappa = params.epsilon, params.z_alpha, float(params.kappa)

    def rhs(rho, y):
        return np.array((eps - za / rho + math.cos(2.0 * y[0]) - kappa / rho * math.sin(2.0 * y[0]),))

    return rhs


def _trace_one(params, seed, lo, hi, tol, grid):
    rho0, phi0 = float(seed[0]), float(seed[1])
    # The equation has period pi in Phi; integrating from the reduced seed
    # makes seeds that differ by a multiple of pi share one step sequence.
    shift = math.pi * round(phi0 / math.pi)
    phi0 -= shift
    rhs = _phase_only(params)
    pieces_r, pieces_p = [], []
    status, message = Status.COMPLETED, ""
    if rho0 > lo:
        left = integrate_ivp(rhs, [phi0], (rho0, lo), tol, t_eval=grid)
        pieces_r.append(left.nodes[::-1])
        pieces_p.append(left.values[::-1, 0])
        if not left.completed:
            status, message = left.status, f"leftward: {left.message}"
    if rho0 < hi:
        right = integrate_ivp(rhs, [phi0], (rho0, hi), tol, t_eval=grid)
        start = 1 if pieces_r else 0
        pieces_r.append(right.nodes[start:])
        pieces_p.append(right.values[start:, 0])
        if not right.completed and status is Status.COMPLETED:
            status, message = right.status, f"rightward: {right.message}"
    if not pieces_r:
        pieces_r, pieces_p = [np.array([rho0])], [np.array([phi0])]
    return PhaseCurve(
        seed=(rho0, float(seed[1])),
        rho=np.concatenate(pieces_r),
        phi=np.concatenate(pieces_p) + shift,
        status=status,
        message=message,
    )


def trace_portrait(
    params: PhysicalParams,
    seeds: Sequence[tuple[float, float]],
    rho_range: tuple[float, float],
    tol: Tolerances | None = None,
    rho_floor: float = RHO_FLOOR,
    max_workers: int = 1,
    grid=None,
) -> list[PhaseCurve]:
    """Integrate the phase equation through each seed in both directions.

    Leftward runs stop at ``max(rho_range[0], rho_floor)``. A curve whose
    integration fails is returned with its partial trajectory and status.
    Nodes of ``grid`` inside the traced range appear exactly among the
    curve's radii.
    """
    lo, hi = float(rho_range[0]), float(rho_range[1])
    if not 0.0 < lo < hi:
        raise ParameterError("rho_range must satisfy 0 < lo < hi")
    lo = max(lo, rho_floor)
    for r, _ in seeds:
        if not lo <= r <= hi:
            raise ParameterError(f"seed radius {r} outside [{lo}, {hi}]")
    tol = tol or Tolerances()
    if max_workers <= 1:
        return [_trace_one(params, s, lo, hi, tol, grid) for s in seeds]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda s: _trace_one(params, s, lo, hi, tol, grid), seeds))
