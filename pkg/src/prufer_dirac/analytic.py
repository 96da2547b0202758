"""Coulomb continuum radial functions of the Dirac equation (repulsive field).

The pair is normalized to divergent spherical waves at infinity::

    F, G = 2^{3/2} sqrt((eps +- 1)/eps) e^{pi nu/2} |Gamma(gamma+1+i nu)| / Gamma(2 gamma+1)
           * (2 p rho)^gamma / rho * {Im, Re}[ e^{i(p rho + xi)} 1F1(gamma - i nu; 2 gamma + 1; -2 i p rho) ]
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import PhysicalParams, derive
from .specfun import KUMMER_Z_MAX, kummer_1f1, log_gamma

_REFINE_LIMIT = 60


@dataclass(frozen=True)
class RadialPair:
    f: float
    g: float
    rho: float


def _log_prefactor(params: PhysicalParams) -> float:
    d = derive(params)
    return (
        1.5 * math.log(2.0)
        + 0.5 * math.pi * d.nu
        + log_gamma(complex(d.gamma + 1.0, d.nu)).real
        - log_gamma(2.0 * d.gamma + 1.0).real
    )


def coulomb_continuum(params: PhysicalParams, rho: float, *, z_max: float = KUMMER_Z_MAX) -> RadialPair:
    """Analytic ``(F, G)`` at ``rho`` (Compton wavelengths).

    ``z_max`` bounds ``2 p rho``, the modulus of the 1F1 argument.
    """
    params.require_continuum()
    rho = float(rho)
    if not rho > 0.0 or not math.isfinite(rho):
        raise DomainError(f"rho must be positive and finite, got {rho}")
    d = derive(params)
    eps = params.epsilon
    # (2 p rho)^gamma / rho in log space so tiny rho stays finite.
    log_amp = _log_prefactor(params) + d.gamma * math.log(2.0 * d.p * rho) - math.log(rho)
    hyp, _ = kummer_1f1(complex(d.gamma, -d.nu), 2.0 * d.gamma + 1.0, complex(0.0, -2.0 * d.p * rho), z_max=z_max)
    w = cmath.exp(1j * (d.p * rho + d.xi)) * hyp
    amp = math.exp(log_amp)
    f = amp * math.sqrt((eps + 1.0) / eps) * w.imag
    g = amp * math.sqrt((eps - 1.0) / eps) * w.real
    return RadialPair(f=f, g=g, rho=rho)


def coulomb_continuum_grid(params: PhysicalParams, rho, *, z_max: float = KUMMER_Z_MAX) -> tuple[np.ndarray, np.ndarray]:
    """Vector form of :func:`coulomb_continuum`; returns ``(F, G)`` arrays."""
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    f = np.empty_like(rho)
    g = np.empty_like(rho)
    for i, r in enumerate(rho):
        pair = coulomb_continuum(params, r, z_max=z_max)
        f[i], g[i] = pair.f, pair.g
    return f, g


def unwrap_reference(params: PhysicalParams) -> float:
    """Radius from which the analytic phase is continued: ``max(1e-4, rho_cl)``."""
    return 1e-4 * max(1.0, derive(params).rho_cl / 1e-4)


def _phase_rate_bound(params: PhysicalParams, rho: float) -> float:
    # Upper bound on |dPhi/drho| from the phase equation.
    return params.epsilon + 1.0 + (abs(params.kappa) + params.z_alpha) / rho


def _raw_phase(params, rho):
    f, g = coulomb_continuum_grid(params, rho)
    if np.any((f == 0.0) & (g == 0.0)):
        bad = rho[(f == 0.0) & (g == 0.0)][0]
        raise DomainError(f"phase undefined: F = G = 0 at rho = {bad}")
    return np.arctan2(f, g)


def analytic_phase_curve(params: PhysicalParams, rho) -> np.ndarray:
    """Continuous phase ``Phi = atan2(F, G)`` at each ``rho``.

    The branch at the reference radius (:func:`unwrap_reference`) is the
    principal ``atan2`` value; elsewhere it is fixed by continuity, with
    intervals subdivided until no increment exceeds ``pi/2``.
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    if np.any(rho <= 0.0):
        raise DomainError("rho must be positive")
    ref = unwrap_reference(params)
    pts = np.unique(np.concatenate([rho, [ref]]))
    pts = _refine(params, pts)
    raw = _raw_phase(params, pts)
    for _ in range(_REFINE_LIMIT):
        jumps = np.abs(np.angle(np.exp(1j * np.diff(raw))))
        bad = np.nonzero(jumps > 0.5 * math.pi)[0]
        if bad.size == 0:
            break
        mids = 0.5 * (pts[bad] + pts[bad + 1])
        pts = np.concatenate([pts, mids])
        order = np.argsort(pts)
        pts = pts[order]
        raw = np.concatenate([raw, _raw_phase(params, mids)])[order]
    i0 = int(np.searchsorted(pts, ref))
    phase = np.empty_like(raw)
    phase[i0:] = np.unwrap(raw[i0:])
    phase[: i0 + 1] = np.unwrap(raw[: i0 + 1][::-1])[::-1]
    return phase[np.searchsorted(pts, rho)]


def _refine(params, pts):
    """Insert nodes so that the a-priori phase increment per interval is < pi/4."""
    out = [pts[0]]
    for lo, hi in zip(pts[:-1], pts[1:]):
        cur = lo
        while True:
            step = 0.25 * math.pi / _phase_rate_bound(params, cur)
            if cur + step >= hi:
                break
            cur = cur + step
            out.append(cur)
        out.append(hi)
    return np.array(out)


def analytic_phase(params: PhysicalParams, rho: float) -> float:
    """Continuous analytic phase at a single radius."""
    return float(analytic_phase_curve(params, [rho])[0])


def wrap_ray(delta):
    """Reduce a phase difference to ``(-pi/2, pi/2]`` (equality of rays F/G)."""
    delta = np.asarray(delta, dtype=float)
    return delta - math.pi * np.round(delta / math.pi)
