"""Physical parameters and closed-form derived quantities.

All radii are dimensionless, measured in Compton wavelengths of the fermion
(``rho = r / l_c`` with ``l_c = 1/m``); energies are in units of ``m c^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .errors import ExistenceError, ParameterError

#: CODATA 2018 fine-structure constant.
ALPHA_FS = 7.2973525693e-3

Z_MAX = 137


@dataclass(frozen=True)
class PhysicalParams:
    """One physical scenario: charge number, energy and Dirac quantum number."""

    Z: int
    epsilon: float
    kappa: int
    alpha_fs: float = ALPHA_FS

    def __post_init__(self):
        if isinstance(self.Z, bool) or int(self.Z) != self.Z:
            raise ParameterError(f"Z must be an integer, got {self.Z!r}")
        if not 1 <= self.Z <= Z_MAX:
            raise ParameterError(f"Z out of range 1..{Z_MAX}: {self.Z}")
        if isinstance(self.kappa, bool) or int(self.kappa) != self.kappa or self.kappa == 0:
            raise ParameterError(f"kappa must be a nonzero integer, got {self.kappa!r}")
        if not math.isfinite(self.epsilon):
            raise ParameterError(f"epsilon must be finite, got {self.epsilon!r}")
        if not 0.0 < self.alpha_fs < 1.0:
            raise ParameterError(f"alpha_fs out of range: {self.alpha_fs}")
        if abs(self.Z * self.alpha_fs / self.kappa) >= 1.0:
            raise ExistenceError(
                f"|Z alpha / kappa| = {abs(self.Z * self.alpha_fs / self.kappa):.6g} >= 1"
            )
        object.__setattr__(self, "Z", int(self.Z))
        object.__setattr__(self, "kappa", int(self.kappa))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def z_alpha(self) -> float:
        return self.Z * self.alpha_fs

    def with_(self, **changes) -> "PhysicalParams":
        return replace(self, **changes)

    def require_continuum(self):
        if not self.epsilon > 1.0:
            raise ParameterError(f"continuum states need epsilon > 1, got {self.epsilon}")


@dataclass(frozen=True)
class DerivedQuantities:
    gamma: float
    p: float
    nu: float
    xi: float
    rho_cl: float
    e_schr: float


def derive(params: PhysicalParams) -> DerivedQuantities:
    """Evaluate gamma, p, nu, xi, the barrier radius and E_Schr.

    ``xi`` is taken on the principal branch ``-arg(w)/2`` where
    ``w = (gamma - i nu) / (kappa - i nu / epsilon)``, so ``exp(-2 i xi) = w / |w|``.
    """
    params.require_continuum()
    za = params.z_alpha
    eps = params.epsilon
    kappa = params.kappa
    gamma = math.sqrt(kappa * kappa - za * za)
    p = math.sqrt((eps - 1.0) * (eps + 1.0))
    nu = -za * eps / p
    w = complex(gamma, -nu) / complex(kappa, -nu / eps)
    xi = -0.5 * cmath.phase(w)
    return DerivedQuantities(
        gamma=gamma,
        p=p,
        nu=nu,
        xi=xi,
        rho_cl=barrier_radius(params),
        e_schr=0.5 * (eps - 1.0) * (eps + 1.0),
    )


def barrier_radius(params: PhysicalParams) -> float:
    """Zero of ``epsilon + 1 - V(rho)``; valid for any ``epsilon > -1``."""
    if not params.epsilon > -1.0:
        raise ParameterError(f"barrier radius needs epsilon > -1, got {params.epsilon}")
    return params.z_alpha / (params.epsilon + 1.0)


def classical_radius_natural(params: PhysicalParams) -> float:
    """``r_cl / l_c`` from ``r_cl = Z (e^2/mc^2) / (1 + E/mc^2)``.

    With ``e^2 = alpha_fs`` and ``l_c = 1/m`` this is the same number as the
    barrier radius returned by :func:`derive`.
    """
    if not params.epsilon > -1.0:
        raise ParameterError(f"classical radius needs epsilon > -1, got {params.epsilon}")
    classical_over_compton = params.Z * params.alpha_fs
    return classical_over_compton / (1.0 + params.epsilon)


def gamma_of(params: PhysicalParams) -> float:
    """``sqrt(kappa^2 - (Z alpha)^2)``; needs no energy constraint."""
    za = params.z_alpha
    return math.sqrt(params.kappa * params.kappa - za * za)
