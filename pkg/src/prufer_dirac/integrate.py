"""Adaptive Dormand-Prince 5(4) initial-value integrator.

Steps in either direction, lands exactly on requested output nodes and
keeps every accepted step so the trajectory can be re-sampled by cubic
Hermite interpolation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ParameterError

# Butcher tableau (Dormand & Prince 1980). The 7th stage is FSAL.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# Difference between the 5th- and 4th-order weights.
_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)

_SAFETY = 0.9
_GROW_MAX = 5.0
_SHRINK_MIN = 0.2
_BETA = 0.04
_ALPHA = 0.2 - 0.75 * _BETA


class Status(enum.Enum):
    COMPLETED = "Completed"
    STEP_UNDERFLOW = "StepUnderflow"
    MAX_STEPS_EXCEEDED = "MaxStepsExceeded"


@dataclass(frozen=True)
class Tolerances:
    """Error-control settings shared by all solvers.

    ``phase_track`` is the acceptance bound used when a numerical phase is
    checked against the analytic one.
    """

    rtol: float = 1e-10
    atol: float = 1e-12
    initial_step: float = 1e-3
    min_step: float = 1e-15
    phase_track: float = 1e-6
    max_steps: int = 10_000_000

    def __post_init__(self):
        for name in ("rtol", "atol"):
            v = getattr(self, name)
            if not 0.0 < v <= 1e-2:
                raise ParameterError(f"{name} must lie in (0, 1e-2], got {v}")
        if not 0.0 < self.min_step <= self.initial_step:
            raise ParameterError("need 0 < min_step <= initial_step")
        if self.phase_track <= 0.0:
            raise ParameterError("phase_track must be positive")
        if self.max_steps < 1:
            raise ParameterError("max_steps must be >= 1")

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)


@dataclass
class IvpResult:
    nodes: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray
    status: Status
    stats: dict = field(default_factory=dict)
    message: str = ""

    @property
    def completed(self) -> bool:
        return self.status is Status.COMPLETED

    @property
    def location(self) -> float:
        """Abscissa of the last accepted state."""
        return float(self.nodes[-1])

    def sample(self, t) -> np.ndarray:
        """Cubic Hermite interpolation of the accepted steps.

        Exact at the nodes. ``t`` must lie within the integrated range.
        """
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        x, y, f = self.nodes, self.values, self.derivatives
        if x[-1] < x[0]:
            x, y, f = x[::-1], y[::-1], f[::-1]
        lo, hi = x[0], x[-1]
        span = hi - lo
        slack = 1e-12 * max(abs(lo), abs(hi), span)
        if np.any(t < lo - slack) or np.any(t > hi + slack):
            raise ValueError(f"sample point outside integrated range [{lo}, {hi}]")
        t = np.clip(t, lo, hi)
        if len(x) == 1:
            out = np.repeat(y[:1], len(t), axis=0)
            return out[0] if scalar else out
        i = np.clip(np.searchsorted(x, t, side="right") - 1, 0, len(x) - 2)
        h = (x[i + 1] - x[i])[:, None]
        s = ((t - x[i]) / (x[i + 1] - x[i]))[:, None]
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        out = h00 * y[i] + h10 * h * f[i] + h01 * y[i + 1] + h11 * h * f[i + 1]
        exact = x[i] == t
        out[exact] = y[i[exact]]
        exact = x[i + 1] == t
        out[exact] = y[i[exact] + 1]
        return out[0] if scalar else out


def integrate_ivp(rhs, y0, span, tol: Tolerances | None = None, t_eval=None) -> IvpResult:
    """Integrate ``y' = rhs(t, y)`` over ``span = (a, b)``; ``b < a`` is allowed.

    Parameters
    ----------
    rhs : callable
        ``rhs(t, y) -> dy/dt`` for a 1-D float array ``y``.
    y0 : array_like
        State at ``a``.
    span : tuple of float
        ``(a, b)`` with ``a != b``.
    tol : Tolerances, optional
    t_eval : array_like, optional
        Abscissae inside the span that the step sequence must land on
        exactly; they appear among the returned nodes.

    Returns
    -------
    IvpResult
        Accepted nodes (monotone in the direction of integration), states
        and derivatives. On failure the partial trajectory is returned with
        a non-``COMPLETED`` status.
    """
    tol = tol or Tolerances()
    a, b = float(span[0]), float(span[1])
    if a == b:
        raise ParameterError("integration span must have a != b")
    direction = 1.0 if b > a else -1.0
    y = np.array(y0, dtype=float)
    if y.ndim != 1:
        raise ParameterError("state must be a 1-D array")

    stops = _stop_points(a, b, t_eval, direction)
    stop_idx = 0

    t = a
    f = np.asarray(rhs(t, y), dtype=float)
    n_rhs = 1
    nodes, values, derivs = [t], [y.copy()], [f.copy()]
    h = min(tol.initial_step, abs(b - a))
    err_old = 1e-4
    n_steps = n_rejected = 0
    status = Status.COMPLETED
    message = ""
    rejected_last = False
    k = [None] * 7

    while True:
        if n_steps >= tol.max_steps:
            status = Status.MAX_STEPS_EXCEEDED
            message = f"step cap {tol.max_steps} reached at t={t!r}"
            break
        target = stops[stop_idx]
        remaining = abs(target - t)
        landing = h >= remaining
        h_try = remaining if landing else h
        t_new = target if landing else t + direction * h_try
        if t_new == t:
            status = Status.STEP_UNDERFLOW
            message = f"step size below resolution at t={t!r}"
            break
        hs = direction * h_try

        k[0] = f
        for s in range(1, 7):
            acc = y.copy()
            for j, coef in enumerate(_A[s]):
                if coef:
                    acc += hs * coef * k[j]
            if s == 6:
                y_new = acc
                k[6] = np.asarray(rhs(t_new, y_new), dtype=float)
            else:
                k[s] = np.asarray(rhs(t + _C[s] * hs, acc), dtype=float)
        n_rhs += 6
        err_vec = hs * (_E[0] * k[0] + _E[2] * k[2] + _E[3] * k[3] + _E[4] * k[4] + _E[5] * k[5] + _E[6] * k[6])
        scale = tol.atol + tol.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale))
        if not math.isfinite(err):
            err = math.inf

        if err <= 1.0:
            fac11 = err**_ALPHA if err > 0 else 0.0
            fac = fac11 / err_old**_BETA / _SAFETY
            fac = min(1.0 / _SHRINK_MIN, max(1.0 / _GROW_MAX, fac))
            h_next = h_try / fac
            if rejected_last:
                h_next = min(h_next, h_try)
            if landing:
                h_next = max(h_next, h) if not rejected_last else h_next
            err_old = max(err, 1e-4)
            t, y, f = t_new, y_new, k[6]
            nodes.append(t)
            values.append(y.copy())
            derivs.append(f.copy())
            n_steps += 1
            rejected_last = False
            h = h_next
            if landing:
                stop_idx += 1
                if stop_idx == len(stops):
                    break
        else:
            n_rejected += 1
            rejected_last = True
            shrink = (err**_ALPHA / _SAFETY) if math.isfinite(err) else 1.0 / _SHRINK_MIN
            h = h_try / min(1.0 / _SHRINK_MIN, shrink)
            if h < tol.min_step:
                status = Status.STEP_UNDERFLOW
                message = f"required step {h:.3g} below min_step {tol.min_step:.3g} at t={t!r}"
                break

    return IvpResult(
        nodes=np.array(nodes),
        values=np.array(values),
        derivatives=np.array(derivs),
        status=status,
        stats={"steps": n_steps, "rejected": n_rejected, "rhs_evaluations": n_rhs},
        message=message,
    )


def _stop_points(a, b, t_eval, direction):
    if t_eval is None:
        return [b]
    pts = np.unique(np.asarray(t_eval, dtype=float))
    lo, hi = min(a, b), max(a, b)
    pts = pts[(pts > lo) & (pts < hi)] if direction > 0 else pts[(pts > lo) & (pts < hi)][::-1]
    return [float(p) for p in pts] + [b]
