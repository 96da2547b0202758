"""Complex log-gamma and the confluent hypergeometric function 1F1.

``log_gamma`` uses Godfrey's Lanczos coefficients (g = 607/128, 15 terms)
with the reflection formula in the left half-plane.

``kummer_1f1`` sums the Maclaurin series for small ``|z|`` and continues
the solution of Kummer's equation ``z w'' + (b - z) w' - a w = 0`` outward
along the ray ``arg z = const`` by re-expanding it in Taylor series about
intermediate points. Steps are short, so each re-expansion only sums terms
of roughly the size of the result and there is none of the ``exp|z|``
cancellation that the plain Maclaurin series suffers on the imaginary axis.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, PoleError, PrecisionLossError

_EPS = 2.220446049250313e-16

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

# Maclaurin radius, relative step and absolute step cap of the Taylor
# continuation. Long steps make the local series cancel like exp(|h|).
_SERIES_RADIUS = 1.0
_STEP_RATIO = 0.25
_STEP_CAP = 4.0
_ALT_RADIUS = 0.8
_ALT_RATIO = 0.3
_ALT_CAP = 3.2
_MAX_TERMS = 20000

KUMMER_Z_MAX = 100.0
PRECISION_LIMIT = 1e-8


def _is_nonpositive_integer(x: complex) -> bool:
    x = complex(x)
    return x.imag == 0.0 and x.real <= 0.0 and x.real == math.floor(x.real)


def _lanczos(z: complex) -> complex:
    z = z - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z: complex) -> complex:
    """Principal branch of ``log Gamma(z)``.

    The branch is continuous in the plane cut along the negative real axis
    and agrees with ``math.lgamma`` (real part) on the positive axis.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma of non-finite argument {z!r}")
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real >= 0.5:
        return _lanczos(z)
    # log G(z) = log pi - log sin(pi z) - log G(1 - z), shifted onto the
    # principal branch by a multiple of 2 pi i.
    k = math.floor(0.5 * z.real + 0.25)
    shift = 2j * math.pi * (k if z.imag < 0 else -k)
    return _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - _lanczos(1.0 - z) - shift


def gamma_abs(z: complex) -> float:
    """``|Gamma(z)| = exp(Re log Gamma(z))``."""
    return math.exp(log_gamma(z).real)


def _csum(terms) -> complex:
    # math.fsum gives the correctly rounded sum of each component.
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _maclaurin(a: complex, b: float, z: complex):
    """Value, derivative and relative error bound of the series about 0."""
    term = 1.0 + 0j
    terms = [term]
    dterms = []
    running = term
    k = 0
    limit = abs(a) + abs(z)
    while True:
        term *= (a + k) / (b + k) * z / (k + 1)
        k += 1
        terms.append(term)
        dterms.append(term * k)
        running += term
        if k > limit and abs(term) <= 0.01 * _EPS * abs(running):
            break
        if term == 0:
            break
        if k > _MAX_TERMS:
            raise PrecisionLossError(f"1F1 series did not converge for a={a}, b={b}, z={z}")
    value = _csum(terms)
    deriv = _csum(dterms) / z if z != 0 else a / b
    if value == 0:
        return value, deriv, math.inf
    magnitude = math.fsum(abs(t) for t in terms)
    return value, deriv, _EPS * (k + magnitude / abs(value))


def _taylor_step(a: complex, b: float, z0: complex, w: complex, dw: complex, h: complex):
    """Advance ``(w, w')`` from ``z0`` to ``z0 + h`` by the local Taylor series.

    Coefficients follow from Kummer's equation written about ``z0``:
    ``z0 (n+2)(n+1) c[n+2] = -(n+1)(n + b - z0) c[n+1] + (n + a) c[n]``.
    """
    c_prev, c_cur = w, dw
    hpow = h
    terms = [w, dw * h]
    dterms = [dw]
    scale = max(abs(w), abs(dw * h), 1e-300)
    n = 0
    small = 0
    while True:
        c_next = (-(n + 1) * (n + b - z0) * c_cur + (n + a) * c_prev) / (z0 * (n + 2) * (n + 1))
        dterms.append((n + 2) * c_next * hpow)
        hpow *= h
        term = c_next * hpow
        terms.append(term)
        c_prev, c_cur = c_cur, c_next
        n += 1
        small = small + 1 if abs(term) <= 0.01 * _EPS * scale else 0
        if small >= 2:
            break
        if n > _MAX_TERMS:
            raise PrecisionLossError("1F1 continuation series did not converge")
    value = _csum(terms)
    deriv = _csum(dterms)
    cond = math.fsum(abs(t) for t in terms) / abs(value) if value != 0 else math.inf
    return value, deriv, cond, n


def _continue_along_ray(a: complex, b: float, z: complex, r0: float, ratio: float, cap: float):
    direction = z / abs(z)
    target = abs(z)
    r = r0
    w, dw, _ = _maclaurin(a, b, r * direction)
    while r < target:
        hr = min(target - r, ratio * r, cap)
        w, dw, _, _ = _taylor_step(a, b, r * direction, w, dw, hr * direction)
        r += hr
    return w, dw


def _kummer_with_derivative(a: complex, b: float, z: complex):
    if abs(z) <= _SERIES_RADIUS:
        return _maclaurin(a, b, z)
    # Two continuation paths through different intermediate points; their
    # disagreement is the a-posteriori error estimate.
    w, dw = _continue_along_ray(a, b, z, _SERIES_RADIUS, _STEP_RATIO, _STEP_CAP)
    w_alt, dw_alt = _continue_along_ray(a, b, z, _ALT_RADIUS, _ALT_RATIO, _ALT_CAP)
    if w == 0:
        return w, dw, math.inf
    err = 4.0 * abs(w - w_alt) / abs(w) + 16 * _EPS
    return w, dw, err


def _check_kummer_args(a: complex, b: float, z: complex, z_max: float):
    b = float(b)
    if _is_nonpositive_integer(b):
        raise PoleError(f"1F1 undefined for non-positive integer b = {b:g}")
    a, z = complex(a), complex(z)
    for v in (a.real, a.imag, b, z.real, z.imag):
        if not math.isfinite(v):
            raise DomainError("1F1 arguments must be finite")
    if abs(z) > z_max:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds z_max = {z_max:g}")
    return a, b, z


def kummer_1f1(a: complex, b: float, z: complex, *, z_max: float = KUMMER_Z_MAX):
    """Confluent hypergeometric function ``1F1(a; b; z)``.

    Returns
    -------
    value : complex
    error : float
        Estimated relative error of ``value``.

    Raises
    ------
    PoleError
        If ``b`` is a non-positive integer.
    PrecisionLossError
        If the estimated relative error exceeds ``1e-8``.
    """
    a, b, z = _check_kummer_args(a, b, z, z_max)
    if z == 0:
        return 1.0 + 0j, 0.0
    value, _, err = _kummer_with_derivative(a, b, z)
    if not err <= PRECISION_LIMIT:
        raise PrecisionLossError(
            f"1F1({a}; {b}; {z}) lost precision (estimated relative error {err:.3g})"
        )
    return value, err


def kummer_1f1_derivative(a: complex, b: float, z: complex, *, z_max: float = KUMMER_Z_MAX) -> complex:
    """``d/dz 1F1(a; b; z)`` from the same expansion as :func:`kummer_1f1`."""
    a, b, z = _check_kummer_args(a, b, z, z_max)
    if z == 0:
        return a / b
    _, deriv, err = _kummer_with_derivative(a, b, z)
    if not err <= PRECISION_LIMIT:
        raise PrecisionLossError(f"1F1 derivative lost precision (estimated {err:.3g})")
    return deriv
