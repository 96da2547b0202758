import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle_values import ORACLE
from prufer_dirac.errors import DomainError, PoleError
from prufer_dirac.model import PhysicalParams, derive
from prufer_dirac.specfun import gamma_abs, kummer_1f1, kummer_1f1_derivative, log_gamma


def test_log_gamma_simple_values():
    assert log_gamma(1.0) == 0.0 or abs(log_gamma(1.0)) < 1e-15
    assert log_gamma(0.5).real == pytest.approx(ORACLE["loggamma_half"], rel=1e-14)
    assert gamma_abs(2.0) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("z", ["3.7+2.1j", "-2.5+0.3j", "0.2-7j", "-10.3-4.4j", "25+40j"])
def test_log_gamma_principal_branch(z):
    want = ORACLE[f"loggamma_{z}"]
    got = log_gamma(complex(z))
    assert abs(got - want) <= 1e-13 * max(1.0, abs(want))


@pytest.mark.parametrize("y", [0.5, 0.0132, 1.0, 3.0])
def test_gamma_modulus_identity(y):
    want = math.sqrt(math.pi * y / math.sinh(math.pi * y))
    assert gamma_abs(complex(1.0, y)) == pytest.approx(want, rel=1e-12)


def test_gamma_modulus_at_half_matches_oracle():
    assert gamma_abs(1 + 0.5j) == pytest.approx(ORACLE["gamma_abs_1_05i"], rel=1e-13)


def test_gamma_modulus_for_coulomb_argument(hydrogen):
    d = derive(hydrogen)
    assert gamma_abs(complex(d.gamma + 1.0, d.nu)) == pytest.approx(ORACLE["gamma_abs_zn"], rel=1e-13)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_log_gamma_poles(z):
    with pytest.raises(PoleError):
        log_gamma(z)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(-30, 30), y=st.floats(-30, 30))
def test_log_gamma_recurrence(x, y):
    z = complex(x, y)
    if abs(z) < 1e-3 or (abs(y) < 1e-9 and x <= 0 and abs(x - round(x)) < 1e-6):
        return
    lhs = log_gamma(z + 1)
    rhs = log_gamma(z) + cmath.log(z)
    diff = lhs - rhs
    # Equal up to a multiple of 2 pi i.
    k = round(diff.imag / (2 * math.pi))
    assert abs(diff - 2j * math.pi * k) < 1e-10 * max(1.0, abs(lhs))


def test_kummer_at_origin_is_exactly_one():
    assert kummer_1f1(0.3 - 2j, 2.7, 0) == (1.0 + 0j, 0.0)


@pytest.mark.parametrize("z", [1.0, -3.5, 0.25, 12.0])
def test_kummer_closed_form(z):
    value, err = kummer_1f1(1.0, 2.0, z)
    assert value == pytest.approx(math.expm1(z) / z, rel=1e-12)
    assert err < 1e-10


def test_kummer_at_unit_radius_for_coulomb_arguments(hydrogen):
    d = derive(hydrogen)
    want = ORACLE["hyp_rho1"]
    assert want == ORACLE["hyp_rho1_series"]
    got, err = kummer_1f1(complex(d.gamma, -d.nu), 2 * d.gamma + 1, complex(0, -2 * d.p))
    assert abs(got - want) < 1e-13 * abs(want)
    assert err < 1e-10


def test_kummer_large_argument():
    d = derive(PhysicalParams(137, 1.2, -1))
    want = ORACLE["hyp_137_rho20"]
    got, err = kummer_1f1(complex(d.gamma, -d.nu), 2 * d.gamma + 1, complex(0, -2 * d.p * 20))
    assert abs(got - want) < 1e-10 * abs(want)
    assert err < 1e-8


def test_kummer_errors():
    with pytest.raises(PoleError):
        kummer_1f1(1.0, -2.0, 1.0)
    with pytest.raises(DomainError):
        kummer_1f1(1.0, 2.0, 150j)
    with pytest.raises(DomainError):
        kummer_1f1(math.nan, 2.0, 1.0)


def _operating_point(rng):
    z = int(rng.integers(1, 138))
    kappa = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    eps = float(rng.uniform(1.05, 3.0))
    d = derive(PhysicalParams(z, eps, kappa))
    rho = float(rng.uniform(1e-3, min(30.0, 40.0 / d.p)))
    return complex(d.gamma, -d.nu), 2 * d.gamma + 1, complex(0, -2 * d.p * rho)


def test_kummer_transformation_on_operating_range():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(100):
        a, b, z = _operating_point(rng)
        lhs, _ = kummer_1f1(a, b, z)
        rhs, _ = kummer_1f1(b - a, b, -z)
        worst = max(worst, abs(lhs - cmath.exp(z) * rhs) / abs(lhs))
    assert worst < 1e-9


def test_kummer_differential_equation():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b, z = _operating_point(rng)
        h = 1e-2 * z / abs(z)
        w = kummer_1f1(a, b, z)[0]
        dw = kummer_1f1_derivative(a, b, z)
        d = [kummer_1f1_derivative(a, b, z + j * h) for j in (-2, -1, 1, 2)]
        d2w = (d[0] - 8 * d[1] + 8 * d[2] - d[3]) / (12 * h)
        resid = z * d2w + (b - z) * dw - a * w
        scale = abs(z * d2w) + abs((b - z) * dw) + abs(a * w)
        assert abs(resid) < 1e-8 * scale


@settings(max_examples=60, deadline=None)
@given(ar=st.floats(-3, 3), ai=st.floats(-3, 3), b=st.floats(0.5, 4), zr=st.floats(-20, 20), zi=st.floats(-20, 20))
def test_kummer_conjugation_symmetry(ar, ai, b, zr, zi):
    a, z = complex(ar, ai), complex(zr, zi)
    w, _ = kummer_1f1(a, b, z)
    wc, _ = kummer_1f1(a.conjugate(), b, z.conjugate())
    assert abs(wc - w.conjugate()) <= 1e-13 * max(abs(w), 1e-300)
