import math

import numpy as np
import pytest

from conftest import params
from oracle_values import ORACLE
from prufer_dirac.errors import DomainError, ExistenceError, ParameterError
from prufer_dirac.integrate import Status
from prufer_dirac.model import PhysicalParams, gamma_of
from prufer_dirac.portrait import (
    Kind,
    classify,
    general_solution_near_zero,
    lambda2_closed_form,
    near_zero_residual,
    singular_point,
    singular_points,
    trace_portrait,
)

PHI0 = ORACLE["phi0_asin"]


def test_points_for_negative_kappa():
    pts = {sp.k: sp for sp in singular_points(params(1, -1))}
    assert pts[0].phi_k == pytest.approx(PHI0, abs=1e-15)
    assert pts[1].phi_k == pytest.approx(math.pi / 2 - PHI0, abs=1e-15)
    assert round(pts[0].phi_k, 5) == 0.00365
    assert pts[0].kind is Kind.NODE and pts[1].kind is Kind.SADDLE


def test_points_for_positive_kappa():
    pts = {sp.k: sp for sp in singular_points(params(1, 1))}
    assert pts[0].phi_k == pytest.approx(-PHI0, abs=1e-15)
    assert pts[-1].phi_k == pytest.approx(-math.pi / 2 + PHI0, abs=1e-15)
    assert pts[0].kind is Kind.SADDLE and pts[-1].kind is Kind.NODE


def test_spacing_alternates():
    pts = singular_points(params(1, -1), -3, 3)
    gaps = [b.phi_k - a.phi_k - math.pi / 2 for a, b in zip(pts, pts[1:])]
    assert all(abs(abs(g) - 2 * PHI0) < 1e-14 for g in gaps)
    assert all(g1 * g2 < 0 for g1, g2 in zip(gaps, gaps[1:]))


def test_kappa_flip_swaps_kinds():
    for z in (1, 50, 137):
        a = singular_points(params(z, -2))
        b = singular_points(params(z, 2))
        assert all(x.kind is not y.kind for x, y in zip(a, b))


def test_full_sweep_is_nondegenerate():
    for z in range(1, 138):
        for kappa in (-3, -2, -1, 1, 2, 3):
            p = PhysicalParams(z, 1.2, kappa)
            for sp in singular_points(p, -2, 3):
                assert sp.lambda1 == 1.0 and sp.lambda2 != 1.0 and sp.delta_k != 0.0
                assert classify(sp) is sp.kind
                assert sp.lambda2 == pytest.approx(lambda2_closed_form(p, sp.k), abs=1e-12)
                assert (sp.kind is Kind.NODE) == (math.copysign(1, kappa) * (-1) ** (sp.k + 1) > 0)


def test_lambda2_closed_form_up_to_kappa_ten():
    for z in (1, 7, 60, 137):
        for kappa in list(range(-10, 0)) + list(range(1, 11)):
            p = PhysicalParams(z, 1.2, kappa)
            for k in range(-2, 3):
                assert singular_point(p, k).lambda2 == pytest.approx(lambda2_closed_form(p, k), abs=1e-12)


def test_classification_has_period_two():
    p = params(10, -1)
    pts = singular_points(p, -4, 4)
    assert all(a.kind is b.kind for a, b in zip(pts, pts[2:]))


def test_points_approach_but_stay_distinct_at_z_137():
    pts = {sp.k: sp for sp in singular_points(params(137, -1), 0, 1)}
    gap = pts[1].phi_k - pts[0].phi_k
    assert gap == pytest.approx(math.pi / 2 - math.asin(137 * 7.2973525693e-3), abs=1e-14)
    assert gap > 0


def test_existence_and_range_errors():
    with pytest.raises(ExistenceError):
        PhysicalParams(2, 1.2, -1, alpha_fs=0.6)
    with pytest.raises(ParameterError):
        singular_points(params(), 2, 1)


def test_separatrix_limits():
    p = params(1, -1)
    g = gamma_of(p)
    assert general_solution_near_zero(p, 0.0, 0, 1e-5) == pytest.approx(math.atan((g + 1) / p.z_alpha), abs=1e-15)
    assert general_solution_near_zero(p, 0.0, 0, 1e-5) == pytest.approx(math.pi / 2 - PHI0, abs=1e-14)
    for c in (math.inf, -math.inf):
        assert general_solution_near_zero(p, c, 0, 1e-5) == pytest.approx(PHI0, abs=1e-15)


def test_near_zero_residual():
    p = params(1, -1)
    for c in (0.0, 1.0, -1.0, math.inf, -math.inf):
        for rho in np.geomspace(1e-8, 1e-3, 50):
            assert abs(near_zero_residual(p, c, 0, rho)) < 1e-10


def test_singular_denominator():
    # rho = 1 makes rho^(-2 gamma) exactly 1.
    with pytest.raises(DomainError):
        general_solution_near_zero(params(1, -1), 1.0, 0, 1.0)


def test_separatrix_trace():
    p = params(1, -1)
    seed = general_solution_near_zero(p, 0.0, 0, 1e-6)
    (curve,) = trace_portrait(p, [(1e-6, seed)], (1e-6, 1e-2))
    assert curve.completed
    dev = [abs(phi - general_solution_near_zero(p, 0.0, 0, r)) for r, phi in zip(curve.rho, curve.phi)]
    assert max(dev) < 1e-3


def test_generic_seeds_fall_into_node():
    p = params(1, -1)
    node = PHI0
    curves = trace_portrait(p, [(1e-3, phi) for phi in (-1.2, -0.4, 0.5, 1.2)], (1e-10, 1e-3))
    for c in curves:
        assert c.rho[0] == 1e-10
        assert abs(math.remainder(c.phi[0] - node, math.pi)) < 1e-4


def test_shift_by_pi():
    p = params(10, 1)
    grid = np.geomspace(1e-8, 0.1, 200)
    a, b = trace_portrait(p, [(1e-3, 0.3), (1e-3, 0.3 + math.pi)], (1e-8, 0.1), grid=grid)
    pa = a.phi[np.isin(a.rho, grid)]
    pb = b.phi[np.isin(b.rho, grid)]
    assert len(pa) == len(pb) == len(grid)
    assert np.max(np.abs(pb - pa - math.pi)) < 1e-9


def test_failed_curve_is_recorded():
    from prufer_dirac.integrate import Tolerances

    p = params(1, -1)
    curves = trace_portrait(p, [(1e-3, 0.3), (1e-3, 1.0)], (1e-12, 1e-2), Tolerances(max_steps=5))
    assert all(c.status is Status.MAX_STEPS_EXCEEDED for c in curves)
    assert all(len(c.rho) > 1 for c in curves)


def test_seed_outside_range():
    with pytest.raises(ParameterError):
        trace_portrait(params(), [(1.0, 0.0)], (1e-6, 1e-2))
