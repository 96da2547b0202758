import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import params
from oracle_values import ORACLE
from prufer_dirac.analytic import RadialPair, analytic_phase_curve, coulomb_continuum, coulomb_continuum_grid
from prufer_dirac.dirac import (
    BoundaryKind,
    PhaseState,
    RadialSolution,
    barrier_curvature,
    curvature_closed_form,
    dirac_rhs,
    integrate_inward,
    lnp_rhs,
    match_normalization,
    node_phase,
    pruefer_rhs,
    radial_density,
    reconstruct,
    solve_direct,
    solve_new_solution,
    solve_pruefer,
    solve_reference,
)
from prufer_dirac.errors import DomainError, FitError, IntegrationError, ParameterError
from prufer_dirac.integrate import Tolerances
from prufer_dirac.model import barrier_radius, gamma_of

H = params(1, -1)
RHO_CL = barrier_radius(H)


@pytest.fixture(scope="module")
def new_solution():
    return solve_new_solution(H, 25.0)


def test_dirac_rhs_values():
    assert dirac_rhs(1.0, RadialPair(0.0, 0.0, 1.0), H) == (0.0, 0.0)
    df, dg = dirac_rhs(1.0, RadialPair(0.3, 0.5, 1.0), H)
    assert (df, dg) == pytest.approx(ORACLE["dirac_rhs"], rel=1e-14)
    # At the barrier radius the G coefficient in dF vanishes.
    df, _ = dirac_rhs(RHO_CL, RadialPair(0.0, 7.0, RHO_CL), H)
    assert abs(df) < 1e-15 * 7.0 / RHO_CL
    with pytest.raises(DomainError):
        dirac_rhs(0.0, RadialPair(1.0, 1.0, 0.0), H)


def test_phase_and_amplitude_rhs_values():
    assert pruefer_rhs(RHO_CL, 0.0, H) == pytest.approx(0.0, abs=1e-13)
    assert pruefer_rhs(1e8, 0.4, H) == pytest.approx(1.2 + math.cos(0.8), abs=1e-7)
    assert lnp_rhs(0.7, 0.0, H) == pytest.approx(-2 / 0.7, rel=1e-15)
    assert lnp_rhs(0.7, 0.0, params(1, 1)) == 0.0
    for fn in (pruefer_rhs, lnp_rhs):
        with pytest.raises(DomainError):
            fn(0.0, 0.1, H)


@given(rho=st.floats(1e-6, 1e3), phi=st.floats(-20, 20), k=st.integers(-3, 3))
def test_stationary_point_and_period(rho, phi, k):
    assert pruefer_rhs(rho, phi + math.pi, H) == pytest.approx(pruefer_rhs(rho, phi, H), rel=1e-9, abs=1e-9 / rho)
    assert abs(pruefer_rhs(RHO_CL, k * math.pi, H)) < 1e-12


@given(phi=st.floats(-10, 10), ln_p=st.floats(-20, 20), scale=st.floats(0.1, 10))
def test_reconstruct_roundtrip(phi, ln_p, scale):
    pair = reconstruct(PhaseState(phi, ln_p, 1.0), scale)
    amp = scale * math.exp(ln_p)
    assert pair.f**2 + pair.g**2 == pytest.approx(amp**2, rel=1e-13)
    if abs(math.cos(phi)) > 1e-6:
        assert pair.f / pair.g == pytest.approx(math.tan(phi), rel=1e-12, abs=1e-12)


def test_reconstruct_axes():
    p0 = reconstruct(PhaseState(0.0, math.log(2.0)), 3.0)
    assert p0.f == 0.0 and p0.g == pytest.approx(6.0)
    p1 = reconstruct(PhaseState(math.pi / 2, 0.0), 1.5)
    assert p1.f == pytest.approx(1.5) and abs(p1.g) < 1e-15


def test_radial_density():
    assert radial_density(RadialPair(0.0, 0.0, 3.0)) == 0.0
    assert radial_density(RadialPair(1.0, 0.0, 2.0)) == 4.0
    a = radial_density(reconstruct(PhaseState(0.3, 0.2, 1.7)))
    b = radial_density(reconstruct(PhaseState(2.1, 0.2, 1.7)))
    assert a == pytest.approx(b, rel=1e-14)


@pytest.mark.parametrize("z,kappa,f0,g0", [(1, -1, 0.3, 0.7), (10, 1, -1.2, 0.4), (137, -1, 2.0, -0.5)])
def test_pruefer_matches_direct_system(z, kappa, f0, g0):
    p = params(z, kappa)
    rc = barrier_radius(p)
    tol = Tolerances(rtol=1e-12, atol=1e-14)
    grid = np.linspace(2 * rc, 20.0, 200)
    direct = solve_direct(p, 2 * rc, f0, g0, 20.0, tol, grid)
    phase = solve_pruefer(p, 2 * rc, math.atan2(f0, g0), math.log(math.hypot(f0, g0)), 20.0, tol, grid)
    fg = direct.values[np.isin(direct.nodes, grid)]
    y = phase.values[np.isin(phase.nodes, grid)]
    amp = np.exp(y[:, 1])
    dev = np.hypot(fg[:, 0] - amp * np.sin(y[:, 0]), fg[:, 1] - amp * np.cos(y[:, 0])) / amp
    assert dev.max() < 1e-8


def test_shift_by_pi_flips_both_components():
    a = solve_pruefer(H, 0.1, 0.4, 0.0, 5.0)
    b = solve_pruefer(H, 0.1, 0.4 + math.pi, 0.0, 5.0)
    fa = np.exp(a.values[-1, 1]) * np.array([math.sin(a.values[-1, 0]), math.cos(a.values[-1, 0])])
    fb = np.exp(b.values[-1, 1]) * np.array([math.sin(b.values[-1, 0]), math.cos(b.values[-1, 0])])
    assert np.allclose(fa, -fb, rtol=1e-8)


def test_new_solution_structure(new_solution):
    s = new_solution
    assert s.boundary_kind is BoundaryKind.BARRIER_ZERO
    assert s.rho[0] == RHO_CL and np.all(np.diff(s.rho) > 0)
    assert s.f[0] == 0.0 and math.isfinite(s.g[0]) and s.g[0] > 0
    assert s.density[0] == pytest.approx(s.g[0] ** 2 * RHO_CL**2, rel=1e-15)
    amp = s.norm_scale * np.exp(s.ln_p)
    assert np.allclose(s.f, amp * np.sin(s.phi), rtol=0, atol=1e-12 * amp.max())
    assert np.allclose(s.density, (s.f**2 + s.g**2) * s.rho**2)
    assert np.all(s.density >= 0)
    assert len(s.states) == len(s.pairs) == len(s.rho)


def test_new_solution_curvature(new_solution):
    c = barrier_curvature(new_solution)
    assert c == pytest.approx(331.6, abs=0.3)
    assert c == pytest.approx(curvature_closed_form(H), rel=1e-6)


def test_new_solution_lands_on_grid():
    grid = np.linspace(RHO_CL + 0.5, 5.0, 7)
    s = solve_new_solution(H, 5.0, grid=grid)
    assert set(grid) <= set(s.rho)


def test_new_solution_preconditions_and_failures():
    with pytest.raises(ParameterError):
        solve_new_solution(H, RHO_CL + 0.5)
    with pytest.raises(ParameterError):
        solve_new_solution(H.with_(epsilon=0.9), 10.0)
    with pytest.raises(IntegrationError) as info:
        solve_new_solution(H, 10.0, Tolerances(max_steps=20))
    assert RHO_CL < info.value.location < 10.0


def test_rescale_keeps_pairs_consistent(new_solution):
    s = RadialSolution(new_solution.rho, new_solution.phi, new_solution.ln_p, H, BoundaryKind.BARRIER_ZERO)
    g0 = s.g[0]
    s.norm_scale = 3.0
    assert s.g[0] == pytest.approx(3.0 * g0, rel=1e-15)


def test_reference_tracks_analytic_phase():
    s = solve_reference(H, 1e-4, 10.0)
    assert s.boundary_kind is BoundaryKind.ANALYTIC_SEED
    f, g = coulomb_continuum_grid(H, s.rho)
    dev = np.abs(np.angle(np.exp(1j * (s.phi - np.arctan2(f, g)))))
    assert dev.max() < 1e-6
    ok = np.abs(g) > 1e-3
    assert np.allclose(np.tan(s.phi[ok]), f[ok] / g[ok], rtol=1e-5)


def test_reference_degenerate_span():
    s = solve_reference(H, 0.5, 0.5)
    pair = coulomb_continuum(H, 0.5)
    assert len(s.rho) == 1
    assert s.f[0] == pytest.approx(pair.f, rel=1e-12) and s.g[0] == pytest.approx(pair.g, rel=1e-12)


def test_self_fit_gives_unit_scale():
    rho = np.linspace(10.0, 20.0, 50)
    f, g = coulomb_continuum_grid(H, rho)
    s = RadialSolution(rho, np.arctan2(f, g), np.log(np.hypot(f, g)), H, BoundaryKind.ANALYTIC_SEED)
    assert match_normalization(s, H) == pytest.approx(1.0, rel=1e-14)
    assert s.norm_scale == pytest.approx(1.0, rel=1e-14)


def test_matching_rejects_bad_fits():
    rho = np.linspace(10.0, 20.0, 50)
    f, g = coulomb_continuum_grid(H, rho)
    wrong = RadialSolution(rho, np.arctan2(f, g) + 0.5 * math.pi, np.log(np.hypot(f, g)), H, BoundaryKind.ANALYTIC_SEED)
    with pytest.raises(FitError):
        match_normalization(wrong, H)
    with pytest.raises(ParameterError):
        match_normalization(wrong, H, (5.0, 15.0))


def test_amplitude_quadrature_is_grid_independent():
    coarse = solve_new_solution(H, 12.0)
    fine = solve_new_solution(H, 12.0, grid=np.linspace(RHO_CL + 1e-3, 12.0, 3000))
    assert fine.ln_p[-1] == pytest.approx(coarse.ln_p[-1], abs=1e-8)
    assert fine.phi[-1] == pytest.approx(coarse.phi[-1], abs=1e-8)


@pytest.mark.parametrize("kappa,k", [(-1, 0), (1, -1)])
def test_inward_run_reaches_node(kappa, k):
    p = params(1, kappa)
    s = integrate_inward(p, 0.7, 1e-8)
    assert s.boundary_kind is BoundaryKind.BARRIER_INWARD
    assert np.all(np.diff(s.rho) > 0) and s.rho[-1] == barrier_radius(p)
    node = node_phase(p, k)
    assert abs(math.remainder(s.phi[0] - node, math.pi)) < 1e-6
    window = s.rho <= 1e-7
    slope_rp = np.polyfit(np.log(s.rho[window]), s.ln_p[window] + np.log(s.rho[window]), 1)[0]
    assert slope_rp == pytest.approx(-gamma_of(p), abs=0.05)


def test_inward_node_value_matches_printed():
    assert node_phase(H) == pytest.approx(ORACLE["node_-1"], abs=1e-15)
    assert node_phase(params(1, 1)) == pytest.approx(ORACLE["node_1"], abs=1e-15)


def test_inward_preconditions():
    with pytest.raises(ParameterError):
        integrate_inward(H, 0.1, RHO_CL * 2)
