"""Cross-module invariants: scenario algebra, second oracle draws, error
surfaces and the concurrency claims."""

import concurrent.futures
import math

import numpy as np
import pytest

from triseries import families as fam
from triseries.errors import MeshTooCoarse, NoFamilyApplies, NumericalOverflow
from triseries.gammafn import abs_gamma_sq, gamma_fn
from triseries.physics import (CoulombCase, EckartCase, MorseCase,
                               OscillatorCase, PoschlTellerCase, RadialMesh,
                               ScarfCase, bound_energy, bound_series,
                               fd_oracle)
from triseries.recurrence import run_recursion
from triseries.solve import assemble_solution, match_family, ode_residual
from triseries.tra import OdeParams, jacobi_st2r2, resolve_basis


def test_scenario_relations_hold_exactly():
    rng = np.random.default_rng(17)
    for _ in range(50):
        a, b = rng.uniform(-1.0, 2.0, size=2)
        am = rng.uniform(-3.0, (1 - a) ** 2 / 4.0)
        p = OdeParams("laguerre", a, b, rng.uniform(-2, 2), am, rng.uniform(-2, 2))
        spec = resolve_basis(p, "LA")
        assert 2 * spec.alpha == spec.nu + 1.0 - a
        assert 2 * spec.beta == b + 1.0
        assert spec.nu ** 2 == pytest.approx((1 - a) ** 2 - 4 * am, rel=1e-12)
        pj = OdeParams("jacobi", a, b, rng.uniform(-3.0, (1 - b) ** 2 / 2.0),
                       rng.uniform(-3.0, (1 - a) ** 2 / 2.0),
                       rng.uniform(-2, 2), A_one=0.0)
        spec = resolve_basis(pj, "JA")
        assert 2 * spec.alpha == spec.mu + 1.0 - a
        assert 2 * spec.beta == spec.nu + 1.0 - b
        spec = resolve_basis(pj, "JC", free_value=0.7)
        assert 2 * spec.alpha == pytest.approx(0.7 + 2.0 - a, rel=1e-14)
        assert 2 * spec.beta == spec.nu + 1.0 - b


def test_discrete_extended_family_match_and_input_point():
    a, b, lam1 = 0.4, 0.7, 0.8
    chi0 = 1.9   # |chi0| > |A_one|: discrete regime of the extended family
    p = OdeParams("jacobi", a, b, -1.1, -0.8,
                  chi0 + 0.25 * (a + b - 1.0) ** 2, A_one=lam1)
    m = match_family(p, "JA")
    f = m.family
    assert isinstance(f, fam.ExtendedJacobiDiscrete)
    assert 0.0 < f.tau < 1.0
    # the normalized diagonal offset reproduces (1+tau)/(2 sqrt(tau))
    c = chi0 / lam1
    assert (1.0 + f.tau) / (2.0 * math.sqrt(f.tau)) == pytest.approx(c, rel=1e-12)
    # streams match the raw ones under the spectral map
    raw, _ = jacobi_st2r2(p, m.spec, 12)
    fc = fam.family_coeffs(f, 12)
    s_fam = (raw.s - m.spectral_map.offset) / m.spectral_map.scale
    assert np.allclose(s_fam, fc.s, atol=1e-12)
    assert np.allclose(raw.t / m.spectral_map.scale, fc.t, atol=1e-12)
    # a user-supplied spectrum point is taken as given
    m2 = match_family(p, "JA", z_k=-2.5)
    assert m2.family.z_k == -2.5
    assert m2.notes["z_k_user"]
    sol = assemble_solution(m2, 0, truncation=15)
    assert sol.unnormalized and len(sol.f) == 16


def test_discrete_extended_family_wrong_side_has_no_match():
    a, b, lam1 = 0.4, 0.7, 0.8
    chi0 = -1.9   # chi0/A_one < -1: no admissible tau
    p = OdeParams("jacobi", a, b, -1.1, -0.8,
                  chi0 + 0.25 * (a + b - 1.0) ** 2, A_one=lam1)
    with pytest.raises(NoFamilyApplies):
        match_family(p, "JA")


def test_gamma_overflow_raises():
    with pytest.raises(NumericalOverflow):
        gamma_fn(400.0)
    with pytest.raises(NumericalOverflow):
        abs_gamma_sq(250.0, 0.0)


def test_mesh_too_coarse_detected():
    case = PoschlTellerCase(lam=1.0, A=2.0, B=-45.0)
    with pytest.raises(MeshTooCoarse):
        fd_oracle(case, n_levels=3, mesh=RadialMesh(0.0, 45.0, 0.02))


def test_spectra_against_oracle_second_draws():
    # the acceptance suite covers one draw per case; these are the second
    draws = [
        (CoulombCase(Z=2.0, ell=1), 3, 1e-3),
        (OscillatorCase(omega=2.0, ell=1), 3, 1e-4),
        (MorseCase(lam=1.5, V1=2.0), 2, 1e-3),
        (ScarfCase(A=3.0, B=1.0, lam=1.0), 3, 1e-3),
        (EckartCase(lam=1.0, A=3.0, B=-30.0), 3, 1e-3),
        (PoschlTellerCase(lam=1.0, A=2.0, B=-60.0), 3, 1e-3),
    ]
    for case, k, tol in draws:
        formula = np.sort([bound_energy(case, m) for m in range(k)])
        mesh = None
        if isinstance(case, PoschlTellerCase):
            mesh = RadialMesh(0.0, 45.0, 0.0015)
        oracle = fd_oracle(case, n_levels=k, mesh=mesh)
        rel = np.abs(oracle - formula) / np.maximum(np.abs(formula), 1e-4)
        assert np.max(rel) < tol, f"{case.name}: {rel}"


def test_pure_functions_are_concurrency_safe():
    # identical results independent of evaluation order / thread interleaving
    f = fam.MeixnerPollaczek(0.8, 1.1)
    co = fam.family_coeffs(f, 24)
    zs = np.linspace(-2.0, 2.0, 24)
    serial = [run_recursion(co, float(z), 20).values for z in zs]
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda z: run_recursion(co, float(z), 20).values,
                                 zs))
    for s, p in zip(serial, parallel):
        assert np.array_equal(s, p)

    case = OscillatorCase(omega=1.0, ell=0, lam=0.8)
    params, sol = bound_series(case, 0, truncation=40)
    xs = np.linspace(0.3, 6.0, 8)
    serial_r = [ode_residual(params, sol, [float(x)]) for x in xs]
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        parallel_r = list(pool.map(lambda x: ode_residual(params, sol, [float(x)]),
                                   xs))
    assert serial_r == parallel_r
