"""Potential cases: parameter maps, spectra, phase shifts, the FD oracle."""

import math

import numpy as np
import pytest

from triseries.errors import (BelowThreshold, InvalidFamilyParams,
                              NoBoundStates, NoContinuum)
from triseries.physics import (CoulombCase, EckartCase, MorseCase,
                               OscillatorCase, PoschlTellerCase, RadialMesh,
                               ScarfCase, bound_energy, bound_spectrum,
                               fd_oracle, phase_shift, spectrum_size,
                               to_ode_params, tra_bound_energy)


def test_coulomb_parameter_map():
    p = to_ode_params(CoulombCase(Z=1.0, ell=0, lam=1.0), 0.5)
    assert p.A_zero == pytest.approx(2.0)
    assert p.A_minus == pytest.approx(0.0)
    assert p.A_plus == pytest.approx(1.0)


def test_oscillator_parameter_map():
    # published map at the doubled basis scale: lam_ode = 2 with lam = 1
    p = to_ode_params(OscillatorCase(omega=1.0, ell=0, lam=0.5), 1.5)
    assert p.A_plus == pytest.approx(-4.0)
    assert p.A_minus == pytest.approx(0.0)
    assert p.A_zero == pytest.approx(-3.0)


def test_eckart_zero_coupling_linear_term():
    p = to_ode_params(EckartCase(lam=1.0, A=1.0, B=-1.0), 0.0)
    assert p.A_plus == pytest.approx(0.0)   # -2 (A/lam)(A/lam - 1) at A = lam


def test_coulomb_energies():
    case = CoulombCase(Z=1.0, ell=0)
    assert bound_energy(case, 0) == pytest.approx(-0.5)
    assert bound_energy(case, 1) == pytest.approx(-0.125)
    # the formula as printed without the square, kept for comparison only
    assert bound_energy(case, 1, printed_variant=True) == pytest.approx(-0.25)


def test_oscillator_energies():
    case = OscillatorCase(omega=1.0, ell=0)
    assert bound_energy(case, 0) == pytest.approx(1.5)
    assert bound_energy(case, 1) == pytest.approx(3.5)


def test_morse_spectrum_values_and_size():
    case = MorseCase(lam=1.0, V1=1.0)
    assert spectrum_size(case) == 2
    spec = bound_spectrum(case)
    assert spec.energies == pytest.approx([-1.125, -0.125])


def test_morse_requires_pinned_quadratic_coupling():
    with pytest.raises(InvalidFamilyParams):
        MorseCase(lam=1.0, V1=1.0, V2=0.3)
    assert MorseCase(lam=1.0, V1=1.0).V2 == pytest.approx(0.125)


def test_no_bound_states_conditions():
    with pytest.raises(NoBoundStates):
        bound_spectrum(MorseCase(lam=1.0, V1=0.2))
    with pytest.raises(NoBoundStates):
        bound_spectrum(PoschlTellerCase(lam=1.0, A=1.0, B=0.5))
    with pytest.raises(NoBoundStates):
        bound_spectrum(EckartCase(lam=1.0, A=2.0, B=1.0))
    with pytest.raises(NoBoundStates):
        bound_spectrum(CoulombCase(Z=-1.0, ell=0), m_max=2)


def test_spectrum_size_rules_random_draws():
    rng = np.random.default_rng(99)
    for _ in range(20):
        lam = rng.uniform(0.5, 2.0)
        v1 = rng.uniform(0.3, 4.0) * lam ** 2
        case = MorseCase(lam=lam, V1=v1)
        tau = 0.5 - 2.0 * v1 / lam ** 2
        expect = int(math.floor(-tau)) + 1 if tau < 0 else 0
        assert spectrum_size(case) == expect
    for _ in range(20):
        lam = rng.uniform(0.5, 2.0)
        a = rng.uniform(0.3, 3.0) * lam
        b = -rng.uniform(0.1, 50.0) * lam
        case = PoschlTellerCase(lam=lam, A=a, B=b)
        root = math.sqrt(0.25 - b / lam)
        n = math.floor(0.5 * root - 0.5 * (case.nu + 1.0))
        assert spectrum_size(case) == (int(n) + 1 if n >= 0 else 0)
    for _ in range(20):
        lam = rng.uniform(0.5, 2.0)
        a = rng.uniform(0.3, 3.0) * lam
        b = -rng.uniform(0.1, 40.0) * lam
        case = EckartCase(lam=lam, A=a, B=b)
        sigma = 0.5 * (case.nu + 1.0)
        n = math.floor(math.sqrt(-b / lam) - sigma)
        assert spectrum_size(case) == (int(n) + 1 if n >= 0 else 0)
    assert spectrum_size(ScarfCase(A=2.0, B=0.5, lam=1.0)) == math.inf


def test_scarf_levels_stay_below_none_and_grow():
    case = ScarfCase(A=2.0, B=0.5, lam=1.0)
    spec = bound_spectrum(case, m_max=5)
    assert np.all(np.diff(spec.energies) > 0)
    assert spec.energies[0] == pytest.approx(2.0)   # lam^2/2 (m + A/lam)^2


def test_fd_oracle_hydrogen_reference_mesh():
    case = CoulombCase(Z=1.0, ell=0)
    vals = fd_oracle(case, n_levels=1, mesh=RadialMesh(0.0, 80.0, 0.005))
    assert vals[0] == pytest.approx(-0.5, abs=1e-4)


def test_fd_oracle_oscillator():
    case = OscillatorCase(omega=1.0, ell=0)
    vals = fd_oracle(case, n_levels=1)
    assert vals[0] == pytest.approx(1.5, abs=1e-5)


def test_fd_oracle_matches_hyperbolic_well_formula():
    case = PoschlTellerCase(lam=1.0, A=2.0, B=-45.0)
    formula = np.sort([bound_energy(case, m) for m in range(3)])
    vals = fd_oracle(case, n_levels=3, mesh=RadialMesh(0.0, 45.0, 0.0015))
    assert np.max(np.abs(vals - formula) / np.abs(formula)) < 1e-4


def test_phase_shift_regression_and_free_limit():
    assert phase_shift(CoulombCase(Z=1.0, ell=0), 0.5) == pytest.approx(
        0.30164, abs=1e-4)
    assert phase_shift(CoulombCase(Z=0.0, ell=0), 0.5) == 0.0
    assert phase_shift(CoulombCase(Z=0.0, ell=3), 2.0) == 0.0


def test_phase_shift_errors():
    with pytest.raises(NoContinuum):
        phase_shift(OscillatorCase(omega=1.0), 1.0)
    with pytest.raises(NoContinuum):
        phase_shift(ScarfCase(A=2.0, B=0.5, lam=1.0), 1.0)
    with pytest.raises(BelowThreshold):
        phase_shift(CoulombCase(Z=1.0), -0.5)
    with pytest.raises(BelowThreshold):
        phase_shift(EckartCase(lam=1.0, A=2.0, B=1.0), 0.2)  # E < lam B/2


def test_phase_shifts_real_finite_continuous():
    morse = MorseCase(lam=1.0, V1=1.0)
    pt = PoschlTellerCase(lam=1.0, A=1.0, B=-36.0)
    for case in (morse, pt):
        es = np.linspace(0.05, 6.0, 50)
        ds = np.array([phase_shift(case, float(e)) for e in es])
        assert np.all(np.isfinite(ds))
        unwrapped = np.unwrap(ds)
        assert np.max(np.abs(np.diff(unwrapped))) < 0.5


def test_phase_shift_coupling_to_zero():
    # Morse phase at V1 -> 0 with the pinned V2 stays finite and smooth
    case = MorseCase(lam=1.0, V1=0.0, nu=0.7)
    ds = [phase_shift(case, e) for e in np.linspace(0.1, 3.0, 10)]
    assert all(math.isfinite(d) for d in ds)


def test_tra_route_matches_formula_and_scale_free():
    c1 = CoulombCase(Z=1.0, ell=0, lam=0.4)
    c2 = CoulombCase(Z=1.0, ell=0, lam=0.9)
    for m in (0, 1):
        e1 = tra_bound_energy(c1, m)
        e2 = tra_bound_energy(c2, m)
        assert abs(e1 - e2) < 1e-10
        assert e1 == pytest.approx(bound_energy(c1, m), abs=1e-10)
    mc = MorseCase(lam=1.0, V1=1.0)
    assert tra_bound_energy(mc, 0) == pytest.approx(bound_energy(mc, 0), abs=1e-10)
    pt = PoschlTellerCase(lam=1.0, A=1.0, B=-36.0)
    assert tra_bound_energy(pt, 0) == pytest.approx(bound_energy(pt, 0), abs=1e-10)


def test_scarf_accepts_box_size_or_scale():
    a = ScarfCase(A=2.0, B=0.5, L=math.pi)
    b = ScarfCase(A=2.0, B=0.5, lam=1.0)
    assert a.lam == pytest.approx(b.lam)
    assert a.L == pytest.approx(b.L)
    with pytest.raises(ValueError):
        ScarfCase(A=2.0, B=0.5)
    with pytest.raises(ValueError):
        ScarfCase(A=2.0, B=0.5, L=3.0, lam=1.0)


def test_coulomb_discrete_below_threshold():
    spec = bound_spectrum(CoulombCase(Z=1.0, ell=1), m_max=2)
    assert np.all(spec.energies < spec.threshold)
