import math

import pytest

from ediffract import (
    CONSTANT_SETS,
    PAPER,
    PRECISE,
    DomainError,
    IncidentBeam,
    de_broglie_wavelength,
    dispersion,
    larmor_frequency,
    photo_energy,
)


def test_constant_sets_registry():
    assert CONSTANT_SETS["paper"] is PAPER
    assert CONSTANT_SETS["precise"] is PRECISE


def test_paper_values():
    assert PAPER.e == -4.8e-10
    assert PAPER.m == 9.1e-28
    assert PAPER.hbar == 1.1e-27
    assert PAPER.c == 3.0e10


def test_precise_charge_is_negative():
    assert PRECISE.e < 0
    assert PRECISE.m > 0 and PRECISE.hbar > 0 and PRECISE.c > 0


def test_de_broglie_wavelength():
    p = 2.0 * math.pi * PAPER.hbar / 5.0e-9
    assert de_broglie_wavelength(p, PAPER) == pytest.approx(5.0e-9, rel=1e-15)
    with pytest.raises(DomainError):
        de_broglie_wavelength(0.0, PAPER)


def test_dispersion_nonrelativistic():
    k = 1.0e9
    omega = dispersion(k, "nonrelativistic", PAPER)
    assert omega == pytest.approx(PAPER.hbar * k * k / (2.0 * PAPER.m), rel=1e-15)


def test_dispersion_relativistic_dominates_rest_energy():
    # at k = 0 the relativistic branch reduces to the rest frequency
    omega0 = dispersion(0.0, "relativistic", PAPER)
    assert omega0 == pytest.approx(PAPER.m * PAPER.c**2 / PAPER.hbar, rel=1e-15)
    assert dispersion(1e9, "relativistic", PAPER) > omega0


def test_dispersion_rejects_bad_mode_and_negative_k():
    with pytest.raises(DomainError):
        dispersion(1.0, "ballistic", PAPER)
    with pytest.raises(DomainError):
        dispersion(-1.0, "nonrelativistic", PAPER)


def test_photo_energy_linear_in_omega():
    work = 4.0e-12
    assert photo_energy(0.0, work, PAPER) == -work
    omega = 1.0e16
    assert photo_energy(omega, work, PAPER) == pytest.approx(
        PAPER.hbar * omega - work, rel=1e-15)


def test_larmor_frequency_frozen_value():
    # electron charge is negative, so the signed frequency is negative
    assert larmor_frequency(1.0e4, PAPER) == pytest.approx(
        -8.791208791208791e10, rel=1e-13)
    assert larmor_frequency(0.0, PAPER) == 0.0


def test_beam_from_wavelength_round_trip():
    beam = IncidentBeam.from_wavelength(5.0e-9, PAPER)
    assert beam.wavelength == pytest.approx(5.0e-9, rel=1e-15)
    assert beam.k == pytest.approx(2.0 * math.pi / 5.0e-9, rel=1e-15)
    assert beam.a_in == 1.0 + 0.0j


def test_beam_k_frozen_value():
    beam = IncidentBeam.from_wavelength(50e-10, PAPER)
    assert beam.k == pytest.approx(1256637061.4359171, rel=1e-13)


def test_beam_omega_prime_matches_dispersion():
    beam = IncidentBeam.from_wavenumber(2.0e8, PAPER, a_in=0.5 + 0.5j)
    assert beam.omega_prime == pytest.approx(
        dispersion(2.0e8, "nonrelativistic", PAPER), rel=1e-15)
    assert beam.a_in == 0.5 + 0.5j


def test_beam_rejects_nonpositive_k():
    with pytest.raises(DomainError):
        IncidentBeam.from_wavenumber(0.0, PAPER)
    with pytest.raises(DomainError):
        IncidentBeam.from_wavelength(-1.0, PAPER)
