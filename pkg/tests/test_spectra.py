"""Line spectra: Balmer terms, Zeeman splitting, selection rules, shells."""

import numpy as np
import pytest

from ediffract import (
    DomainError,
    PAPER,
    PRECISE,
    QuantumNumbers,
    SpectralContext,
    azimuthal_selection_factor,
    balmer_energy,
    bohr_line,
    classical_zeeman,
    correspondence_check,
    enumerate_states,
    larmor_frequency,
    pauli_energy,
    rydberg_constant,
    shell_capacity,
    sommerfeld_action,
    sommerfeld_quantized_energy,
    spatial_quantization,
    zeeman_line,
)

CTX = SpectralContext(PAPER)


def test_rydberg_constant_both_constant_sets():
    assert rydberg_constant(CTX) == pytest.approx(96271.3734301499, rel=1e-12)
    assert rydberg_constant(SpectralContext(PRECISE)) == pytest.approx(
        109737.31576292994, rel=1e-12
    )
    # Z^2 scaling
    assert rydberg_constant(SpectralContext(PAPER, Z=2)) == pytest.approx(
        4.0 * rydberg_constant(CTX), rel=1e-15
    )


def test_balmer_terms_follow_the_rydberg_series():
    # E_n / hbar = -2 pi c R / n^2
    series = 2.0 * np.pi * PAPER.c * rydberg_constant(CTX)
    assert series == pytest.approx(1.814672637114951e16, rel=1e-12)
    for n in (1, 2, 5):
        level = balmer_energy(CTX, n)
        assert level.omega == pytest.approx(-series / n**2, rel=1e-13)
        assert level.energy == pytest.approx(level.omega * PAPER.hbar, rel=1e-15)
    with pytest.raises(DomainError):
        balmer_energy(CTX, 0)
    with pytest.raises(DomainError):
        balmer_energy(CTX, 1.5)


def test_bohr_line_is_a_term_difference():
    w = bohr_line(CTX, 2, 1)
    w1 = balmer_energy(CTX, 1).omega
    w2 = balmer_energy(CTX, 2).omega
    assert w == pytest.approx(w1 - w2, rel=1e-15)
    assert bohr_line(CTX, 1, 2) == pytest.approx(-w, rel=1e-15)


def test_correspondence_ratio_approaches_one():
    _, _, r100 = correspondence_check(CTX, 100)
    _, _, r1000 = correspondence_check(CTX, 1000)
    _, _, r10000 = correspondence_check(CTX, 10000)
    assert abs(1.0 - r10000) < abs(1.0 - r1000) < abs(1.0 - r100)
    # deviation scales like 3/(2n)
    assert 1.0 - r1000 == pytest.approx(1.5e-3, rel=0.01)
    assert 1.0 - r10000 == pytest.approx(1.49980e-4, rel=1e-4)
    wq, wc, ratio = correspondence_check(CTX, 100, delta_n=2)
    assert wq == pytest.approx(abs(bohr_line(CTX, 102, 100)), rel=1e-15)
    assert ratio == pytest.approx(wq / (2 * wc), rel=1e-15)
    with pytest.raises(DomainError):
        correspondence_check(CTX, 1)
    with pytest.raises(DomainError):
        correspondence_check(CTX, 100, delta_n=0)


def larmor_context(omega_l):
    # field strength that makes the precession rate come out at omega_l
    return SpectralContext(PAPER, B3=omega_l / larmor_frequency(1.0, PAPER))


def test_classical_zeeman_roots_solve_the_characteristic_polynomial():
    ctx = larmor_context(0.1)
    assert ctx.omega_L == pytest.approx(0.1, rel=1e-14)
    z = classical_zeeman(1.0, ctx)
    assert z.omega_plus == pytest.approx(0.904987562112089, rel=1e-12)
    assert z.omega_minus == pytest.approx(-1.104987562112089, rel=1e-12)
    assert z.axial == 1.0
    for w in (z.omega_plus, z.omega_minus):
        assert abs(w * w + 2.0 * ctx.omega_L * w - 1.0) <= 1e-14
    assert z.triplet == pytest.approx((0.9, 1.0, 1.1), rel=1e-12)
    with pytest.raises(DomainError):
        classical_zeeman(0.0, ctx)


def test_zeeman_line_splits_by_delta_m():
    ctx = SpectralContext(PAPER, B3=1e4)
    w0 = bohr_line(ctx, 2, 1)
    for dm in (-1, 0, 1):
        line = zeeman_line(ctx, 2, dm, 1, 0)
        assert line.allowed
        assert line.selection_factor == 1.0
        assert line.omega == pytest.approx(w0 - ctx.omega_L * (0 - dm), rel=1e-13)
    assert zeeman_line(ctx, 2, 0, 1, 0).omega == pytest.approx(w0, rel=1e-15)


def test_zeeman_forbidden_lines():
    ctx = SpectralContext(PAPER, B3=1e4)
    line = zeeman_line(ctx, 3, -2, 3, 0)
    assert not line.allowed
    assert line.omega is None
    assert line.selection_factor == 0.0
    with pytest.raises(DomainError):
        zeeman_line(ctx, 2, 2, 1, 0)  # |m| > n-1
    with pytest.raises(DomainError):
        zeeman_line(ctx, 0, 0, 1, 0)


def test_azimuthal_factor_against_quadrature():
    # (1/2pi) int_0^{2pi} e^{i(m - m' + k) phi} dphi, trapezoid on a fine grid
    phi = np.linspace(0.0, 2.0 * np.pi, 4097)
    for m in range(-2, 3):
        for mp in range(-2, 3):
            for k in (-1, 0, 1):
                num = np.trapezoid(np.exp(1j * (m - mp + k) * phi), phi) / (2 * np.pi)
                assert azimuthal_selection_factor(m, mp, k) == pytest.approx(
                    num, abs=1e-12
                )
    with pytest.raises(DomainError):
        azimuthal_selection_factor(0, 0, 2)


def test_action_quantization_reproduces_the_balmer_terms():
    for n in (1, 2, 3, 7):
        e = sommerfeld_quantized_energy(CTX, n)
        assert e == balmer_energy(CTX, n).energy
        assert sommerfeld_action(CTX, e) == pytest.approx(
            2.0 * np.pi * PAPER.hbar * n, rel=1e-12
        )
    with pytest.raises(DomainError):
        sommerfeld_action(CTX, 0.0)
    with pytest.raises(DomainError):
        sommerfeld_quantized_energy(CTX, 0)


def test_spatial_quantization_projections():
    states = spatial_quantization(2)
    assert len(states) == 5
    assert all(s.L_mag == 2.0 for s in states)
    assert [s.L_B for s in states] == [-2.0, -1.0, 0.0, 1.0, 2.0]
    assert len(spatial_quantization(0)) == 1
    with pytest.raises(DomainError):
        spatial_quantization(-1)


def test_shell_enumeration_and_capacities():
    assert [shell_capacity(n) for n in range(1, 6)] == [2, 8, 18, 32, 50]
    for n in (1, 2, 3, 4):
        states = enumerate_states(n)
        assert len(states) == shell_capacity(n)
        assert len(set(states)) == len(states)
        assert all(q.n == n for q in states)
    with pytest.raises(DomainError):
        enumerate_states(0)


def test_quantum_number_validation():
    QuantumNumbers(2, 1, -1, 1)
    with pytest.raises(DomainError):
        QuantumNumbers(2, 2, 0, 1)
    with pytest.raises(DomainError):
        QuantumNumbers(2, 1, 2, 1)
    with pytest.raises(DomainError):
        QuantumNumbers(2, 1, 0, 0)
    with pytest.raises(DomainError):
        QuantumNumbers(1.5, 0, 0, 1)


def test_pauli_degeneracy_in_m_plus_s():
    ctx = SpectralContext(PAPER, B3=1e4)
    # same m + s, same energy, bitwise
    assert pauli_energy(ctx, 2, 1, -1) == pauli_energy(ctx, 2, -1, 1)
    assert pauli_energy(ctx, 3, 2, -1) == pauli_energy(ctx, 3, 0, 1)
    # the shift is linear in m + s
    e0 = pauli_energy(ctx, 2, 0, 1)
    e1 = pauli_energy(ctx, 2, 1, 1)
    step = -PAPER.hbar * ctx.omega_L
    assert e1 - e0 == pytest.approx(step, rel=1e-12)
    # field off: every state of the shell collapses onto the bare term
    quiet = SpectralContext(PAPER)
    for q in enumerate_states(2):
        assert pauli_energy(quiet, 2, q.m, q.s) == balmer_energy(quiet, 2).energy
    with pytest.raises(DomainError):
        pauli_energy(ctx, 2, 0, 0)
    with pytest.raises(DomainError):
        pauli_energy(ctx, 2, 2, 1)


def test_spectral_context_validation():
    with pytest.raises(DomainError):
        SpectralContext(PAPER, Z=0)
    ctx = SpectralContext(PAPER, B3=1e4)
    assert ctx.omega_L == larmor_frequency(1e4, PAPER)
