"""Old quantum mechanics: Rydberg/Balmer levels, Bohr lines, the
correspondence principle, Zeeman splitting with selection rules,
action quantization, spatial quantization, shell capacities, and the
Pauli level formula.

Everything is in Gaussian CGS; energies come out in erg and angular
frequencies in 1/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import PhysicalConstants, larmor_frequency
from .errors import DomainError

__all__ = [
    "QuantumNumbers",
    "SpectralContext",
    "AngularMomentumState",
    "rydberg_constant",
    "BalmerLevel",
    "balmer_energy",
    "bohr_line",
    "correspondence_check",
    "ClassicalZeeman",
    "classical_zeeman",
    "ZeemanLine",
    "zeeman_line",
    "azimuthal_selection_factor",
    "sommerfeld_action",
    "sommerfeld_quantized_energy",
    "spatial_quantization",
    "enumerate_states",
    "shell_capacity",
    "pauli_energy",
]


def _check_int(name, value):
    if not isinstance(value, (int, np.integer)):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class QuantumNumbers:
    """(n, l, m, s) with 0 <= l <= n-1, -l <= m <= l, s = +-1."""

    n: int
    l: int
    m: int
    s: int

    def __post_init__(self):
        n = _check_int("n", self.n)
        l = _check_int("l", self.l)
        m = _check_int("m", self.m)
        s = _check_int("s", self.s)
        if n < 1:
            raise DomainError(f"principal number must be >= 1, got {n}")
        if not 0 <= l <= n - 1:
            raise DomainError(f"azimuthal number out of range: l={l} for n={n}")
        if not -l <= m <= l:
            raise DomainError(f"magnetic number out of range: m={m} for l={l}")
        if s not in (-1, 1):
            raise DomainError(f"spin label must be +1 or -1, got {s}")


@dataclass(frozen=True)
class SpectralContext:
    """Constant set, nuclear charge Z, and axial magnetic field B3 (Gauss)."""

    consts: PhysicalConstants
    Z: int = 1
    B3: float = 0.0

    def __post_init__(self):
        if _check_int("Z", self.Z) < 1:
            raise DomainError(f"nuclear charge number must be >= 1, got {self.Z}")

    @property
    def omega_L(self) -> float:
        return larmor_frequency(self.B3, self.consts)


@dataclass(frozen=True)
class AngularMomentumState:
    L_mag: float
    L_B: float


def rydberg_constant(ctx: SpectralContext) -> float:
    """R = m e^4 Z^2 / (4 pi hbar^3 c), in 1/cm."""
    c = ctx.consts
    return c.m * c.e**4 * ctx.Z**2 / (4.0 * np.pi * c.hbar**3 * c.c)


class BalmerLevel(NamedTuple):
    energy: float
    omega: float


def balmer_energy(ctx: SpectralContext, n: int) -> BalmerLevel:
    """E_n = -m e^4 Z^2 / (2 hbar^2 n^2) in erg, and omega_n = E_n / hbar."""
    n = _check_int("n", n)
    if n < 1:
        raise DomainError(f"principal number must be >= 1, got {n}")
    c = ctx.consts
    energy = -c.m * c.e**4 * ctx.Z**2 / (2.0 * c.hbar**2 * n**2)
    return BalmerLevel(energy, energy / c.hbar)


def bohr_line(ctx: SpectralContext, n: int, n_prime: int) -> float:
    """Radiated angular frequency omega_{n n'} = omega_{n'} - omega_n."""
    return balmer_energy(ctx, n_prime).omega - balmer_energy(ctx, n).omega


def correspondence_check(ctx: SpectralContext, n: int, delta_n: int = 1):
    """Quantum line vs classical orbital frequency for the n+delta_n -> n drop.

    Returns (omega_q, omega_c, ratio) with ratio = omega_q / (delta_n omega_c);
    the ratio approaches 1 like 1 - 3/(2n) as n grows.
    """
    n = _check_int("n", n)
    delta_n = _check_int("delta_n", delta_n)
    if n < 2 or delta_n < 1:
        raise DomainError("need n >= 2 and delta_n >= 1")
    c = ctx.consts
    omega_q = abs(bohr_line(ctx, n + delta_n, n))
    omega_c = c.m * c.e**4 * ctx.Z**2 / (c.hbar**3 * n**3)
    return omega_q, omega_c, omega_q / (delta_n * omega_c)


@dataclass(frozen=True)
class ClassicalZeeman:
    """Exact oscillator roots and the small-field triplet positions."""

    omega_plus: float
    omega_minus: float
    axial: float
    triplet: tuple


def classical_zeeman(omega0: float, ctx: SpectralContext) -> ClassicalZeeman:
    """Roots of omega^2 + 2 omega_L omega - omega0^2 = 0 plus the triplet.

    The x3 oscillation is unaffected by the field and keeps frequency
    omega0; the transverse roots are -omega_L +- sqrt(omega0^2 + omega_L^2).
    The triplet {omega0 - omega_L, omega0, omega0 + omega_L} is the
    small-field reading of those roots, an O(omega_L^2/omega0) approximation.
    """
    if not omega0 > 0:
        raise DomainError(f"oscillator frequency must be positive, got {omega0}")
    wl = ctx.omega_L
    root = math.sqrt(omega0 * omega0 + wl * wl)
    return ClassicalZeeman(
        omega_plus=-wl + root,
        omega_minus=-wl - root,
        axial=omega0,
        triplet=(omega0 - wl, omega0, omega0 + wl),
    )


@dataclass(frozen=True)
class ZeemanLine:
    """A quantum Zeeman transition; omega is None when the line is forbidden."""

    omega: float | None
    allowed: bool
    selection_factor: float


def _check_nm(n, m, label):
    n = _check_int(f"{label}", n)
    m = _check_int(f"m of {label}", m)
    if n < 1:
        raise DomainError(f"principal number must be >= 1, got {n}")
    if abs(m) > n - 1:
        raise DomainError(f"|m| <= n-1 required, got m={m} for n={n}")
    return n, m


def zeeman_line(ctx: SpectralContext, n: int, m: int, n_prime: int, m_prime: int) -> ZeemanLine:
    """Spectral line omega_{n n'} - omega_L (m' - m), subject to |m' - m| <= 1.

    Transitions with |m' - m| >= 2 carry a vanishing azimuthal factor
    and are reported as forbidden.
    """
    n, m = _check_nm(n, m, "n")
    n_prime, m_prime = _check_nm(n_prime, m_prime, "n_prime")
    dm = m_prime - m
    if abs(dm) > 1:
        return ZeemanLine(None, False, 0.0)
    omega = bohr_line(ctx, n, n_prime) - ctx.omega_L * dm
    return ZeemanLine(omega, True, 1.0)


def azimuthal_selection_factor(m: int, m_prime: int, k: int) -> complex:
    """(1/2pi) integral of e^{i(m - m' + k) phi}: 1 if m' = m + k else 0."""
    m = _check_int("m", m)
    m_prime = _check_int("m_prime", m_prime)
    k = _check_int("k", k)
    if k not in (-1, 0, 1):
        raise DomainError(f"harmonic index must be 0 or +-1, got {k}")
    return complex(1.0) if m_prime == m + k else complex(0.0)


def sommerfeld_action(ctx: SpectralContext, energy: float) -> float:
    """Circular-orbit action S(E) = 2 pi e^2 Z sqrt(m / (2|E|)) for E < 0."""
    if not energy < 0:
        raise DomainError(f"bound orbit requires E < 0, got {energy}")
    c = ctx.consts
    return 2.0 * np.pi * c.e**2 * ctx.Z * math.sqrt(c.m / (2.0 * abs(energy)))


def sommerfeld_quantized_energy(ctx: SpectralContext, n: int) -> float:
    """Energy solving S(E) = 2 pi hbar n; inverts the action closed form."""
    n = _check_int("n", n)
    if n < 1:
        raise DomainError(f"quantum number must be >= 1, got {n}")
    c = ctx.consts
    # S = 2 pi e^2 Z sqrt(m/2|E|) = 2 pi hbar n  =>  |E| = m e^4 Z^2 / (2 hbar^2 n^2)
    return -c.m * c.e**4 * ctx.Z**2 / (2.0 * c.hbar**2 * n**2)


def spatial_quantization(l: int):
    """The 2l+1 projections (L_mag, L_B) = (hbar l, hbar m), m = -l..l.

    Takes l directly, so the older pre-selection range l <= n stays
    expressible; hbar here is dimensionless 1 unless scaled by the caller.
    """
    l = _check_int("l", l)
    if l < 0:
        raise DomainError(f"azimuthal number must be >= 0, got {l}")
    return [AngularMomentumState(float(l), float(m)) for m in range(-l, l + 1)]


def enumerate_states(n: int):
    """All (n, l, m, s) tuples of the n-th shell."""
    n = _check_int("n", n)
    if n < 1:
        raise DomainError(f"principal number must be >= 1, got {n}")
    return [
        QuantumNumbers(n, l, m, s)
        for l in range(n)
        for m in range(-l, l + 1)
        for s in (-1, 1)
    ]


def shell_capacity(n: int) -> int:
    """Maximal electron count of shell n; equals 2 n^2."""
    n = _check_int("n", n)
    if n < 1:
        raise DomainError(f"principal number must be >= 1, got {n}")
    return 2 * n * n


def pauli_energy(ctx: SpectralContext, n: int, m: int, s: int) -> float:
    """Pauli operator eigenvalue for hydrogen in an axial field:

        E = -m_e e^4 / (2 hbar^2 n^2) - hbar omega_L (m + s),

    with the spin label s = +-1.  States sharing m + s are degenerate.
    """
    n, m = _check_nm(n, m, "n")
    s = _check_int("s", s)
    if s not in (-1, 1):
        raise DomainError(f"spin label must be +1 or -1, got {s}")
    c = ctx.consts
    coulomb = -c.m * c.e**4 / (2.0 * c.hbar**2 * n**2)
    return coulomb - larmor_frequency(ctx.B3, c) * c.hbar * (m + s)
