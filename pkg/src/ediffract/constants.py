"""Physical constants and free-particle kinematics in Gaussian CGS units.

Lengths are centimeters, masses grams, times seconds, energies erg, charges
esu, magnetic fields Gauss.  Two constant sets ship: ``PAPER`` holds the
rounded textbook values, ``PRECISE`` the CODATA 2018 values converted to
Gaussian units.  Every operation takes the set it should use explicitly, so
results under both can be compared side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "PAPER",
    "PRECISE",
    "CONSTANT_SETS",
    "IncidentBeam",
    "de_broglie_wavelength",
    "dispersion",
    "photo_energy",
    "larmor_frequency",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Electron charge, electron mass, reduced Planck constant, speed of light.

    The charge is negative: the electron convention is kept throughout so
    signed quantities (Larmor frequency, gauge phases) come out with their
    physical orientation.
    """

    e: float     # esu, < 0
    m: float     # g
    hbar: float  # erg s
    c: float     # cm/s

    def __post_init__(self):
        if self.e >= 0:
            raise DomainError("electron charge must be negative")
        if self.m <= 0 or self.hbar <= 0 or self.c <= 0:
            raise DomainError("mass, hbar and c must be positive")


#: Rounded values as used in the source derivations.
PAPER = PhysicalConstants(e=-4.8e-10, m=9.1e-28, hbar=1.1e-27, c=3.0e10)

#: CODATA 2018 values converted to Gaussian CGS.
PRECISE = PhysicalConstants(
    e=-4.80320471257e-10,
    m=9.1093837015e-28,
    hbar=1.054571817e-27,
    c=2.99792458e10,
)

CONSTANT_SETS = {"paper": PAPER, "precise": PRECISE}


def de_broglie_wavelength(p: float, consts: PhysicalConstants) -> float:
    """Wavelength 2*pi*hbar/|p| of a particle with momentum magnitude p (g cm/s)."""
    if p <= 0:
        raise DomainError("momentum magnitude must be positive")
    return 2.0 * math.pi * consts.hbar / p


def dispersion(k: float, mode: str, consts: PhysicalConstants) -> float:
    """Angular frequency omega(k) for wavenumber k (1/cm).

    Parameters
    ----------
    k : float
        Wavenumber, k >= 0.
    mode : str
        ``"nonrelativistic"`` gives omega = hbar k^2 / (2 m); the kinetic
        branch hbar*omega = (hbar k)^2 / 2m.  ``"relativistic"`` gives
        omega = (c/hbar) * sqrt((hbar k)^2 + (m c)^2), the root of
        (hbar omega / c)^2 = (hbar k)^2 + m^2 c^2, rest energy included.

    Returns
    -------
    float
        omega in 1/s.
    """
    if k < 0:
        raise DomainError("wavenumber must be nonnegative")
    if mode == "nonrelativistic":
        return consts.hbar * k * k / (2.0 * consts.m)
    if mode == "relativistic":
        return consts.c / consts.hbar * math.hypot(consts.hbar * k, consts.m * consts.c)
    raise DomainError(f"unknown dispersion mode {mode!r}")


def photo_energy(omega: float, work_function: float, consts: PhysicalConstants) -> float:
    """Kinetic energy hbar*omega - A released by light of frequency omega.

    Negative results are returned as computed; emission simply does not
    happen below threshold and the caller decides what to do with that.
    """
    if omega < 0:
        raise DomainError("frequency must be nonnegative")
    if work_function < 0:
        raise DomainError("work function must be nonnegative")
    return consts.hbar * omega - work_function


def larmor_frequency(b3: float, consts: PhysicalConstants) -> float:
    """Signed Larmor frequency e*B3/(2 m c) for a uniform field B3 (Gauss)."""
    return consts.e * b3 / (2.0 * consts.m * consts.c)


@dataclass(frozen=True)
class IncidentBeam:
    """Monochromatic incident wave: amplitude, wavenumber, kinetic frequency.

    ``omega_prime`` is the kinetic dispersion hbar k^2/(2 m) of the beam and
    is derived at construction so it can never drift out of step with k.
    """

    a_in: complex
    k: float
    omega_prime: float

    @classmethod
    def from_wavenumber(cls, k: float, consts: PhysicalConstants,
                        a_in: complex = 1.0 + 0.0j) -> "IncidentBeam":
        if k <= 0:
            raise DomainError("beam wavenumber must be positive")
        return cls(a_in=complex(a_in), k=float(k),
                   omega_prime=dispersion(k, "nonrelativistic", consts))

    @classmethod
    def from_wavelength(cls, wavelength: float, consts: PhysicalConstants,
                        a_in: complex = 1.0 + 0.0j) -> "IncidentBeam":
        if wavelength <= 0:
            raise DomainError("beam wavelength must be positive")
        return cls.from_wavenumber(2.0 * math.pi / wavelength, consts, a_in)

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.k
