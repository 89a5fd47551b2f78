"""Free-space Helmholtz Green functions and Kirchhoff diffraction.

The limiting amplitude behind an aperture is the quadrature sum

    a(x) = -(i k a_in)/(4 pi)^2 * sum_j w_j e^{ik s_j}/s_j (1 + cos chi_j),

evaluated over the rule nodes.  Far-field closed forms (cardinal sines
for rectangles, the Airy J1 ratio for disks) serve as oracles, and the
two-slit idealization feeds the fringe solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aperture import Aperture, ApertureUnion, Disk, QuadratureRule, RectSlit, quadrature
from .bessel import bessel_j1_over_z
from .constants import IncidentBeam
from .errors import AccuracyError, DomainError, SingularityError

__all__ = [
    "green0",
    "green0_normal_derivative",
    "radiation_residual",
    "AmplitudeField",
    "kirchhoff_amplitude",
    "kirchhoff_amplitude_converged",
    "fraunhofer_amplitude",
    "airy_amplitude",
    "TwoSlitSetup",
    "two_slit_amplitude",
    "FringeRoot",
    "fringe_maxima",
]

_PREF = 1.0 / (4.0 * np.pi) ** 2


def green0(x, y, k: float) -> complex:
    """Kernel of the free Helmholtz operator: -e^{ik|x-y|} / (4 pi |x-y|)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x - y
    s = float(np.sqrt(d @ d))
    if s == 0.0:
        raise SingularityError("green0 evaluated at coincident points")
    return complex(-np.exp(1j * k * s) / (4.0 * np.pi * s))


def green0_normal_derivative(x, y, k: float) -> complex:
    """Exact d/dy3 of green0 at an aperture point y = (y1, y2, 0).

    Differentiating the closed form gives
        -e^{iks} (iks - 1)/(4 pi s^2) * (y3 - x3)/s   with y3 = 0,
    whose leading term is the -(ik/4pi)(e^{iks}/s) cos(y - x, e3) asymptote.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (3,) or y.shape != (2,):
        raise DomainError("expected a 3D point and a 2D aperture point")
    if x[2] <= 0:
        raise DomainError(f"observation point must have x3 > 0, got {x[2]}")
    d = np.array([x[0] - y[0], x[1] - y[1], x[2]])
    s = float(np.sqrt(d @ d))
    if s == 0.0:
        raise SingularityError("coincident points")
    return complex(
        -np.exp(1j * k * s) * (1j * k * s - 1.0) / (4.0 * np.pi * s * s) * (-x[2] / s)
    )


def _fibonacci_directions(n: int) -> np.ndarray:
    i = np.arange(n)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    z = 1.0 - (2.0 * i + 1.0) / n
    rho = np.sqrt(1.0 - z * z)
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def radiation_residual(kernel, k: float, rho: float, n_directions: int = 64) -> float:
    """Sommerfeld radiation defect max |rho (d/d|y| - ik) kernel(y)| at |y| = rho.

    The radial derivative is taken by central differences with a step
    small against both 1/k and rho.  Diagnostic only; the caller must
    pick rho outside the scatterer.
    """
    if not rho > 0:
        raise DomainError("radius must be positive")
    h = min(1e-3 / k, 1e-4 * rho) if k > 0 else 1e-4 * rho
    worst = 0.0
    for d in _fibonacci_directions(n_directions):
        f0 = kernel(rho * d)
        fp = kernel((rho + h) * d)
        fm = kernel((rho - h) * d)
        dfdr = (fp - fm) / (2.0 * h)
        worst = max(worst, abs(rho * (dfdr - 1j * k * f0)))
    return worst


@dataclass(frozen=True)
class AmplitudeField:
    """Complex limiting amplitude on an observation grid.

    intensity is |values|^2 per point; near_flags marks samples closer
    than two wavelengths to the aperture region, where the Kirchhoff
    data approximation degrades.
    """

    grid: np.ndarray
    values: np.ndarray
    intensity: np.ndarray
    near_flags: np.ndarray

    def __post_init__(self):
        if np.any(self.grid[:, 2] <= 0):
            raise DomainError("all observation points must have x3 > 0")
        for name in ("grid", "values", "intensity", "near_flags"):
            getattr(self, name).setflags(write=False)


def kirchhoff_amplitude(
    ap: Aperture, beam: IncidentBeam, points, rule: QuadratureRule
) -> AmplitudeField:
    """Diffraction amplitude at observation points (N, 3) behind the screen."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != 3:
        raise DomainError("observation points must be 3D")
    if np.any(points[:, 2] <= 0):
        raise DomainError("all observation points must have x3 > 0")

    k = beam.k
    pref = -1j * k * beam.a_in * _PREF
    lam = beam.wavelength
    n = len(points)
    values = np.zeros(n, dtype=complex)
    near = np.zeros(n, dtype=bool)

    if len(rule) > 0:
        y3d = np.column_stack([rule.nodes, np.zeros(len(rule))])
        # chunk over observation points to bound the (points x nodes) block
        chunk = max(1, int(4e6 // max(len(rule), 1)))
        for lo in range(0, n, chunk):
            p = points[lo : lo + chunk]
            d = p[:, None, :] - y3d[None, :, :]
            s = np.sqrt(np.einsum("ijk,ijk->ij", d, d))
            factor = 1.0 + p[:, 2, None] / s
            values[lo : lo + chunk] = pref * np.einsum(
                "j,ij->i", rule.weights, np.exp(1j * k * s) / s * factor
            )
            near[lo : lo + chunk] = s.min(axis=1) < 2.0 * lam

    return AmplitudeField(points.copy(), values, np.abs(values) ** 2, near)


def kirchhoff_amplitude_converged(
    ap: Aperture,
    beam: IncidentBeam,
    points,
    start_density: float = 10.0,
    rel_change: float = 0.005,
    max_doublings: int = 6,
):
    """Double the quadrature density until the amplitude settles.

    Returns (AmplitudeField, QuadratureRule) at the accepted density,
    where the last doubling changed the amplitude by less than
    rel_change of its maximum.
    """
    rule = quadrature(ap, beam.k, start_density)
    prev = kirchhoff_amplitude(ap, beam, points, rule)
    for _ in range(max_doublings):
        rule = quadrature(ap, beam.k, rule.samples_per_wavelength * 2)
        cur = kirchhoff_amplitude(ap, beam, points, rule)
        scale = np.max(np.abs(cur.values))
        if scale == 0 or np.max(np.abs(cur.values - prev.values)) < rel_change * scale:
            return cur, rule
        prev = cur
    raise AccuracyError(
        f"amplitude did not settle within {max_doublings} density doublings"
    )


def _aperture_fourier(ap: Aperture, k: float, xi1: float, xi2: float) -> complex:
    # integral of e^{-ik(xi1 y1 + xi2 y2)} over the aperture, in closed form
    if isinstance(ap, RectSlit):
        c1, c2 = ap.center
        phase = np.exp(-1j * k * (xi1 * c1 + xi2 * c2))
        part1 = ap.half_width * np.sinc(k * xi1 * ap.half_width / np.pi)
        part2 = ap.half_height * np.sinc(k * xi2 * ap.half_height / np.pi)
        return complex(phase * 4.0 * part1 * part2)
    if isinstance(ap, Disk):
        c1, c2 = ap.center
        phase = np.exp(-1j * k * (xi1 * c1 + xi2 * c2))
        z = k * ap.radius * np.hypot(xi1, xi2)
        return complex(phase * 2.0 * np.pi * ap.radius**2 * bessel_j1_over_z(z))
    if isinstance(ap, ApertureUnion):
        return complex(sum(_aperture_fourier(m, k, xi1, xi2) for m in ap.members))
    raise DomainError(f"no closed-form far field for {type(ap).__name__}")


def fraunhofer_amplitude(ap: Aperture, beam: IncidentBeam, xi, range_x: float) -> complex:
    """Far-field amplitude along direction xi (unit vector, xi3 > 0) at |x| = range_x."""
    xi = np.asarray(xi, dtype=float)
    norm = float(np.sqrt(xi @ xi))
    if norm == 0:
        raise DomainError("direction must be nonzero")
    xi = xi / norm
    if xi[2] <= 0:
        raise DomainError("direction must point into the half-space x3 > 0")
    if not range_x > 0:
        raise DomainError("range must be positive")
    k = beam.k
    pref = -1j * k * beam.a_in * (1.0 + xi[2]) * np.exp(1j * k * range_x) * _PREF / range_x
    return complex(pref * _aperture_fourier(ap, k, xi[0], xi[1]))


def airy_amplitude(radius: float, beam: IncidentBeam, chi_bar: float, range_x: float) -> complex:
    """Far-field disk amplitude 2 pi R^2 J1(z)/z at z = kR sin(chi_bar).

    At chi_bar = 0 the Bessel ratio takes its limiting value 1/2.
    """
    if not radius > 0:
        raise DomainError("disk radius must be positive")
    if not (0 <= chi_bar < np.pi / 2):
        raise DomainError("chi_bar must lie in [0, pi/2)")
    if not range_x > 0:
        raise DomainError("range must be positive")
    k = beam.k
    pref = (
        -1j
        * k
        * beam.a_in
        * (1.0 + np.cos(chi_bar))
        * np.exp(1j * k * range_x)
        * _PREF
        / range_x
    )
    z = k * radius * np.sin(chi_bar)
    return complex(pref * 2.0 * np.pi * radius**2 * bessel_j1_over_z(z))


@dataclass(frozen=True)
class TwoSlitSetup:
    """Two point slits in the plane x3 = 0 and a screen at distance D."""

    q1: np.ndarray
    q2: np.ndarray
    screen_distance: float

    def __post_init__(self):
        q1 = np.asarray(self.q1, dtype=float)
        q2 = np.asarray(self.q2, dtype=float)
        if q1.shape != (3,) or q2.shape != (3,) or q1[2] != 0 or q2[2] != 0:
            raise DomainError("slit centers must be 3D points in the plane x3 = 0")
        if np.array_equal(q1, q2):
            raise DomainError("slit centers must differ")
        if not self.screen_distance > 0:
            raise DomainError("screen distance must be positive")
        q1.setflags(write=False)
        q2.setflags(write=False)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)

    @classmethod
    def canonical(cls, d: float, screen_distance: float) -> "TwoSlitSetup":
        """Frame with q1 = (0, d, 0) and q2 = (0, -d, 0)."""
        if not d > 0:
            raise DomainError("half separation must be positive")
        return cls(np.array([0.0, d, 0.0]), np.array([0.0, -d, 0.0]), screen_distance)

    @property
    def half_separation(self) -> float:
        return float(np.linalg.norm(self.q1 - self.q2) / 2.0)


def _stable_path_difference(setup: TwoSlitSetup, x, s1: float, s2: float) -> float:
    # s1 - s2 without cancellation: (|x-q1|^2 - |x-q2|^2) / (s1 + s2)
    q1, q2 = setup.q1, setup.q2
    num = float((q2 - q1) @ (2.0 * x - q1 - q2))
    return num / (s1 + s2)


def two_slit_amplitude(setup: TwoSlitSetup, k: float, x) -> complex:
    """Point-slit amplitude sum_j e^{ik s_j}/s_j (1 + cos chi_j).

    The phase difference between the terms is computed in its
    cancellation-free form, so the modulus stays accurate even when
    k s_j is of order 10^10.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise DomainError("observation point must be 3D")
    if x[2] <= 0:
        raise DomainError("observation point must have x3 > 0")
    d1 = x - setup.q1
    d2 = x - setup.q2
    s1 = float(np.sqrt(d1 @ d1))
    s2 = float(np.sqrt(d2 @ d2))
    if s1 == 0.0 or s2 == 0.0:
        raise SingularityError("observation point coincides with a slit center")
    ds = _stable_path_difference(setup, x, s1, s2)
    t1 = np.exp(1j * k * ds) * (1.0 + x[2] / s1) / s1
    t2 = (1.0 + x[2] / s2) / s2
    return complex(np.exp(1j * k * s2) * (t1 + t2))


@dataclass(frozen=True)
class FringeRoot:
    """One Bragg maximum: exact bisection root and small-angle estimate."""

    n: int
    x2_exact: float
    x2_smallangle: float
    in_range: bool


def fringe_maxima(setup: TwoSlitSetup, lam: float, n_range, delta_len: float = 0.0):
    """Solve the Bragg rule for the fringe positions on the screen.

    For each integer n the path difference equation

        sqrt((x2+d)^2 + D^2) - sqrt((x2-d)^2 + D^2) = n lam - delta_len

    is solved by bisection to |f| <= 1e-12 D; the orientation makes
    delta_len = 0, n = 1 land at x2 = lam D / (2d) > 0.  When
    |n lam - delta_len| >= 2d the path difference cannot reach the
    target and the root is reported out of range.
    """
    if not lam > 0:
        raise DomainError("wavelength must be positive")
    d = setup.half_separation
    D = setup.screen_distance
    q = lam * D / (2.0 * d)
    ftol = 1e-12 * D

    def path_diff(x2):
        # monotone increasing in x2, range (-2d, 2d)
        sp = np.hypot(x2 + d, D)
        sm = np.hypot(x2 - d, D)
        return 4.0 * d * x2 / (sp + sm)

    roots = []
    for n in n_range:
        n = int(n)
        target = n * lam - delta_len
        small = n * q - delta_len * D / (2.0 * d)
        if abs(target) >= 2.0 * d:
            roots.append(FringeRoot(n, float("nan"), small, False))
            continue
        if target == 0.0:
            roots.append(FringeRoot(n, 0.0, small, True))
            continue
        sign = 1.0 if target > 0 else -1.0
        t = abs(target)
        hi = t * D / (2.0 * d)
        for _ in range(400):
            if sign * path_diff(sign * hi) >= t:
                break
            hi *= 2.0
        lo = 0.0
        mid = 0.5 * hi
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            f = sign * path_diff(sign * mid)
            if abs(f - t) <= ftol:
                break
            if f < t:
                lo = mid
            else:
                hi = mid
        roots.append(FringeRoot(n, sign * mid, small, True))
    return roots
