"""First-order Bessel function without external special-function dependencies.

The ascending power series handles |z| <= 12.  Beyond the seam a normalized
backward recurrence (Miller's algorithm) takes over; it is checked against
the series at the seam by the test suite.  Accuracy target is 1e-10
absolute through z of a few thousand.
"""

from __future__ import annotations

import numpy as np

__all__ = ["bessel_j1", "bessel_j1_over_z", "j1_first_zero"]

_SEAM = 12.0


def _series_ratio(z2):
    # sum_m (-1)^m (z/2)^(2m) / (m! (m+1)!) / 2  ==  J1(z)/z, entire in z^2
    term = np.full(np.shape(z2), 0.5)
    total = term.copy()
    for m in range(1, 80):
        term = term * (-0.25 * z2) / (m * (m + 1))
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total)):
            break
    return total


def _miller(z):
    # downward recurrence from a start order well above z, normalized by
    # J0 + 2*sum_{k>=1} J_{2k} = 1.  The start must clear the turning
    # point by a multiple of z^(1/3) (the Airy transition width) or the
    # unwanted solution contaminates the phase at large z.
    z = np.asarray(z, dtype=float)
    top = float(np.max(z))
    nstart = int(top + 12.0 * top ** (1.0 / 3.0)) + 30
    if nstart % 2:
        nstart += 1
    p_hi = np.zeros_like(z)
    p = np.full_like(z, 1e-30)
    norm = np.zeros_like(z)
    j1 = np.zeros_like(z)
    for n in range(nstart, 0, -1):
        p_lo = (2.0 * n / z) * p - p_hi
        p_hi = p
        p = p_lo
        if n - 1 == 1:
            j1 = p.copy()
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * p
        big = np.abs(p) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            p, p_hi, norm, j1 = p * scale, p_hi * scale, norm * scale, j1 * scale
    norm += p  # the n=0 term
    return j1 / norm


def bessel_j1(z):
    """J1(z) for real z, elementwise on arrays."""
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    az = np.abs(z)
    small = az <= _SEAM
    if np.any(small):
        zs = z[small]
        out[small] = zs * _series_ratio(zs * zs)
    if np.any(~small):
        zl = az[~small]
        out[~small] = np.sign(z[~small]) * _miller(zl)
    return out[0] if scalar else out


def bessel_j1_over_z(z):
    """J1(z)/z with the removable singularity filled in: value 1/2 at z = 0."""
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    small = np.abs(z) <= _SEAM
    if np.any(small):
        zs = z[small]
        out[small] = _series_ratio(zs * zs)
    if np.any(~small):
        out[~small] = bessel_j1(z[~small]) / z[~small]
    return out[0] if scalar else out


def j1_first_zero(tol: float = 1e-13) -> float:
    """First positive zero of J1, by bisection on [3, 4.5]."""
    lo, hi = 3.0, 4.5
    flo = bessel_j1(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = bessel_j1(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
