"""Planar apertures in the screen plane x3 = 0 and quadrature rules for
oscillatory diffraction integrals.

Shapes are open sets: membership tests are strict, so boundary points do
not belong to the aperture.  Quadrature grids are uniform per primitive
shape with linear node counts rounded up to powers of two; rounding up
this way makes a doubling of samples_per_wavelength quadruple the node
count of a rectangle exactly, and keeps node sets mirror symmetric for
mirror symmetric shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

__all__ = [
    "Aperture",
    "RectSlit",
    "Disk",
    "ApertureUnion",
    "QuadratureRule",
    "FresnelGeometry",
    "fresnel_factor",
    "quadrature",
]


@dataclass(frozen=True)
class FresnelGeometry:
    """Distance s = |x - y| and the cosine of the diffraction angle."""

    s: float
    cos_chi: float

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"separation must be positive, got s={self.s}")
        if abs(self.cos_chi) > 1 + 1e-12:
            raise DomainError(f"cos_chi out of [-1, 1]: {self.cos_chi}")

    @property
    def factor(self) -> float:
        return 1.0 + self.cos_chi


def fresnel_factor(x, y):
    """Geometry of the ray from aperture point y (in the plane x3 = 0) to x.

    Returns (FresnelGeometry, 1 + cos_chi).  Requires x3 > 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (3,) or y.shape != (2,):
        raise DomainError("expected a 3D observation point and a 2D aperture point")
    if x[2] <= 0:
        raise DomainError(f"observation point must have x3 > 0, got {x[2]}")
    d = np.array([x[0] - y[0], x[1] - y[1], x[2]])
    s = float(np.sqrt(d @ d))
    geom = FresnelGeometry(s, min(x[2] / s, 1.0))
    return geom, geom.factor


def _mirrored_offsets(n: int, h: float) -> np.ndarray:
    # cell centers of n cells of size h, symmetric about 0 by construction
    if n == 1:
        return np.zeros(1)
    half = (np.arange(n // 2) + 0.5) * h
    return np.concatenate([-half[::-1], half])


def _pow2_count(length: float, max_h: float) -> int:
    need = length / max_h
    n = 1
    while n < need * (1.0 - 1e-12):
        n *= 2
    return n


class Aperture:
    """Base class for planar apertures; see RectSlit, Disk, ApertureUnion."""

    def contains(self, y):
        """Strict interior membership for a point (2,) or points (N, 2)."""
        raise NotImplementedError

    @property
    def area(self) -> float:
        raise NotImplementedError

    @property
    def bounding_box(self):
        """((y1_min, y1_max), (y2_min, y2_max))"""
        raise NotImplementedError

    def _quad_nodes(self, max_h):
        raise NotImplementedError


@dataclass(frozen=True)
class RectSlit(Aperture):
    """Open rectangle: half_width along y1, half_height along y2."""

    center: tuple
    half_width: float
    half_height: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not (self.half_width > 0 and self.half_height > 0):
            raise ConfigurationError("rectangle half sizes must be positive")

    def contains(self, y):
        y = np.asarray(y, dtype=float)
        scalar = y.ndim == 1
        y = np.atleast_2d(y)
        c1, c2 = self.center
        inside = (np.abs(y[:, 0] - c1) < self.half_width) & (
            np.abs(y[:, 1] - c2) < self.half_height
        )
        return bool(inside[0]) if scalar else inside

    @property
    def area(self) -> float:
        return 4.0 * self.half_width * self.half_height

    @property
    def bounding_box(self):
        c1, c2 = self.center
        return (
            (c1 - self.half_width, c1 + self.half_width),
            (c2 - self.half_height, c2 + self.half_height),
        )

    def _quad_nodes(self, max_h):
        nx = _pow2_count(2 * self.half_width, max_h)
        ny = _pow2_count(2 * self.half_height, max_h)
        hx = 2 * self.half_width / nx
        hy = 2 * self.half_height / ny
        ox = self.center[0] + _mirrored_offsets(nx, hx)
        oy = self.center[1] + _mirrored_offsets(ny, hy)
        g1, g2 = np.meshgrid(ox, oy, indexing="ij")
        nodes = np.column_stack([g1.ravel(), g2.ravel()])
        weights = np.full(len(nodes), hx * hy)
        return nodes, weights


@dataclass(frozen=True)
class Disk(Aperture):
    """Open disk of radius R."""

    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0:
            raise ConfigurationError("disk radius must be positive")

    def contains(self, y):
        y = np.asarray(y, dtype=float)
        scalar = y.ndim == 1
        y = np.atleast_2d(y)
        d1 = y[:, 0] - self.center[0]
        d2 = y[:, 1] - self.center[1]
        inside = d1 * d1 + d2 * d2 < self.radius * self.radius
        return bool(inside[0]) if scalar else inside

    @property
    def area(self) -> float:
        return np.pi * self.radius * self.radius

    @property
    def bounding_box(self):
        c1, c2 = self.center
        r = self.radius
        return ((c1 - r, c1 + r), (c2 - r, c2 + r))

    def _quad_nodes(self, max_h):
        r = self.radius
        n = _pow2_count(2 * r, max_h)
        h = 2 * r / n
        offs = _mirrored_offsets(n, h)
        g1, g2 = np.meshgrid(offs, offs, indexing="ij")
        cc = np.column_stack([g1.ravel(), g2.ravel()])
        r_cc = np.hypot(cc[:, 0], cc[:, 1])
        half_diag = h * np.sqrt(0.5)

        full = r_cc <= r - half_diag
        rim = (~full) & (r_cc < r + half_diag)

        nodes = [cc[full]]
        weights = [np.full(int(full.sum()), h * h)]

        # rim cells: 8x8 subsampling; node at the centroid of the inside
        # subcell centers (inside the disk by convexity)
        if np.any(rim):
            sub = _mirrored_offsets(8, h / 8)
            s1, s2 = np.meshgrid(sub, sub, indexing="ij")
            soff = np.column_stack([s1.ravel(), s2.ravel()])
            pts = cc[rim][:, None, :] + soff[None, :, :]
            inside = pts[:, :, 0] ** 2 + pts[:, :, 1] ** 2 < r * r
            m = inside.sum(axis=1)
            keep = m > 0
            pts, inside, m = pts[keep], inside[keep], m[keep]
            centroids = (pts * inside[:, :, None]).sum(axis=1) / m[:, None]
            nodes.append(centroids)
            weights.append(m / 64.0 * h * h)

        nodes = np.vstack(nodes)
        weights = np.concatenate(weights)
        nodes = nodes + np.asarray(self.center)
        return nodes, weights


class ApertureUnion(Aperture):
    """Union of pairwise disjoint apertures.  May be empty."""

    def __init__(self, members):
        self.members = tuple(members)
        self._check_disjoint()

    def _check_disjoint(self):
        for i in range(len(self.members)):
            for j in range(i + 1, len(self.members)):
                a, b = self.members[i], self.members[j]
                (a1, a2), (a3, a4) = a.bounding_box
                (b1, b2), (b3, b4) = b.bounding_box
                lo1, hi1 = max(a1, b1), min(a2, b2)
                lo2, hi2 = max(a3, b3), min(a4, b4)
                if lo1 >= hi1 or lo2 >= hi2:
                    continue
                g1 = np.linspace(lo1, hi1, 48)
                g2 = np.linspace(lo2, hi2, 48)
                m1, m2 = np.meshgrid(g1, g2, indexing="ij")
                pts = np.column_stack([m1.ravel(), m2.ravel()])
                if np.any(a.contains(pts) & b.contains(pts)):
                    raise ConfigurationError(
                        f"union members {i} and {j} overlap (detected by sampling)"
                    )

    def contains(self, y):
        y = np.asarray(y, dtype=float)
        scalar = y.ndim == 1
        pts = np.atleast_2d(y)
        inside = np.zeros(len(pts), dtype=bool)
        for m in self.members:
            inside |= m.contains(pts)
        return bool(inside[0]) if scalar else inside

    @property
    def area(self) -> float:
        return float(sum(m.area for m in self.members))

    @property
    def bounding_box(self):
        if not self.members:
            return ((0.0, 0.0), (0.0, 0.0))
        boxes = [m.bounding_box for m in self.members]
        return (
            (min(b[0][0] for b in boxes), max(b[0][1] for b in boxes)),
            (min(b[1][0] for b in boxes), max(b[1][1] for b in boxes)),
        )

    def _quad_nodes(self, max_h):
        if not self.members:
            return np.zeros((0, 2)), np.zeros(0)
        parts = [m._quad_nodes(max_h) for m in self.members]
        return np.vstack([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (N, 2), weights (N,) in cm^2, and the density that built them."""

    nodes: np.ndarray
    weights: np.ndarray
    samples_per_wavelength: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 2 or len(weights) != len(nodes):
            raise ConfigurationError("malformed quadrature rule")
        if np.any(weights <= 0):
            raise ConfigurationError("quadrature weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)


def quadrature(ap: Aperture, k: float, samples_per_wavelength: float = 10.0) -> QuadratureRule:
    """Uniform tensor quadrature with spacing <= lambda / samples_per_wavelength.

    The default density of 10 resolves the e^{iks} oscillation; use
    converged density selection in the diffraction module when unsure.
    """
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    if not samples_per_wavelength >= 4:
        raise ConfigurationError(
            f"samples_per_wavelength must be >= 4, got {samples_per_wavelength}"
        )
    max_h = (2 * np.pi / k) / samples_per_wavelength
    nodes, weights = ap._quad_nodes(max_h)
    return QuadratureRule(nodes, weights, float(samples_per_wavelength))
