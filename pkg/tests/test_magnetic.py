"""Flux tube field, gauge split, Born corrections, and the fringe shift."""

import numpy as np
import pytest

from ediffract import (
    ABPhase,
    ConfigurationError,
    DivergenceWarning,
    DomainError,
    MagneticConfig,
    OrientedDisk,
    PAPER,
    PathError,
    SingularityError,
    TwoSlitSetup,
    UnsupportedOrderError,
    ab_shift,
    ab_two_slit_amplitude,
    born_term,
    circle_points,
    divergence_metric,
    flux,
    gauge_phase,
    line_integral,
    magnetic_green,
    split_potential,
    tube_probe_points,
    uniform_field_potential,
    vector_potential,
)

# the coarsest admissible grid keeps this module fast; the acceptance
# checks rerun the path-independence and flux invariants at the default


@pytest.fixture(scope="module")
def cfg():
    return MagneticConfig.hairpin(PAPER, cells_across=16)


@pytest.fixture(scope="module")
def potential(cfg):
    return lambda p: vector_potential(cfg, p)


@pytest.fixture(scope="module")
def split(cfg, potential):
    return split_potential(cfg, potential)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        MagneticConfig.hairpin(PAPER, strength=-1.0)
    with pytest.raises(ConfigurationError):
        MagneticConfig.hairpin(PAPER, cells_across=8)
    with pytest.raises(ConfigurationError):
        MagneticConfig(PAPER, 0.01, 1.0, 6.0, 5.0, 0.5, 2.0)  # corner < w
    with pytest.raises(ConfigurationError):
        MagneticConfig(PAPER, 0.01, 1.0, 6.0, 5.0, 5.5, 2.0)  # corner too big
    with pytest.raises(ConfigurationError):
        MagneticConfig(PAPER, 0.01, 1.0, 6.0, 5.0, 4.0, 0.5)  # margin < w


def test_hairpin_geometry(cfg):
    assert cfg.grid_spacing == pytest.approx(2.0 / 16.0)
    assert cfg.nominal_flux == pytest.approx(0.01 * 0.75**2, rel=1e-14)
    np.testing.assert_allclose(cfg.base_point, [0.0, 0.0, -10.0])
    assert not cfg.in_ttilde(cfg.base_point[None, :])[0]
    # bottom arm center lies on the centerline, peak field along x1
    assert cfg.in_tube(np.array([[0.0, 0.0, -5.0]]))[0]
    B = cfg.field(np.array([[0.0, 0.0, -5.0]]))[0]
    assert abs(B[0]) == pytest.approx(cfg.strength, rel=1e-14)
    assert B[1] == 0.0 and abs(B[2]) < 1e-15
    # far away: no field, outside both regions
    far = np.array([[0.0, 0.0, 14.0]])
    assert not cfg.in_tube(far)[0]
    assert not cfg.in_ttilde(far)[0]
    assert np.all(cfg.field(far) == 0.0)


def test_probe_points_sample_the_tube(cfg):
    pts = tube_probe_points(cfg)
    assert len(pts) > 100
    assert np.all(cfg.in_tube(pts))


def test_uniform_potential_and_stokes():
    A = uniform_field_potential(2.0, np.array([1.0, 3.0, -2.0]))
    np.testing.assert_allclose(A, [-3.0, 1.0, 0.0])
    # loop integral around a circle equals the enclosed flux; the chord
    # polyline encloses the inscribed polygon, not the disk itself
    n = 256
    loop = circle_points([0.0, 0.0, 0.0], [0.0, 0.0, 1.0], 2.5, n=n)
    got = line_integral(lambda p: uniform_field_potential(2.0, p), loop, 0.1)
    polygon = 2.0 * (n / 2.0) * 2.5**2 * np.sin(2.0 * np.pi / n)
    assert got == pytest.approx(polygon, rel=1e-12)
    assert got == pytest.approx(2.0 * np.pi * 2.5**2, rel=1e-3)
    # a linear field has exactly vanishing derivative sums
    pts = np.array([[0.3, -0.8, 1.0], [2.0, 0.5, -0.7]])
    assert divergence_metric(lambda p: uniform_field_potential(2.0, p), pts, 0.05) == 0.0


def test_flux_through_a_transverse_section(cfg):
    disk = OrientedDisk(np.array([0.0, 0.0, -5.0]), np.array([1.0, 0.0, 0.0]), 5.0)
    result = flux(cfg, disk)
    assert result.complete
    assert result.value == pytest.approx(cfg.nominal_flux, rel=1e-10)


def test_flux_flags_partial_coverage(cfg):
    small = OrientedDisk(np.array([0.0, 0.0, -5.0]), np.array([1.0, 0.0, 0.0]), 0.5)
    partial = flux(cfg, small)
    assert not partial.complete
    assert 0.0 < partial.value < cfg.nominal_flux
    # a disk in the plane of the loop catches no flux at all
    sideways = flux(cfg, OrientedDisk(np.zeros(3), np.array([0.0, 1.0, 0.0]), 5.0))
    assert sideways.value == 0.0
    assert not sideways.complete


def test_oriented_disk_validation():
    with pytest.raises(DomainError):
        OrientedDisk(np.zeros(3), np.zeros(3), 1.0)
    with pytest.raises(DomainError):
        OrientedDisk(np.zeros(3), np.array([0.0, 0.0, 2.0]), 0.0)
    d = OrientedDisk(np.zeros(3), np.array([0.0, 0.0, 2.0]), 1.0)
    assert np.linalg.norm(d.normal) == pytest.approx(1.0, rel=1e-15)


def test_line_integral_validation():
    with pytest.raises(DomainError):
        line_integral(lambda p: p, [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], 0.0)
    with pytest.raises(DomainError):
        line_integral(lambda p: p, [[0.0, 0.0, 0.0]], 0.5)


def test_vector_potential_is_linear_in_the_field_strength(cfg):
    doubled = MagneticConfig.hairpin(PAPER, strength=0.02, cells_across=16)
    pts = np.array([[0.5, 0.3, -3.5], [0.0, 3.5, -6.0], [8.0, 0.0, 0.0]])
    assert np.array_equal(vector_potential(doubled, pts), 2.0 * vector_potential(cfg, pts))
    quiet = MagneticConfig.hairpin(PAPER, strength=0.0, cells_across=16)
    assert np.all(vector_potential(quiet, pts) == 0.0)


def test_potential_divergence_cancels(cfg, potential):
    pts = tube_probe_points(cfg)[:100]
    # central differences at w/40: discretization floor sits near 1e-3
    assert divergence_metric(potential, pts, 1.0 / 40.0) < 1e-3


def test_gauge_phase_is_path_independent(cfg, potential):
    x = np.array([2.5, 1.0, 14.0])
    over_top = gauge_phase(cfg, potential, x,
                           via=[np.array([2.5, 9.0, -10.0]), np.array([2.5, 9.0, 14.0])])
    around_arm = gauge_phase(cfg, potential, x,
                             via=[np.array([16.0, 1.0, -10.0]), np.array([16.0, 1.0, 14.0])])
    assert abs(over_top - around_arm) <= 1e-6 * max(abs(over_top), 1.0)


def test_gauge_phase_guards_the_route(cfg, potential):
    assert gauge_phase(cfg, potential, cfg.base_point) == 0.0
    # the straight route from the base threads the film spanning the loop
    with pytest.raises(PathError):
        gauge_phase(cfg, potential, np.array([2.5, 1.0, 14.0]))
    with pytest.raises(PathError):
        gauge_phase(cfg, potential, np.array([0.0, 8.0, 0.0]),
                    via=[np.array([0.0, 0.0, -5.0])])


def test_split_reproduces_the_potential(cfg, potential, split):
    # A = b + grad(phi), gradient by fourth-order differences at w/8;
    # inside the sleeve the sampled potential itself is only good to the
    # grid graininess, hence the looser bound there
    def grad4(f, p, s):
        g = np.zeros(3)
        for i in range(3):
            e = np.zeros(3)
            e[i] = s
            g[i] = (-f(p + 2 * e) + 8 * f(p + e) - 8 * f(p - e) + f(p - 2 * e)) / (12 * s)
        return g

    cases = [
        (np.array([0.5, 0.3, -3.5]), 1e-3),   # inside the loop hole
        (np.array([0.0, 3.5, -6.0]), 1e-3),   # outside the inflated region
        (np.array([0.0, 0.4, -4.6]), 2e-2),   # inside the sleeve
    ]
    for p, bound in cases:
        a = potential(p)
        b = split.b(p[None, :])[0]
        g = grad4(split.phi, p, 1.0 / 8.0)
        rel = np.linalg.norm(a - b - g) / max(np.linalg.norm(a), np.linalg.norm(b))
        assert rel < bound


def test_split_b_is_supported_near_the_tube(cfg, split):
    inside = np.array([[0.0, 0.0, -5.0]])
    outside = np.array([[0.0, 8.0, 0.0], [20.0, 0.0, 0.0]])
    assert np.linalg.norm(split.b(inside)) > 0.0
    assert np.all(split.b(outside) == 0.0)
    assert split.beta == pytest.approx(0.75 * cfg.strength * cfg.half_width, rel=1e-5)
    scaled = split.scaled(0.5)
    assert np.array_equal(scaled.b(inside), 0.5 * split.b(inside))
    assert scaled.beta == pytest.approx(0.5 * split.beta, rel=1e-15)


def test_born_term_vanishes_without_a_field():
    quiet = MagneticConfig.hairpin(PAPER, strength=0.0, cells_across=16)
    s0 = split_potential(quiet, lambda p: vector_potential(quiet, p))
    x, y = np.array([0.0, 0.0, 30.0]), np.array([0.0, 0.0, -30.0])
    assert born_term(s0, 1.0, x, y, 1) == 0j


def test_born_first_order_value_and_linearity(split):
    x, y = np.array([0.0, 0.0, 30.0]), np.array([0.0, 0.0, -30.0])
    r1 = born_term(split, 1.0, x, y, 1)
    assert r1.real == pytest.approx(3446618.148674727, rel=1e-9)
    assert r1.imag == pytest.approx(2495810.2841893802, rel=1e-9)
    # with the quadratic channel off the term is exactly linear in B
    lin = born_term(split, 1.0, x, y, 1, quadratic=False)
    lin2 = born_term(split.scaled(2.0), 1.0, x, y, 1, quadratic=False)
    assert lin2 == 2.0 * lin


def test_born_term_validation(split):
    x, y = np.array([0.0, 0.0, 30.0]), np.array([0.0, 0.0, -30.0])
    with pytest.raises(UnsupportedOrderError):
        born_term(split, 1.0, x, y, 3)
    with pytest.raises(DomainError):
        born_term(split, 1.0, x, y, 0)
    with pytest.raises(DomainError):
        born_term(split, 0.0, x, y, 1)
    with pytest.raises(DomainError):
        born_term(split, 1.0, np.zeros(3), y, 1)  # probe inside the region


def test_green_warns_when_the_series_is_unreliable(split):
    # at full strength the quadratic channel dwarfs the first term
    x, y = np.array([0.0, 0.0, 30.0]), np.array([0.0, 0.0, -30.0])
    with pytest.warns(DivergenceWarning):
        magnetic_green(split, 1.0, x, y, order=2)
    with pytest.raises(SingularityError):
        magnetic_green(split, 1.0, x, x, order=0)
    with pytest.raises(UnsupportedOrderError):
        magnetic_green(split, 1.0, x, y, order=5)


def test_green_zero_order_is_gauge_dressed_free_kernel(split):
    from ediffract import green0

    x, y = np.array([0.0, 0.0, 30.0]), np.array([0.0, 0.0, -30.0])
    g = magnetic_green(split, 1.0, x, y, order=0)
    assert abs(g) == pytest.approx(abs(green0(x, y, 1.0)), rel=1e-12)


def test_ab_phase_round_trip():
    k = 1.2e9
    phase = ABPhase.from_theta(np.pi / 2, k)
    assert phase.delta_len * k == phase.delta_theta
    assert phase.delta_len == pytest.approx(np.pi / 2 / k, rel=1e-15)
    with pytest.raises(DomainError):
        ABPhase.from_theta(1.0, 0.0)


def test_ab_shift_scales_with_the_geometry():
    setup = TwoSlitSetup.canonical(1.65e-5, 24.0)
    phase = ABPhase.from_theta(np.pi / 2, 2 * np.pi / 5e-9)
    shift = ab_shift(phase, setup)
    assert shift == pytest.approx(phase.delta_len * 24.0 / 3.3e-5, rel=1e-15)
    twice = ab_shift(ABPhase.from_theta(np.pi, 2 * np.pi / 5e-9), setup)
    assert twice == pytest.approx(2.0 * shift, rel=1e-12)


def test_two_slit_phase_difference_controls_the_pattern():
    setup = TwoSlitSetup.canonical(1.65e-5, 24.0)
    k = 2 * np.pi / 5e-9
    g = PAPER.e / (PAPER.hbar * PAPER.c)
    center = np.array([0.0, 0.0, 24.0])

    flat = lambda p: 0.0
    half_turn = lambda p: np.pi / g if p[1] > 0 else 0.0

    bright = abs(ab_two_slit_amplitude(setup, k, flat, center, PAPER)) ** 2
    dark = abs(ab_two_slit_amplitude(setup, k, half_turn, center, PAPER)) ** 2
    assert dark < 1e-20 * bright

    # a constant offset in phi leaves the modulus alone
    lifted = lambda p: half_turn(p) + 123.0 / g
    a1 = ab_two_slit_amplitude(setup, k, half_turn, center, PAPER)
    a2 = ab_two_slit_amplitude(setup, k, lifted, center, PAPER)
    assert abs(a2) == pytest.approx(abs(a1), abs=1e-12 * bright**0.5)

    phase = ABPhase.from_gauge_phase(half_turn, setup, k, PAPER)
    assert phase.delta_theta == pytest.approx(np.pi, rel=1e-12)


def test_ab_two_slit_validation():
    setup = TwoSlitSetup.canonical(1.0, 10.0)
    with pytest.raises(DomainError):
        ab_two_slit_amplitude(setup, 1.0, lambda p: 0.0, [0.0, 0.0, -1.0], PAPER)
