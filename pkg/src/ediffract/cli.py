"""Command line interface: config-driven computations emitted as CSV.

Exit codes: 0 on success, 2 for usage or configuration problems, 3 for
numeric or convergence failures.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .aperture import ApertureUnion, Disk, RectSlit, quadrature
from .config import RunConfig, parse_config
from .constants import CONSTANT_SETS, IncidentBeam, PhysicalConstants
from .errors import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    PathError,
    SplitError,
    UnsupportedOrderError,
    UsageError,
)
from .kirchhoff import (
    TwoSlitSetup,
    airy_amplitude,
    fraunhofer_amplitude,
    fringe_maxima,
    green0,
    kirchhoff_amplitude,
)
from .magnetic import ABPhase, MagneticConfig, ab_shift, born_term, split_potential, vector_potential
from .spectra import (
    SpectralContext,
    balmer_energy,
    correspondence_check,
    enumerate_states,
    pauli_energy,
    shell_capacity,
    zeeman_line,
)
from .tables import ResultTable

__all__ = ["main"]

_COMMAND_HELP = {
    "diffract": "Kirchhoff screen scan for a slit pair or a single aperture",
    "fraunhofer": "closed-form far-field scan over the polar angle",
    "airy": "far-field scan of a circular aperture",
    "fringes": "two-slit fringe maxima (exact and small-angle)",
    "ab-shift": "fringe displacement for a given phase offset",
    "born-probe": "Green function correction terms at a probe pair",
    "spectrum": "bound level energies and frequencies",
    "zeeman": "allowed line table between two shells in an axial field",
    "correspondence": "quantum line versus classical orbital frequency",
    "shells": "electron capacities per shell",
    "pauli": "level table of one shell in an axial field",
}


def _require(config: RunConfig, *keys: str) -> None:
    missing = [key for key in keys if key not in config]
    if missing:
        raise ConfigurationError("missing required key(s): " + ", ".join(missing))


def _beam(config: RunConfig, consts: PhysicalConstants) -> IncidentBeam:
    amplitude = complex(config.get("beam.a_in_re", 1.0),
                        config.get("beam.a_in_im", 0.0))
    lam = config.get("beam.lambda")
    if lam is not None:
        return IncidentBeam.from_wavelength(lam, consts, amplitude)
    return IncidentBeam.from_wavenumber(config.get("beam.k"), consts, amplitude)


def _aperture(config: RunConfig):
    if "slits.separation" in config:
        _require(config, "slits.width", "slits.height")
        half = config.get("slits.separation") / 2.0
        half_height = config.get("slits.width") / 2.0
        half_width = config.get("slits.height") / 2.0
        return ApertureUnion([
            RectSlit((0.0, half), half_width, half_height),
            RectSlit((0.0, -half), half_width, half_height),
        ])
    shape = config.get("aperture.shape")
    if shape is None:
        raise ConfigurationError(
            "an aperture is required: give slits.separation or aperture.shape")
    center = (config.get("aperture.center1", 0.0),
              config.get("aperture.center2", 0.0))
    if shape == "disk":
        _require(config, "aperture.radius")
        return Disk(center, config.get("aperture.radius"))
    _require(config, "aperture.half_width", "aperture.half_height")
    return RectSlit(center, config.get("aperture.half_width"),
                    config.get("aperture.half_height"))


def _two_slit(config: RunConfig) -> TwoSlitSetup:
    _require(config, "slits.separation", "screen.D")
    return TwoSlitSetup.canonical(config.get("slits.separation") / 2.0,
                                  config.get("screen.D"))


def _chi_grid(config: RunConfig, default_min: float, default_max: float):
    chi_min = config.get("far.chi_min_deg", default_min)
    chi_max = config.get("far.chi_max_deg", default_max)
    count = config.get("far.count", 201)
    if count < 2:
        raise ConfigurationError("'far.count' must be at least 2")
    if not chi_max > chi_min:
        raise ConfigurationError("'far.chi_max_deg' must exceed 'far.chi_min_deg'")
    return np.linspace(chi_min, chi_max, count)


def _cmd_diffract(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    ap = _aperture(config)
    _require(config, "screen.D", "screen.x2_min", "screen.x2_max", "screen.count")
    distance = config.get("screen.D")
    x1 = config.get("screen.x1", 0.0)
    x2 = np.linspace(config.get("screen.x2_min"), config.get("screen.x2_max"),
                     config.get("screen.count"))
    points = np.column_stack([np.full_like(x2, x1), x2, np.full_like(x2, distance)])
    density = args.density if args.density is not None \
        else config.get("quad.density", 10.0)
    rule = quadrature(ap, beam.k, density)
    field = kirchhoff_amplitude(ap, beam, points, rule)
    rows = [(x1, float(p2), distance, v.real, v.imag, float(ii))
            for p2, v, ii in zip(x2, field.values, field.intensity)]
    return ResultTable(("x1_cm", "x2_cm", "x3_cm", "re_a", "im_a", "intensity"),
                       rows)


def _cmd_fraunhofer(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    ap = _aperture(config)
    _require(config, "far.range")
    reach = config.get("far.range")
    phi = np.deg2rad(config.get("far.phi_deg", 0.0))
    rows = []
    for chi_deg in _chi_grid(config, -10.0, 10.0):
        chi = np.deg2rad(chi_deg)
        xi = np.array([np.sin(chi) * np.cos(phi),
                       np.sin(chi) * np.sin(phi),
                       np.cos(chi)])
        value = fraunhofer_amplitude(ap, beam, xi, reach)
        rows.append((float(chi_deg), value.real, value.imag, abs(value) ** 2))
    return ResultTable(("chi_deg", "re_a", "im_a", "intensity"), rows)


def _cmd_airy(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    _require(config, "aperture.radius", "far.range")
    radius = config.get("aperture.radius")
    reach = config.get("far.range")
    rows = []
    for chi_deg in _chi_grid(config, 0.0, 10.0):
        chi = np.deg2rad(chi_deg)
        value = airy_amplitude(radius, beam, chi, reach)
        rows.append((float(chi_deg), beam.k * radius * np.sin(chi),
                     value.real, value.imag, abs(value) ** 2))
    return ResultTable(("chi_deg", "kr_sin_chi", "re_a", "im_a", "intensity"),
                       rows)


def _cmd_fringes(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    setup = _two_slit(config)
    n_min = config.get("fringes.n_min", -5)
    n_max = config.get("fringes.n_max", 5)
    if n_min > n_max:
        raise ConfigurationError("'fringes.n_min' must not exceed 'fringes.n_max'")
    delta_len = ABPhase.from_theta(config.get("ab.delta_theta", 0.0),
                                   beam.k).delta_len
    roots = fringe_maxima(setup, beam.wavelength, range(n_min, n_max + 1),
                          delta_len)
    rows = [(r.n, r.x2_exact, r.x2_smallangle) for r in roots]
    return ResultTable(("n", "x2_exact_cm", "x2_smallangle_cm"), rows)


def _cmd_ab_shift(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    setup = _two_slit(config)
    _require(config, "ab.delta_theta")
    phase = ABPhase.from_theta(config.get("ab.delta_theta"), beam.k)
    shift = ab_shift(phase, setup)
    return ResultTable(("delta_theta", "delta_len_cm", "shift_cm"),
                       [(phase.delta_theta, phase.delta_len, shift)])


def _tube(config: RunConfig, consts: PhysicalConstants) -> MagneticConfig:
    width = config.get("tube.cross_section", 2.0)
    w = width / 2.0
    cfg = MagneticConfig.hairpin(
        consts,
        strength=config.get("tube.strength", 0.01),
        half_width=w,
        cells_across=config.get("tube.cells_across", 24),
    )
    margin = config.get("tube.margin")
    if margin is not None:
        from dataclasses import replace
        cfg = replace(cfg, margin=margin)
    return cfg


def _cmd_born_probe(config, consts, args) -> ResultTable:
    beam = _beam(config, consts)
    _require(config, "probe.x1", "probe.x2", "probe.x3",
             "probe.y1", "probe.y2", "probe.y3")
    x = np.array([config.get("probe.x1"), config.get("probe.x2"),
                  config.get("probe.x3")])
    y = np.array([config.get("probe.y1"), config.get("probe.y2"),
                  config.get("probe.y3")])
    order = config.get("tube.born_order", 2)
    cfg = _tube(config, consts)
    split = split_potential(cfg, lambda pts: vector_potential(cfg, pts))
    value = green0(x, y, beam.k)
    rows = [(0, value.real, value.imag, abs(value))]
    for n in range(1, order + 1):
        term = born_term(split, beam.k, x, y, n)
        rows.append((n, term.real, term.imag, abs(term)))
    return ResultTable(("n", "re_R", "im_R", "abs_R"), rows)


def _context(config: RunConfig, consts: PhysicalConstants) -> SpectralContext:
    return SpectralContext(consts, config.get("spectra.Z", 1),
                           config.get("spectra.B3", 0.0))


def _cmd_spectrum(config, consts, args) -> ResultTable:
    ctx = _context(config, consts)
    n_min = config.get("spectra.n_min", 1)
    n_max = config.get("spectra.n_max", 5)
    if n_min < 1 or n_min > n_max:
        raise ConfigurationError("need 1 <= spectra.n_min <= spectra.n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        level = balmer_energy(ctx, n)
        rows.append((n, level.energy, level.omega))
    return ResultTable(("n", "E_erg", "omega_per_s"), rows)


def _cmd_zeeman(config, consts, args) -> ResultTable:
    ctx = _context(config, consts)
    _require(config, "zeeman.n", "zeeman.n_prime")
    n = config.get("zeeman.n")
    n_prime = config.get("zeeman.n_prime")
    rows = []
    for m in range(-(n - 1), n):
        for m_prime in range(-(n_prime - 1), n_prime):
            line = zeeman_line(ctx, n, m, n_prime, m_prime)
            if line.allowed:
                rows.append((n, m, n_prime, m_prime, m_prime - m, line.omega))
    return ResultTable(("n", "m", "n_prime", "m_prime", "delta_m",
                        "omega_per_s"), rows)


def _cmd_correspondence(config, consts, args) -> ResultTable:
    ctx = _context(config, consts)
    n_min = config.get("corr.n_min", 10)
    n_max = config.get("corr.n_max", 10000)
    delta_n = config.get("corr.delta_n", 1)
    if n_min < 2 or n_min > n_max:
        raise ConfigurationError("need 2 <= corr.n_min <= corr.n_max")
    rows = []
    n = n_min
    while n <= n_max:
        omega_q, omega_c, ratio = correspondence_check(ctx, n, delta_n)
        rows.append((n, delta_n, omega_q, omega_c, ratio))
        n *= 10
    return ResultTable(("n", "delta_n", "omega_q_per_s", "omega_c_per_s",
                        "ratio"), rows)


def _cmd_shells(config, consts, args) -> ResultTable:
    n_max = config.get("shells.n_max", 5)
    if n_max < 1:
        raise ConfigurationError("'shells.n_max' must be at least 1")
    rows = [(n, shell_capacity(n)) for n in range(1, n_max + 1)]
    return ResultTable(("n", "capacity"), rows)


def _cmd_pauli(config, consts, args) -> ResultTable:
    ctx = _context(config, consts)
    _require(config, "pauli.n")
    n = config.get("pauli.n")
    rows = []
    for state in enumerate_states(n):
        energy = pauli_energy(ctx, state.n, state.m, state.s)
        rows.append((state.n, state.l, state.m, state.s,
                     state.m + state.s, energy))
    return ResultTable(("n", "l", "m", "s", "m_plus_s", "E_erg"), rows)


_COMMANDS = {
    "diffract": _cmd_diffract,
    "fraunhofer": _cmd_fraunhofer,
    "airy": _cmd_airy,
    "fringes": _cmd_fringes,
    "ab-shift": _cmd_ab_shift,
    "born-probe": _cmd_born_probe,
    "spectrum": _cmd_spectrum,
    "zeeman": _cmd_zeeman,
    "correspondence": _cmd_correspondence,
    "shells": _cmd_shells,
    "pauli": _cmd_pauli,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ediffract",
        description="Electron diffraction, magnetic phases, and old "
                    "quantum mechanics tables.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")
    for name, blurb in _COMMAND_HELP.items():
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--config", required=True,
                       help="path to the key = value config file")
        p.add_argument("--out", help="write CSV here instead of stdout")
        p.add_argument("--density", type=float, default=None,
                       help="quadrature samples per wavelength")
        p.add_argument("--constants", choices=("paper", "precise"),
                       default=None, help="constant set override")
        p.add_argument("--plot", action="store_true",
                       help="render a PNG figure next to the output")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text)
        name = args.constants or config.get("constants", "paper")
        table = _COMMANDS[args.command](config, CONSTANT_SETS[name], args)
    except (ConfigurationError, UsageError, DomainError, PathError,
            UnsupportedOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, SplitError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            table.write(fh)
    else:
        sys.stdout.write(table.to_csv())
    if args.plot:
        from .plots import render_plot
        if args.out:
            target = os.path.splitext(args.out)[0] + ".png"
        else:
            target = f"{args.command}.png"
        render_plot(args.command, table, target)
        print(f"plot written to {target}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
