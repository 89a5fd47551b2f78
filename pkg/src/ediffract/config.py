"""Line-oriented run configuration.

The format is `key = value`, one per line, `#` starting a comment.  Keys
are dotted paths.  Every length-valued key must carry a unit suffix
(_pm, _nm, _um, _mm, _cm); values are converted to cm on input and the
canonical key (without suffix) is stored.  parse -> serialize -> parse
is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import ParseError

__all__ = ["RunConfig", "parse_config", "serialize_config"]

_SUFFIX_SCALE = {
    "_pm": 1e-10,
    "_nm": 1e-7,
    "_um": 1e-4,
    "_mm": 0.1,
    "_cm": 1.0,
}

# sizes must be positive; coordinates are signed
_SIZE_KEYS = frozenset({
    "beam.lambda",
    "slits.separation",
    "slits.width",
    "slits.height",
    "aperture.radius",
    "aperture.half_width",
    "aperture.half_height",
    "screen.D",
    "far.range",
    "tube.cross_section",
    "tube.margin",
})
_COORD_KEYS = frozenset({
    "aperture.center1",
    "aperture.center2",
    "screen.x1",
    "screen.x2_min",
    "screen.x2_max",
    "probe.x1",
    "probe.x2",
    "probe.x3",
    "probe.y1",
    "probe.y2",
    "probe.y3",
})
_LENGTH_KEYS = _SIZE_KEYS | _COORD_KEYS

_FLOAT_KEYS = frozenset({
    "beam.k",
    "beam.a_in_re",
    "beam.a_in_im",
    "far.chi_min_deg",
    "far.chi_max_deg",
    "far.phi_deg",
    "ab.delta_theta",
    "tube.strength",
    "spectra.B3",
    "quad.density",
})
_INT_KEYS = frozenset({
    "screen.count",
    "far.count",
    "fringes.n_min",
    "fringes.n_max",
    "tube.cells_across",
    "tube.born_order",
    "spectra.Z",
    "spectra.n_min",
    "spectra.n_max",
    "corr.n_min",
    "corr.n_max",
    "corr.delta_n",
    "zeeman.n",
    "zeeman.n_prime",
    "shells.n_max",
    "pauli.n",
})
_CHOICE_KEYS = {
    "constants": ("paper", "precise"),
    "aperture.shape": ("rect", "disk"),
}

_ALL_KEYS = _LENGTH_KEYS | _FLOAT_KEYS | _INT_KEYS | frozenset(_CHOICE_KEYS)

_COUNT_KEYS = ("screen.count", "far.count")


@dataclass(frozen=True, eq=True)
class RunConfig:
    """Validated configuration; lengths stored in cm under canonical keys."""

    values: Mapping[str, object]

    def get(self, key, default=None):
        return self.values.get(key, default)

    def __contains__(self, key):
        return key in self.values


def _resolve_key(raw: str, line: int):
    for suffix, scale in _SUFFIX_SCALE.items():
        if raw.endswith(suffix):
            base = raw[: -len(suffix)]
            if base in _LENGTH_KEYS:
                return base, scale
    if raw in _LENGTH_KEYS:
        raise ParseError(
            f"length key '{raw}' requires a unit suffix "
            f"(_pm, _nm, _um, _mm or _cm)", line)
    if raw in _ALL_KEYS:
        return raw, None
    raise ParseError(f"unknown key '{raw}'", line)


def _parse_value(key: str, scale, raw: str, line: int):
    if key in _CHOICE_KEYS:
        if raw not in _CHOICE_KEYS[key]:
            allowed = ", ".join(_CHOICE_KEYS[key])
            raise ParseError(f"'{key}' must be one of: {allowed}", line)
        return raw
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ParseError(f"'{key}' expects an integer, got '{raw}'", line) from None
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(f"'{key}' expects a number, got '{raw}'", line) from None
    if scale is not None:
        value *= scale
    return value


def parse_config(text: str) -> RunConfig:
    """Parse a config document into a RunConfig.

    Raises ParseError (with the offending line number) for unknown or
    duplicate keys, missing unit suffixes, bad values, or a violated
    document invariant.
    """
    values = {}
    first_line = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        body = rawline.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno)
        rawkey, rawval = body.split("=", 1)
        rawkey = rawkey.strip()
        rawval = rawval.strip()
        if not rawkey or not rawval:
            raise ParseError("expected 'key = value'", lineno)
        key, scale = _resolve_key(rawkey, lineno)
        if key in values:
            raise ParseError(
                f"duplicate key '{key}' (first given on line {first_line[key]})",
                lineno)
        values[key] = _parse_value(key, scale, rawval, lineno)
        first_line[key] = lineno

    has_lambda = "beam.lambda" in values
    has_k = "beam.k" in values
    if not has_lambda and not has_k:
        raise ParseError("beam.lambda or beam.k required")
    if has_lambda and has_k:
        raise ParseError(
            f"give exactly one of beam.lambda and beam.k (lines "
            f"{first_line['beam.lambda']} and {first_line['beam.k']})")
    for key in sorted(_SIZE_KEYS & values.keys()):
        if not values[key] > 0:
            raise ParseError(f"'{key}' must be positive", first_line[key])
    if has_k and not values["beam.k"] > 0:
        raise ParseError("'beam.k' must be positive", first_line["beam.k"])
    for key in _COUNT_KEYS:
        if key in values and values[key] < 2:
            raise ParseError(f"'{key}' must be at least 2", first_line[key])
    return RunConfig(MappingProxyType(values))


def serialize_config(config: RunConfig) -> str:
    """Render a RunConfig back to config text (canonical keys, cm units)."""
    lines = []
    for key in sorted(config.values):
        value = config.values[key]
        if key in _LENGTH_KEYS:
            lines.append(f"{key}_cm = {value!r}")
        elif key in _INT_KEYS:
            lines.append(f"{key} = {value}")
        elif key in _CHOICE_KEYS:
            lines.append(f"{key} = {value}")
        else:
            lines.append(f"{key} = {value!r}")
    return "\n".join(lines) + "\n"
