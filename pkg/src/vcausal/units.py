"""Unit-suffixed value parsing for the CLI/config boundary.

Internally everything is SI (meters, seconds, radians). Suffixes exist only
at this boundary because the campaign parameters span twelve orders of
magnitude and raw floats invite unit mistakes. Bare numbers fall back to the
base unit: meters for lengths, seconds for times, degrees for angles (angles
are the one quantity conventionally written in degrees at interfaces).
"""

import math
import re

from .errors import UnitError

LENGTH_UNITS = {
    "nm": 1e-9,
    "um": 1e-6,
    "µm": 1e-6,
    "μm": 1e-6,
    "mm": 1e-3,
    "cm": 1e-2,
    "m": 1.0,
    "km": 1e3,
}

TIME_UNITS = {
    "ns": 1e-9,
    "us": 1e-6,
    "µs": 1e-6,
    "ms": 1e-3,
    "s": 1.0,
    "min": 60.0,
    "h": 3600.0,
    "hr": 3600.0,
    "d": 86400.0,
    "day": 86400.0,
    "days": 86400.0,
}

ANGLE_UNITS = {
    "deg": math.pi / 180.0,
    "rad": 1.0,
}

_VALUE_RE = re.compile(
    r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Zµμ]*)\s*$"
)


def _parse(value, units: dict, default_unit: str, kind: str) -> float:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value) * units[default_unit]
    match = _VALUE_RE.match(str(value))
    if match is None:
        raise UnitError(f"cannot parse {kind} value {value!r}")
    number, suffix = match.groups()
    suffix = suffix or default_unit
    if suffix not in units:
        known = ", ".join(sorted(set(units)))
        raise UnitError(f"unknown {kind} unit {suffix!r} in {value!r} (known: {known})")
    return float(number) * units[suffix]


def parse_length(value) -> float:
    """Parse a length like '215um', '1.175km' or a bare number (meters)."""
    return _parse(value, LENGTH_UNITS, "m", "length")


def parse_time(value) -> float:
    """Parse a duration like '0.492s', '12h' or a bare number (seconds)."""
    return _parse(value, TIME_UNITS, "s", "time")


def parse_angle(value) -> float:
    """Parse an angle like '83.6deg', '1.57rad' or a bare number (degrees)."""
    return _parse(value, ANGLE_UNITS, "deg", "angle")
