"""Unit tables, conversion and best-unit formatting.

Internal units everywhere in the package: mm (length), mm3 (volume),
rad (angle), MeV (energy), g (mass), g/cm3 (density).
"""

from __future__ import annotations

import math

from .errors import UnitError

LENGTH = {"nm": 1e-6, "um": 1e-3, "mm": 1.0, "cm": 10.0, "m": 1000.0, "km": 1e6}
ANGLE = {"mrad": 1e-3, "rad": 1.0, "deg": math.pi / 180.0}
ENERGY = {"eV": 1e-6, "keV": 1e-3, "MeV": 1.0, "GeV": 1e3, "TeV": 1e6}
MASS = {"ug": 1e-6, "mg": 1e-3, "g": 1.0, "kg": 1e3}
VOLUME = {"mm3": 1.0, "cm3": 1e3, "m3": 1e9}
DENSITY = {"ug/cm3": 1e-6, "mg/cm3": 1e-3, "g/cm3": 1.0}

CATEGORIES = {
    "length": LENGTH,
    "angle": ANGLE,
    "energy": ENERGY,
    "mass": MASS,
    "volume": VOLUME,
    "density": DENSITY,
}

# Fallback unit when the value is exactly zero.
BASE_UNIT = {
    "length": "mm",
    "angle": "rad",
    "energy": "MeV",
    "mass": "g",
    "volume": "mm3",
    "density": "g/cm3",
}

_BY_SIZE = {
    name: sorted(table.items(), key=lambda kv: -kv[1])
    for name, table in CATEGORIES.items()
}


def convert(value: float, unit: str, category: str) -> float:
    """Convert a value given in `unit` to the category's internal unit."""
    try:
        table = CATEGORIES[category]
    except KeyError:
        raise UnitError(f"unknown unit category '{category}'") from None
    if unit not in table:
        known = " ".join(sorted(table))
        raise UnitError(f"'{unit}' is not a {category} unit (known: {known})")
    return value * table[unit]


def is_unit(token: str, category: str) -> bool:
    return token in CATEGORIES.get(category, ())


def best_unit(value: float, category: str) -> tuple[float, str]:
    """Pick the largest unit keeping the mantissa >= 1.

    Falls back to the smallest unit for sub-unit magnitudes and to the
    internal unit for exact zero.
    """
    if value == 0.0:
        return 0.0, BASE_UNIT[category]
    for name, size in _BY_SIZE[category]:
        if abs(value) / size >= 1.0:
            return value / size, name
    name, size = _BY_SIZE[category][-1]
    return value / size, name


def fmt(value: float, category: str, sig: int = 6) -> str:
    """Render a dimensioned value like '10888.1 cm3' with `sig` significant digits."""
    v, unit = best_unit(value, category)
    return f"{v:.{sig}g} {unit}"


def fmt_vector(vec, category: str, sig: int = 6) -> str:
    """Render a 3-vector with one shared unit chosen from its largest component."""
    mag = max(abs(float(c)) for c in vec)
    _, unit = best_unit(mag, category)
    size = CATEGORIES[category][unit]
    comps = " ".join(f"{float(c) / size:.{sig}g}" for c in vec)
    return f"({comps}) {unit}"
