import math

import pytest

from multivis import units
from multivis.errors import UnitError


def test_best_unit_picks_largest_with_mantissa_at_least_one():
    assert units.fmt(20736000.0, "volume") == "20736 cm3"
    assert units.fmt(175929.1886010284, "volume") == "175.929 cm3"
    assert units.fmt(8736000.0, "volume") == "8736 cm3"
    assert units.fmt(0.5, "volume") == "0.5 mm3"


def test_mass_formatting_matches_reference_output():
    assert units.fmt(10.52504544, "mass") == "10.525 g"
    assert units.fmt(10888.07081, "mass") == "10.8881 kg"
    assert units.fmt(198.2722055, "mass") == "198.272 g"
    assert units.fmt(1731.6, "mass") == "1.7316 kg"
    assert units.fmt(12828.46806, "mass") == "12.8285 kg"


def test_density_formatting():
    assert units.fmt(1.20479e-3, "density") == "1.20479 mg/cm3"
    assert units.fmt(1.0, "density") == "1 g/cm3"
    assert units.fmt(1.85, "density") == "1.85 g/cm3"


def test_zero_uses_base_unit():
    assert units.fmt(0.0, "length") == "0 mm"


def test_angle_units_agree():
    deg = units.convert(90.0, "deg", "angle")
    rad = units.convert(1.5707963, "rad", "angle")
    assert deg == pytest.approx(rad, abs=1e-6)


def test_vector_formatting_shares_one_unit():
    assert units.fmt_vector((0.0, 20.0, -70.0), "length") == "(0 2 -7) cm"


def test_unknown_unit_rejected():
    with pytest.raises(UnitError):
        units.convert(1.0, "furlong", "length")
    with pytest.raises(UnitError):
        units.convert(1.0, "mm", "no-such-category")


def test_conversion_round_trip():
    v = units.convert(2.5, "m", "length")
    assert v == 2500.0
    mantissa, unit = units.best_unit(v, "length")
    assert (mantissa, unit) == (2.5, "m")
    assert math.isclose(units.convert(mantissa, unit, "length"), v)
