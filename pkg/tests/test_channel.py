import cmath
import math

import pytest
from hypothesis import given, strategies as st

from pinchsec import (PaLayout, PhysicalConstants, Point3, channel_vector,
                      free_space_factor, gain_simplified, place_pa_for_user)

coord = st.floats(min_value=-50.0, max_value=50.0)


def test_point3_rejects_non_finite():
    with pytest.raises(ValueError):
        Point3(float("inf"), 0.0, 0.0)


def test_dist():
    assert Point3(0, 0, 0).dist(Point3(3, 4, 0)) == 5.0


def test_place_pa_projects_onto_waveguide():
    pa = place_pa_for_user(Point3(-7.0, 2.5, 0.0), 3.0)
    assert (pa.x, pa.y, pa.z) == (-7.0, 0.0, 3.0)
    with pytest.raises(ValueError):
        place_pa_for_user(Point3(0.0, 0.0, 1.0), 3.0)


@given(coord, coord)
def test_pinched_gain_depends_only_on_y_and_height(x, y):
    eta = 7.269536453930486e-07
    pa = place_pa_for_user(Point3(x, y, 0.0), 3.0)
    g = gain_simplified(Point3(x, y, 0.0), pa, eta)
    assert g == pytest.approx(eta / (y * y + 9.0), rel=1e-12)


def test_gain_rejects_coincident_points():
    p = Point3(1.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        gain_simplified(p, p, 1e-6)


def test_layout_validation():
    with pytest.raises(ValueError):
        PaLayout(Point3(-10, 1.0, 3), Point3(10, 0, 3), Point3(-20, 0, 3))
    with pytest.raises(ValueError):
        PaLayout(Point3(-10, 0, 3), Point3(10, 0, 2), Point3(-20, 0, 3))


def test_channel_vector_magnitude_and_phase():
    constants = PhysicalConstants()
    layout = PaLayout(Point3(-10.0, 0.0, 3.0), Point3(10.0, 0.0, 3.0),
                      Point3(-20.0, 0.0, 3.0))
    user = Point3(-10.0, 4.0, 0.0)
    h1, h2 = channel_vector(user, layout, constants)
    eta = free_space_factor(constants)
    assert abs(h1) == pytest.approx(math.sqrt(eta) / 5.0, rel=1e-12)
    assert abs(h2) == pytest.approx(math.sqrt(eta) / user.dist(layout.pa2), rel=1e-12)
    # expected phase of entry 1: free-space plus in-guide accumulation
    lam = constants.wavelength_m
    theta = 2.0 * math.pi / constants.guide_wavelength_m * 10.0
    expected = cmath.exp(1j * math.remainder(-2.0 * math.pi / lam * 5.0 - theta,
                                             2.0 * math.pi))
    assert cmath.phase(h1) == pytest.approx(cmath.phase(expected), abs=1e-9)


def test_channel_vector_gain_consistency():
    """|h_n|^2 must equal the simplified gain when the user sits under PA-n."""
    constants = PhysicalConstants()
    user = Point3(-10.0, 2.0, 0.0)
    pa1 = place_pa_for_user(user, 3.0)
    layout = PaLayout(pa1, Point3(10.0, 0.0, 3.0), Point3(-20.0, 0.0, 3.0))
    h1, _ = channel_vector(user, layout, constants)
    eta = free_space_factor(constants)
    assert abs(h1) ** 2 == pytest.approx(gain_simplified(user, pa1, eta), rel=1e-12)
