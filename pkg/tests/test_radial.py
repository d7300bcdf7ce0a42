import numpy as np
import pytest

from disclab import radial as R
from disclab.errors import InputError


def test_preset_t1_closed_form():
    g = R.preset_t1(2.0, 3.0)
    ts = np.array([0.25, 0.5, 1.0])
    assert np.allclose(R.log_radial_values(g, ts), -3.0 / ts**2, rtol=1e-15)
    assert np.allclose(R.radial_values(g, ts), np.exp(-3.0 / ts**2), rtol=1e-14)
    assert np.allclose(R.log_one_over_g(g, ts), 3.0 / ts**2, rtol=1e-15)
    # vanishes to all orders at the boundary-distance origin
    assert R.log_radial_values(g, np.array([0.0]))[0] == -np.inf


def test_preset_t2_closed_form():
    g = R.preset_t2(0.5, 2.0)
    ts = np.array([0.25, 0.5, 1.0])
    assert np.allclose(
        R.log_radial_values(g, ts), -2.0 * np.exp(1.0 / np.sqrt(ts)), rtol=1e-14
    )


def test_linear_profile():
    ts = np.array([0.25, 0.5, 1.0])
    assert np.allclose(R.radial_values(R.linear(), ts), ts, rtol=1e-15)


def test_preset_guards():
    with pytest.raises(InputError):
        R.preset_t1(0.5, 1.0)
    with pytest.raises(InputError):
        R.preset_t1(1.0, 0.0)
    with pytest.raises(InputError):
        R.preset_t2(1.0, 1.0)
    with pytest.raises(InputError):
        R.preset_t2(0.0, 1.0)
    with pytest.raises(InputError):
        R.preset_t2(0.5, -1.0)


def test_tabulated_interpolates_log_linearly():
    tab = R.tabulated(np.array([0.1, 0.5, 1.0]), np.array([1e-8, 0.1, 0.5]))
    at_knots = R.radial_values(tab, np.array([0.1, 0.5, 1.0]))
    assert np.allclose(at_knots, [1e-8, 0.1, 0.5], rtol=1e-12)
    # halfway in t means geometric mean in G
    mid = R.radial_values(tab, np.array([0.3]))[0]
    assert mid == pytest.approx(np.sqrt(1e-8 * 0.1), rel=1e-12)
    # below the first knot the log extrapolates linearly in t
    slope = (np.log(0.1) - np.log(1e-8)) / 0.4
    expect = np.log(1e-8) + slope * (0.01 - 0.1)
    assert R.log_radial_values(tab, np.array([0.01]))[0] == pytest.approx(expect, rel=1e-12)


def test_tabulated_log_avoids_underflow():
    # log-space construction keeps values far below float64's exp range
    g = R.tabulated_log(np.array([0.1, 1.0]), np.array([-5000.0, -1.0]))
    got = R.log_radial_values(g, np.array([0.1, 0.55, 1.0]))
    assert got[0] == -5000.0
    assert got[1] == pytest.approx(-2500.5, rel=1e-12)
    assert R.radial_values(g, np.array([0.1]))[0] == 0.0  # underflow, by design


def test_tabulated_guards():
    with pytest.raises(InputError):
        R.tabulated(np.array([0.5, 0.1]), np.array([0.1, 0.2]))
    with pytest.raises(InputError):
        R.tabulated(np.array([0.1, 0.5]), np.array([0.5, 0.1]))
    with pytest.raises(InputError):
        R.tabulated_log(np.array([0.1, 0.5]), np.array([-1.0, -np.inf]))
