import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disclab import legendre as L
from disclab.legendre import DomainError


def test_lower_envelope_of_reciprocal_is_twice_sqrt():
    xs = np.array([0.25, 0.5, 1.0, 4.0, 9.0, 100.0])
    m = L.power_decreasing(1.0, 1.0)  # m(t) = 1/t
    k = L.lower_envelope(m, xs)
    assert np.allclose(k, 2.0 * np.sqrt(xs), rtol=1e-14)


def test_upper_envelope_recovers_reciprocal_from_sqrt():
    k = L.sqrt_increasing(2.0)  # k(x) = 2 sqrt(x)
    ts = np.array([0.5, 1.0, 2.0, 5.0])
    m = L.upper_envelope(k, ts)
    assert np.allclose(m, 1.0 / ts, rtol=1e-14)


def test_power_family_closed_form_coefficient():
    # inf_t c/t^beta + x t  =  d(beta, c) x^{beta/(beta+1)}
    assert L.d_beta_c(1.0, 1.0) == 2.0
    xs = np.linspace(0.1, 20.0, 40)
    for beta, c in ((1.0, 1.0), (1.5, 2.0), (3.0, 0.7)):
        k = L.lower_envelope(L.power_decreasing(c, beta), xs)
        expect = L.d_beta_c(beta, c) * xs ** (beta / (beta + 1))
        assert np.allclose(k, expect, rtol=1e-13)
    with pytest.raises(DomainError):
        L.d_beta_c(0.0, 1.0)


def test_grid_search_agrees_with_closed_form():
    xs = np.linspace(0.1, 20.0, 40)
    m = L.power_decreasing(2.0, 1.5)
    direct = L.lower_envelope(m, xs)
    gs = L.grid_search_lower(m, xs, np.geomspace(1e-6, 1e3, 200001))
    assert np.max(np.abs(gs - direct) / np.abs(direct)) < 1e-8


def test_inversion_check_sqrt_preset_is_exact():
    k = L.sqrt_increasing(2.0)
    assert L.inversion_check(k, np.linspace(0.01, 50.0, 300)) <= 1e-12


def test_inversion_check_piecewise_linear():
    pl = L.piecewise_linear(
        np.array([0.0, 1.0, 3.0, 7.0]),
        np.array([0.0, 1.0, 2.0, 2.8]),
        increasing=True,
        concave=True,
    )
    assert L.inversion_check(pl, np.linspace(0.01, 7.0, 200)) <= 1e-12
    with pytest.raises(DomainError):
        L.inversion_check(pl, np.array([0.0, 1.0]))


def test_conjugate_pl_shape():
    pl = L.piecewise_linear(
        np.array([0.0, 1.0, 3.0, 7.0]),
        np.array([0.0, 1.0, 2.0, 2.8]),
        increasing=True,
        concave=True,
    )
    cj = L.conjugate_pl(pl)
    # the conjugate of an increasing concave pl is decreasing and convex,
    # with one knot per slope of the original
    assert cj.kind == "pl"
    assert not cj.increasing and not cj.concave
    slopes = np.diff(pl.knots_v) / np.diff(pl.knots_x)
    assert np.allclose(sorted(cj.knots_x), sorted(slopes))


def test_constant_envelope_values():
    c = L.constant_envelope(3.0)
    assert np.array_equal(c.values(np.array([0.0, 5.0])), [3.0, 3.0])


def test_piecewise_linear_guards():
    with pytest.raises(L.InputError):
        L.piecewise_linear(np.array([1.0, 0.5]), np.array([0.0, 1.0]), increasing=True)
    with pytest.raises(L.InputError):
        # claims concave but is not
        L.piecewise_linear(
            np.array([0.0, 1.0, 2.0]),
            np.array([0.0, 0.1, 2.0]),
            increasing=True,
            concave=True,
        )


@given(
    st.floats(0.2, 4.0),
    st.floats(0.3, 3.0),
)
@settings(max_examples=60, deadline=None)
def test_lower_envelope_is_concave_increasing(c, beta):
    xs = np.linspace(0.05, 30.0, 120)
    k = L.lower_envelope(L.power_decreasing(c, beta), xs)
    assert np.all(np.diff(k) > 0)
    second = np.diff(k, 2)
    assert np.all(second <= 1e-9 * np.abs(k[:-2]) + 1e-12)


@given(
    st.lists(st.floats(0.1, 5.0), min_size=3, max_size=6),
)
@settings(max_examples=50, deadline=None)
def test_pl_double_inversion_property(slope_steps):
    # build an increasing concave pl by accumulating decreasing positive slopes
    slopes = np.sort(np.asarray(slope_steps))[::-1]
    xs = np.arange(len(slopes) + 1, dtype=float)
    vs = np.concatenate([[0.0], np.cumsum(slopes)])
    if np.any(np.diff(slopes) > -1e-6):
        slopes = slopes - np.arange(len(slopes)) * 1e-3  # force strict decrease
        vs = np.concatenate([[0.0], np.cumsum(slopes)])
        if np.any(slopes <= 0):
            return
    pl = L.piecewise_linear(xs, vs, increasing=True, concave=True)
    grid = np.linspace(xs[0] + 1e-3, xs[-1] - 1e-3, 64)
    assert L.inversion_check(pl, grid) <= 1e-9
