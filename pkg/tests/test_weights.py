import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disclab import weights as W
from disclab.errors import InputError
from disclab.geometry import TWO_PI, Arc, ArcSet


def chord(a, b):
    return abs(np.exp(1j * a) - np.exp(1j * b))


def test_constant_weight():
    w = W.constant(0.5)
    th = np.linspace(0, 6.2, 11)
    assert np.allclose(W.weight_values(w, th), 0.5)
    assert np.allclose(W.log_weight_values(w, th), math.log(0.5))
    with pytest.raises(InputError):
        W.constant(0.0)


def test_power_weight_matches_chordal_definition():
    w = W.power(1.0, 1.5)
    th = np.linspace(0.01, 6.2, 57)
    expect = np.array([chord(t, 1.0) ** 1.5 for t in th])
    assert np.allclose(W.weight_values(w, th), expect, rtol=1e-12)
    # log form agrees where the weight is positive
    assert np.allclose(W.log_weight_values(w, th), 1.5 * np.log([chord(t, 1.0) for t in th]))
    # vanishes exactly at the anchor
    assert W.weight_values(w, np.array([1.0]))[0] == 0.0
    assert W.log_weight_values(w, np.array([1.0]))[0] == -np.inf


def test_exp_inv_dist_log_values():
    w = W.exp_inv_dist(points=(0.0,), s=1.0, gamma=1.0)
    # log w = -s / dist(theta, 0)^gamma with chordal distance
    for t in (0.5, 1.0, np.pi, 5.0):
        d = chord(t, 0.0)
        got = W.log_weight_values(w, np.array([t]))[0]
        assert got == pytest.approx(-1.0 / d, rel=1e-12)
    # underflows float64 but the log stays exact
    tiny = 1e-4
    assert W.log_weight_values(w, np.array([tiny]))[0] == pytest.approx(
        -1.0 / chord(tiny, 0.0), rel=1e-9
    )
    assert W.weight_values(w, np.array([tiny]))[0] == 0.0  # underflow is fine
    assert W.log_weight_values(w, np.array([0.0]))[0] == -np.inf


def test_indicator_weight():
    arcs = ArcSet.from_arcs([Arc(1.0, 2.0)])
    w = W.indicator(arcs)
    th = np.array([0.5, 1.5, 2.9, 3.5])
    assert np.array_equal(W.weight_values(w, th), [0.0, 1.0, 1.0, 0.0])
    logs = W.log_weight_values(w, th)
    assert logs[0] == -np.inf and logs[1] == 0.0
    with pytest.raises(InputError):
        W.indicator(ArcSet.empty())


def test_product_weight_is_pointwise_product():
    f1, f2 = W.power(1.0, 1.5), W.constant(2.0)
    w = W.product((f1, f2))
    th = np.linspace(0.1, 6.2, 23)
    assert np.allclose(
        W.weight_values(w, th),
        W.weight_values(f1, th) * W.weight_values(f2, th),
        rtol=1e-12,
    )
    assert np.allclose(
        W.log_weight_values(w, th),
        W.log_weight_values(f1, th) + W.log_weight_values(f2, th),
        rtol=1e-12,
    )


def test_grid_weight_interpolates_samples():
    samples = np.linspace(0.1, 1.0, 16)
    w = W.grid(samples, singular_points=(0.3,), floor=1e-12)
    th = TWO_PI * np.arange(16) / 16
    assert np.allclose(W.weight_values(w, th), samples, rtol=1e-12)
    assert w.singular_points == (0.3,)


def test_integral_of_indicator_is_arc_measure():
    arcs = ArcSet.from_arcs([Arc(0.0, np.pi)])
    val, err = W.integral(W.indicator(arcs), arcs)
    assert val == pytest.approx(0.5, abs=1e-12)
    assert err <= 1e-10


def test_fat_cantor_arcset_properties():
    s = W.fat_cantor_arcset()
    # Smith-Volterra construction at 8 levels: measure 1/2 + 2^-9 up to
    # the glue gap, and no surviving arc wider than the first-level gap
    assert s.measure() == pytest.approx(0.5 + 2.0**-9, abs=1e-3)
    widths = [b - a for a, b in s.intervals]
    assert max(widths) < TWO_PI / 8
    assert len(s.intervals) == 256


@given(st.floats(0.1, 4.0), st.floats(0.2, 3.0),
       st.lists(st.floats(0.0, 6.28), min_size=1, max_size=3, unique=True))
@settings(max_examples=60, deadline=None)
def test_exp_inv_dist_monotone_in_strength(s1, extra, pts):
    # a stronger crush (larger s) can only lower the weight
    w_soft = W.exp_inv_dist(points=tuple(pts), s=s1, gamma=1.0)
    w_hard = W.exp_inv_dist(points=tuple(pts), s=s1 + extra, gamma=1.0)
    th = np.linspace(0.05, 6.2, 50)
    assert np.all(
        W.log_weight_values(w_hard, th) <= W.log_weight_values(w_soft, th) + 1e-12
    )


@given(st.floats(0.3, 3.0))
@settings(max_examples=40, deadline=None)
def test_power_of_weight_scales_log(gamma):
    th = np.linspace(0.1, 6.2, 29)
    base = W.log_weight_values(W.power(1.0, 1.0), th)
    scaled = W.log_weight_values(W.power(1.0, gamma), th)
    assert np.allclose(scaled, gamma * base, rtol=1e-10, atol=1e-10)
