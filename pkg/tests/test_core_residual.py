import numpy as np
import pytest

from disclab import weights as W
from disclab.core_residual import carrier_set, core_set, is_core_carrier, residual_set
from disclab.geometry import TWO_PI, Arc, ArcSet


def test_constant_weight_core_is_full_circle():
    rep = core_set(W.constant(0.5), 8)
    assert rep.core.measure() == pytest.approx(1.0)
    assert rep.excluded.measure() == 0.0
    assert rep.inconclusive == ()
    cv = is_core_carrier(W.constant(0.5), level=8)
    assert cv.verdict == "yes"
    assert cv.complement_integral == 0.0


def test_indicator_core_sits_inside_support():
    support = ArcSet.from_arcs([Arc(1.0, 2.0)])
    rep = core_set(W.indicator(support), 10)
    (lo, hi) = rep.core.intervals[0]
    # the certified core is a slightly shrunken copy of the support arc
    assert 1.0 <= lo < 1.01
    assert 2.99 < hi <= 3.0
    # the carrier check fails: weight mass lives outside the core's closure
    cv = is_core_carrier(W.indicator(support), level=10)
    assert cv.verdict == "no"
    assert cv.complement_integral > 0.0


def test_fat_cantor_indicator_is_not_carried_by_core(w_singleton):
    fc = W.indicator(W.fat_cantor_arcset())
    rep = core_set(fc, 10)
    # dyadic resolution certifies strictly less than the true support measure
    assert rep.core.measure() < W.fat_cantor_arcset().measure()
    cv = is_core_carrier(fc, level=10)
    assert cv.verdict == "no"
    assert cv.complement_integral > 0.01


def test_exp_inv_dist_core_level_14(w_singleton):
    rep = core_set(w_singleton, 14)
    assert rep.resolution_level == 14
    assert rep.singular_points == (0.0,)
    # one arc, excluding two slivers around the crush point at angle 0
    assert len(rep.core.intervals) == 1
    lo, hi = rep.core.intervals[0]
    assert lo == pytest.approx(0.00019174759848570515, rel=1e-12)
    assert hi == pytest.approx(6.2829935595811, rel=1e-12)
    ex = rep.excluded.intervals
    assert len(ex) == 2
    assert ex[0][0] == 0.0 and ex[1][1] == pytest.approx(TWO_PI)


def test_exp_inv_dist_residual_is_the_crush_point(w_singleton):
    res = residual_set(w_singleton, level=14)
    assert res.arcs.measure() == 0.0
    assert res.points == (0.0,)


def test_exp_inv_dist_is_core_carrier(w_singleton):
    cv = is_core_carrier(w_singleton)
    assert cv.verdict == "yes"
    assert cv.complement_integral <= 1e-8


def test_carrier_set_of_strictly_positive_weight_is_full():
    assert carrier_set(W.constant(1.0)).measure() == pytest.approx(1.0)
    assert carrier_set(W.power(1.0, 2.0)).measure() == pytest.approx(1.0)


def test_core_grows_with_level(w_singleton):
    # finer dyadic resolution can only enlarge the certified core
    meas = [core_set(w_singleton, lvl).core.measure() for lvl in (6, 9, 12, 14)]
    assert all(b >= a - 1e-15 for a, b in zip(meas, meas[1:]))
    # and the excluded slivers shrink toward the single residual point
    excl = [core_set(w_singleton, lvl).excluded.measure() for lvl in (6, 9, 12, 14)]
    assert all(b <= a + 1e-15 for a, b in zip(excl, excl[1:]))
    assert excl[-1] < 1e-4
