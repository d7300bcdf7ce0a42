import math

import numpy as np
import pytest

from disclab import moments as Mo
from disclab import radial as R
from disclab.errors import InputError, NotAMajorant

# Frozen reference values from an independent 40-digit quadrature of
# M_n = 2 * int_0^1 G(u) (1-u)^(2n+1) du.
T1_21_REFS = {
    0: 0.0296522050056386423,
    1: 0.0024326830357976724,
    5: 3.81320857854039606e-6,
}
T1_11_REFS = {
    0: 0.0776070791563238222,
    5: 0.000333785514728254425,
    50: 1.14211371282780021e-10,
}
T2_0511_REFS = {
    0: 0.0102947883216802615,
    3: 0.000116218569265557014,
}


def test_t1_moments_match_independent_quadrature():
    vals = np.exp(Mo.moments_of_g(R.preset_t1(2.0, 1.0), 6).log_values)
    for n, ref in T1_21_REFS.items():
        assert vals[n] == pytest.approx(ref, rel=1e-12)
    vals = np.exp(Mo.moments_of_g(R.preset_t1(1.0, 1.0), 51).log_values)
    for n, ref in T1_11_REFS.items():
        assert vals[n] == pytest.approx(ref, rel=1e-12)


def test_t2_moments_match_independent_quadrature():
    vals = np.exp(Mo.moments_of_g(R.preset_t2(0.5, 1.0), 4).log_values)
    for n, ref in T2_0511_REFS.items():
        assert vals[n] == pytest.approx(ref, rel=1e-12)


def test_linear_profile_moments_closed_form():
    # G(u) = u gives M_n = 2 B(2, 2n+2) = 1 / ((n+1)(2n+3))
    vals = np.exp(Mo.moments_of_g(R.linear(), 100).log_values)
    ns = np.arange(101)
    closed = 1.0 / ((ns + 1) * (2 * ns + 3))
    assert np.max(np.abs(vals - closed) / closed) <= 1e-10


def test_moment_function_error_bound_is_honest():
    # moment_function computes P(x) = int_0^1 G(u)(1-u)^x du; the n-th
    # moment is 2 P(2n+1)
    g = R.preset_t1(1.0, 1.0)
    mv = Mo.moment_function(g, 7.0)
    u = np.linspace(0.0, 1.0, 400001)
    ref = np.trapezoid(np.exp(R.log_radial_values(g, u)) * (1 - u) ** 7.0, u)
    assert mv.value == pytest.approx(ref, rel=1e-9)
    m3 = np.exp(Mo.moments_of_g(g, 3).log_values[3])
    assert m3 == pytest.approx(2.0 * mv.value, rel=1e-12)


def test_explicit_moments_rejects_rising_tail():
    with pytest.raises(InputError):
        Mo.explicit_moments(values=[1.0, 0.5, 0.6, 0.7, 0.9, 1.2, 1.5, 2.0])
    # a hump in the first half is fine as long as the tail decreases
    m = Mo.explicit_moments(values=[1.0, 1.5, 1.0, 0.5, 0.25, 0.1, 0.05, 0.01])
    assert len(m.log_values) == 8
    assert m.decreasing_from == 1


def test_admissibility_dichotomy():
    # sum log(1/M_n) / (1+n^2) converges iff log(1/M_n) grows slower than n/log n
    n = np.arange(1, 4000)
    yes = Mo.explicit_moments(
        log_values=np.concatenate([[0.0], -n / (np.log(n) + 1) ** 2])
    )
    no_slow = Mo.explicit_moments(
        log_values=np.concatenate([[0.0], -n / (np.log(n) + 1)])
    )
    no_fast = Mo.explicit_moments(log_values=np.concatenate([[0.0], -n.astype(float)]))
    assert Mo.is_admissible(yes).admissible
    assert not Mo.is_admissible(no_slow).admissible
    assert not Mo.is_admissible(no_fast).admissible


def test_preset_moments_are_admissible_with_sane_fit():
    rep = Mo.is_admissible(Mo.moments_of_g(R.preset_t1(1.0, 1.0), 60))
    assert rep.admissible
    assert rep.sqrt_decay
    assert rep.tail_sum_finite
    assert rep.log_convex_tail


def test_growth_classes_of_presets():
    t1 = Mo.growth_class(R.preset_t1(1.0, 1.0))
    assert t1.exp_dec and t1.loglog_int and not t1.log_int
    t2 = Mo.growth_class(R.preset_t2(0.5, 1.0))
    assert t2.exp_dec and t2.loglog_int and not t2.log_int
    lin = Mo.growth_class(R.linear())
    assert not lin.exp_dec and lin.log_int


def test_majorant_one_over_t_values_and_domain():
    mj = Mo.majorant_one_over_t(2.0)
    ts = np.array([0.5, 1.0, 1.9])
    assert np.allclose(Mo.majorant_values(mj, ts), 1.0 / ts, rtol=1e-14)
    assert np.allclose(Mo.log_majorant_values(mj, ts), -np.log(ts), rtol=1e-14)
    with pytest.raises(InputError):
        Mo.majorant_values(mj, np.array([2.5]))


def test_majorant_constant_is_refused():
    with pytest.raises(NotAMajorant):
        Mo.majorant_constant(1.0)


def test_majorant_from_g_formula():
    # F(t) = log(8/t^3) + (1/2) log(1/G(t/2)); for G(u)=exp(-1/u) the second
    # term is 1/t
    mg = Mo.majorant_from_g(R.preset_t1(1.0, 1.0))
    ts = np.array([0.25, 0.5, 1.0])
    expect = np.log(8.0 / ts**3) + 1.0 / ts
    assert np.allclose(Mo.majorant_values(mg, ts), expect, rtol=1e-13)


def test_log_majorant_integral_closed_form():
    mj = Mo.majorant_one_over_t(2.0)
    a, b = 0.1, 1.0
    # int log(1/t) dt = t - t log t
    closed = (b - b * math.log(b)) - (a - a * math.log(a))
    assert Mo.log_majorant_integral(mj, a, b) == pytest.approx(closed, rel=1e-10)
    with pytest.raises(InputError):
        Mo.log_majorant_integral(mj, 1.0, 0.5)


def test_admissible_to_g_reconstruction_round_trip():
    g = R.preset_t1(1.0, 1.0)
    rec = Mo.admissible_to_g(Mo.moments_of_g(g, 120))
    ts = np.linspace(0.1, 0.9, 9)
    got = R.log_radial_values(rec.g, ts)
    want = R.log_radial_values(g, ts)
    # the envelope round trip recovers log(1/G) only up to the sandwich
    # constants: never below the original, never beyond twice it
    ratio = got / want
    assert np.all(ratio >= 1.0 - 1e-9)
    assert np.all(ratio <= 2.0)
