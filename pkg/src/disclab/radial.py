"""Radial weights: increasing G on [0, 1] with G(0) = 0.

Presets cover the two parametric families used throughout —
``preset_t1(beta, c): G(t) = exp(-c / t^beta)`` with ``beta >= 1`` and
``preset_t2(alpha, c): G(t) = exp(-c * exp(1 / t^alpha))`` with
``alpha in (0, 1)`` — plus the linear weight ``G(t) = t`` and tabulated
weights interpolated linearly in (t, log G), which keeps them positive
and monotone between knots.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class RadialWeight:
    kind: str
    beta: float = 0.0
    alpha: float = 0.0
    c: float = 0.0
    knots_t: tuple[float, ...] = ()
    knots_log_g: tuple[float, ...] = ()

    def __call__(self, t):
        return radial_values(self, t)

    def log_g(self, t):
        return log_radial_values(self, t)


def preset_t1(beta: float, c: float) -> RadialWeight:
    if beta < 1.0 or c <= 0.0:
        raise InputError(f"preset_t1 needs beta >= 1 and c > 0, got beta={beta}, c={c}")
    return RadialWeight("t1", beta=float(beta), c=float(c))


def preset_t2(alpha: float, c: float) -> RadialWeight:
    if not (0.0 < alpha < 1.0) or c <= 0.0:
        raise InputError(f"preset_t2 needs alpha in (0,1) and c > 0, got alpha={alpha}, c={c}")
    return RadialWeight("t2", alpha=float(alpha), c=float(c))


def linear() -> RadialWeight:
    return RadialWeight("linear")


def tabulated(ts, gs) -> RadialWeight:
    """Radial weight through knots (t_i, G(t_i)); log-linear between knots.

    Knot values must be strictly increasing with t; G(0) = 0 is implicit
    (values below the first knot extrapolate log-linearly toward -inf).
    """
    ts = np.asarray(ts, dtype=float)
    gs = np.asarray(gs, dtype=float)
    if ts.ndim != 1 or ts.size < 2 or ts.shape != gs.shape:
        raise InputError("tabulated radial weight needs matching 1-d knot arrays, >= 2 knots")
    if np.any(np.diff(ts) <= 0):
        raise InputError("knot abscissae must be strictly increasing")
    if np.any(gs <= 0):
        raise InputError("knot values must be positive (G(0)=0 is implicit)")
    if np.any(np.diff(gs) < 0):
        raise InputError("tabulated G must be non-decreasing")
    if ts[0] <= 0 or ts[-1] > 1.0 + 1e-12:
        raise InputError("knots must lie in (0, 1]")
    return RadialWeight("tab", knots_t=tuple(ts.tolist()), knots_log_g=tuple(np.log(gs).tolist()))


def tabulated_log(ts, log_gs) -> RadialWeight:
    """Like tabulated(), but the knot values are given as log G(t).

    Needed when G underflows float64 near 0 (log G around -700 and
    below); the object is exact in log space throughout.
    """
    ts = np.asarray(ts, dtype=float)
    ls = np.asarray(log_gs, dtype=float)
    if ts.ndim != 1 or ts.size < 2 or ts.shape != ls.shape:
        raise InputError("tabulated radial weight needs matching 1-d knot arrays, >= 2 knots")
    if np.any(np.diff(ts) <= 0):
        raise InputError("knot abscissae must be strictly increasing")
    if not np.all(np.isfinite(ls)):
        raise InputError("log-knot values must be finite")
    if np.any(np.diff(ls) < 0):
        raise InputError("tabulated G must be non-decreasing")
    if ts[0] <= 0 or ts[-1] > 1.0 + 1e-12:
        raise InputError("knots must lie in (0, 1]")
    return RadialWeight("tab", knots_t=tuple(ts.tolist()), knots_log_g=tuple(ls.tolist()))


def log_radial_values(g: RadialWeight, t):
    """log G(t), vectorized; -inf at t = 0 (and wherever G underflows)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.full(t.shape, -np.inf)
    pos = t > 0.0
    tp = t[pos]
    if g.kind == "t1":
        # tp**beta can underflow to 0 for tiny t; -c/0 -> -inf is right
        with np.errstate(over="ignore", divide="ignore"):
            out[pos] = -g.c / tp**g.beta
    elif g.kind == "t2":
        # exp(1/t^alpha) overflows for tiny t; the log is what callers need
        with np.errstate(over="ignore"):
            out[pos] = -g.c * np.exp(tp**-g.alpha)
    elif g.kind == "linear":
        out[pos] = np.log(tp)
    elif g.kind == "tab":
        ts = np.asarray(g.knots_t)
        ls = np.asarray(g.knots_log_g)
        out[pos] = np.interp(tp, ts, ls)
        below = pos.copy()
        below[pos] = tp < ts[0]
        if np.any(below):
            slope = (ls[1] - ls[0]) / (ts[1] - ts[0])
            out[below] = ls[0] + slope * (t[below] - ts[0])
    else:
        raise InputError(f"unknown radial weight kind {g.kind!r}")
    return out


def radial_values(g: RadialWeight, t):
    with np.errstate(over="ignore"):
        vals = np.exp(log_radial_values(g, t))
    return vals


def log_one_over_g(g: RadialWeight, t):
    """log(1/G(t)) = -log G(t), the quantity the growth classes speak about."""
    return -log_radial_values(g, t)


# growth-class verdicts live with the moment machinery (analytic for
# presets, resolution-qualified for tabulated weights); see moments.py
