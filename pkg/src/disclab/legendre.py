"""Concave/convex envelope functions and exact Legendre-type conjugation.

Two dual transforms drive everything here.  For a decreasing positive
``m`` the *lower envelope*

    m_*(x) = inf_{y > 0} [ m(y) + x y ]

is increasing and concave; for an increasing concave ``k`` the *upper
envelope*

    k^*(x) = sup_{y} [ k(y) - x y ]

is decreasing and convex, and applying the lower envelope to ``k^*``
recovers ``k``.  Piecewise-linear data admit an exact finite answer: on
a linear segment the objective is linear in ``y``, so the inf/sup is
attained at a knot, and conjugation reduces to a min/max over knots that
a single monotone march computes in linear time.

Conventions for piecewise-linear data (these matter for exactness of
the round trip):

* increasing concave ``k``: the graph is extended beyond the last knot
  with its final slope ``s_f``, so ``k^*(x) = +inf`` for ``x < s_f``
  (the sup diverges along the extension) and ``k^*(x) = max_i (k_i -
  x y_i)`` for ``x >= s_f``.  No extension is invented to the left of
  the first knot -- the data's domain starts there.
* decreasing ``m``: the inf over the graph equals the min over knots
  (each segment's objective is monotone), again with no invented
  extension.

With those conventions the biconjugate reproduces ``k`` exactly at its
knots, up to float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError


class DomainError(InputError):
    """Envelope input violates its declared shape (monotonicity etc.)."""


class NotAdmissible(InputError):
    """Moment data lacks the concavity needed to rebuild a radial weight."""


def d_beta_c(beta: float, c: float) -> float:
    """Closed-form coefficient of the lower envelope of c / x**beta.

    inf_{y>0} c/y**beta + x*y  =  d(beta, c) * x**(beta/(beta+1))
    with d(beta, c) = c**(1/(beta+1)) * (beta**(-beta/(beta+1))
                                          + beta**(1/(beta+1))).
    """
    if beta <= 0 or c <= 0:
        raise DomainError("d_beta_c requires beta > 0 and c > 0")
    p = 1.0 / (beta + 1.0)
    return c**p * (beta ** (-beta * p) + beta**p)


@dataclass(frozen=True)
class EnvelopeFunction:
    """One of the envelope-ready function shapes.

    kind:
      "power"  -- m(x) = c / x**beta      (decreasing, convex)
      "sqrt"   -- k(x) = d * sqrt(x)      (increasing, concave)
      "const"  -- m(x) = c                (weakly decreasing)
      "pl"     -- piecewise-linear through ``knots_x``/``knots_v``
                  with declared ``increasing``/``concave`` flags,
                  verified on the knots at construction.
    """

    kind: str
    c: float = 1.0
    beta: float = 1.0
    d: float = 1.0
    knots_x: tuple[float, ...] = ()
    knots_v: tuple[float, ...] = ()
    increasing: bool = False
    concave: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("power", "sqrt", "const", "pl"):
            raise DomainError(f"unknown envelope kind {self.kind!r}")
        if self.kind == "power" and (self.c <= 0 or self.beta <= 0):
            raise DomainError("power envelope requires c > 0, beta > 0")
        if self.kind == "sqrt" and self.d <= 0:
            raise DomainError("sqrt envelope requires d > 0")
        if self.kind == "pl":
            xs = np.asarray(self.knots_x, dtype=float)
            vs = np.asarray(self.knots_v, dtype=float)
            if xs.size < 2 or xs.size != vs.size:
                raise DomainError("pl envelope needs >= 2 matching knots")
            if not np.all(np.isfinite(xs)) or not np.all(np.isfinite(vs)):
                raise DomainError("pl knots must be finite")
            dx = np.diff(xs)
            if np.any(dx <= 0):
                raise DomainError("pl knot abscissae must strictly increase")
            dv = np.diff(vs)
            if self.increasing and np.any(dv <= 0):
                raise DomainError("pl data declared increasing is not")
            if not self.increasing and np.any(dv > 1e-12 * np.maximum(1.0, np.abs(vs[:-1]))):
                raise DomainError("pl data declared decreasing is not")
            slopes = dv / dx
            if self.concave and np.any(np.diff(slopes) >= 0):
                raise DomainError("pl data declared concave has non-decreasing slopes")

    # -- evaluation -------------------------------------------------------

    def values(self, xs) -> np.ndarray:
        x = np.asarray(xs, dtype=float)
        if self.kind == "power":
            return self.c / x**self.beta
        if self.kind == "sqrt":
            return self.d * np.sqrt(x)
        if self.kind == "const":
            return np.full_like(x, self.c)
        kx = np.asarray(self.knots_x)
        kv = np.asarray(self.knots_v)
        out = np.interp(x, kx, kv)
        # extend with the boundary slopes rather than np.interp's clamp
        lo = x < kx[0]
        hi = x > kx[-1]
        if np.any(lo):
            s0 = (kv[1] - kv[0]) / (kx[1] - kx[0])
            out = np.where(lo, kv[0] + s0 * (x - kx[0]), out)
        if np.any(hi):
            sf = (kv[-1] - kv[-2]) / (kx[-1] - kx[-2])
            out = np.where(hi, kv[-1] + sf * (x - kx[-1]), out)
        return out

    def slopes(self) -> np.ndarray:
        if self.kind != "pl":
            raise DomainError("slopes() only applies to pl envelopes")
        kx = np.asarray(self.knots_x)
        kv = np.asarray(self.knots_v)
        return np.diff(kv) / np.diff(kx)


def power_decreasing(c: float, beta: float) -> EnvelopeFunction:
    """m(x) = c / x**beta."""
    return EnvelopeFunction(kind="power", c=c, beta=beta)


def sqrt_increasing(d: float) -> EnvelopeFunction:
    """k(x) = d * sqrt(x)."""
    return EnvelopeFunction(kind="sqrt", d=d)


def constant_envelope(c: float) -> EnvelopeFunction:
    return EnvelopeFunction(kind="const", c=c)


def piecewise_linear(
    xs, vs, *, increasing: bool, concave: bool = False
) -> EnvelopeFunction:
    return EnvelopeFunction(
        kind="pl",
        knots_x=tuple(float(v) for v in np.asarray(xs, dtype=float)),
        knots_v=tuple(float(v) for v in np.asarray(vs, dtype=float)),
        increasing=increasing,
        concave=concave,
    )


# -- lower envelope -------------------------------------------------------


def lower_envelope(m: EnvelopeFunction, xs) -> np.ndarray:
    """m_*(x) = inf_y m(y) + x*y for decreasing m, at the points xs.

    Closed forms for the presets; for piecewise-linear data the infimum
    over the graph is the minimum over knots, evaluated by a monotone
    march (the optimal knot index is non-increasing in x).
    """
    x = np.asarray(xs, dtype=float)
    if np.any(x <= 0):
        raise DomainError("lower_envelope needs x > 0")
    if m.kind == "const":
        # inf_{y -> 0+} m0 + x*y = m0
        return np.full_like(x, m.c)
    if m.kind == "power":
        return d_beta_c(m.beta, m.c) * x ** (m.beta / (m.beta + 1.0))
    if m.kind == "sqrt":
        raise DomainError("lower_envelope expects a decreasing function")
    if m.increasing:
        raise DomainError("lower_envelope expects a decreasing function")
    ky = np.asarray(m.knots_x)
    kv = np.asarray(m.knots_v)
    return _min_over_lines(slopes=ky, intercepts=kv, xs=x)


def _min_over_lines(slopes: np.ndarray, intercepts: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """min_i (intercepts[i] + x * slopes[i]) at each x, in O(n + x log x).

    ``slopes`` must be strictly increasing.  Builds the lower hull of the
    lines (classic convex-hull trick), then marches once through the
    sorted query points.
    """
    n = slopes.size

    def takeover(a: int, t: int) -> float:
        # x above which line a (smaller slope) drops below line t
        return (intercepts[a] - intercepts[t]) / (slopes[t] - slopes[a])

    # Steepest line wins as x -> 0+ here (it has the smallest intercept
    # in the conjugation use-case, but the hull logic doesn't rely on
    # that); flatter lines take over as x grows.  Add lines in
    # decreasing slope order and record where each becomes optimal.
    hull: list[int] = []
    starts: list[float] = []  # hull[j] optimal on [starts[j], starts[j+1])
    for i in range(n - 1, -1, -1):
        while hull:
            x_new = takeover(i, hull[-1])
            if x_new <= starts[-1]:
                # the new line already beats hull[-1] at hull[-1]'s own
                # start, so hull[-1] is never optimal
                hull.pop()
                starts.pop()
            else:
                break
        starts.append(takeover(i, hull[-1]) if hull else -np.inf)
        hull.append(i)
    order = np.argsort(xs, kind="stable")
    out = np.empty_like(xs)
    j = 0
    for idx in order:
        x = xs[idx]
        while j + 1 < len(starts) and x >= starts[j + 1]:
            j += 1
        k = hull[j]
        out[idx] = intercepts[k] + x * slopes[k]
    return out


# -- upper envelope -------------------------------------------------------


def _strict_concave_knots(ky: np.ndarray, kv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drop interior knots on collinear runs; require strictly decreasing slopes.

    Collinear data (equal consecutive slopes) conjugate to a single knot,
    so interior points of a run carry no information -- but they would
    break the strict-decrease requirement of the slope-dual march.
    """
    slopes = np.diff(kv) / np.diff(ky)
    keep = np.ones(ky.size, dtype=bool)
    tol = 1e-13 * np.maximum(1.0, np.abs(slopes[:-1]))
    keep[1:-1] = (slopes[:-1] - slopes[1:]) > tol
    ky2, kv2 = ky[keep], kv[keep]
    s2 = np.diff(kv2) / np.diff(ky2)
    if np.any(np.diff(s2) >= 0):
        raise DomainError("concave conjugation needs non-increasing slopes")
    return ky2, kv2


def upper_envelope(k: EnvelopeFunction, xs) -> np.ndarray:
    """k^*(x) = sup_y k(y) - x*y for increasing concave k, at xs.

    Entries with x below the final slope of the data come back as +inf
    (the sup diverges along the final-slope extension).
    """
    x = np.asarray(xs, dtype=float)
    if np.any(x <= 0):
        raise DomainError("upper_envelope needs x > 0")
    if k.kind == "sqrt":
        return k.d * k.d / (4.0 * x)
    if k.kind in ("power", "const"):
        raise DomainError("upper_envelope expects an increasing function")
    if not k.increasing:
        raise DomainError("upper_envelope expects an increasing function")
    ky, kv = _strict_concave_knots(np.asarray(k.knots_x), np.asarray(k.knots_v))
    s_final = (kv[-1] - kv[-2]) / (ky[-1] - ky[-2])
    out = _max_over_lines(neg_slopes=ky, intercepts=kv, xs=x)
    out[x < s_final * (1.0 - 1e-15)] = np.inf
    return out


def _max_over_lines(neg_slopes: np.ndarray, intercepts: np.ndarray, xs: np.ndarray) -> np.ndarray:
    # max_i (intercepts[i] - x * neg_slopes[i]) == -min_i (-intercepts[i] + x*neg_slopes[i])
    return -_min_over_lines(slopes=neg_slopes, intercepts=-intercepts, xs=xs)


def conjugate_pl(k: EnvelopeFunction) -> EnvelopeFunction:
    """Exact piecewise-linear representation of k^* for concave pl data.

    The conjugate's knots sit at the data's slopes: for x between
    consecutive slopes the sup is attained at the knot they share, so
    k^* is linear there with slope -y_i.  The leftmost conjugate knot is
    the final slope of k; k^* = +inf strictly below it.
    """
    if k.kind == "sqrt":
        # k^* = d^2 / (4x); not piecewise-linear -- callers use the
        # closed form through upper_envelope instead.
        raise DomainError("conjugate_pl needs pl data; sqrt has a closed form")
    if k.kind != "pl" or not k.increasing:
        raise DomainError("conjugate_pl expects increasing pl data")
    ky, kv = _strict_concave_knots(np.asarray(k.knots_x), np.asarray(k.knots_v))
    slopes = np.diff(kv) / np.diff(ky)
    # knot j of the conjugate: x = slopes[j], value = k_{j+1} - x*y_{j+1}
    # (knots j and j+1 of the data tie there).  Ascending in x means
    # descending through the data's slopes.
    cx = slopes[::-1].copy()
    # at x = slopes[j] the attaining data knot is j+1 (or j; they tie)
    idx = np.arange(slopes.size)[::-1] + 1
    cv = kv[idx] - cx * ky[idx]
    if cx.size == 1:
        # a two-knot k conjugates to a single point; pad with the x where
        # the first data knot takes over so the pl object has a segment
        x2 = cx[0] * 2.0 + 1.0
        cx = np.array([cx[0], x2])
        cv = np.array([cv[0], kv[0] - x2 * ky[0]])
    return EnvelopeFunction(
        kind="pl",
        knots_x=tuple(cx),
        knots_v=tuple(cv),
        increasing=False,
        concave=False,
    )


def inversion_check(k: EnvelopeFunction, grid) -> float:
    """max |(k^*)_* - k| over the grid; the round trip must be exact.

    For the sqrt preset both transforms have closed forms.  For pl data
    the conjugate is materialized exactly and the lower envelope of it is
    a min over its knots, so the only error is float rounding.
    """
    g = np.asarray(grid, dtype=float)
    if np.any(g <= 0):
        raise DomainError("inversion_check needs a positive grid")
    if k.kind == "sqrt":
        # (k^*)(y) = d^2/(4y) = power(c=d^2/4, beta=1); its lower
        # envelope is d(1, d^2/4) x^{1/2} = d sqrt(x), back exactly.
        conj = power_decreasing(c=k.d * k.d / 4.0, beta=1.0)
        back = lower_envelope(conj, g)
        return float(np.max(np.abs(back - k.values(g))))
    if k.kind != "pl" or not k.increasing:
        raise DomainError("inversion_check expects sqrt preset or increasing pl data")
    if np.any(g < k.knots_x[0]) or np.any(g > k.knots_x[-1]):
        raise DomainError("inversion grid must stay inside the data domain")
    conj = conjugate_pl(k)
    back = lower_envelope(conj, g)
    return float(np.max(np.abs(back - k.values(g))))


def grid_search_conjugate(k: EnvelopeFunction, xs, y_grid) -> np.ndarray:
    """Brute-force sup_y k(y) - x*y over an explicit y grid (test oracle)."""
    x = np.asarray(xs, dtype=float)[:, None]
    y = np.asarray(y_grid, dtype=float)[None, :]
    vals = k.values(y_grid)[None, :]
    return np.max(vals - x * y, axis=1)


def grid_search_lower(m: EnvelopeFunction, xs, y_grid) -> np.ndarray:
    """Brute-force inf_y m(y) + x*y over an explicit y grid (test oracle)."""
    x = np.asarray(xs, dtype=float)[:, None]
    y = np.asarray(y_grid, dtype=float)[None, :]
    vals = m.values(y_grid)[None, :]
    return np.min(vals + x * y, axis=1)


__all__ = [
    "DomainError",
    "EnvelopeFunction",
    "conjugate_pl",
    "constant_envelope",
    "d_beta_c",
    "grid_search_conjugate",
    "grid_search_lower",
    "inversion_check",
    "lower_envelope",
    "piecewise_linear",
    "power_decreasing",
    "sqrt_increasing",
    "upper_envelope",
]
