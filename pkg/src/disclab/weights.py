"""Nonnegative boundary weights with a certified log-integral oracle.

The preset families (constant, power ``|x - e^{ia}|^gamma``, exponential
``exp(-s / dist(x, E)^gamma)``, arc-union indicators, and finite products
of these) expose exact or certified-error values of ``∫_I log w dm`` over
any arc — the quantity every core/residual verdict rests on.  Distances
are chordal: ``dist(x, y) = |e^{ix} - e^{iy}| = 2|sin((x-y)/2)|``.

Grid weights carry declared singular points because integrability is not
decidable from finitely many samples; across a declared singular point the
oracle either reaches the divergence threshold or raises
``InconclusiveAtDepth`` — it never guesses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy import integrate

from .errors import InconclusiveAtDepth, InputError
from .geometry import TWO_PI, Arc, ArcSet, normalize_angle

#: divergence threshold for the running integral, natural-log units
DEFAULT_T_DIV = 1.0e6
#: maximum dyadic refinement depth
DEFAULT_MAX_DEPTH = 40


@dataclass(frozen=True)
class LogIntegral:
    """Verdict of ``∫_I log w dm``: a finite value with error bar, or divergent."""

    divergent: bool
    value: float
    error: float

    @staticmethod
    def finite(value: float, error: float) -> "LogIntegral":
        return LogIntegral(False, float(value), float(error))

    @staticmethod
    def diverged() -> "LogIntegral":
        return LogIntegral(True, -math.inf, 0.0)


@dataclass(frozen=True)
class Weight:
    """A nonnegative weight on the circle, preset family or sample grid.

    Use the module-level constructors (``constant``, ``power``,
    ``exp_inv_dist``, ``indicator``, ``product``, ``grid``) rather than
    building instances directly.
    """

    family: str
    c: float = 1.0
    anchor: float = 0.0
    gamma: float = 1.0
    s: float = 1.0
    points: tuple[float, ...] = ()
    arcs: ArcSet = field(default_factory=ArcSet.empty)
    factors: tuple["Weight", ...] = ()
    samples: tuple[float, ...] = ()
    singular_points: tuple[float, ...] = ()
    floor: float = 1e-300

    def __call__(self, thetas):
        return weight_values(self, thetas)


def constant(c: float) -> Weight:
    if not (c > 0.0) or not math.isfinite(c):
        raise InputError(f"constant weight needs c > 0, got {c}")
    return Weight("constant", c=float(c))


def power(anchor: float, gamma: float) -> Weight:
    """``w(x) = |x - e^{i anchor}|^gamma``; integrable iff gamma > -1."""
    if gamma <= -1.0:
        raise InputError(f"power weight needs gamma > -1 for integrability, got {gamma}")
    return Weight("power", anchor=normalize_angle(anchor), gamma=float(gamma))


def exp_inv_dist(points=(), arcs: ArcSet | None = None, s: float = 1.0, gamma: float = 1.0) -> Weight:
    """``w(x) = exp(-s / dist(x, E)^gamma)`` for E = points ∪ closed arcs."""
    if s <= 0.0 or gamma <= 0.0:
        raise InputError("exp_inv_dist needs s > 0 and gamma > 0")
    pts = tuple(sorted(normalize_angle(p) for p in points))
    arcset = arcs if arcs is not None else ArcSet.empty()
    if not pts and arcset.is_empty():
        raise InputError("exp_inv_dist needs a nonempty singular set E")
    return Weight("exp_inv_dist", s=float(s), gamma=float(gamma), points=pts, arcs=arcset)


def indicator(arcset: ArcSet) -> Weight:
    if arcset.is_empty():
        raise InputError("indicator weight needs a set of positive measure")
    return Weight("indicator", arcs=arcset)


def product(factors) -> Weight:
    factors = tuple(factors)
    if not factors:
        raise InputError("product weight needs at least one factor")
    neg = sum(f.gamma for f in factors if f.family == "power" and f.gamma < 0)
    if neg <= -1.0:
        # same-anchor negative powers could stack into a non-integrable pole
        val, _ = integral(Weight("product", factors=factors), ArcSet.full_circle())
        if not math.isfinite(val) or val > 1e12:
            raise InputError("product weight is not integrable")
    return Weight("product", factors=factors)


def grid(samples, singular_points=(), floor: float = 1e-12) -> Weight:
    """Weight known only through N uniform samples at angles 2*pi*j/N.

    ``singular_points`` are the angles where w may vanish to infinite log
    order; ``floor`` is the smallest positive value distinguishable from 0,
    and samples below it are clamped up to it for quadrature.  A literal
    zero sample is only accepted within one grid step of a declared
    singular point.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 8:
        raise InputError("grid weight needs a 1-d array of at least 8 samples")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise InputError("grid weight samples must be finite and >= 0")
    if not (0.0 < floor < 1.0):
        raise InputError("grid floor must be in (0, 1)")
    sings = tuple(sorted(normalize_angle(p) for p in singular_points))
    n = arr.size
    step = TWO_PI / n
    for j in np.nonzero(arr == 0.0)[0]:
        theta = j * step
        if not sings or min(_circ_dist(theta, p) for p in sings) > step * (1 + 1e-9):
            raise InputError(
                "zero sample at angle %.6f without a declared singular point" % theta
            )
    return Weight("grid", samples=tuple(arr.tolist()), singular_points=sings, floor=float(floor))


def _circ_dist(a: float, b: float) -> float:
    d = abs(normalize_angle(a) - normalize_angle(b))
    return min(d, TWO_PI - d)


def dist_to_set(thetas, points, arcs: ArcSet):
    """Chordal distance from each angle to E = points ∪ closed arcs."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    d = np.full(th.shape, np.inf)
    for p in points:
        np.minimum(d, 2.0 * np.abs(np.sin(0.5 * (th - p))), out=d)
    for a, b in arcs.intervals:
        np.minimum(d, 2.0 * np.abs(np.sin(0.5 * (th - a))), out=d)
        np.minimum(d, 2.0 * np.abs(np.sin(0.5 * (th - b))), out=d)
        tl = np.mod(th - a, TWO_PI)
        inside = tl <= (b - a)
        d[inside] = 0.0
    return d


def weight_values(w: Weight, thetas):
    """Vectorized evaluation of the weight at the given angles."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if w.family == "constant":
        return np.full(th.shape, w.c)
    if w.family == "power":
        return (2.0 * np.abs(np.sin(0.5 * (th - w.anchor)))) ** w.gamma
    if w.family == "exp_inv_dist":
        d = dist_to_set(th, w.points, w.arcs)
        out = np.zeros(th.shape)
        pos = d > 0
        out[pos] = np.exp(-w.s / d[pos] ** w.gamma)
        return out
    if w.family == "indicator":
        return np.array([1.0 if w.arcs.contains(t) else 0.0 for t in th])
    if w.family == "product":
        out = np.ones(th.shape)
        for f in w.factors:
            out = out * weight_values(f, th)
        return out
    if w.family == "grid":
        return _grid_values(w, th)
    raise InputError(f"unknown weight family {w.family!r}")


def _grid_values(w: Weight, th):
    arr = np.asarray(w.samples)
    n = arr.size
    xp = np.arange(n + 1) * (TWO_PI / n)
    fp = np.concatenate([arr, arr[:1]])  # periodic closure
    vals = np.interp(np.mod(th, TWO_PI), xp, fp)
    return vals


def log_weight_values(w: Weight, thetas):
    """Vectorized log w, exact where exp would underflow; -inf where w = 0.

    Near a declared singular point exp_inv_dist weights drop below the
    float64 floor (log w ~ -1/dist can pass -10^9); anything built on
    thresholded comparisons of w must compare in log space instead.
    """
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if w.family == "constant":
        return np.full(th.shape, math.log(w.c))
    if w.family == "power":
        with np.errstate(divide="ignore"):
            return w.gamma * np.log(2.0 * np.abs(np.sin(0.5 * (th - w.anchor))))
    if w.family == "exp_inv_dist":
        d = dist_to_set(th, w.points, w.arcs)
        out = np.full(th.shape, -np.inf)
        pos = d > 0
        out[pos] = -w.s / d[pos] ** w.gamma
        return out
    if w.family == "indicator":
        return np.array([0.0 if w.arcs.contains(t) else -np.inf for t in th])
    if w.family == "product":
        out = np.zeros(th.shape)
        for f in w.factors:
            out = out + log_weight_values(f, th)
        return out
    if w.family == "grid":
        with np.errstate(divide="ignore"):
            return np.log(_grid_values(w, th))
    raise InputError(f"unknown weight family {w.family!r}")


def _clausen2(x: float) -> float:
    """Clausen function Cl2(x) = -∫_0^x log|2 sin(t/2)| dt."""
    return float(mpmath.clsin(2, x))


def _power_log_integral(anchor: float, gamma: float, arc: Arc) -> LogIntegral:
    # ∫_I log(2|sin((θ-a)/2)|) dθ = Cl2(α-a) - Cl2(β-a); always finite.
    u0 = arc.start - anchor
    u1 = arc.end - anchor
    val = gamma / TWO_PI * (_clausen2(u0) - _clausen2(u1))
    return LogIntegral.finite(val, 5e-15 * (1.0 + abs(val)))


def _exp_log_integral(w: Weight, arc: Arc, t_div: float) -> LogIntegral:
    ivals = arc.intervals()
    inside_measure = ArcSet.from_intervals(ivals).intersect(w.arcs).measure()
    if inside_measure > 1e-15:
        return LogIntegral.diverged()  # w vanishes on a set of positive measure
    touch = _touches_singular_set(w, arc)
    if touch and w.gamma >= 1.0:
        return LogIntegral.diverged()

    def neg_log(theta):
        d = dist_to_set(theta, w.points, w.arcs)
        return w.s / np.maximum(d, 1e-300) ** w.gamma

    total, err = 0.0, 0.0
    for a, b in ivals:
        pts = [p for p in _singular_lifts(w, a, b) if a < p < b]
        v, e = integrate.quad(lambda t: neg_log(t), a, b, points=pts or None, limit=300)
        total += v
        err += e
    val = -total / TWO_PI
    if val < -t_div:
        return LogIntegral.diverged()
    return LogIntegral.finite(val, err / TWO_PI)


def _singular_lifts(w: Weight, a: float, b: float) -> list[float]:
    """Lifts of all singular locations of E into the window [a, b]."""
    locs = list(w.points)
    for c, d in w.arcs.intervals:
        locs.extend([c, d])
    out = []
    for p in locs:
        for k in (-1, 0, 1):
            q = p + k * TWO_PI
            if a - 1e-12 <= q <= b + 1e-12:
                out.append(q)
    return sorted(out)


def _touches_singular_set(w: Weight, arc: Arc) -> bool:
    for a, b in arc.intervals():
        if _singular_lifts(w, a, b):
            return True
    return False


def _indicator_log_integral(w: Weight, arc: Arc) -> LogIntegral:
    region = ArcSet.from_intervals(arc.intervals())
    outside = region.measure() - region.intersect(w.arcs).measure()
    if outside > 1e-14:
        return LogIntegral.diverged()
    return LogIntegral.finite(0.0, 0.0)


def _grid_log_integral(w: Weight, arc: Arc, t_div: float, max_depth: int) -> LogIntegral:
    n = len(w.samples)

    def log_w(theta):
        vals = np.maximum(_grid_values(w, np.atleast_1d(theta)), w.floor)
        return np.log(vals)

    total, err = 0.0, 0.0
    unresolved = 0.0
    inconclusive = False
    for a, b in arc.intervals():
        sings = [p for p in _grid_singular_lifts(w, a, b)]
        cuts = sorted({a, b, *[p for p in sings if a < p < b]})
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            lo_sing = any(abs(lo - p) < 1e-14 for p in sings)
            hi_sing = any(abs(hi - p) < 1e-14 for p in sings)
            if not lo_sing and not hi_sing:
                v, e = _smooth_log_quad(log_w, lo, hi, n)
                total += v
                err += e
                continue
            inconclusive = True
            # dyadic shells marching toward each singular endpoint
            mid = 0.5 * (lo + hi)
            for end, sing in ((lo, lo_sing), (hi, hi_sing)):
                if not sing:
                    v, e = _smooth_log_quad(log_w, min(mid, end), max(mid, end), n)
                    total += v
                    err += e
                    continue
                span = mid - end  # signed: shells shrink toward `end`
                for d in range(max_depth):
                    far = end + span * 2.0 ** (-d)
                    near = end + span * 2.0 ** (-d - 1)
                    v, e = _smooth_log_quad(log_w, min(far, near), max(far, near), n)
                    total += v
                    err += e
                    if total / TWO_PI < -t_div:
                        return LogIntegral.diverged()
                unresolved += abs(span) * 2.0 ** (-max_depth)
    if inconclusive:
        raise InconclusiveAtDepth(
            "log-integral not certifiable across a declared singular point",
            payload={
                "running_value": total / TWO_PI,
                "depth": max_depth,
                "unresolved_measure": unresolved / TWO_PI,
            },
        )
    return LogIntegral.finite(total / TWO_PI, err / TWO_PI + 1e-14)


def _grid_singular_lifts(w: Weight, a: float, b: float) -> list[float]:
    out = []
    for p in w.singular_points:
        for k in (-1, 0, 1):
            q = p + k * TWO_PI
            if a - 1e-12 <= q <= b + 1e-12:
                out.append(q)
    return sorted(out)


def _smooth_log_quad(log_w, lo: float, hi: float, n_samples: int):
    """Trapezoid of log w on [lo, hi] at roughly grid resolution, with a
    one-refinement error estimate."""
    if hi - lo <= 0:
        return 0.0, 0.0
    m = max(8, int(math.ceil((hi - lo) / (TWO_PI / n_samples))) * 2)
    coarse = np.linspace(lo, hi, m + 1)
    fine = np.linspace(lo, hi, 2 * m + 1)
    v1 = np.trapezoid(log_w(coarse), coarse)
    v2 = np.trapezoid(log_w(fine), fine)
    return v2, abs(v2 - v1) + 1e-15 * abs(v2)


def log_integral(
    w: Weight,
    arc: Arc,
    t_div: float = DEFAULT_T_DIV,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> LogIntegral:
    """Certified ``∫_I log w dm`` over the arc: finite value ± error, or divergent.

    Raises ``InconclusiveAtDepth`` for grid weights whose verdict cannot be
    certified at the maximum refinement depth (never silently coerced).
    """
    if w.family == "constant":
        val = arc.length / TWO_PI * math.log(w.c)
        return LogIntegral.finite(val, 1e-16 * (1.0 + abs(val)))
    if w.family == "power":
        return _power_log_integral(w.anchor, w.gamma, arc)
    if w.family == "exp_inv_dist":
        return _exp_log_integral(w, arc, t_div)
    if w.family == "indicator":
        return _indicator_log_integral(w, arc)
    if w.family == "product":
        total, err = 0.0, 0.0
        for f in w.factors:
            r = log_integral(f, arc, t_div=t_div, max_depth=max_depth)
            if r.divergent:
                return LogIntegral.diverged()
            total += r.value
            err += r.error
        return LogIntegral.finite(total, err)
    if w.family == "grid":
        return _grid_log_integral(w, arc, t_div, max_depth)
    raise InputError(f"unknown weight family {w.family!r}")


def integral(w: Weight, arcset: ArcSet):
    """``∫_set w dm`` with an error estimate (exact for constants/indicators)."""
    if w.family == "constant":
        return w.c * arcset.measure(), 0.0
    if w.family == "indicator":
        return arcset.intersect(w.arcs).measure(), 0.0
    total, err = 0.0, 0.0
    for a, b in arcset.intervals:
        pts = None
        if w.family in ("power", "exp_inv_dist"):
            if w.family == "power":
                sing_w = Weight("exp_inv_dist", points=(w.anchor,))
            else:
                sing_w = w
            pts = [p for p in _singular_lifts(sing_w, a, b) if a < p < b] or None
        v, e = integrate.quad(
            lambda t: float(weight_values(w, np.array([t]))[0]), a, b,
            points=pts, limit=200,
        )
        total += v
        err += e
    return total / TWO_PI, err / TWO_PI


def total_mass(w: Weight) -> float:
    """``∫ w dm`` over the full circle (must be finite for a valid weight)."""
    return integral(w, ArcSet.full_circle())[0]


def fat_cantor_arcset(levels: int = 8) -> ArcSet:
    """Positive-measure Cantor-type arc union (Smith–Volterra generator).

    Level k removes an open middle arc of length 2*pi*4^{-k} from each of
    the 2^{k-1} surviving arcs; after 8 levels the 256 surviving closed
    arcs have total normalized measure ≈ 1/2 + 2^{-9} ≈ 0.502.  The base
    arc leaves one finest-scale gap at the angular cut (the construction
    would otherwise glue its two end survivors into an arc with interior),
    so every arc of the circle wider than a survivor meets the removed
    gaps on positive measure and the indicator's core is empty.
    """
    glue_gap = TWO_PI * 4.0 ** -(levels)
    ivals = [(0.5 * glue_gap, TWO_PI - 0.5 * glue_gap)]
    for k in range(1, levels + 1):
        gap = TWO_PI * 4.0**-k
        nxt = []
        for a, b in ivals:
            mid = 0.5 * (a + b)
            nxt.append((a, mid - 0.5 * gap))
            nxt.append((mid + 0.5 * gap, b))
        ivals = nxt
    return ArcSet.from_intervals(ivals)
