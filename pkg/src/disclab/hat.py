"""Cusped symmetric profile domains and harmonic-measure decay bounds.

A certified majorant F turns into a "wizard hat": a profile p over an
interval, exponentially flat at the endpoints, built so that the
boundary integral of the transported majorant is provably finite.  The
dyadic bookkeeping is

    alpha_n = 2^(-n-n0),   gamma_n = alpha_n log F(alpha_n),
    dt_(n-1) = A/n^2 + (2/pi) gamma_(n+1),   p(t_n) = alpha_n,

with A fixed by sum(dt) = 1 and n0 chosen so sum(gamma) stays below the
requested budget.  The knot positions have the closed form

    t_n = A psi'(n+1) + (2/pi) sum_{m >= n+2} gamma_m          (psi' = trigamma)

so arbitrarily deep knots never require summing the series term by
term, and sum(dt) = 1 holds to roundoff instead of to a truncation
error.  The decay estimate for the harmonic measure of the boundary
left of t is the channel bound (8/pi) exp(-2 pi int_t^{x0} dx / p(x)).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import polygamma

from .errors import InputError, NumericalFailure
from .moments import Majorant, log_majorant_integral, log_majorant_values

#: psi'(2) = pi^2/6 - 1, the full sum of 1/n^2 over n >= 2
TRIGAMMA_2 = math.pi ** 2 / 6.0 - 1.0
GAMMA_FLOOR = 1e-26
MAX_N0 = 60
#: deepest knot kept: alpha must stay a normal float64
MAX_KNOTS_EXP = 1000


def _gamma_terms(f: Majorant, n0: int) -> tuple[np.ndarray, float]:
    """gamma_1..gamma_N plus a certified bound on the dropped tail.

    N grows until the terms fall under GAMMA_FLOOR; the tail past N is
    bounded by 2 int_0^{alpha_N} log F dt, since F decreasing makes each
    gamma_m at most twice the integral of log F over (alpha_{m+1}, alpha_m).
    """
    terms: list[float] = []
    n = 1
    while True:
        alpha = 2.0 ** (-(n + n0))
        g = float(alpha * log_majorant_values(f, np.array([alpha]))[0])
        terms.append(g)
        if (abs(g) < GAMMA_FLOOR and n > 8) or n + n0 >= MAX_KNOTS_EXP:
            break
        n += 1
    alpha_last = 2.0 ** (-(n + n0))
    tail = 2.0 * log_majorant_integral(f, 0.0, alpha_last)
    if not math.isfinite(tail) or tail < -1e-15:
        raise NumericalFailure("gamma tail certificate failed to converge")
    return np.asarray(terms), max(tail, 0.0)


def choose_n0(f: Majorant, eps: float) -> int:
    """Smallest n0 whose certified sum(gamma) stays under eps."""
    if not (eps > 0.0):
        raise InputError(f"need eps > 0, got {eps}")
    for n0 in range(1, MAX_N0 + 1):
        head, tail = _gamma_terms(f, n0)
        if float(np.sum(head)) + tail < eps:
            return n0
    raise NumericalFailure(
        f"no n0 <= {MAX_N0} brought the gamma sum under {eps}"
    )


@dataclass(frozen=True)
class WizardProfile:
    """Profile knots plus everything needed to reproduce them exactly.

    ``gamma_suffix[m-1]`` holds sum_{j >= m} gamma_j (tail certificate
    included), for m = 1..N+1.  Knots carry p(t_n) = alpha_n for
    n = 1..K with t_1 = 1, t_n strictly decreasing.
    """

    n0: int
    a_const: float
    gammas: tuple[float, ...]
    gamma_suffix: tuple[float, ...]
    tail_cert: float
    knots_t: tuple[float, ...]
    knots_p: tuple[float, ...]
    interval: tuple[float, float] = (0.0, 2.0)


def build_profile(f: Majorant, eps: float = 0.5) -> WizardProfile:
    if eps > 0.5:
        raise InputError(
            "profile construction needs sum(gamma) < 1/2; eps must be <= 0.5"
        )
    n0 = choose_n0(f, eps)
    gam, tail = _gamma_terms(f, n0)
    n_terms = gam.size
    suffix = np.concatenate([np.cumsum(gam[::-1])[::-1] + tail, [tail]])
    total = float(suffix[0])
    if total >= 0.5:
        raise InputError(f"certified gamma sum {total:.6f} breaches 1/2")
    gamma_3 = float(suffix[2]) if n_terms >= 3 else tail
    a_const = (1.0 - (2.0 / math.pi) * gamma_3) / TRIGAMMA_2
    if a_const <= 0.0:
        raise InputError("profile slope constant A came out non-positive")
    k = min(n_terms - 1, MAX_KNOTS_EXP - n0)
    ns = np.arange(1, k + 1)
    knots_t = a_const * polygamma(1, ns + 1) + (2.0 / math.pi) * suffix[ns + 1]
    knots_p = np.exp2(-(ns + n0).astype(float))
    if abs(knots_t[0] - 1.0) > 1e-12:
        raise NumericalFailure(
            f"t_1 = {knots_t[0]!r} drifted from 1; A bookkeeping inconsistent"
        )
    if np.any(np.diff(knots_t) >= 0.0):
        raise NumericalFailure("knots failed to decrease strictly")
    return WizardProfile(
        n0=n0,
        a_const=a_const,
        gammas=tuple(float(g) for g in gam),
        gamma_suffix=tuple(float(s) for s in suffix),
        tail_cert=tail,
        knots_t=tuple(float(t) for t in knots_t),
        knots_p=tuple(float(p) for p in knots_p),
    )


def profile_deltas(prof: WizardProfile, count: int) -> np.ndarray:
    """dt_1..dt_count, with dt_k = A/(k+1)^2 + (2/pi) gamma_{k+2}."""
    if count < 1 or count + 2 > len(prof.gammas) + 1:
        raise InputError(f"have gammas for at most {len(prof.gammas) - 1} deltas")
    ks = np.arange(1, count + 1)
    gam = np.asarray(prof.gammas)
    return prof.a_const / (ks + 1.0) ** 2 + (2.0 / math.pi) * gam[ks + 1]


def delta_sum_gap(prof: WizardProfile) -> float:
    """|sum_n dt_n - 1| with the tail resummed through the knot formula."""
    m = min(len(prof.knots_t) - 1, len(prof.gammas) - 2)
    deltas = profile_deltas(prof, m)
    return abs(float(np.sum(deltas)) + prof.knots_t[m] - 1.0)


def exponent_identity_gap(prof: WizardProfile, n_max: int = 40) -> float:
    """max_n |gamma_{n+1} - (pi/2) dt_{n-1} + (A pi/2)/n^2| for 2 <= n <= n_max."""
    if n_max < 2:
        raise InputError("identity starts at n = 2")
    ns = np.arange(2, n_max + 1)
    gam = np.asarray(prof.gammas)
    if ns[-1] + 1 > gam.size:
        raise InputError(f"profile stores {gam.size} gammas, need {ns[-1] + 1}")
    deltas = profile_deltas(prof, n_max - 1)
    lhs = gam[ns] - (math.pi / 2.0) * deltas[ns - 2]
    rhs = -(prof.a_const * math.pi / 2.0) / ns ** 2
    return float(np.max(np.abs(lhs - rhs)))


def profile_value(prof: WizardProfile, xs) -> np.ndarray:
    """p(x) for x in (0, t_1], log-log interpolation between knots.

    Flat at alpha_1 above the first knot; identically 0 below the last
    stored knot, where the true profile sits under 1e-300 anyway.
    """
    x = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(x <= 0.0):
        raise InputError("profile arguments must be positive")
    log_t = np.log(np.asarray(prof.knots_t)[::-1])
    log_p = np.log(np.asarray(prof.knots_p)[::-1])
    out = np.exp(np.interp(np.log(x), log_t, log_p))
    out[x >= prof.knots_t[0]] = prof.knots_p[0]
    out[x < prof.knots_t[-1]] = 0.0
    return out


def profile_slope_bound(prof: WizardProfile) -> float:
    """Upper bound for dp/dx over the whole profile (Lipschitz constant)."""
    t = np.asarray(prof.knots_t)
    p = np.asarray(prof.knots_p)
    s = np.log(p[:-1] / p[1:]) / np.log(t[:-1] / t[1:])
    return float(np.max(s * p[:-1] / t[1:]))


@dataclass(frozen=True)
class BoundarySeriesReport:
    terms: tuple[float, ...]
    partial_sums: tuple[float, ...]
    tail_bound: float
    monotone_from: int
    total_bound: float
    finite: bool


def hat_boundary_integral_bound(prof: WizardProfile) -> BoundarySeriesReport:
    """Partial sums of (8/pi) sum_n exp(-(A pi/2) 2^(n+1+n0)/n^2).

    Certifies that the transported boundary data is integrable against
    harmonic measure: the terms decay super-exponentially, so a finite
    prefix plus its last term bounds the whole series.
    """
    terms: list[float] = []
    n = 2
    while n < 400:
        expo = (prof.a_const * math.pi / 2.0) * 2.0 ** (n + 1 + prof.n0) / n ** 2
        term = math.exp(-expo) if expo < 745.0 else 0.0
        terms.append(term)
        if term == 0.0 and n > 4:
            break
        n += 1
    arr = np.asarray(terms)
    partial = np.cumsum(arr)
    ratios = arr[1:] / np.maximum(arr[:-1], 1e-310)
    mono = 2
    for i in range(ratios.size):
        if np.all(ratios[i:] < 1.0):
            mono = i + 2
            break
    tail = float(arr[-1])  # ratio < 1/2 past the monotone index
    total = (8.0 / math.pi) * (float(partial[-1]) + tail)
    return BoundarySeriesReport(
        terms=tuple(float(v) for v in arr),
        partial_sums=tuple(float(v) for v in partial),
        tail_bound=tail,
        monotone_from=mono,
        total_bound=total,
        finite=True,
    )


def boundary_series_term(prof: WizardProfile, n: int) -> float:
    expo = (prof.a_const * math.pi / 2.0) * 2.0 ** (n + 1 + prof.n0) / n ** 2
    return math.exp(-expo) if expo < 745.0 else 0.0


def beurling_ahlfors_bound(p_of, a: float, t: float, z0_re: float) -> float:
    """(8/pi) exp(-2 pi int_t^{z0_re} dx / p(x - a)).

    ``p_of`` maps positive offsets to channel widths.  The integrand
    explodes toward x = a, but the integration starts at t > a, so the
    quadrature is proper; a width of 0 anywhere in range sends the
    bound straight to 0.
    """
    if not a < t < z0_re:
        raise InputError(f"need a < t < Re z0, got a={a}, t={t}, Re z0={z0_re}")
    left_width = float(np.atleast_1d(p_of(np.array([t - a])))[0])
    if left_width <= 0.0:
        return 0.0

    def integrand(x: float) -> float:
        w = float(np.atleast_1d(p_of(np.array([x - a])))[0])
        return 1.0 / w if w > 0.0 else 1e308

    with warnings.catch_warnings():
        # integrands spanning hundreds of orders of magnitude trip the
        # roundoff heuristic; the result only feeds exp(-2 pi I), where
        # anything past ~120 digits is identically zero anyway
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(integrand, t, z0_re, limit=200)
    expo = -2.0 * math.pi * val
    return (8.0 / math.pi) * math.exp(expo) if expo > -745.0 else 0.0


def wizard_p(prof: WizardProfile):
    """Profile as a plain vectorized callable for the bound and the domains."""
    return lambda xs: profile_value(prof, xs)


def power_p(scale: float, q: float):
    """p(x) = scale * x^q, the explicit test hat."""
    if scale <= 0.0 or q <= 0.0:
        raise InputError("power profile needs scale > 0 and q > 0")
    return lambda xs: scale * np.atleast_1d(np.asarray(xs, dtype=float)) ** q


__all__ = [
    "BoundarySeriesReport",
    "TRIGAMMA_2",
    "WizardProfile",
    "beurling_ahlfors_bound",
    "boundary_series_term",
    "build_profile",
    "choose_n0",
    "delta_sum_gap",
    "exponent_identity_gap",
    "hat_boundary_integral_bound",
    "power_p",
    "profile_deltas",
    "profile_slope_bound",
    "profile_value",
    "wizard_p",
]
