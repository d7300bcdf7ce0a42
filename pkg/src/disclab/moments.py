"""Moments of radial weights, admissibility analysis, and reconstruction.

The central object is

    P_G(x) = int_0^1 G(1 - r) r^x dr = int_0^1 G(u) (1 - u)^x du,

whose even-index samples M_n = 2 * P_G(2n + 1) form the moment sequence
of the weight.  P_G is computed by certified quadrature in log space:
the integrand's log, phi(u) = log G(u) + x*log(1 - u), is maximized
first and the quadrature runs on exp(phi - phi_max), so nothing
underflows until the final rescale.

Admissibility of a positive decreasing sequence is a three-part report
(eventual log-convexity, square-root decay of log(1/M_n), and
convergence of sum log(1/M_n)/(1+n^2)); admissible data can be turned
back into a radial weight by conjugating the piecewise-linear
interpolant of (2n+1, log(1/M_n)) on its log-convex tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import legendre, radial
from .errors import InputError, NotAMajorant, NumericalFailure
from .legendre import EnvelopeFunction, NotAdmissible
from .radial import RadialWeight

D_MIN = 1e-3  # smallest fitted sqrt-decay rate accepted as genuine
TAIL_Q_MARGIN = 0.1  # fitted log-power must clear 1 by this to call the sum finite


@dataclass(frozen=True)
class MomentValue:
    value: float
    error: float


def _log_phi(g: RadialWeight, u: np.ndarray, x: float) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        lg = radial.log_radial_values(g, u)
        tail = np.where(u < 1.0, x * np.log1p(-u), -np.inf if x > 0 else 0.0)
    return lg + tail


def moment_function(g: RadialWeight, x: float) -> MomentValue:
    """P_G(x) = int_0^1 G(u)(1-u)^x du with a certified error bound."""
    if x < 0:
        raise InputError("moment_function needs x >= 0")
    x = float(x)
    if g.kind == "tab":
        return _moment_tabulated(g, x)
    # locate the peak of the log-integrand on a dense geometric grid
    us = np.geomspace(1e-12, 1.0, 4001)
    phis = _log_phi(g, us, x)
    i = int(np.nanargmax(phis))
    phi_max = phis[i]
    if not np.isfinite(phi_max):
        raise NumericalFailure("moment integrand vanished everywhere")
    u_peak = us[i]

    def f(u: float) -> float:
        val = _log_phi(g, np.array([u]), x)[0] - phi_max
        return math.exp(val) if val > -745.0 else 0.0

    pts = [p for p in (u_peak / 4, u_peak, min(4 * u_peak, 1.0 - 1e-12)) if 0 < p < 1]
    val, err = quad(f, 0.0, 1.0, points=pts, limit=300, epsabs=1e-280, epsrel=1e-11)
    if val <= 0:
        raise NumericalFailure("moment quadrature collapsed to zero")
    scale = math.exp(phi_max)
    return MomentValue(value=val * scale, error=err * scale)


_GAUSS_HI = np.polynomial.legendre.leggauss(16)
_GAUSS_LO = np.polynomial.legendre.leggauss(8)


def _moment_tabulated(g: RadialWeight, x: float) -> MomentValue:
    """Per-segment Gauss quadrature for tabulated weights.

    The integrand is analytic between knots (log-linear log G), so a
    fixed high-order rule per segment is both fast and accurate; the
    error estimate compares embedded 8- vs 16-node rules.  The region
    below the first knot uses the tabulated extrapolation (log-linear),
    integrated the same way on a few geometric sub-segments.
    """
    ts = np.asarray(g.knots_t)
    edges = np.concatenate([np.geomspace(max(ts[0] * 1e-6, 1e-300), ts[0], 8), ts[1:]])
    edges = edges[edges <= 1.0]
    if edges[-1] < 1.0:
        edges = np.append(edges, 1.0)
    a = edges[:-1]
    h = np.diff(edges)

    # probe knots for the peak of the log-integrand
    mids = a + 0.5 * h
    phi_probe = _log_phi(g, mids, x)
    phi_max = float(np.max(phi_probe))
    if not np.isfinite(phi_max):
        raise NumericalFailure("moment integrand vanished everywhere")

    def rule(nodes: np.ndarray, weights: np.ndarray) -> float:
        u = a[:, None] + 0.5 * h[:, None] * (nodes[None, :] + 1.0)
        phi = _log_phi(g, u.ravel(), x).reshape(u.shape) - phi_max
        with np.errstate(under="ignore"):
            vals = np.exp(np.maximum(phi, -745.0)) * (phi > -745.0)
        return float(np.sum(0.5 * h * (vals @ weights)))

    hi = rule(*_GAUSS_HI)
    lo = rule(*_GAUSS_LO)
    if hi <= 0:
        raise NumericalFailure("moment quadrature collapsed to zero")
    scale = math.exp(phi_max)
    # mass below the first edge: G is increasing and (1-u)^x <= 1 there
    head = float(edges[0] * np.exp(radial.log_radial_values(g, edges[0]) - phi_max)[0])
    err = abs(hi - lo) + head + 1e-14 * hi
    return MomentValue(value=hi * scale, error=err * scale)


# -- moment sequences ------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """Positive, eventually decreasing sequence M_0, M_1, ...

    ``log_values`` carries log M_n exactly even where M_n underflows
    float64.  ``decreasing_from`` is the first index from which the
    sequence decreases to the end; anything before it is a recorded
    head irregularity, and a sequence that never settles is rejected.
    """

    log_values: tuple[float, ...]
    provenance: str  # "fromG" | "explicit"
    g: RadialWeight | None = None
    errors: tuple[float, ...] = ()
    decreasing_from: int = 0

    def __post_init__(self) -> None:
        ls = np.asarray(self.log_values, dtype=float)
        if ls.size < 2 or not np.all(np.isfinite(ls)):
            raise InputError("moment sequence needs >= 2 finite log-values")
        rises = np.nonzero(np.diff(ls) >= 0)[0]
        dec_from = int(rises[-1] + 1) if rises.size else 0
        if dec_from > ls.size // 2:
            raise InputError(
                "moment sequence must eventually decrease "
                f"(still rising at index {dec_from} of {ls.size})"
            )
        object.__setattr__(self, "decreasing_from", dec_from)

    def __len__(self) -> int:
        return len(self.log_values)

    def values(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(np.asarray(self.log_values))

    def log_one_over(self) -> np.ndarray:
        return -np.asarray(self.log_values)

    def power(self, p: float) -> MomentSequence:
        """The sequence M_n^p (p > 0); admissibility is stable under this."""
        if p <= 0:
            raise InputError("power needs p > 0")
        return MomentSequence(
            log_values=tuple(p * v for v in self.log_values),
            provenance="explicit",
        )


def moments_of_g(g: RadialWeight, n_max: int) -> MomentSequence:
    """M_n = 2 * P_G(2n+1) for n = 0..n_max."""
    if n_max < 1:
        raise InputError("moments_of_g needs n_max >= 1")
    vals = []
    errs = []
    for n in range(n_max + 1):
        mv = moment_function(g, 2 * n + 1)
        vals.append(math.log(2.0 * mv.value))
        errs.append(mv.error / mv.value)  # relative error; exact in log space
    return MomentSequence(
        log_values=tuple(vals), provenance="fromG", g=g, errors=tuple(errs)
    )


def explicit_moments(values=None, *, log_values=None) -> MomentSequence:
    """Moment sequence from raw values or their logs (one of the two)."""
    if (values is None) == (log_values is None):
        raise InputError("pass exactly one of values / log_values")
    if values is not None:
        arr = np.asarray(values, dtype=float)
        if np.any(arr <= 0):
            raise InputError("moment values must be positive")
        log_values = np.log(arr)
    return MomentSequence(
        log_values=tuple(float(v) for v in np.asarray(log_values, dtype=float)),
        provenance="explicit",
    )


# -- admissibility ---------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    log_convex_tail: bool
    log_convex_from: int
    sqrt_decay: bool
    fitted_d: float
    sqrt_need_ratio: float
    ratio_window_min: float
    tail_sum_finite: bool
    tail_sum_estimate: float
    partial_sum: float
    fitted_q: float
    qualifier: str


def _fit_sqrt_rate(ns: np.ndarray, ls: np.ndarray) -> tuple[float, float]:
    """Fitted d in log(1/M_n) ~ d*sqrt(n) + a*log n + b, plus need ratio.

    Slowly-varying misfit leaks into the sqrt coefficient at the 1e-3
    level, which is exactly the acceptance threshold, so the raw
    coefficient alone cannot separate polynomial decay from genuine
    root decay.  The second return value measures how much the sqrt
    term is *needed*: rms residual without it over rms residual with
    it.  Pure log-polynomial data leaves the ratio near 1.
    """
    slow = np.column_stack([np.log(ns), np.ones_like(ns), 1.0 / ns])
    full = np.column_stack([np.sqrt(ns), slow])
    coef, res1, *_ = np.linalg.lstsq(full, ls, rcond=None)
    _, res0, *_ = np.linalg.lstsq(slow, ls, rcond=None)
    r1 = float(res1[0]) if res1.size else 0.0
    r0 = float(res0[0]) if res0.size else 0.0
    scale = max(float(np.sum(ls**2)), 1e-30)
    ratio = math.sqrt((r0 + 1e-14 * scale) / (r1 + 1e-14 * scale))
    return float(coef[0]), ratio


def is_admissible(m: MomentSequence, *, d_min: float = D_MIN) -> AdmissibilityReport:
    """Three-part admissibility report at the sequence's resolution.

    (i)  log M_n convex from some index onward (exact on indices, with
         a tiny rounding allowance);
    (ii) log(1/M_n) grows at least like d*sqrt(n): verdict from the
         fitted sqrt coefficient over the tail window, which separates
         genuine root decay from polynomial decay at realistic lengths
         (the raw ratio log(1/M_n)/sqrt(n) cannot, and is reported as
         evidence only);
    (iii) sum log(1/M_n)/(1+n^2) finite: partial sum plus a tail model
         fit of n*log(1/M_n)/(1+n^2) ~ C (log n)^(-q), finite iff the
         fitted q clears 1 by a margin.  Preset-born sequences get the
         analytic verdict for their family instead.
    """
    n_total = len(m)
    if n_total < 20:
        raise InputError("admissibility needs at least 20 moments")
    ell = m.log_one_over()  # log(1/M_n), increasing on the tail
    ns = np.arange(n_total)

    # (i) convexity of log M_n <=> concavity of ell is NOT it:
    # log-convexity of M means M_n^2 <= M_{n-1} M_{n+1}, i.e. log M convex,
    # i.e. ell = -log M is concave.  Second differences of ell must be <= 0.
    d2 = np.diff(ell, 2)
    tol = 1e-10 * max(1.0, float(np.max(np.abs(ell))))
    centers = np.nonzero(d2 > tol)[0] + 1
    log_convex_from = int(centers[-1]) if centers.size else 0
    log_convex_tail = log_convex_from <= n_total // 2

    # (ii) fitted sqrt-decay rate over the tail window
    w0 = max(n_total // 2, m.decreasing_from, 1)
    win = ns[w0:]
    fitted_d, need_ratio = _fit_sqrt_rate(win.astype(float), ell[w0:])
    with np.errstate(divide="ignore"):
        ratios = ell[w0:] / np.sqrt(win)
    ratio_window_min = float(np.min(ratios))
    sqrt_decay = fitted_d >= d_min and need_ratio >= 2.0

    # (iii) tail-sum analysis
    partial = float(np.sum(ell[1:] / (1.0 + ns[1:] ** 2)) + ell[0])
    t_n = ns[w0:] * ell[w0:] / (1.0 + ns[w0:].astype(float) ** 2)
    good = t_n > 0
    fitted_q = math.nan
    tail_estimate = math.inf
    tail_finite = False
    if np.count_nonzero(good) >= 8:
        xs = np.log(np.log(win[good]))
        ys = np.log(t_n[good])
        a, b = np.polyfit(xs, ys, 1)
        fitted_q = float(-a)
        if fitted_q > 1.0 + TAIL_Q_MARGIN:
            c_fit = math.exp(b)
            tail_estimate = partial + c_fit * math.log(n_total) ** (1.0 - fitted_q) / (
                fitted_q - 1.0
            )
            tail_finite = True
    qualifier = f"at resolution N={n_total - 1}"
    if m.provenance == "fromG" and m.g is not None and m.g.kind in ("t1", "t2", "linear"):
        # the analytic tail model for the preset families: log(1/M_n)
        # grows like sqrt(n) (t1), n/(log n)^(1/alpha) (t2, alpha<1) or
        # log n (linear); in each case the weighted series converges
        tail_finite = True
        if not math.isfinite(tail_estimate):
            tail_estimate = partial
        qualifier += "; analytic tail model (preset radial weight)"

    return AdmissibilityReport(
        admissible=bool(log_convex_tail and sqrt_decay and tail_finite),
        log_convex_tail=bool(log_convex_tail),
        log_convex_from=log_convex_from,
        sqrt_decay=bool(sqrt_decay),
        fitted_d=fitted_d,
        sqrt_need_ratio=need_ratio,
        ratio_window_min=ratio_window_min,
        tail_sum_finite=bool(tail_finite),
        tail_sum_estimate=float(tail_estimate),
        partial_sum=partial,
        fitted_q=float(fitted_q),
        qualifier=qualifier,
    )


# -- reconstruction of G from admissible moments ---------------------------


@dataclass(frozen=True)
class ReconstructedWeight:
    """Radial weight rebuilt from admissible moment data.

    ``conjugate`` is the exact piecewise-linear conjugate of the data's
    concave interpolant; ``g`` tabulates exp(-conjugate) with an
    exponential-decay continuation log G(t) = -continuation_c / t below
    the finest slope resolvable from the data.  ``threshold`` is the
    first index from which P_G(2n+1) <= M_n holds to the end of the
    table (None if the scan never settles).
    """

    g: RadialWeight
    conjugate: EnvelopeFunction
    continuation_c: float
    table_n: tuple[int, ...]
    table_log_p: tuple[float, ...]
    table_log_m: tuple[float, ...]
    threshold: int | None


def admissible_to_g(m: MomentSequence) -> ReconstructedWeight:
    """Rebuild a radial weight whose moments undercut the given ones.

    Uses the log-convex tail of the data: k = piecewise-linear through
    (2n+1, log(1/M_n)) there, G = exp(-k^*).  The conjugate k^* is only
    determined down to the data's final slope s_f; below s_f the weight
    continues as log G(t) = -c/t with c = s_f * k^*(s_f), the slowest
    decay consistent with the exponential-decay growth class, which
    keeps the continuation's contribution to every moment negligible.
    """
    report = is_admissible(m)
    start = max(report.log_convex_from, m.decreasing_from, 1)
    if len(m) - start < 4:
        raise NotAdmissible("too little log-convex tail to rebuild a weight")
    ns = np.arange(start, len(m))
    ys = 2.0 * ns + 1.0
    ks = m.log_one_over()[start:]
    slopes = np.diff(ks) / np.diff(ys)
    if np.any(slopes <= 0):
        raise NotAdmissible("log(1/M_n) must increase on the tail")
    if np.any(np.diff(slopes) > 1e-13 * np.maximum(1.0, slopes[:-1])):
        raise NotAdmissible("slopes of the concave interpolant fail to decrease")
    k_pl = legendre.piecewise_linear(ys, ks, increasing=True)
    conj = legendre.conjugate_pl(k_pl)
    cx = np.asarray(conj.knots_x)
    cv = np.asarray(conj.knots_v)
    s_f = cx[0]
    if s_f >= 1.0:
        raise NumericalFailure("data slopes exceed 1; weight table would be empty")
    k_star_sf = cv[0]
    if k_star_sf <= 0:
        raise NumericalFailure("conjugate is non-positive at the final slope")
    c_cont = float(s_f * k_star_sf)

    # assemble knots of log G: continuation below s_f, exact conjugate
    # breakpoints in [s_f, min(s_1, 1)], and the first data knot's
    # supporting line out to t = 1 if the data slopes end before 1
    t_cont = np.geomspace(s_f / 64.0, s_f, 200, endpoint=False)
    log_g = [-c_cont / t_cont, ]
    t_all = [t_cont]
    inside = cx <= 1.0
    t_all.append(cx[inside])
    log_g.append(-cv[inside])
    if cx[-1] < 1.0:
        # beyond the largest data slope the sup is carried by the first
        # tail knot: k^*(t) = ks[0] - t*ys[0]
        t_all.append(np.array([1.0]))
        log_g.append(np.array([-(ks[0] - 1.0 * ys[0])]))
    ts = np.concatenate(t_all)
    ls = np.concatenate(log_g)
    keep = np.concatenate([[True], np.diff(ts) > 1e-15])
    g = radial.tabulated_log(ts[keep], ls[keep])

    log_m = m.log_values
    table_n = []
    table_log_p = []
    table_log_m = []
    for n in ns:
        mv = moment_function(g, 2 * int(n) + 1)
        table_n.append(int(n))
        table_log_p.append(math.log(mv.value))
        table_log_m.append(float(log_m[int(n)]))
    holds = np.asarray(table_log_p) <= np.asarray(table_log_m) + 1e-12
    threshold: int | None = None
    for i in range(len(holds)):
        if np.all(holds[i:]):
            threshold = table_n[i]
            break
    return ReconstructedWeight(
        g=g,
        conjugate=conj,
        continuation_c=c_cont,
        table_n=tuple(table_n),
        table_log_p=tuple(table_log_p),
        table_log_m=tuple(table_log_m),
        threshold=threshold,
    )


# -- growth classes --------------------------------------------------------


@dataclass(frozen=True)
class GrowthClassReport:
    exp_dec: bool
    loglog_int: bool
    log_int: bool
    exp_dec_proxy: float
    qualifier: str


def growth_class(g: RadialWeight) -> GrowthClassReport:
    """Growth-class verdicts for G near 0.

    exp_dec:    liminf_{t->0} t * log(1/G(t)) > 0
    loglog_int: int_0 log^+ log^+ (1/G) dt < inf
    log_int:    int_0 log(1/G) dt < inf

    Analytic for the presets; tabulated weights get grid proxies with a
    resolution qualifier (a finite grid cannot certify divergence, so
    the verdicts describe the weight as represented).
    """
    if g.kind == "t1":
        proxy = g.c if g.beta == 1.0 else math.inf
        return GrowthClassReport(True, True, False, proxy, "analytic (preset)")
    if g.kind == "t2":
        return GrowthClassReport(True, True, False, math.inf, "analytic (preset)")
    if g.kind == "linear":
        # t*log(1/t) -> 0; int log log 1/t and int log 1/t both converge
        return GrowthClassReport(False, True, True, 0.0, "analytic (preset)")
    # probe only the knots: below the first knot the tabulated object
    # extrapolates log-linearly, which flattens log(1/G) and would fake
    # an exponential-decay failure that is pure representation artifact
    ts = np.asarray(g.knots_t)
    probe = ts[ts <= 0.5] if np.any(ts <= 0.5) else ts[:2]
    li = radial.log_one_over_g(g, probe)
    # liminf proxy: the smallest resolved scales (bottom decade of knots)
    decade = probe <= probe[0] * 10.0
    proxy = float(np.min(probe[decade] * li[decade]))
    loglog = np.log(np.maximum(np.log(np.maximum(li, 1.0)), 1.0))
    loglog_val = float(np.trapezoid(loglog, probe))
    log_val = float(np.trapezoid(np.maximum(li, 0.0), probe))
    return GrowthClassReport(
        exp_dec=proxy > 1e-6,
        loglog_int=math.isfinite(loglog_val),
        log_int=math.isfinite(log_val),
        exp_dec_proxy=proxy,
        qualifier=f"at resolution (knots down to t={probe[0]:.2e})",
    )


# -- majorants -------------------------------------------------------------


@dataclass(frozen=True)
class Majorant:
    """Decreasing F on (0, domain) with F(0+) = inf and log F integrable at 0."""

    kind: str  # "one_over_t" | "from_g"
    g: RadialWeight | None = None
    domain: float = 2.0
    certificate: float = math.nan  # int_0^{1/2} log F dt


def majorant_values(f: Majorant, ts) -> np.ndarray:
    t = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(t <= 0) or np.any(t >= f.domain):
        raise InputError(f"majorant arguments must lie in (0, {f.domain})")
    if f.kind == "one_over_t":
        return 1.0 / t
    if f.kind == "from_g":
        # log(8/t^3) written as log 8 - 3 log t so tiny t cannot overflow
        return math.log(8.0) - 3.0 * np.log(t) + 0.5 * radial.log_one_over_g(f.g, t / 2.0)
    raise InputError(f"unknown majorant kind {f.kind!r}")


def log_majorant_values(f: Majorant, ts) -> np.ndarray:
    """log F(t), finite even where F itself overflows float64.

    Only doubly-exponential weights can push F past 1e308; there
    log F = log(c/2) + (t/2)^(-alpha) up to a relative error below
    1e-300 from the dropped additive log(8/t^3) term.
    """
    t = np.atleast_1d(np.asarray(ts, dtype=float))
    vals = majorant_values(f, t)
    out = np.empty_like(vals)
    fin = np.isfinite(vals)
    bad_pos = vals[fin] <= 0
    if np.any(bad_pos):
        raise NotAMajorant("majorant must stay positive on its domain")
    out[fin] = np.log(vals[fin])
    if np.any(~fin):
        if f.kind != "from_g" or f.g is None or f.g.kind != "t2":
            raise NotAMajorant("majorant overflowed outside the known family")
        out[~fin] = math.log(0.5 * f.g.c) + (t[~fin] / 2.0) ** (-f.g.alpha)
    return out


def _certificate(f: Majorant) -> float:
    def integrand(t: float) -> float:
        return float(log_majorant_values(f, np.array([t]))[0])

    val, err = quad(integrand, 0.0, 0.5, limit=200)
    if not math.isfinite(val) or err > 1e-6 * max(1.0, abs(val)):
        raise NotAMajorant("int_0^{1/2} log F dt failed to converge")
    return float(val)


def _validate_majorant(f: Majorant) -> Majorant:
    probe = np.geomspace(1e-9, f.domain * (1.0 - 1e-9), 400)
    vals = log_majorant_values(f, probe)
    if np.any(np.diff(vals) > 1e-12 * np.maximum(1.0, np.abs(vals[:-1]))):
        raise NotAMajorant("majorant must be decreasing")
    if vals[0] < math.log(10.0) or vals[0] <= vals[probe.size // 2]:
        raise NotAMajorant("majorant must blow up as t -> 0+")
    cert = _certificate(f)
    return Majorant(kind=f.kind, g=f.g, domain=f.domain, certificate=cert)


def majorant_one_over_t(domain: float = 2.0) -> Majorant:
    """F(t) = 1/t; certificate int_0^{1/2} log(1/t) dt = (1+log 2)/2."""
    return _validate_majorant(Majorant(kind="one_over_t", domain=domain))


def majorant_from_g(g: RadialWeight) -> Majorant:
    """F(t) = log(8/t^3) + (1/2) log(1/G(t/2)) on (0, 2).

    Requires the weight's loglog-integrability class; without it log F
    is not integrable at 0 and the construction is refused.
    """
    gc = growth_class(g)
    if not gc.loglog_int:
        raise NotAMajorant(
            "radial weight lacks the loglog-integrability needed for a majorant"
        )
    return _validate_majorant(Majorant(kind="from_g", g=g, domain=2.0))


def majorant_constant(c: float) -> Majorant:
    """Constant candidates are never majorants: no blow-up at 0."""
    raise NotAMajorant(f"constant F = {c} does not tend to infinity at 0")


def log_majorant_integral(f: Majorant, a: float, b: float) -> float:
    """int_a^b log F(t) dt (a may be 0; used for tail certificates)."""
    if not 0.0 <= a < b <= f.domain:
        raise InputError("integration bounds must satisfy 0 <= a < b <= domain")

    def integrand(t: float) -> float:
        return float(log_majorant_values(f, np.array([t]))[0])

    val, _ = quad(integrand, a, b, limit=200)
    return float(val)


__all__ = [
    "AdmissibilityReport",
    "D_MIN",
    "GrowthClassReport",
    "Majorant",
    "MomentSequence",
    "MomentValue",
    "NotAdmissible",
    "ReconstructedWeight",
    "admissible_to_g",
    "explicit_moments",
    "growth_class",
    "is_admissible",
    "log_majorant_integral",
    "log_majorant_values",
    "majorant_constant",
    "majorant_from_g",
    "majorant_one_over_t",
    "majorant_values",
    "moment_function",
    "moments_of_g",
]
