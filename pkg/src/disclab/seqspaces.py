"""Moment-weighted coefficient spaces and rapid-spectral-decay tests.

A moment sequence M turns Taylor coefficients into three norms:

    weighted        ||f||^2      = sum M_n |f_n|^2
    dual quadratic  ||f||_*^2    = sum |f_n|^2 / M_n
    dual uniform    ||f||_{1,*}  = sup |f_n| / M_n

with the Cauchy pairing <f, g> = sum f_n conj(g_n) tying the first two
together.  All sums run in log space; moment sequences routinely hold
values like exp(-2 sqrt(600)) whose reciprocals overflow float64.
A divergent dual norm comes back as ``inf`` rather than an exception:
"f is not in the space" is an answer, not a failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import logsumexp

from .errors import InputError
from .moments import MomentSequence
from .radial import RadialWeight, radial_values
from .series import TaylorSeries, from_array

#: smallest admissible sqrt(n)-decay rate for an rsd verdict
C_MIN = 0.05
#: fewest usable tail points before the verdict is withheld
MIN_WINDOW_POINTS = 8


class DegreeMismatch(InputError):
    """The series degree exceeds what the moment sequence covers."""


@dataclass(frozen=True)
class RsdVerdict:
    """Outcome of the sqrt(n)-decay test on a coefficient tail."""

    verdict: str  # rsd | notRsd | inconclusive
    fitted_c: float
    fitted_sigma: float
    tail_window: tuple[int, int]
    points_used: int

    def __post_init__(self) -> None:
        if self.verdict not in ("rsd", "notRsd", "inconclusive"):
            raise InputError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "rsd" and not self.fitted_c >= C_MIN:
            raise InputError("rsd verdict requires fitted_c >= c_min")


def _log_abs_coeffs(m: MomentSequence, f: TaylorSeries) -> np.ndarray:
    if f.degree_bound > len(m.log_values) - 1:
        raise DegreeMismatch(
            f"series degree {f.degree_bound} exceeds moment range "
            f"{len(m.log_values) - 1}"
        )
    a = np.abs(f.array())
    with np.errstate(divide="ignore"):
        return np.log(a)


def h2_norm(m: MomentSequence, f: TaylorSeries) -> float:
    """sqrt( sum M_n |f_n|^2 )."""
    la = _log_abs_coeffs(m, f)
    lm = np.asarray(m.log_values)[: la.size]
    finite = np.isfinite(la)
    if not finite.any():
        return 0.0
    return float(math.exp(0.5 * logsumexp(2.0 * la[finite] + lm[finite])))


def h2_star_norm(m: MomentSequence, f: TaylorSeries) -> float:
    """sqrt( sum |f_n|^2 / M_n ); inf when the sum overflows."""
    la = _log_abs_coeffs(m, f)
    lm = np.asarray(m.log_values)[: la.size]
    finite = np.isfinite(la)
    if not finite.any():
        return 0.0
    ls = float(logsumexp(2.0 * la[finite] - lm[finite]))
    return math.inf if ls > 1400.0 else float(math.exp(0.5 * ls))


def h1_star_norm(m: MomentSequence, f: TaylorSeries) -> float:
    """sup |f_n| / M_n; inf when the sup overflows."""
    la = _log_abs_coeffs(m, f)
    lm = np.asarray(m.log_values)[: la.size]
    finite = np.isfinite(la)
    if not finite.any():
        return 0.0
    top = float(np.max(la[finite] - lm[finite]))
    return math.inf if top > 700.0 else float(math.exp(top))


def pairing(f: TaylorSeries, g: TaylorSeries) -> complex:
    """<f, g> = sum f_n conj(g_n) (finite series: the radial limit is the sum)."""
    fa, ga = f.array(), g.array()
    n = min(fa.size, ga.size)
    return complex(np.sum(fa[:n] * np.conj(ga[:n])))


@dataclass(frozen=True)
class ToeplitzResult:
    series: TaylorSeries
    tail_error: float


def toeplitz_coanalytic(h: TaylorSeries, f: TaylorSeries, n_out: int) -> ToeplitzResult:
    """Co-analytic Toeplitz action: out_n = sum_k conj(h_k) f_{n+k}.

    f is treated as exactly its finite coefficient list.  When the
    requested output degree needs f beyond its declared degree, those
    terms are dropped and ``tail_error`` reports the l1(h) x trailing
    |f| proxy for what the truncation may hide; otherwise it is 0.
    """
    if n_out < 0:
        raise InputError("need n_out >= 0")
    ha, fa = h.array(), f.array()
    out = np.zeros(n_out + 1, dtype=complex)
    for n in range(n_out + 1):
        kmax = min(ha.size - 1, fa.size - 1 - n)
        if kmax >= 0:
            out[n] = np.sum(np.conj(ha[: kmax + 1]) * fa[n : n + kmax + 1])
    err = 0.0
    if n_out + h.degree_bound > f.degree_bound:
        tail = np.abs(fa[-max(1, fa.size // 10):])
        err = float(np.sum(np.abs(ha)) * np.max(tail))
    return ToeplitzResult(from_array(out, n_out), err)


#: envelope samples taken across the tail window
RSD_BINS = 16


def rsd_classify(f: TaylorSeries, window: tuple[int, int] | None = None,
                 c_min: float = C_MIN) -> RsdVerdict:
    """Does the coefficient tail decay like exp(-c sqrt(n)) with c >= c_min?

    The decay condition is about the modulus envelope, so the window is
    split into bins and only each bin's maximum enters the fit
    -log|f_n| = c sqrt(n) + q log n + b.  (Raw points would leak the
    -log spikes of oscillatory moduli into the sqrt(n) coefficient and
    flip verdicts.)  An rsd verdict additionally requires the fitted c
    to clear c_min by two standard errors: rough spectra — indicator
    densities, resonant self-similar data — scatter their bin maxima
    enough that a point estimate alone would manufacture decay out of
    noise.  Zero coefficients are skipped; an all-zero tail is rapid
    decay with an infinite rate.
    """
    n_top = f.degree_bound
    if window is None:
        window = (max(1, n_top // 2), n_top)
    lo, hi = max(1, int(window[0])), int(window[1])
    if not 0 < lo <= hi <= n_top:
        raise InputError(f"window {window} not within degrees 1..{n_top}")
    a = np.abs(f.array())[lo : hi + 1]
    ns = np.arange(lo, hi + 1, dtype=float)
    keep = a > 0.0
    if not keep.any():
        return RsdVerdict("rsd", math.inf, 0.0, (lo, hi), 0)
    ns, a = ns[keep], a[keep]

    bn, bv = [], []
    for cn, cv in zip(np.array_split(ns, RSD_BINS), np.array_split(a, RSD_BINS)):
        if cn.size:
            i = int(np.argmax(cv))
            bn.append(cn[i])
            bv.append(cv[i])
    if len(bn) < MIN_WINDOW_POINTS:
        return RsdVerdict("inconclusive", 0.0, 0.0, (lo, hi), len(bn))
    bn_a, bv_a = np.array(bn), np.array(bv)

    basis = np.column_stack([np.sqrt(bn_a), np.log(bn_a), np.ones_like(bn_a)])
    y = -np.log(bv_a)
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    resid = y - basis @ coef
    sigma2 = float(resid @ resid) / max(len(bn) - 3, 1)
    var_c = sigma2 * np.linalg.inv(basis.T @ basis)[0, 0]
    sigma_c = math.sqrt(max(float(var_c), 0.0))
    fitted = max(float(coef[0]), 0.0)
    verdict = "rsd" if fitted - 2.0 * sigma_c >= c_min else "notRsd"
    return RsdVerdict(verdict, fitted, sigma_c, (lo, hi), len(bn))


def norm_identity_check(g: RadialWeight, f: TaylorSeries) -> float:
    """Relative gap between the area integral and the coefficient sum.

    Left side: int_D |f|^2 G(1 - |z|) dA with area normalized to 1,
    by exact trapezoid in the angle (trigonometric polynomial) and
    adaptive radial quadrature.  Right side: sum M_n |f_n|^2 with
    M_n = 2 int_0^1 G(u) (1-u)^(2n+1) du.
    """
    from .moments import moments_of_g

    n_deg = f.degree_bound
    m = moments_of_g(g, max(n_deg, 1))
    rhs = h2_norm(m, f) ** 2

    q = 1 << max(4, int(math.ceil(math.log2(8 * max(n_deg, 1)))))
    thetas = 2.0 * np.pi * np.arange(q) / q

    def ring_mean(r: float) -> float:
        vals = f.evaluate(r * np.exp(1j * thetas))
        return float(np.mean(np.abs(vals) ** 2))

    def integrand(r: float) -> float:
        return 2.0 * r * ring_mean(r) * float(radial_values(g, np.array([1.0 - r]))[0])

    lhs, _ = quad(integrand, 0.0, 1.0, limit=200,
                  points=[1.0 - 1e-6, 1.0 - 1e-3, 0.5])
    return abs(lhs - rhs) / max(rhs, 1e-300)


@dataclass(frozen=True)
class EmbeddingReport:
    supported: bool
    p: float
    bound_constant: float
    max_first_ratio: float
    max_second_ratio: float
    samples: int


def embedding_check(m: MomentSequence, p: float, samples: int = 100,
                    seed: int = 0) -> EmbeddingReport:
    """Sample the chain: dual-uniform(M^p) ball -> dual-quadratic(M) ->
    dual-uniform(M^1/2), with the explicit (sum M_n^{2p-1})^{1/2} constant.

    Only meaningful for p > 1/2 (the constant's series loses its decay
    at p = 1/2); smaller p is reported unsupported, not estimated.
    """
    if not p > 0.5:
        return EmbeddingReport(False, p, math.inf, math.nan, math.nan, 0)
    n_top = len(m.log_values) - 1
    lm = np.asarray(m.log_values)
    bound = float(math.exp(0.5 * logsumexp((2.0 * p - 1.0) * lm)))
    mp = m.power(p)
    mh = m.power(0.5)
    rng = np.random.default_rng(seed)
    worst1 = 0.0
    worst2 = 0.0
    for _ in range(samples):
        deg = int(rng.integers(0, n_top + 1))
        coeffs = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
        fr = from_array(coeffs, deg)
        scale = h1_star_norm(mp, fr)
        if scale == 0.0 or not math.isfinite(scale):
            continue
        f = from_array(coeffs / scale, deg)
        h2s = h2_star_norm(m, f)
        h1h = h1_star_norm(mh, f)
        worst1 = max(worst1, h2s / bound)
        worst2 = max(worst2, h1h / max(h2s, 1e-300))
    return EmbeddingReport(True, p, bound, worst1, worst2, samples)


__all__ = [
    "C_MIN",
    "DegreeMismatch",
    "EmbeddingReport",
    "MIN_WINDOW_POINTS",
    "RsdVerdict",
    "ToeplitzResult",
    "embedding_check",
    "h1_star_norm",
    "h2_norm",
    "h2_star_norm",
    "norm_identity_check",
    "pairing",
    "rsd_classify",
    "toeplitz_coanalytic",
]
