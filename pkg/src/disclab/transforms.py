"""Cauchy, Poisson, and Herglotz integrals; inner/outer factors; Clark map.

All transforms integrate boundary measures against disk kernels:

    Cauchy    C_nu(z) = int 1/(1 - conj(x) z) dnu(x)
    Poisson   P_nu(z) = int (1-|z|^2)/|x-z|^2 dnu(x)
    Herglotz  H_nu(z) = int (x+z)/(x-z) dnu(x)

with x = e^{i theta} and the measure split into atoms (exact sums),
densities (adaptive quadrature / trapezoid on sample grids), and
self-similar singular parts.  The self-similar parts are handled through
their characteristic function: the IFS structure gives

    int e^{-i xi theta} dnu = mass * e^{-i xi start} *
        prod_k (1/a) sum_j exp(-i xi rho^k o_j)

(a rapidly converging product), and the Herglotz kernel's geometric
expansion (x+z)/(x-z) = 1 + 2 sum_{n>=1} e^{-in theta} z^n turns the
transform into a certified power series -- no deep recursion over cells.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import IllConditioned, InputError, NumericalFailure
from .geometry import TWO_PI, ArcSet, normalize_angle
from .measures import CircleMeasure, ComplexDensity, SelfSimilarPart, _children
from .series import TaylorSeries, from_array
from .weights import integral as weight_integral, weight_values

#: points closer than this to the singular support are rejected, not evaluated
SUPPORT_REJECT = 1e-8
#: strict interior enforcement for disk points
DISK_MARGIN = 1e-12


class RejectDensity(InputError):
    """The measure has an absolutely continuous part where none is allowed."""


class MassNotOne(InputError):
    """Clark correspondence requires a probability measure."""


class DivergentLogModulus(InputError):
    """Boundary log-modulus fails certified integrability."""


@dataclass(frozen=True)
class DiskPoint:
    re: float
    im: float

    def __post_init__(self) -> None:
        if math.hypot(self.re, self.im) > 1.0 - DISK_MARGIN:
            raise InputError(
                f"disk points must satisfy |z| <= 1 - {DISK_MARGIN}; "
                f"got |z| = {math.hypot(self.re, self.im):.17f}"
            )

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


def as_disk(z) -> complex:
    """Validate and convert a DiskPoint / complex to a complex interior point."""
    if isinstance(z, DiskPoint):
        return z.z
    w = complex(z)
    if abs(w) > 1.0 - DISK_MARGIN:
        raise InputError(f"point must lie strictly inside the disk, |z| = {abs(w):.17f}")
    return w


# -- self-similar characteristic function ----------------------------------


def _char_relative(part: SelfSimilarPart, xis: np.ndarray, tol: float = 1e-15) -> np.ndarray:
    """E[e^{-i xi s}] for the unit-mass generator on [0, L], s relative.

    Product over generations; generation k contributes
    (1/a) sum_j exp(-i xi rho^k o_j) with o_j = j * L(1-rho)/(a-1).
    Truncation after K terms errs by at most sum_{k>K} |xi| L rho^k.
    """
    xis = np.asarray(xis, dtype=float)
    length = part.base.length
    a = part.arity
    step = length * (1.0 - part.ratio) / (a - 1)
    out = np.ones(xis.shape, dtype=complex)
    xmax = float(np.max(np.abs(xis))) if xis.size else 0.0
    if xmax == 0.0:
        return out
    # smallest K with L*xmax*rho^{K+1}/(1-rho) < tol
    kmax = max(1, int(math.ceil(
        math.log(tol * (1.0 - part.ratio) / (length * xmax + tol)) / math.log(part.ratio)
    )))
    js = np.arange(a)
    scale = 1.0
    for _ in range(kmax + 1):
        phases = np.exp(-1j * np.outer(xis, js * (step * scale)))
        out *= phases.mean(axis=1)
        scale *= part.ratio
    return out


def selfsim_fourier(part: SelfSimilarPart, ns) -> np.ndarray:
    """hat nu(n) = int e^{-in theta} dnu for the self-similar part."""
    ns = np.asarray(ns, dtype=float)
    rel = _char_relative(part, ns)
    return part.mass * np.exp(-1j * ns * part.base.start) * rel


def _selfsim_power_series(part: SelfSimilarPart, z: complex, tol: float = 1e-12) -> complex:
    """2 sum_{n>=1} hat nu(n) z^n, the fluctuating half of the Herglotz value."""
    r = abs(z)
    if r == 0.0:
        return 0.0 + 0.0j
    if r > 1.0 - 1e-6:
        raise NumericalFailure(
            "self-similar transform evaluation too close to the boundary "
            f"(|z| = {r:.9f} > 1 - 1e-6); the power series cannot be certified"
        )
    n_terms = int(math.log(tol * (1.0 - r) / (2.0 * part.mass + tol)) / math.log(r)) + 1
    ns = np.arange(1, max(n_terms, 2))
    coeffs = selfsim_fourier(part, ns)
    zpow = z ** ns
    return 2.0 * complex(np.sum(coeffs * zpow))


# -- density integrals ------------------------------------------------------


def _density_transform(density, kernel, singular_hint: float | None) -> complex:
    """(1/2pi) int density(theta) * kernel(theta) dtheta, certified."""
    if isinstance(density, ComplexDensity):
        samples = np.asarray(density.samples, dtype=complex)
        m = samples.size
        thetas = TWO_PI * np.arange(m) / m
        kv = kernel(thetas)
        full = np.mean(samples * kv)
        half = np.mean(samples[::2] * kv[::2])
        if abs(full - half) > 1e-6 * max(1.0, abs(full)):
            raise NumericalFailure(
                "sampled density is too coarse for this evaluation point"
            )
        return complex(full)
    pts = sorted(
        {normalize_angle(p) for p in getattr(density, "singular_points", ())}
        | {normalize_angle(p) for p in getattr(density, "points", ())}
        | ({normalize_angle(singular_hint)} if singular_hint is not None else set())
    )
    pts = [p for p in pts if 0.0 < p < TWO_PI]

    def real_part(t: float) -> float:
        return float(
            (weight_values(density, np.array([t])) * kernel(np.array([t]))).real[0]
        )

    def imag_part(t: float) -> float:
        return float(
            (weight_values(density, np.array([t])) * kernel(np.array([t]))).imag[0]
        )

    re, _ = quad(real_part, 0.0, TWO_PI, points=pts or None, limit=300)
    im, _ = quad(imag_part, 0.0, TWO_PI, points=pts or None, limit=300)
    return complex(re, im) / TWO_PI


def _split_transform(nu: CircleMeasure, z: complex, kernel, selfsim_term) -> complex:
    """Assemble atoms + density + self-similar parts for one kernel."""
    total = 0.0 + 0.0j
    if nu.atoms:
        angles = np.array([a for a, _ in nu.atoms])
        masses = np.array([m for _, m in nu.atoms])
        total += complex(np.sum(masses * kernel(angles)))
    if nu.density is not None:
        total += _density_transform(nu.density, kernel, normalize_angle(cmath.phase(z)) if z != 0 else None)
    for part in nu.cantor:
        total += selfsim_term(part, z)
    return total


# -- the transform zoo -------------------------------------------------------


def herglotz_integral(nu: CircleMeasure, z) -> complex:
    """H_nu(z) = int (x+z)/(x-z) dnu(x)."""
    w = as_disk(z)

    def kernel(thetas: np.ndarray) -> np.ndarray:
        x = np.exp(1j * thetas)
        return (x + w) / (x - w)

    def selfsim(part: SelfSimilarPart, zz: complex) -> complex:
        return part.mass + _selfsim_power_series(part, zz)

    return _split_transform(nu, w, kernel, selfsim)


def poisson_integral(nu: CircleMeasure, z):
    """P_nu(z) = int (1-|z|^2)/|x-z|^2 dnu(x); real for real measures."""
    w = as_disk(z)

    def kernel(thetas: np.ndarray) -> np.ndarray:
        x = np.exp(1j * thetas)
        return (1.0 - abs(w) ** 2) / np.abs(x - w) ** 2

    def selfsim(part: SelfSimilarPart, zz: complex) -> complex:
        return part.mass + complex(_selfsim_power_series(part, zz)).real

    val = _split_transform(nu, w, kernel, selfsim)
    if nu.is_positive():
        return float(val.real)
    return val


def cauchy_transform(nu: CircleMeasure, z) -> complex:
    """C_nu(z) = int 1/(1 - conj(x) z) dnu(x)."""
    w = as_disk(z)

    def kernel(thetas: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 - np.exp(-1j * thetas) * w)

    def selfsim(part: SelfSimilarPart, zz: complex) -> complex:
        # C = sum_{n>=0} hat nu(n) z^n = (H + mass) / 2 for this part
        return part.mass + 0.5 * _selfsim_power_series(part, zz)

    return _split_transform(nu, w, kernel, selfsim)


def cauchy_coefficients(nu: CircleMeasure, n_max: int) -> TaylorSeries:
    """nu_n = int e^{-in theta} dnu for n = 0..n_max.

    Atoms and self-similar parts are exact (sums / characteristic
    products); densities use a uniform trapezoid at 2^q >= 8*n_max
    nodes, which is spectrally accurate for smooth periodic data, with
    a doubled-grid error check.
    """
    if n_max < 0:
        raise InputError("need n_max >= 0")
    ns = np.arange(n_max + 1)
    out = np.zeros(n_max + 1, dtype=complex)
    if nu.atoms:
        for angle, mass in nu.atoms:
            out += mass * np.exp(-1j * ns * angle)
    for part in nu.cantor:
        out += selfsim_fourier(part, ns)
    if nu.density is not None:
        if isinstance(nu.density, ComplexDensity):
            samples = np.asarray(nu.density.samples, dtype=complex)
            m = samples.size
            if m < 2 * n_max:
                raise InputError(
                    f"{m} samples cannot resolve coefficients up to n = {n_max}"
                )
            coef = np.fft.fft(samples) / m
            out += coef[ns % m]
        elif getattr(nu.density, "family", None) == "indicator":
            # exact: int_a^b e^{-in t} dt/2pi; trapezoid grids cannot see
            # a discontinuous density's slow spectrum reliably
            for a, bnd in nu.density.arcs.intervals:
                out[0] += (bnd - a) / TWO_PI
                nn = ns[1:].astype(float)
                out[1:] += (np.exp(-1j * nn * a) - np.exp(-1j * nn * bnd)) / (
                    TWO_PI * 1j * nn
                )
        else:
            q = max(8, 1 << int(math.ceil(math.log2(max(8 * max(n_max, 1), 8)))))
            thetas = TWO_PI * np.arange(q) / q
            vals = weight_values(nu.density, thetas).astype(complex)
            coef = np.fft.fft(vals) / q
            vals2 = vals[:: 2]
            coef2 = np.fft.fft(vals2) / (q // 2)
            drift = np.max(np.abs(coef[: n_max + 1] - coef2[: n_max + 1]))
            if drift > 1e-8 * max(1.0, float(np.max(np.abs(coef[: n_max + 1])))):
                raise NumericalFailure(
                    "density spectrum did not stabilize under grid doubling"
                )
            out += coef[ns]
    return from_array(out, n_max)


def singular_support_distance(nu: CircleMeasure, z: complex, depth: int = 12) -> float:
    """Lower bound for dist(z, supp nu) (atoms + self-similar parts)."""
    best = math.inf
    if nu.atoms:
        angles = np.array([a for a, _ in nu.atoms])
        best = min(best, float(np.min(np.abs(np.exp(1j * angles) - z))))
    for part in nu.cantor:
        cells = [(part.base.start, part.base.start + part.base.length)]
        for _ in range(depth):
            nxt = []
            for lo, hi in cells:
                nxt.extend(_children(lo, hi, part))
            cells = nxt
            if len(cells) > 1 << 14:
                break
        centers = np.array([(lo + hi) / 2 for lo, hi in cells])
        half = (cells[0][1] - cells[0][0]) / 2.0
        d = np.abs(np.exp(1j * centers) - z) - half
        best = min(best, float(np.min(d)))
    return best


def singular_inner(nu: CircleMeasure, z) -> complex:
    """S_nu(z) = exp(-H_nu(z)) for positive singular nu."""
    if nu.density is not None:
        raise RejectDensity(
            "singular inner functions take purely singular measures; "
            "split off the absolutely continuous part first"
        )
    if not nu.is_positive():
        raise InputError("singular inner functions need positive measures")
    w = as_disk(z)
    if singular_support_distance(nu, w) < SUPPORT_REJECT:
        raise InputError(
            f"evaluation within {SUPPORT_REJECT} of the singular support is "
            "rejected (essential singularity)"
        )
    return cmath.exp(-herglotz_integral(nu, w))


def outer_from_log_modulus(phi, z, *, singular_points=(), check_integrable=True) -> complex:
    """exp( int (x+z)/(x-z) phi(x) dm(x) ) for a real boundary function phi.

    phi is a vectorized callable of the angle.  Its negative part must be
    integrable; certified by adaptive quadrature before evaluating.
    """
    w = as_disk(z)
    pts = sorted({normalize_angle(p) for p in singular_points})
    pts = [p for p in pts if 0.0 < p < TWO_PI]
    if check_integrable:
        with warnings.catch_warnings():
            # a divergent integrand is the expected failure mode here, and
            # the abserr gate below is the actual certificate — the
            # subdivision-limit warning adds nothing
            warnings.simplefilter("ignore", IntegrationWarning)
            absval, abserr = quad(
                lambda t: abs(float(phi(np.array([t]))[0])),
                0.0,
                TWO_PI,
                points=pts or None,
                limit=300,
            )
        if not math.isfinite(absval) or absval > 1e8 or abserr > 1e-4 * max(1.0, absval):
            raise DivergentLogModulus(
                "boundary log-modulus failed certified integrability"
            )

    def re_int(t: float) -> float:
        x = cmath.exp(1j * t)
        return float(phi(np.array([t]))[0]) * ((x + w) / (x - w)).real

    def im_int(t: float) -> float:
        x = cmath.exp(1j * t)
        return float(phi(np.array([t]))[0]) * ((x + w) / (x - w)).imag

    re, _ = quad(re_int, 0.0, TWO_PI, points=pts or None, limit=300)
    im, _ = quad(im_int, 0.0, TWO_PI, points=pts or None, limit=300)
    h = complex(re, im) / TWO_PI
    if h.real > 700.0:
        raise NumericalFailure("outer factor overflows at this point")
    return cmath.exp(h)


def blaschke(zeros, z) -> complex:
    """Finite Blaschke product with the given zeros (with multiplicity)."""
    w = as_disk(z)
    out = 1.0 + 0.0j
    for a in zeros:
        aw = as_disk(a)
        if aw == 0:
            out *= w
        else:
            out *= (abs(aw) / aw) * (aw - w) / (1.0 - aw.conjugate() * w)
    return out


def clark_to_b(nu: CircleMeasure, z) -> complex:
    """b = (H_nu - 1)/(H_nu + 1) for a positive probability measure nu.

    The mass-1 normalization pins b(0) = 0; anything else is refused so
    the caller renormalizes deliberately rather than silently.
    """
    if not nu.is_positive():
        raise InputError("Clark correspondence needs a positive measure")
    mass = nu.atom_mass() + sum(p.mass for p in nu.cantor)
    err = 0.0
    if nu.density is not None:
        v, e = weight_integral(nu.density, ArcSet.full_circle())
        mass += v
        err += e
    if abs(mass - 1.0) > 1e-10 + err:
        raise MassNotOne(
            f"Clark correspondence needs mass 1; got {mass:.12f} (+/- {err:.1e})"
        )
    h = herglotz_integral(nu, z)
    return (h - 1.0) / (h + 1.0)


def taylor_of(f, n_max: int, r: float) -> TaylorSeries:
    """Taylor coefficients of a disk-analytic evaluator by DFT on |z| = r.

    Samples on 2^q >= 8*n_max points, divides by r^n.  The r^{-n}
    rescaling amplifies rounding, so r^{-n_max} > 1e12 is refused.
    """
    if not 0.0 < r < 1.0:
        raise InputError("radius must lie in (0, 1)")
    if n_max < 0:
        raise InputError("need n_max >= 0")
    cond = r ** (-n_max)
    if cond > 1e12:
        raise IllConditioned(
            f"r^-N = {cond:.3e} exceeds 1e12; raise r or lower N"
        )
    m = 1 << max(3, int(math.ceil(math.log2(max(8 * max(n_max, 1), 8)))))
    thetas = TWO_PI * np.arange(m) / m
    zs = r * np.exp(1j * thetas)
    try:
        vals = np.asarray(f(zs), dtype=complex)
        if vals.shape != zs.shape:
            raise TypeError
    except Exception:
        vals = np.array([complex(f(z)) for z in zs])
    coef = np.fft.fft(vals) / m
    ns = np.arange(n_max + 1)
    out = coef[ns] * r ** (-ns.astype(float))
    return from_array(out, n_max)


# -- inner-outer symbol -------------------------------------------------------


@dataclass(frozen=True)
class BSymbol:
    """Symbol b = B * S_nu * U with |b| <= 1 encoded by phi = log|b| <= 0.

    The outer factor can be supplied two ways:

    * ``outer_log_modulus``: a vectorized callable theta -> phi <= 0
      (pointwise evaluation only); or
    * ``defect_weight``: the boundary defect Delta_b = sqrt(1 - |b|^2)
      as a structured :class:`~disclab.weights.Weight`, from which
      phi = log|b| = (1/2) log(1 - Delta^2) is derived.  Only this
      structured form supports core-set analysis of the defect (the
      decision procedures need certified log-integrals, which a bare
      callable cannot provide).

    ``declared_unimodular`` marks where |b| = 1 by construction, so the
    defect vanishes there exactly instead of through rounding.
    """

    blaschke_zeros: tuple[complex, ...] = ()
    singular: CircleMeasure | None = None
    outer_log_modulus: object | None = None
    defect_weight: object | None = None
    declared_unimodular: ArcSet = field(default_factory=ArcSet.full_circle)

    def __post_init__(self) -> None:
        if self.singular is not None and self.singular.density is not None:
            raise RejectDensity("the singular factor of a symbol must have no density")
        if self.outer_log_modulus is not None and self.defect_weight is not None:
            raise InputError(
                "give the outer factor as a log-modulus callable or as a "
                "defect weight, not both"
            )

    def value(self, z) -> complex:
        w = as_disk(z)
        out = blaschke(self.blaschke_zeros, w)
        if self.singular is not None and (
            self.singular.atoms or self.singular.cantor
        ):
            out *= singular_inner(self.singular, w)
        if self.outer_log_modulus is not None or self.defect_weight is not None:
            out *= outer_from_log_modulus(
                lambda t: boundary_log_modulus(self, t), w, check_integrable=False
            )
        return out


def boundary_log_modulus(b: BSymbol, thetas) -> np.ndarray:
    """phi = log|b| on the circle: 0 a.e. unless an outer factor says less."""
    t = np.atleast_1d(np.asarray(thetas, dtype=float))
    if b.defect_weight is not None:
        d = np.clip(weight_values(b.defect_weight, t), 0.0, 1.0)
        with np.errstate(divide="ignore"):
            return 0.5 * np.log1p(-(d * d))
    if b.outer_log_modulus is None:
        return np.zeros_like(t)
    phi = np.asarray(b.outer_log_modulus(t), dtype=float)
    if np.any(phi > 1e-12):
        raise InputError("log|b| must be <= 0 on the boundary")
    return np.minimum(phi, 0.0)


def delta_b_values(b: BSymbol, thetas) -> np.ndarray:
    """Delta_b = sqrt(1 - |b|^2) on the boundary; exact 0 where declared."""
    t = np.atleast_1d(np.asarray(thetas, dtype=float))
    if b.defect_weight is not None:
        vals = np.clip(weight_values(b.defect_weight, t), 0.0, 1.0)
    else:
        phi = boundary_log_modulus(b, t)
        vals = np.sqrt(-np.expm1(2.0 * phi))
    uni = np.array([b.declared_unimodular.contains(v) for v in t])
    vals[uni] = 0.0
    return vals


__all__ = [
    "BSymbol",
    "DiskPoint",
    "DivergentLogModulus",
    "MassNotOne",
    "RejectDensity",
    "SUPPORT_REJECT",
    "as_disk",
    "blaschke",
    "boundary_log_modulus",
    "cauchy_coefficients",
    "cauchy_transform",
    "clark_to_b",
    "delta_b_values",
    "herglotz_integral",
    "outer_from_log_modulus",
    "poisson_integral",
    "selfsim_fourier",
    "singular_inner",
    "singular_support_distance",
    "taylor_of",
]
