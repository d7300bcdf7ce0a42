"""Dyadic obstacle-constrained approximation of singular measures.

Given a singular measure nu that charges no mass to core(w), each dyadic
cell with nu(d_j) > 0 receives a bounded bump supported off the core,
squeezed under the obstacle log+(1/w), with exactly the cell's mass:

    0 <= f_n <= log+(1/w),   int_{d_j} f_n dm = nu(d_j).

The sequence f_n dm converges weak-star to nu as the cells shrink.  The
exp(H/2) lift of such an f is the numerical cyclicity witness: built for
the doubled measure, it converges pointwise to 1/S_nu.

Everything here works with log w, never w: next to a singular point the
weight passes exp(-10^3) long before the cell does, so the threshold
sets {w > c} must be cut as {log w > -lambda} or they are invisible to
float64.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .core_residual import core_set, carrier_set
from .errors import InputError, MassMatchFailure, NoObstaclePoint
from .geometry import TWO_PI, Arc, ArcSet, normalize_angle
from .measures import CircleMeasure, SelfSimilarPart, _children
from .oracle import split_mass
from .transforms import as_disk, selfsim_fourier, singular_inner
from .weights import Weight, log_weight_values

DEFAULT_CORE_LEVEL = 14
DEFAULT_MASS_TOL = 1e-10
#: probe resolution for locating threshold crossings inside one interval
CROSSING_PROBES = 4097
BISECT_ITERS = 60


@dataclass(frozen=True)
class ObstaclePiece:
    """One support interval with its value rule.

    ``rule`` is ``"constant"`` (value ``const``, used where w vanishes
    identically) or ``"logInvW"`` (value log+(1/w) pointwise).
    Intervals live on the lift: ``lo < hi`` with ``hi`` possibly past
    2*pi for pieces straddling the seam.
    """

    lo: float
    hi: float
    rule: str
    const: float = 0.0


@dataclass(frozen=True)
class ObstacleFunction:
    pieces: tuple[ObstaclePiece, ...]
    level: int
    weight: Weight
    cell_masses: tuple[tuple[int, float], ...]
    mass_tol: float
    deep_mass_error: float  # self-similar mass assigned past recursion depth


def _log_plus_inv(w: Weight, thetas) -> np.ndarray:
    vals = -log_weight_values(w, thetas)
    return np.maximum(vals, 0.0)


def obstacle_values(f: ObstacleFunction, thetas) -> np.ndarray:
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.zeros(th.shape)
    for p in f.pieces:
        rel = np.mod(th - p.lo, TWO_PI)
        inside = rel < (p.hi - p.lo)
        if not inside.any():
            continue
        if p.rule == "constant":
            out[inside] = p.const
        else:
            out[inside] = _log_plus_inv(f.weight, th[inside])
    return out


def _interval_log_plus_integral(w: Weight, lo: float, hi: float) -> float:
    """(1/2pi) int_lo^hi log+(1/w), for intervals avoiding w's zeros."""
    if hi <= lo:
        return 0.0
    val, _ = quad(
        lambda t: float(_log_plus_inv(w, np.array([t]))[0]),
        lo, hi, limit=200, epsabs=1e-14, epsrel=1e-13,
    )
    return val / TWO_PI


def _cell_masses(nu: CircleMeasure, level: int,
                 max_depth: int = 40) -> tuple[dict[int, float], float]:
    """nu-mass per half-open dyadic cell [j*h, (j+1)*h); self-similar
    parts are recursed until each branch fits a single cell, mass past
    the depth cap booked to the midpoint cell and to the error term."""
    n_cells = 1 << level
    h = TWO_PI / n_cells
    masses: dict[int, float] = {}
    deep_err = 0.0

    def add(j: int, m: float) -> None:
        j %= n_cells
        masses[j] = masses.get(j, 0.0) + m

    for angle, mass in nu.atoms:
        add(int(normalize_angle(angle) // h), mass)
    for part in nu.cantor:
        base = part.base
        stack = [(base.start, base.start + base.length, part.mass, 0)]
        while stack:
            lo, hi, m, depth = stack.pop()
            jlo = int(lo // h)
            jhi = int((hi - 1e-15 * max(1.0, hi)) // h)
            if jlo == jhi:
                add(jlo, m)
            elif depth >= max_depth:
                add(int(((lo + hi) / 2) // h), m)
                deep_err += m
            else:
                for clo, chi in _children(lo, hi, part):
                    stack.append((clo, chi, m / part.arity, depth + 1))
    return masses, deep_err


def _components_with_wrap(intervals) -> list[tuple[float, float]]:
    """Interval list with a seam-straddling pair merged across 0 == 2pi."""
    ivs = sorted(intervals)
    if len(ivs) >= 2 and ivs[0][0] <= 1e-15 and abs(ivs[-1][1] - TWO_PI) <= 1e-12:
        first, last = ivs[0], ivs[-1]
        ivs = ivs[1:-1] + [(last[0] - TWO_PI, first[1])]
    return ivs


def _super_level_intervals(w: Weight, lo: float, hi: float,
                           lam: float) -> list[tuple[float, float]]:
    """Components of {log w > -lam} inside (lo, hi), crossings bisected."""
    if hi <= lo:
        return []
    ts = np.linspace(lo, hi, CROSSING_PROBES)
    above = log_weight_values(w, ts) > -lam

    def refine(a: float, b: float, a_above: bool) -> float:
        for _ in range(80):
            mid = 0.5 * (a + b)
            if (float(log_weight_values(w, np.array([mid]))[0]) > -lam) == a_above:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    out: list[tuple[float, float]] = []
    start: float | None = float(ts[0]) if above[0] else None
    for i in range(1, ts.size):
        if above[i] == above[i - 1]:
            continue
        x = refine(float(ts[i - 1]), float(ts[i]), bool(above[i - 1]))
        if above[i]:
            start = x
        else:
            if start is not None:
                out.append((start, x))
            start = None
    if start is not None:
        out.append((start, float(ts[-1])))
    return [(a, b) for a, b in out if b > a]


def _grow_from_left(w: Weight, region: list[tuple[float, float]],
                    target: float, tol: float) -> list[tuple[float, float]]:
    """Sub-region [left end -> t] with log+(1/w)-integral = target +/- tol."""
    kept: list[tuple[float, float]] = []
    acc = 0.0
    for a, b in region:
        piece = _interval_log_plus_integral(w, a, b)
        if acc + piece < target - 0.5 * tol:
            kept.append((a, b))
            acc += piece
            continue
        lo_t, hi_t = a, b
        for _ in range(BISECT_ITERS):
            mid = 0.5 * (lo_t + hi_t)
            if acc + _interval_log_plus_integral(w, a, mid) < target:
                lo_t = mid
            else:
                hi_t = mid
        t = 0.5 * (lo_t + hi_t)
        got = acc + _interval_log_plus_integral(w, a, t)
        if abs(got - target) > tol:
            raise MassMatchFailure(
                f"endpoint bisection stalled at |{got:.3e} - {target:.3e}|"
                f" > {tol:.1e}"
            )
        kept.append((a, t))
        return kept
    raise MassMatchFailure(
        f"region holds {acc:.6e} < target {target:.6e}; threshold too high"
    )


def _build_cell_pieces(w: Weight, cell_lo: float, h: float, mass: float,
                       singular_points, gap_ivs, zero_ivs,
                       tol: float) -> list[ObstaclePiece]:
    cell_hi = cell_lo + h
    local_gaps = []
    for a, b in gap_ivs:
        for k in (-TWO_PI, 0.0, TWO_PI):
            s, t = max(a + k, cell_lo), min(b + k, cell_hi)
            if t > s:
                local_gaps.append((s, t, a + k, b + k))
    if not local_gaps:
        raise NoObstaclePoint(
            f"cell [{cell_lo:.6f}, {cell_hi:.6f}) carries mass {mass:.3e} "
            "but lies entirely in the core"
        )

    # w == 0 on positive measure: constant rule, exact mass by construction
    zeros_here = []
    for a, b in zero_ivs:
        for k in (-TWO_PI, 0.0, TWO_PI):
            s, t = max(a + k, cell_lo), min(b + k, cell_hi)
            if t > s and any(gs <= s and t <= gt for gs, gt, _, _ in local_gaps):
                zeros_here.append((s, t))
    zero_len = sum(t - s for s, t in zeros_here)
    if zero_len > 1e-14:
        v = mass / (zero_len / TWO_PI)
        probe = np.concatenate(
            [np.linspace(s + 1e-12, t - 1e-12, 64) for s, t in zeros_here]
        )
        floor = float(np.min(_log_plus_inv(w, probe)))
        if v > floor + 1e-9 and math.isfinite(floor):
            raise MassMatchFailure(
                f"constant rule needs value {v:.3e} above the obstacle "
                f"floor {floor:.3e} on the zero set"
            )
        return [ObstaclePiece(s, t, "constant", v) for s, t in zeros_here]

    # otherwise anchor at the nearest detected singular point
    center = cell_lo + 0.5 * h
    cands = []
    for p in singular_points:
        for k in (-TWO_PI, 0.0, TWO_PI):
            q = p + k
            if any(gs - 1e-12 <= q <= gt + 1e-12 for gs, gt, _, _ in local_gaps):
                cands.append(q)
    if not cands:
        raise NoObstaclePoint(
            f"no detected singular point inside cell [{cell_lo:.6f}, "
            f"{cell_hi:.6f}) off the core (mass {mass:.3e})"
        )
    x = min(cands, key=lambda q: abs(q - center))
    gs, gt, _, _ = next(g for g in local_gaps if g[0] - 1e-12 <= x <= g[1] + 1e-12)
    r = min(x - gs, gt - x)
    if r > 1e-15:
        ilo, ihi = x - r, x + r
    else:  # singular point pinned to the cell edge: one-sided interval
        ilo, ihi = gs, gt

    # threshold split in log space: find lambda with enough integral above it
    lam_hi = 1.0
    for _ in range(200):
        if sum(
            _interval_log_plus_integral(w, a, b)
            for a, b in _super_level_intervals(w, ilo, ihi, lam_hi)
        ) > mass * (1.0 + 1e-6) + tol:
            break
        lam_hi *= 2.0
    else:
        raise MassMatchFailure(
            f"obstacle integral under lambda = {lam_hi:.2e} never reached "
            f"{mass:.3e}; divergence too weak at this resolution"
        )
    lam_lo = 0.0
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lam_lo + lam_hi)
        tot = sum(
            _interval_log_plus_integral(w, a, b)
            for a, b in _super_level_intervals(w, ilo, ihi, mid)
        )
        if tot > mass * (1.0 + 1e-6) + tol:
            lam_hi = mid
        else:
            lam_lo = mid
    region = _super_level_intervals(w, ilo, ihi, lam_hi)
    chosen = _grow_from_left(w, region, mass, tol)
    return [ObstaclePiece(a, b, "logInvW") for a, b in chosen]


def build_obstacle_sequence(nu: CircleMeasure, w: Weight, level: int,
                            core_level: int = DEFAULT_CORE_LEVEL,
                            mass_tol: float = DEFAULT_MASS_TOL) -> ObstacleFunction:
    """One obstacle function at the given dyadic level.

    Requires the measure to be purely singular and (to tolerance) to
    charge nothing to core(w); every mass-carrying cell must offer a
    non-core anchor, else NoObstaclePoint identifies the offender.
    """
    if nu.density is not None:
        raise InputError("the approximated measure must be purely singular")
    if not nu.is_positive():
        raise InputError("the approximated measure must be positive")
    if level < 1 or level > 24:
        raise InputError("obstacle level out of the sane range 1..24")
    report = core_set(w, core_level)
    split = split_mass(nu, report)
    if split.on_core > mass_tol + split.error:
        raise NoObstaclePoint(
            f"hypothesis violated: measure puts {split.on_core:.3e} "
            f"(+/- {split.error:.1e}) on core(w)"
        )
    gap_ivs = _components_with_wrap(report.core.complement().intervals)
    zero_ivs = _components_with_wrap(carrier_set(w).complement().intervals)
    masses, deep_err = _cell_masses(nu, level)
    h = TWO_PI / (1 << level)
    pieces: list[ObstaclePiece] = []
    cells: list[tuple[int, float]] = []
    for j in sorted(masses):
        m = masses[j]
        if m <= 0.0:
            continue
        cells.append((j, m))
        pieces.extend(
            _build_cell_pieces(w, j * h, h, m, report.singular_points,
                               gap_ivs, zero_ivs, mass_tol)
        )
    return ObstacleFunction(tuple(pieces), level, w, tuple(cells),
                            mass_tol, deep_err)


def obstacle_mass(f: ObstacleFunction) -> float:
    """int f dm over the circle."""
    total = 0.0
    for p in f.pieces:
        if p.rule == "constant":
            total += p.const * (p.hi - p.lo) / TWO_PI
        else:
            total += _interval_log_plus_integral(f.weight, p.lo, p.hi)
    return total


def _piece_kernel_integral(f: ObstacleFunction, kernel) -> complex:
    """int kernel(theta) f(theta) dm, complex kernel callable."""
    total = 0.0 + 0.0j
    for p in f.pieces:
        if p.rule == "constant":
            re, _ = quad(lambda t: kernel(t).real, p.lo, p.hi,
                         limit=200, epsabs=1e-13)
            im, _ = quad(lambda t: kernel(t).imag, p.lo, p.hi,
                         limit=200, epsabs=1e-13)
            total += p.const * complex(re, im) / TWO_PI
        else:
            def fk(t: float):
                return kernel(t) * float(_log_plus_inv(f.weight, np.array([t]))[0])

            re, _ = quad(lambda t: fk(t).real, p.lo, p.hi,
                         limit=200, epsabs=1e-13)
            im, _ = quad(lambda t: fk(t).imag, p.lo, p.hi,
                         limit=200, epsabs=1e-13)
            total += complex(re, im) / TWO_PI
    return total


def measure_fourier(nu: CircleMeasure, k: int) -> complex:
    """int e^{ik theta} dnu for a singular measure."""
    if nu.density is not None:
        raise InputError("fourier helper covers singular measures only")
    total = 0.0 + 0.0j
    for angle, mass in nu.atoms:
        total += mass * cmath.exp(1j * k * angle)
    for part in nu.cantor:
        total += complex(selfsim_fourier(part, np.array([-k]))[0])
    return total


@dataclass(frozen=True)
class WeakStarRow:
    level: int
    max_error: float
    mass_error: float


def weak_star_error(seq, nu: CircleMeasure, test_degree: int) -> tuple[WeakStarRow, ...]:
    """Per level: max_k |int e^{ik.} f dm - int e^{ik.} dnu|, |k| <= D."""
    if test_degree < 0:
        raise InputError("need test_degree >= 0")
    rows = []
    for f in seq:
        worst = 0.0
        mass_err = 0.0
        for k in range(-test_degree, test_degree + 1):
            fk = _piece_kernel_integral(f, lambda t, k=k: cmath.exp(1j * k * t))
            err = abs(fk - measure_fourier(nu, k))
            worst = max(worst, err)
            if k == 0:
                mass_err = err
        rows.append(WeakStarRow(f.level, worst, mass_err))
    return tuple(rows)


@dataclass(frozen=True)
class OuterLift:
    values: tuple[complex, ...]
    mass: float
    interior_certificate: bool
    boundary_certificate: bool


def outer_lift(f: ObstacleFunction, zs) -> OuterLift:
    """h(z) = exp(H_{f dm}(z)/2) with the proof's two guard rails:
    |h(z)| <= exp(mass/(1-|z|)) inside, and boundary samples under
    sqrt(max(1, 1/w))."""
    pts = [as_disk(z) for z in np.atleast_1d(np.asarray(zs, dtype=complex))]
    s = obstacle_mass(f)
    vals = []
    interior_ok = True
    for z in pts:
        h_int = _piece_kernel_integral(
            f, lambda t, z=z: (cmath.exp(1j * t) + z) / (cmath.exp(1j * t) - z)
        )
        hv = cmath.exp(h_int / 2.0)
        vals.append(hv)
        if abs(hv) > math.exp(s / (1.0 - abs(z))) * (1.0 + 1e-9):
            interior_ok = False
    boundary_ok = True
    for p in f.pieces:
        ts = np.linspace(p.lo + 1e-12, p.hi - 1e-12, 200)
        fb = obstacle_values(f, np.mod(ts, TWO_PI))
        cap = _log_plus_inv(f.weight, ts)
        if np.any(fb / 2.0 > cap / 2.0 + 1e-9):
            boundary_ok = False
    return OuterLift(tuple(vals), s, interior_ok, boundary_ok)


def _scaled(nu: CircleMeasure, factor: float) -> CircleMeasure:
    atoms = tuple((a, m * factor) for a, m in nu.atoms)
    parts = tuple(
        SelfSimilarPart(p.base, p.ratio, p.arity, p.mass * factor)
        for p in nu.cantor
    )
    return CircleMeasure(atoms=atoms, density=None, cantor=parts)


@dataclass(frozen=True)
class WitnessTable:
    levels: tuple[int, ...]
    points: tuple[complex, ...]
    errors: tuple[tuple[float, ...], ...]  # [level][point]


def cyclic_witness(nu: CircleMeasure, w: Weight, levels, zs,
                   core_level: int = DEFAULT_CORE_LEVEL,
                   mass_tol: float = DEFAULT_MASS_TOL) -> WitnessTable:
    """|h_n(z) S_nu(z) - 1| per level: the lift for the DOUBLED measure
    converges to 1/S_nu, so the product drifting to 1 is the witness."""
    levels = tuple(int(n) for n in levels)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise InputError("levels must increase")
    pts = [as_disk(z) for z in np.atleast_1d(np.asarray(zs, dtype=complex))]
    s_vals = [singular_inner(nu, z) for z in pts]
    doubled = _scaled(nu, 2.0)
    rows = []
    for n in levels:
        f = build_obstacle_sequence(doubled, w, n, core_level, mass_tol)
        lift = outer_lift(f, pts)
        rows.append(tuple(
            abs(hv * sv - 1.0) for hv, sv in zip(lift.values, s_vals)
        ))
    return WitnessTable(levels, tuple(pts), tuple(rows))


__all__ = [
    "DEFAULT_CORE_LEVEL",
    "DEFAULT_MASS_TOL",
    "ObstacleFunction",
    "ObstaclePiece",
    "OuterLift",
    "WeakStarRow",
    "WitnessTable",
    "build_obstacle_sequence",
    "cyclic_witness",
    "measure_fourier",
    "obstacle_mass",
    "obstacle_values",
    "outer_lift",
    "weak_star_error",
]
