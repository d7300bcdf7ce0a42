"""Walk-on-spheres harmonic measure with falsifiable decay-bound checks.

Harmonic measure of a boundary piece is the hitting probability of
Brownian motion, so it is estimated by jumping to a uniformly random
point of the largest safe circle around the walker until the boundary
is within the capture layer.  The jump radius only has to be a LOWER
bound for the true distance; for the cusped hat domains the roof is an
L-Lipschitz graph, and the cone argument gives the always-safe radius

    r = min(y, (R(x) - y) / sqrt(1 + L^2)).

Walks that survive the step budget are counted and reported rather
than silently dropped: near a cusp the shrinking radius makes stalls a
real possibility and the failure count is the evidence.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NonConvergedWalks
from .hat import beurling_ahlfors_bound

STEP_CAP = 100_000
CAPTURE_FACTOR = 1e-6
FAIL_FRACTION = 1e-3
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiskDomain:
    cx: float = 0.0
    cy: float = 0.0
    radius: float = 1.0


@dataclass(frozen=True)
class RectDomain:
    x0: float
    y0: float
    x1: float
    y1: float


@dataclass(frozen=True)
class HatDomain:
    """Region between the floor and the folded profile roof.

    ``p_of`` maps offsets u in (0, (b-a)/2] to the half-profile height;
    the roof over x is p_of(min(x-a, b-x)).  ``lip`` must dominate the
    roof's slope everywhere — it calibrates the safe jump radius.
    """

    p_of: object
    a: float = 0.0
    b: float = 2.0
    lip: float = 2.0


@dataclass(frozen=True)
class BoundaryPiece:
    kind: str  # "disk_arc" | "rect_side" | "x_leq" | "x_gt"
    lo: float = 0.0
    hi: float = 0.0
    side: str = ""
    t: float = 0.0


def disk_arc(lo: float, hi: float) -> BoundaryPiece:
    return BoundaryPiece(kind="disk_arc", lo=lo, hi=hi)


def rect_side(side: str) -> BoundaryPiece:
    if side not in ("left", "right", "bottom", "top"):
        raise InputError(f"unknown rectangle side {side!r}")
    return BoundaryPiece(kind="rect_side", side=side)


def x_leq(t: float) -> BoundaryPiece:
    return BoundaryPiece(kind="x_leq", t=t)


def x_gt(t: float) -> BoundaryPiece:
    return BoundaryPiece(kind="x_gt", t=t)


def _roof(domain: HatDomain, xs: np.ndarray) -> np.ndarray:
    u = np.minimum(xs - domain.a, domain.b - xs)
    return np.asarray(domain.p_of(np.maximum(u, 1e-300)), dtype=float)


def _diameter(domain) -> float:
    if isinstance(domain, DiskDomain):
        return 2.0 * domain.radius
    if isinstance(domain, RectDomain):
        return math.hypot(domain.x1 - domain.x0, domain.y1 - domain.y0)
    if isinstance(domain, HatDomain):
        half = 0.5 * (domain.b - domain.a)
        peak = float(np.atleast_1d(domain.p_of(np.array([half])))[0])
        return math.hypot(domain.b - domain.a, peak)
    raise InputError(f"unknown domain {type(domain).__name__}")


def _dist(domain, pts: np.ndarray) -> np.ndarray:
    x, y = pts[:, 0], pts[:, 1]
    if isinstance(domain, DiskDomain):
        return domain.radius - np.hypot(x - domain.cx, y - domain.cy)
    if isinstance(domain, RectDomain):
        return np.minimum.reduce(
            [x - domain.x0, domain.x1 - x, y - domain.y0, domain.y1 - y]
        )
    cone = math.sqrt(1.0 + domain.lip ** 2)
    return np.minimum(y, (_roof(domain, x) - y) / cone)


def _hits(domain, piece: BoundaryPiece, pts: np.ndarray) -> int:
    x, y = pts[:, 0], pts[:, 1]
    if piece.kind == "x_leq":
        return int(np.count_nonzero(x <= piece.t))
    if piece.kind == "x_gt":
        return int(np.count_nonzero(x > piece.t))
    if piece.kind == "disk_arc":
        if not isinstance(domain, DiskDomain):
            raise InputError("disk_arc piece needs a DiskDomain")
        ang = np.mod(np.arctan2(y - domain.cy, x - domain.cx), TWO_PI)
        rel = np.mod(ang - piece.lo, TWO_PI)
        return int(np.count_nonzero(rel < np.mod(piece.hi - piece.lo - 1e-300, TWO_PI) + 1e-300))
    if piece.kind == "rect_side":
        if not isinstance(domain, RectDomain):
            raise InputError("rect_side piece needs a RectDomain")
        gaps = np.stack(
            [x - domain.x0, domain.x1 - x, y - domain.y0, domain.y1 - y]
        )
        side = np.argmin(gaps, axis=0)
        want = ("left", "right", "bottom", "top").index(piece.side)
        return int(np.count_nonzero(side == want))
    raise InputError(f"unknown boundary piece kind {piece.kind!r}")


@dataclass(frozen=True)
class HarmonicMeasureEstimate:
    value: float
    std_error: float
    walks: int
    non_converged: int
    step_rule: str


def _walk_chunk(domain, z0, piece: BoundaryPiece, n: int, seed,
                delta: float) -> tuple[int, int, int]:
    rng = np.random.default_rng(seed)
    pts = np.tile(np.asarray(z0, dtype=float), (n, 1))
    hits = 0
    converged = 0
    for _ in range(STEP_CAP):
        d = _dist(domain, pts)
        captured = d < delta
        if captured.any():
            hits += _hits(domain, piece, pts[captured])
            converged += int(np.count_nonzero(captured))
            pts = pts[~captured]
            d = d[~captured]
        if pts.shape[0] == 0:
            break
        ang = rng.uniform(0.0, TWO_PI, pts.shape[0])
        pts = pts + d[:, None] * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return hits, converged, pts.shape[0]


def harmonic_measure_mc(domain, z0, piece: BoundaryPiece, walks: int,
                        seed: int, workers: int | None = None) -> HarmonicMeasureEstimate:
    """Hit fraction of the boundary piece, pooled over seeded worker chunks.

    Results are bit-exact for fixed (seed, workers); DISCLAB_WORKERS
    sets the default chunk count.
    """
    if walks < 1:
        raise InputError("need at least one walk")
    z = np.asarray(z0, dtype=float)
    if z.shape != (2,):
        raise InputError("z0 must be a point (x, y)")
    delta = CAPTURE_FACTOR * _diameter(domain)
    if float(_dist(domain, z[None, :])[0]) <= delta:
        raise InputError("z0 must lie in the interior, clear of the capture layer")
    if workers is None:
        workers = max(1, int(os.environ.get("DISCLAB_WORKERS", "1")))
    sizes = [walks // workers + (1 if i < walks % workers else 0)
             for i in range(workers)]
    seeds = np.random.SeedSequence(seed).spawn(workers)
    hits = conv = lost = 0
    for size, s in zip(sizes, seeds):
        if size == 0:
            continue
        h, c, bad = _walk_chunk(domain, z, piece, size, s, delta)
        hits += h
        conv += c
        lost += bad
    if lost > FAIL_FRACTION * walks:
        raise NonConvergedWalks(
            f"{lost} of {walks} walks exceeded {STEP_CAP} steps"
        )
    p_hat = hits / conv if conv else 0.0
    return HarmonicMeasureEstimate(
        value=p_hat,
        std_error=math.sqrt(max(p_hat * (1.0 - p_hat), 1e-12) / conv) if conv else float("inf"),
        walks=walks,
        non_converged=lost,
        step_rule=f"walk-on-spheres, capture {delta:.3e}, cap {STEP_CAP} steps",
    )


@dataclass(frozen=True)
class BtRow:
    t: float
    estimate: float
    std_error: float
    bound: float
    passed: bool


def verify_bt_bound(domain: HatDomain, z0, ts, walks: int,
                    seed: int, workers: int | None = None) -> tuple[BtRow, ...]:
    """Per t: MC estimate of the mass of {Re <= t} against the channel
    decay bound; PASS iff estimate - 3 sigma <= bound."""
    z = np.asarray(z0, dtype=float)
    rows = []
    for t in ts:
        t = float(t)
        bound = beurling_ahlfors_bound(domain.p_of, domain.a, t, float(z[0]))
        est = harmonic_measure_mc(domain, z, x_leq(t), walks, seed, workers)
        rows.append(BtRow(
            t=t,
            estimate=est.value,
            std_error=est.std_error,
            bound=bound,
            passed=est.value - 3.0 * est.std_error <= bound,
        ))
    return tuple(rows)


__all__ = [
    "BoundaryPiece",
    "BtRow",
    "DiskDomain",
    "HarmonicMeasureEstimate",
    "HatDomain",
    "RectDomain",
    "disk_arc",
    "harmonic_measure_mc",
    "rect_side",
    "verify_bt_bound",
    "x_gt",
    "x_leq",
]
