"""Angles, arcs, and arc sets on the unit circle.

Angles are canonical in [0, 2*pi); the circle carries the normalized
Lebesgue measure m with m(T) = 1.  Arcs that cross the angular cut are
split internally and rejoined on output, so ``ArcSet`` normalization is
unambiguous.  ``ArcSet`` membership treats arcs as open; touching arcs are
merged (the sets we build this way are open up to finitely many points,
and every consumer is insensitive to sets of measure zero).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Canonical representative of ``theta`` in [0, 2*pi)."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:  # rounding of a tiny negative input
        t = 0.0
    return t


def circle_gap(a: float, b: float) -> float:
    """Shortest angular distance between two angles, in [0, pi]."""
    d = abs(normalize_angle(a) - normalize_angle(b))
    return min(d, TWO_PI - d)


def chord(a: float, b: float) -> float:
    """Chordal distance |e^{ia} - e^{ib}| = 2|sin((a-b)/2)|."""
    return 2.0 * abs(math.sin(0.5 * (a - b)))


@dataclass(frozen=True)
class Arc:
    """An arc of the circle: ``start`` angle plus ``length`` in (0, 2*pi].

    Arcs are open unless ``closed`` is set.  ``length == 2*pi`` denotes the
    full circle.
    """

    start: float
    length: float
    closed: bool = False

    def __post_init__(self):
        if not (0.0 < self.length <= TWO_PI + 1e-15):
            raise InputError(f"arc length must be in (0, 2*pi], got {self.length}")
        object.__setattr__(self, "start", normalize_angle(self.start))
        object.__setattr__(self, "length", min(float(self.length), TWO_PI))

    @property
    def end(self) -> float:
        """End angle, possibly >= 2*pi (un-normalized lift)."""
        return self.start + self.length

    def is_full_circle(self) -> bool:
        return self.length >= TWO_PI - 1e-15

    def contains(self, theta: float) -> bool:
        if self.is_full_circle():
            return True
        t = normalize_angle(theta)
        if t < self.start:
            t += TWO_PI
        if self.closed:
            return self.start <= t <= self.end
        return self.start < t < self.end

    def intervals(self) -> list[tuple[float, float]]:
        """The arc as one or two intervals inside [0, 2*pi]."""
        if self.is_full_circle():
            return [(0.0, TWO_PI)]
        if self.end <= TWO_PI:
            return [(self.start, self.end)]
        return [(self.start, TWO_PI), (0.0, self.end - TWO_PI)]

    def midpoint(self) -> float:
        return normalize_angle(self.start + 0.5 * self.length)


def _merge_intervals(ivals: list[tuple[float, float]], tol: float = 0.0) -> list[tuple[float, float]]:
    """Sort and merge overlapping/touching intervals inside [0, 2*pi]."""
    ivals = sorted((a, b) for a, b in ivals if b - a > 0.0)
    out: list[tuple[float, float]] = []
    for a, b in ivals:
        if out and a <= out[-1][1] + tol:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


@dataclass(frozen=True)
class ArcSet:
    """A normalized finite union of disjoint open arcs, sorted by start.

    Internally a tuple of intervals (a, b) with 0 <= a < b <= 2*pi;
    an interval ending at 2*pi wraps onto one starting at 0 only during
    construction, where the pair is merged across the cut and re-split.
    """

    intervals: tuple[tuple[float, float], ...]

    @staticmethod
    def empty() -> "ArcSet":
        return ArcSet(())

    @staticmethod
    def full_circle() -> "ArcSet":
        return ArcSet(((0.0, TWO_PI),))

    @staticmethod
    def from_arcs(arcs) -> "ArcSet":
        ivals: list[tuple[float, float]] = []
        for arc in arcs:
            ivals.extend(arc.intervals())
        return ArcSet.from_intervals(ivals)

    @staticmethod
    def from_intervals(ivals) -> "ArcSet":
        merged = _merge_intervals(list(ivals))
        # rejoin across the angular cut: last interval touching 2*pi plus
        # first touching 0 form one arc; keep the wrapped representation
        # split so `intervals` stays inside [0, 2*pi].
        total = sum(b - a for a, b in merged)
        if total >= TWO_PI - 1e-15:
            return ArcSet.full_circle()
        return ArcSet(tuple(merged))

    def measure(self) -> float:
        """Normalized Lebesgue measure, in [0, 1]."""
        return sum(b - a for a, b in self.intervals) / TWO_PI

    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, theta: float) -> bool:
        t = normalize_angle(theta)
        for a, b in self.intervals:
            if a < t < b:
                return True
        # a set wrapping the cut stores pieces (x, 2*pi) and (0, y); the
        # cut point itself belongs iff both pieces touch it.
        if t == 0.0 and self.intervals:
            first_a, _ = self.intervals[0]
            _, last_b = self.intervals[-1]
            if first_a == 0.0 and last_b >= TWO_PI - 1e-15 and len(self.intervals) >= 2:
                return True
        return False

    def complement(self) -> "ArcSet":
        out: list[tuple[float, float]] = []
        prev = 0.0
        for a, b in self.intervals:
            if a > prev:
                out.append((prev, a))
            prev = max(prev, b)
        if prev < TWO_PI:
            out.append((prev, TWO_PI))
        return ArcSet(tuple(out))

    def intersect(self, other: "ArcSet") -> "ArcSet":
        out: list[tuple[float, float]] = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if hi > lo:
                    out.append((lo, hi))
        return ArcSet.from_intervals(out)

    def union(self, other: "ArcSet") -> "ArcSet":
        return ArcSet.from_intervals(list(self.intervals) + list(other.intervals))

    def arcs(self) -> list[Arc]:
        """The set as a list of ``Arc`` objects (cut-crossing pair rejoined)."""
        ivals = list(self.intervals)
        if (
            len(ivals) >= 2
            and ivals[0][0] == 0.0
            and ivals[-1][1] >= TWO_PI - 1e-15
        ):
            a, b = ivals.pop()
            c, d = ivals.pop(0)
            ivals.append((a, b + d))  # wraps past 2*pi; Arc normalizes
        return [Arc(a, b - a) for a, b in ivals]


def arc_measure(arcset: ArcSet) -> float:
    """Normalized measure of an arc set: sum of lengths / 2*pi, in [0, 1]."""
    return arcset.measure()


def dyadic_cells(level: int, staggered: bool = False) -> list[tuple[float, float]]:
    """Half-open dyadic cells [a, b) of generation ``level``.

    The ``staggered`` grid is shifted by half a cell, so that every point of
    the circle is at distance >= cell/4 from some cell's endpoints in at
    least one of the two grids.
    """
    n = 1 << level
    h = TWO_PI / n
    off = 0.5 * h if staggered else 0.0
    return [(off + k * h, off + (k + 1) * h) for k in range(n)]
