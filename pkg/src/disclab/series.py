"""Truncated Taylor series of analytic functions on the disk."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients f_0..f_N of an analytic function, with degree bound N."""

    coeffs: tuple[complex, ...]
    degree_bound: int

    def __post_init__(self):
        if self.degree_bound < 0 or len(self.coeffs) != self.degree_bound + 1:
            raise InputError("TaylorSeries needs N >= 0 and exactly N+1 coefficients")

    def __len__(self) -> int:
        return len(self.coeffs)

    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def evaluate(self, z) -> np.ndarray:
        """Horner evaluation at points with |z| < 1."""
        zs = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.zeros(zs.shape, dtype=complex)
        for c in reversed(self.coeffs):
            out = out * zs + c
        return out

    def trimmed(self, floor: float = 0.0) -> "TaylorSeries":
        """Drop trailing coefficients with modulus <= floor (N unchanged
        in meaning: the function is still declared correct to degree N)."""
        arr = self.array()
        keep = len(arr)
        while keep > 1 and abs(arr[keep - 1]) <= floor:
            keep -= 1
        return TaylorSeries(tuple(arr[:keep].tolist()), keep - 1)


def from_array(coeffs, degree_bound: int | None = None) -> TaylorSeries:
    arr = np.asarray(coeffs, dtype=complex).ravel()
    n = arr.size - 1 if degree_bound is None else int(degree_bound)
    if arr.size != n + 1:
        raise InputError("coefficient count must equal degree_bound + 1")
    return TaylorSeries(tuple(arr.tolist()), n)
