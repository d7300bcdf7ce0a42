"""Exception hierarchy shared by every disclab module.

The CLI maps these onto process exit codes: bad input or schema violations
exit 2, mathematically inconclusive verdicts exit 3 (distinct from failure),
and numerical failures exit 4.
"""
from __future__ import annotations


class DisclabError(Exception):
    """Base class for all disclab errors."""


class InputError(DisclabError):
    """Invalid input, parameter, or serialized schema (CLI exit 2)."""


class NotAMajorant(InputError):
    """The supplied function fails the majorant axioms."""


class DivergentDensity(InputError):
    """A measure density turned out not to be integrable (defensive)."""


class Inconclusive(DisclabError):
    """A verdict was withheld rather than guessed (CLI exit 3).

    Carries a ``payload`` dict describing what was computed and why the
    deciding quantity could not be resolved at the working resolution.
    """

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = dict(payload) if payload else {}


class InconclusiveAtDepth(Inconclusive):
    """Neither a convergence certificate nor the divergence threshold was
    reached at maximum refinement depth."""


class NumericalFailure(DisclabError):
    """A computation failed to meet its own accuracy contract (CLI exit 4)."""


class MassMatchFailure(NumericalFailure):
    """Mass matching in the obstacle construction missed its tolerance."""


class IllConditioned(NumericalFailure):
    """A linear/spectral step was too ill-conditioned to trust."""


class NonConvergedWalks(NumericalFailure):
    """Too many Monte Carlo walks exhausted their step budget."""


class NoObstaclePoint(NumericalFailure):
    """No admissible obstacle arc could be placed inside a dyadic cell."""
