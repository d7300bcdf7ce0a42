"""disclab: numerical lab for boundary weights, measures, and analytic
function theory on the unit circle and disk.

Subpackages are organized by subject: circle geometry and weights, circle
measures, radial weights and moment sequences, Legendre envelopes, disk
transforms, coefficient sequence spaces, cyclicity/density oracles, the
dyadic obstacle construction, and wizard-hat harmonic-measure estimation.
"""
from __future__ import annotations

__version__ = "0.1.0"
