"""Decision procedures: cyclicity, permanence, subspace classification,
two de Branges-Rokhlin-space checks, and the structural consistency test.

Every verdict here is resolution- and tolerance-qualified.  The deciding
quantity is always a mass with an explicit error bar, and a verdict is
withheld (``inconclusive``) whenever the threshold falls inside that bar:
the underlying statements are exact, so the oracle must not overclaim
what a finite dyadic resolution can certify.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_residual import CarrierVerdict, CoreReport, core_set, is_core_carrier
from .errors import InputError
from .geometry import TWO_PI, ArcSet, normalize_angle
from .measures import CircleMeasure, ComplexDensity, measure_mass
from .seqspaces import RsdVerdict, rsd_classify
from .transforms import BSymbol, cauchy_coefficients
from .weights import Weight, grid as grid_weight

DEFAULT_LEVEL = 14
DEFAULT_TOL = 1e-10
#: atoms closer than this to a core-arc endpoint are resolution-ambiguous
BOUNDARY_SNAP = 1e-12


@dataclass(frozen=True)
class MassSplit:
    on_core: float
    off_core: float
    error: float
    ambiguous_atoms: tuple[float, ...]


@dataclass(frozen=True)
class OracleVerdict:
    verdict: str  # yes | no | inconclusive
    mass_on_core: float
    mass_off_core: float
    error: float
    core_report: CoreReport
    offending_atoms: tuple[float, ...]  # atoms on the wrong side for a yes
    ambiguous_atoms: tuple[float, ...]  # atoms the resolution cannot place

    def __post_init__(self) -> None:
        if self.verdict not in ("yes", "no", "inconclusive"):
            raise InputError(f"unknown verdict {self.verdict!r}")


def _require_singular(nu: CircleMeasure) -> None:
    if nu.density is not None:
        raise InputError(
            "this oracle takes purely singular measures (atoms and "
            "self-similar parts); integrate the density part separately"
        )
    if not nu.is_positive():
        raise InputError("the measure must be positive")


def _near_endpoint(angle: float, arcs: ArcSet) -> bool:
    for a, b in arcs.intervals:
        for e in (a, b):
            d = abs(normalize_angle(angle) - normalize_angle(e))
            if min(d, TWO_PI - d) < BOUNDARY_SNAP:
                return True
    return False


def split_mass(nu: CircleMeasure, report: CoreReport) -> MassSplit:
    """Split a singular measure's mass across core / off-core.

    Atoms are placed by open-arc membership; an atom within snapping
    distance of a core-arc endpoint, or inside an arc the core pass left
    inconclusive, cannot be placed and is booked into the error bar.
    Self-similar parts are resolved by the cell recursion of
    ``measure_mass``, straddling cells feeding the error bar likewise.
    """
    _require_singular(nu)
    core = report.core
    pending = ArcSet.from_arcs(report.inconclusive) if report.inconclusive else None
    on = off = err = 0.0
    ambiguous: list[float] = []
    for angle, mass in nu.atoms:
        if _near_endpoint(angle, core) or (pending is not None and pending.contains(angle)):
            err += mass
            ambiguous.append(angle)
        elif core.contains(angle):
            on += mass
        else:
            off += mass
    for part in nu.cantor:
        single = CircleMeasure(atoms=(), density=None, cantor=(part,))
        est = measure_mass(single, core)
        on += est.value
        off += part.mass - est.value - est.error
        err += est.error
        if pending is not None:
            overlap = measure_mass(single, pending)
            err += overlap.value + overlap.error
    return MassSplit(on, max(off, 0.0), err, tuple(ambiguous))


def _threshold_verdict(value: float, error: float, tol: float) -> str:
    if value + error <= tol:
        return "yes"
    if value - error > tol:
        return "no"
    return "inconclusive"


def is_cyclic(nu: CircleMeasure, w: Weight, level: int = DEFAULT_LEVEL,
              tol: float = DEFAULT_TOL) -> OracleVerdict:
    """Cyclicity test: yes iff the measure puts no mass on core(w).

    The atoms listed as offending are those sitting inside the core when
    the verdict is no (each one separately blocks cyclicity).
    """
    report = core_set(w, level)
    split = split_mass(nu, report)
    verdict = _threshold_verdict(split.on_core, split.error, tol)
    offending = tuple(
        a for a, m in nu.atoms
        if report.core.contains(a) and not _near_endpoint(a, report.core)
    )
    return OracleVerdict(verdict, split.on_core, split.off_core, split.error,
                         report, offending, split.ambiguous_atoms)


def has_permanence(nu: CircleMeasure, w: Weight, level: int = DEFAULT_LEVEL,
                   tol: float = DEFAULT_TOL) -> OracleVerdict:
    """Permanence hypothesis: yes iff all mass sits on core(w)."""
    report = core_set(w, level)
    split = split_mass(nu, report)
    verdict = _threshold_verdict(split.off_core, split.error, tol)
    offending = tuple(
        a for a, m in nu.atoms
        if not report.core.contains(a) and not _near_endpoint(a, report.core)
    )
    return OracleVerdict(verdict, split.on_core, split.off_core, split.error,
                         report, offending, split.ambiguous_atoms)


@dataclass(frozen=True)
class ClassifiedSubspace:
    """The measure restricted to core(w), as far as the resolution can say.

    ``restricted`` holds the atoms inside the core plus self-similar
    parts essentially fully inside; ``partial_parts`` lists (index,
    mass-inside, error) for parts the core genuinely cuts, which the
    restriction cannot represent exactly at this resolution.
    """

    restricted: CircleMeasure
    dropped_atoms: tuple[float, ...]
    ambiguous_atoms: tuple[float, ...]
    partial_parts: tuple[tuple[int, float, float], ...]
    core_report: CoreReport


def classify_invariant_subspace(zeros, nu: CircleMeasure, w: Weight,
                                level: int = DEFAULT_LEVEL) -> ClassifiedSubspace:
    """Restrict the singular measure to core(w).

    The declared zero set and any outer factor do not influence the
    restriction; ``zeros`` is accepted so callers can pass the full
    factorization data through unchanged.
    """
    del zeros  # recorded in the caller's data; irrelevant to the answer
    _require_singular(nu)
    report = core_set(w, level)
    core = report.core
    pending = ArcSet.from_arcs(report.inconclusive) if report.inconclusive else None
    kept_atoms = []
    dropped: list[float] = []
    ambiguous: list[float] = []
    for angle, mass in nu.atoms:
        if _near_endpoint(angle, core) or (pending is not None and pending.contains(angle)):
            ambiguous.append(angle)
        elif core.contains(angle):
            kept_atoms.append((angle, mass))
        else:
            dropped.append(angle)
    kept_parts = []
    partial: list[tuple[int, float, float]] = []
    for i, part in enumerate(nu.cantor):
        single = CircleMeasure(atoms=(), density=None, cantor=(part,))
        est = measure_mass(single, core)
        if est.value >= part.mass - est.error - 1e-12:
            kept_parts.append(part)
        elif est.value + est.error > 1e-12:
            partial.append((i, est.value, est.error))
    restricted = CircleMeasure(atoms=tuple(kept_atoms), density=None,
                               cantor=tuple(kept_parts))
    return ClassifiedSubspace(restricted, tuple(dropped), tuple(ambiguous),
                              tuple(partial), report)


@dataclass(frozen=True)
class HbVerdict:
    verdict: str  # yes | no | inconclusive
    reason: str
    witness_arc: tuple[float, float] | None
    carrier: CarrierVerdict | None = None
    residual_mass: float = 0.0
    residual_error: float = 0.0


def _defect_core(b: BSymbol, level: int) -> CoreReport | None:
    """Core of the defect, when the symbol carries a structured defect."""
    if b.defect_weight is None:
        return None
    return core_set(b.defect_weight, level)


def hb_existence(b: BSymbol, level: int = DEFAULT_LEVEL) -> HbVerdict:
    """Does the symbol's space contain a nonzero function?

    yes if b vanishes somewhere in the disk (declared zero data), or the
    defect has nonempty core.  A symbol with no zeros and an identically
    vanishing defect is a no.  An outer factor given only as a callable
    cannot be core-analyzed and comes back inconclusive.
    """
    if b.blaschke_zeros:
        return HbVerdict("yes", "declared zero in the disk", None)
    if b.defect_weight is None:
        if b.outer_log_modulus is None:
            # inner symbol: defect vanishes a.e.
            return HbVerdict("no", "inner symbol, defect 0 a.e.", None)
        return HbVerdict(
            "inconclusive",
            "outer factor supplied as a bare callable; no certified "
            "log-integrals available for the defect",
            None,
        )
    report = _defect_core(b, level)
    arcs = report.core.arcs()
    if arcs:
        widest = max(arcs, key=lambda a: a.length)
        return HbVerdict("yes", "defect core is nonempty",
                         (widest.start, widest.start + widest.length))
    if report.inconclusive:
        return HbVerdict("inconclusive", "defect core undecided at this level", None)
    return HbVerdict("no", "defect core empty at this level", None)


def hb_density(b: BSymbol, level: int = DEFAULT_LEVEL,
               tol: float = DEFAULT_TOL) -> HbVerdict:
    """Are the polynomial-times-symbol elements dense?

    yes iff the defect's core carries the defect AND the singular factor
    puts (essentially) no mass outside that core.  For an inner symbol
    with no singular mass the condition is vacuous and the paper leaves
    the edge case open; the oracle declines to guess.
    """
    nu = b.singular if b.singular is not None else CircleMeasure((), None, ())
    nu_mass = nu.atom_mass() + sum(p.mass for p in nu.cantor)
    if b.defect_weight is None and b.outer_log_modulus is None:
        if nu_mass == 0.0:
            return HbVerdict("inconclusive",
                             "inner symbol with no singular mass: edge "
                             "semantics undefined; declining to guess", None)
        return HbVerdict("no", "defect 0 a.e. but singular mass present",
                         None, None, nu_mass, 0.0)
    if b.defect_weight is None:
        return HbVerdict("inconclusive",
                         "outer factor supplied as a bare callable; no "
                         "certified log-integrals available", None)
    carrier = is_core_carrier(b.defect_weight, level)
    report = core_set(b.defect_weight, level)
    if nu_mass > 0.0:
        split = split_mass(nu, report)
        off, err = split.off_core, split.error
    else:
        off, err = 0.0, 0.0
    mass_ok = _threshold_verdict(off, err, tol)
    if carrier.verdict == "yes" and mass_ok == "yes":
        return HbVerdict("yes", "core carries the defect and all singular mass",
                         None, carrier, off, err)
    if carrier.verdict == "no" or mass_ok == "no":
        why = ("defect core is not a carrier" if carrier.verdict == "no"
               else "singular mass sits off the defect core")
        return HbVerdict("no", why, None, carrier, off, err)
    return HbVerdict("inconclusive", "sub-verdict undecided", None, carrier, off, err)


@dataclass(frozen=True)
class ConsistencyReport:
    status: str  # CONSISTENT | VIOLATION | inconclusive
    rsd: RsdVerdict
    carrier: CarrierVerdict


def theorem_c_check(g: CircleMeasure, n_max: int = 512,
                    level: int = DEFAULT_LEVEL) -> ConsistencyReport:
    """Structural consistency: rapid coefficient decay forces the modulus
    core to be a carrier.  VIOLATION = observed rsd with a non-carrier
    core, which no valid input should produce.
    """
    if g.atoms or g.cantor or g.density is None:
        raise InputError("this check takes an absolutely continuous measure")
    coeffs = cauchy_coefficients(g, n_max)
    rsd = rsd_classify(coeffs)
    density = g.density
    if isinstance(density, ComplexDensity):
        mod = np.abs(np.asarray(density.samples))
        floor = max(float(mod.max()) * 1e-15, 1e-300)
        density = grid_weight(np.maximum(mod, floor))
    carrier = is_core_carrier(density, level)
    if rsd.verdict == "inconclusive" or carrier.verdict == "inconclusive":
        return ConsistencyReport("inconclusive", rsd, carrier)
    if rsd.verdict == "rsd" and carrier.verdict == "no":
        return ConsistencyReport("VIOLATION", rsd, carrier)
    return ConsistencyReport("CONSISTENT", rsd, carrier)


__all__ = [
    "BOUNDARY_SNAP",
    "ClassifiedSubspace",
    "ConsistencyReport",
    "DEFAULT_LEVEL",
    "DEFAULT_TOL",
    "HbVerdict",
    "MassSplit",
    "OracleVerdict",
    "classify_invariant_subspace",
    "has_permanence",
    "hb_density",
    "hb_existence",
    "is_cyclic",
    "split_mass",
    "theorem_c_check",
]
