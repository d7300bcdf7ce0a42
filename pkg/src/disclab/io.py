"""Versioned JSON/CSV serialization and run manifests.

Every file the tool writes embeds a manifest (command, flags, input
digests, seed, version, wall time) so a result can be traced back to
exactly what produced it.  All fields are deterministic except
``wall_time_s``; byte-for-byte reproducibility claims always mean
"after dropping that one key".

CSV files carry the manifest as ``# ...`` comment lines before the
header; JSON files carry it under the ``"manifest"`` key.
"""

from __future__ import annotations

import csv
import hashlib
import io as _stdio
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InputError
from .geometry import Arc, ArcSet
from .hat import WizardProfile
from .legendre import EnvelopeFunction
from .measures import CircleMeasure, ComplexDensity, SelfSimilarPart
from .moments import Majorant, majorant_from_g, majorant_one_over_t
from .obstacle import ObstacleFunction, ObstaclePiece
from .radial import RadialWeight, linear, preset_t1, preset_t2, tabulated_log
from .transforms import BSymbol
from .weights import Weight

SCHEMA_VERSION = 1


def sha256_of(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def run_manifest(command: str, flags: dict, inputs=(), seed=None,
                 wall_time_s: float | None = None) -> dict:
    digests = {}
    for p in inputs:
        p = Path(p)
        digests[p.name] = sha256_of(p) if p.exists() else "missing"
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "flags": {k: flags[k] for k in sorted(flags)},
        "input_digests": digests,
        "seed": seed,
        "version": __version__,
        "wall_time_s": wall_time_s,
    }


def save_json(path, payload: dict, manifest: dict | None = None) -> None:
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(payload)
    if manifest is not None:
        doc["manifest"] = manifest
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def load_json(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{p} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{p}: expected a JSON object at top level")
    ver = doc.get("schema_version")
    if ver != SCHEMA_VERSION:
        raise InputError(f"{p}: schema_version {ver!r}, tool expects {SCHEMA_VERSION}")
    return doc


def _expect_kind(doc: dict, kind: str, path) -> None:
    if doc.get("kind") != kind:
        raise InputError(f"{path}: expected kind {kind!r}, got {doc.get('kind')!r}")


# -- arcs ------------------------------------------------------------------


def arcset_to_json(arcs: ArcSet) -> list[list[float]]:
    return [[a.start, a.length] for a in arcs.arcs()]


def arcset_from_json(data) -> ArcSet:
    if not isinstance(data, list):
        raise InputError("arc set must be a list of [start, length] pairs")
    return ArcSet.from_arcs([Arc(float(a), float(b)) for a, b in data])


# -- weights ---------------------------------------------------------------


def weight_to_json(w: Weight) -> dict:
    out: dict = {"family": w.family}
    if w.family == "constant":
        out["c"] = w.c
    elif w.family == "power":
        out["anchor"] = w.anchor
        out["gamma"] = w.gamma
    elif w.family == "exp_inv_dist":
        out["points"] = list(w.points)
        out["arcs"] = arcset_to_json(w.arcs) if w.arcs is not None else None
        out["s"] = w.s
        out["gamma"] = w.gamma
    elif w.family == "indicator":
        out["arcs"] = arcset_to_json(w.arcs)
    elif w.family == "product":
        out["factors"] = [weight_to_json(f) for f in w.factors]
    elif w.family == "grid":
        out["samples"] = list(w.samples)
        out["singular_points"] = list(w.singular_points)
        out["floor"] = w.floor
    else:
        raise InputError(f"cannot serialize weight family {w.family!r}")
    return out


def weight_from_json(data: dict) -> Weight:
    from . import weights as _w

    fam = data.get("family")
    if fam == "constant":
        return _w.constant(float(data["c"]))
    if fam == "power":
        return _w.power(float(data["anchor"]), float(data["gamma"]))
    if fam == "exp_inv_dist":
        arcs = data.get("arcs")
        return _w.exp_inv_dist(
            points=tuple(float(p) for p in data.get("points", ())),
            arcs=arcset_from_json(arcs) if arcs else None,
            s=float(data.get("s", 1.0)),
            gamma=float(data.get("gamma", 1.0)),
        )
    if fam == "indicator":
        return _w.indicator(arcset_from_json(data["arcs"]))
    if fam == "product":
        return _w.product([weight_from_json(f) for f in data["factors"]])
    if fam == "grid":
        return _w.grid(
            [float(v) for v in data["samples"]],
            singular_points=tuple(float(p) for p in data.get("singular_points", ())),
            floor=float(data.get("floor", 1e-12)),
        )
    raise InputError(f"unknown weight family {fam!r}")


def load_weight(path) -> Weight:
    doc = load_json(path)
    _expect_kind(doc, "weight", path)
    return weight_from_json(doc)


def save_weight(path, w: Weight, manifest=None) -> None:
    payload = {"kind": "weight"}
    payload.update(weight_to_json(w))
    save_json(path, payload, manifest)


# -- measures --------------------------------------------------------------


def measure_to_json(nu: CircleMeasure) -> dict:
    out: dict = {"atoms": [[a, m] for a, m in nu.atoms]}
    if nu.density is None:
        out["density"] = None
    elif isinstance(nu.density, ComplexDensity):
        out["density"] = {
            "type": "complex_samples",
            "re": [z.real for z in nu.density.samples],
            "im": [z.imag for z in nu.density.samples],
        }
    else:
        out["density"] = {"type": "weight", "weight": weight_to_json(nu.density)}
    out["selfsimilar"] = [
        {
            "base": [p.base.start, p.base.length],
            "base_closed": p.base.closed,
            "ratio": p.ratio,
            "arity": p.arity,
            "mass": p.mass,
        }
        for p in nu.cantor
    ]
    return out


def measure_from_json(data: dict) -> CircleMeasure:
    atoms = tuple((float(a), float(m)) for a, m in data.get("atoms", ()))
    density = None
    d = data.get("density")
    if d is not None:
        if d.get("type") == "complex_samples":
            samples = tuple(
                complex(re, im) for re, im in zip(d["re"], d["im"])
            )
            density = ComplexDensity(samples)
        elif d.get("type") == "weight":
            density = weight_from_json(d["weight"])
        else:
            raise InputError(f"unknown density type {d.get('type')!r}")
    parts = tuple(
        SelfSimilarPart(
            base=Arc(float(p["base"][0]), float(p["base"][1]),
                     closed=bool(p.get("base_closed", False))),
            ratio=float(p["ratio"]),
            arity=int(p["arity"]),
            mass=float(p["mass"]),
        )
        for p in data.get("selfsimilar", ())
    )
    return CircleMeasure(atoms=atoms, density=density, cantor=parts)


def load_measure(path) -> CircleMeasure:
    doc = load_json(path)
    _expect_kind(doc, "measure", path)
    return measure_from_json(doc)


def save_measure(path, nu: CircleMeasure, manifest=None) -> None:
    payload = {"kind": "measure"}
    payload.update(measure_to_json(nu))
    save_json(path, payload, manifest)


# -- analytic symbols ------------------------------------------------------


def b_symbol_from_json(data: dict) -> BSymbol:
    sing = data.get("singular")
    defect = data.get("defect_weight")
    declared = data.get("declared_unimodular")
    return BSymbol(
        blaschke_zeros=tuple(
            complex(re, im) for re, im in data.get("blaschke_zeros", ())
        ),
        singular=measure_from_json(sing) if sing else None,
        defect_weight=weight_from_json(defect) if defect else None,
        declared_unimodular=(
            arcset_from_json(declared) if declared is not None
            else ArcSet.full_circle()
        ),
    )


def load_b_symbol(path) -> BSymbol:
    doc = load_json(path)
    _expect_kind(doc, "b_symbol", path)
    return b_symbol_from_json(doc)


# -- radial weights, majorants, envelopes ----------------------------------


def radial_from_json(data: dict) -> RadialWeight:
    kind = data.get("family")
    if kind == "t1":
        return preset_t1(float(data["beta"]), float(data["c"]))
    if kind == "t2":
        return preset_t2(float(data["alpha"]), float(data["c"]))
    if kind == "linear":
        return linear()
    if kind == "tabulated":
        return tabulated_log(
            [float(t) for t in data["knots_t"]],
            [float(v) for v in data["knots_log_g"]],
        )
    raise InputError(f"unknown radial weight family {kind!r}")


def load_radial(path) -> RadialWeight:
    doc = load_json(path)
    _expect_kind(doc, "radial", path)
    return radial_from_json(doc)


def majorant_from_json(data: dict) -> Majorant:
    kind = data.get("family")
    if kind == "one_over_t":
        return majorant_one_over_t(float(data.get("domain", 2.0)))
    if kind == "from_g":
        return majorant_from_g(radial_from_json(data["g"]))
    raise InputError(f"unknown majorant family {kind!r}")


def load_majorant(path) -> Majorant:
    doc = load_json(path)
    _expect_kind(doc, "majorant", path)
    return majorant_from_json(doc)


def envelope_from_json(data: dict) -> EnvelopeFunction:
    return EnvelopeFunction(
        kind=data["shape"],
        c=float(data.get("c", 1.0)),
        beta=float(data.get("beta", 1.0)),
        d=float(data.get("d", 1.0)),
        knots_x=tuple(float(x) for x in data.get("knots_x", ())),
        knots_v=tuple(float(v) for v in data.get("knots_v", ())),
        increasing=bool(data.get("increasing", False)),
        concave=bool(data.get("concave", False)),
    )


def load_envelope(path) -> EnvelopeFunction:
    doc = load_json(path)
    _expect_kind(doc, "envelope", path)
    return envelope_from_json(doc)


# -- wizard profiles -------------------------------------------------------


def profile_to_json(prof: WizardProfile) -> dict:
    return {
        "n0": prof.n0,
        "a_const": prof.a_const,
        "gammas": list(prof.gammas),
        "gamma_suffix": list(prof.gamma_suffix),
        "tail_cert": prof.tail_cert,
        "knots_t": list(prof.knots_t),
        "knots_p": list(prof.knots_p),
        "interval": list(prof.interval),
    }


def profile_from_json(data: dict) -> WizardProfile:
    return WizardProfile(
        n0=int(data["n0"]),
        a_const=float(data["a_const"]),
        gammas=tuple(float(g) for g in data["gammas"]),
        gamma_suffix=tuple(float(s) for s in data["gamma_suffix"]),
        tail_cert=float(data["tail_cert"]),
        knots_t=tuple(float(t) for t in data["knots_t"]),
        knots_p=tuple(float(p) for p in data["knots_p"]),
        interval=tuple(float(v) for v in data.get("interval", (0.0, 2.0))),
    )


def load_profile(path) -> WizardProfile:
    doc = load_json(path)
    _expect_kind(doc, "wizard_profile", path)
    return profile_from_json(doc)


def save_profile(path, prof: WizardProfile, manifest=None) -> None:
    payload = {"kind": "wizard_profile"}
    payload.update(profile_to_json(prof))
    save_json(path, payload, manifest)


# -- obstacle functions ----------------------------------------------------


def obstacle_to_json(f: ObstacleFunction) -> dict:
    return {
        "level": f.level,
        "pieces": [
            {"lo": p.lo, "hi": p.hi, "rule": p.rule, "const": p.const}
            for p in f.pieces
        ],
        "cell_masses": [[j, m] for j, m in f.cell_masses],
        "mass_tol": f.mass_tol,
        "deep_mass_error": f.deep_mass_error,
        "weight": weight_to_json(f.weight),
    }


def obstacle_from_json(data: dict) -> ObstacleFunction:
    return ObstacleFunction(
        pieces=tuple(
            ObstaclePiece(
                lo=float(p["lo"]), hi=float(p["hi"]),
                rule=str(p["rule"]), const=float(p.get("const", 0.0)),
            )
            for p in data["pieces"]
        ),
        level=int(data["level"]),
        weight=weight_from_json(data["weight"]),
        cell_masses=tuple((int(j), float(m)) for j, m in data["cell_masses"]),
        mass_tol=float(data["mass_tol"]),
        deep_mass_error=float(data.get("deep_mass_error", 0.0)),
    )


# -- CSV -------------------------------------------------------------------


def write_csv(path, header, rows, manifest: dict | None = None) -> None:
    buf = _stdio.StringIO()
    if manifest is not None:
        for line in json.dumps(manifest, sort_keys=True).splitlines():
            buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    Path(path).write_text(buf.getvalue())


def _fmt(v):
    # np.float64 subclasses float but reprs as np.float64(...); unwrap first
    if isinstance(v, (float, np.floating)):
        return repr(float(v))  # round-trips exactly
    if isinstance(v, np.integer):
        return int(v)
    return v


def read_csv_rows(path) -> tuple[list[str], list[list[str]]]:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {p}")
    lines = [ln for ln in p.read_text().splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    rows = [r for r in rows if r]
    if not rows:
        raise InputError(f"{p}: empty CSV")
    return rows[0], rows[1:]


def read_complex_grid(path) -> np.ndarray:
    """Grid CSV: header (re, im) or a single complex-looking column."""
    header, rows = read_csv_rows(path)
    try:
        if len(header) >= 2 and header[0].strip().lower() in ("re", "x", "z_re"):
            return np.array([complex(float(r[0]), float(r[1])) for r in rows])
        # headerless two-column file: the "header" is the first data row
        data = [header] + rows
        return np.array([complex(float(r[0]), float(r[1])) for r in data])
    except (ValueError, IndexError) as exc:
        raise InputError(f"{path}: expected rows of re,im values ({exc})") from exc


def read_coefficients(path) -> np.ndarray:
    """Coefficient CSV with rows (n, re, im); n must be 0..N dense."""
    header, rows = read_csv_rows(path)
    if [h.strip().lower() for h in header[:3]] != ["n", "re", "im"]:
        rows = [header] + rows
    try:
        entries = sorted((int(r[0]), float(r[1]), float(r[2])) for r in rows)
    except (ValueError, IndexError) as exc:
        raise InputError(f"{path}: expected rows (n, re, im) ({exc})") from exc
    ns = [e[0] for e in entries]
    if ns != list(range(len(ns))):
        raise InputError(f"{path}: coefficient indices must be 0..N without gaps")
    return np.array([complex(re, im) for _, re, im in entries])


def write_coefficients(path, coeffs, manifest=None) -> None:
    rows = [(n, float(np.real(c)), float(np.imag(c))) for n, c in enumerate(coeffs)]
    write_csv(path, ("n", "re", "im"), rows, manifest)


def read_real_grid(path) -> np.ndarray:
    header, rows = read_csv_rows(path)
    try:
        float(header[0])
        rows = [header] + rows
    except ValueError:
        pass
    try:
        return np.array([float(r[0]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise InputError(f"{path}: expected one real value per row ({exc})") from exc


def json_ready(obj):
    """Recursively convert numpy scalars/arrays and complex values."""
    if isinstance(obj, dict):
        return {k: json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [json_ready(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


__all__ = [
    "SCHEMA_VERSION",
    "arcset_from_json",
    "arcset_to_json",
    "b_symbol_from_json",
    "envelope_from_json",
    "json_ready",
    "load_b_symbol",
    "load_envelope",
    "load_json",
    "load_majorant",
    "load_measure",
    "load_profile",
    "load_radial",
    "load_weight",
    "majorant_from_json",
    "measure_from_json",
    "measure_to_json",
    "obstacle_from_json",
    "obstacle_to_json",
    "profile_from_json",
    "profile_to_json",
    "radial_from_json",
    "read_coefficients",
    "read_complex_grid",
    "read_csv_rows",
    "read_real_grid",
    "run_manifest",
    "save_json",
    "save_measure",
    "save_profile",
    "save_weight",
    "sha256_of",
    "weight_from_json",
    "weight_to_json",
    "write_coefficients",
    "write_csv",
]
