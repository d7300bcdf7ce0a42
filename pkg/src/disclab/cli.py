"""Command-line entry point.

Exit codes: 0 success, 2 bad input or schema, 3 verdict withheld as
inconclusive (distinct from failure), 4 a computation missed its own
accuracy contract.  Every output file embeds a run manifest; rerunning
the same command on the same inputs reproduces the payload byte for
byte (only the manifest's wall_time_s field varies).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import time

import numpy as np

from . import __version__, io
from .core_residual import core_set, is_core_carrier, residual_set
from .errors import Inconclusive, InputError, NumericalFailure
from .hat import (build_profile, delta_sum_gap, exponent_identity_gap,
                  hat_boundary_integral_bound, power_p, profile_slope_bound,
                  profile_value, wizard_p)
from .legendre import (conjugate_pl, lower_envelope, power_decreasing,
                       upper_envelope)
from .measures import point_mass
from .montecarlo import HatDomain, verify_bt_bound
from .moments import moments_of_g
from .obstacle import build_obstacle_sequence, cyclic_witness, weak_star_error
from .oracle import (classify_invariant_subspace, has_permanence, hb_density,
                     hb_existence, is_cyclic, theorem_c_check)
from .seqspaces import (embedding_check, h1_star_norm, h2_norm, h2_star_norm,
                        norm_identity_check, pairing, rsd_classify,
                        toeplitz_coanalytic)
from .series import from_array
from .transforms import (cauchy_transform, clark_to_b, herglotz_integral,
                         outer_from_log_modulus, poisson_integral,
                         singular_inner, taylor_of)
from .weights import exp_inv_dist, log_weight_values


def _arcset_json(arcs):
    return io.arcset_to_json(arcs)


def _verdict_json(v) -> dict:
    # asdict recurses through the nested report dataclasses (ArcSet, Arc,
    # CoreReport, ...) down to plain dicts; json_ready finishes the floats
    return io.json_ready(dataclasses.asdict(v))


def _emit(args, payload: dict, manifest: dict) -> None:
    if getattr(args, "out", None):
        out = str(args.out)
        if out.endswith(".csv"):
            raise InputError(f"{out}: this subcommand writes JSON")
        io.save_json(out, payload, manifest)
    else:
        doc = dict(payload)
        doc["manifest"] = manifest
        print(json.dumps(io.json_ready(doc), indent=2, sort_keys=True))


def _manifest(args, command: str, inputs, t0: float, seed=None) -> dict:
    flags = {
        k: v for k, v in vars(args).items()
        if k not in ("func", "command") and v is not None and not callable(v)
    }
    return io.run_manifest(command, io.json_ready(flags), inputs, seed=seed,
                           wall_time_s=round(time.monotonic() - t0, 3))


# -- subcommand handlers ----------------------------------------------------


def _cmd_core(args) -> int:
    t0 = time.monotonic()
    w = io.load_weight(args.weight)
    rep = core_set(w, level=args.level)
    res = residual_set(w, level=args.level)
    carrier = is_core_carrier(w, level=args.level, tol=args.tol)
    payload = {
        "kind": "core_report",
        "core": _arcset_json(rep.core),
        "excluded": _arcset_json(rep.excluded),
        "singular_points": list(rep.singular_points),
        "inconclusive": [[a.start, a.length] for a in rep.inconclusive],
        "resolution_level": rep.resolution_level,
        "residual": {
            "arcs": _arcset_json(res.arcs),
            "points": list(res.points),
        },
        "carrier_verdict": {
            "verdict": carrier.verdict,
            "complement_integral": carrier.complement_integral,
            "error": carrier.error,
        },
    }
    _emit(args, io.json_ready(payload),
          _manifest(args, "core", [args.weight], t0))
    return 0


def _cmd_moments(args) -> int:
    t0 = time.monotonic()
    g = io.load_radial(args.G)
    seq = moments_of_g(g, args.N)
    rows = [(n, math.exp(lv)) for n, lv in enumerate(seq.log_values)]
    manifest = _manifest(args, "moments", [args.G], t0)
    io.write_csv(args.out or "moments.csv", ("n", "M_n"), rows, manifest)
    return 0


def _cmd_legendre(args) -> int:
    t0 = time.monotonic()
    env = io.load_envelope(args.f)
    xs = io.read_real_grid(args.grid)
    manifest = _manifest(args, f"legendre {args.mode}", [args.f, args.grid], t0)
    if args.mode == "lower":
        vals = lower_envelope(env, xs)
        rows = [(x, v, 0.0) for x, v in zip(xs, vals)]
    elif args.mode == "upper":
        vals = upper_envelope(env, xs)
        rows = [(x, v, 0.0) for x, v in zip(xs, vals)]
    else:  # invert: conjugate twice, report the per-point round-trip gap
        if env.kind == "sqrt":
            conj = power_decreasing(c=env.d * env.d / 4.0, beta=1.0)
        else:
            conj = conjugate_pl(env)
        back = lower_envelope(conj, xs)
        direct = env.values(xs)
        rows = [(x, b, abs(b - d)) for x, b, d in zip(xs, back, direct)]
    io.write_csv(args.out or "legendre.csv", ("x", "value", "errbound"),
                 rows, manifest)
    return 0


def _weight_singular_hints(w) -> tuple[float, ...]:
    if w.family == "power":
        return (w.anchor,)
    if w.family == "exp_inv_dist":
        return tuple(w.points)
    if w.family == "grid":
        return tuple(w.singular_points)
    if w.family == "product":
        hints: list[float] = []
        for f in w.factors:
            hints.extend(_weight_singular_hints(f))
        return tuple(hints)
    return ()


def _cmd_transform(args) -> int:
    t0 = time.monotonic()
    zs = io.read_complex_grid(args.at)
    inputs = [args.at]
    if args.op == "outer":
        if not args.weight:
            raise InputError("transform outer needs --weight for the boundary modulus")
        w = io.load_weight(args.weight)
        inputs.append(args.weight)
        hints = _weight_singular_hints(w)

        def phi(th):
            return log_weight_values(w, th)

        vals = [outer_from_log_modulus(phi, z, singular_points=hints) for z in zs]
    else:
        if not args.measure:
            raise InputError(f"transform {args.op} needs --measure")
        nu = io.load_measure(args.measure)
        inputs.append(args.measure)
        fn = {
            "cauchy": cauchy_transform,
            "poisson": poisson_integral,
            "herglotz": herglotz_integral,
            "inner": singular_inner,
            "clark": clark_to_b,
        }[args.op]
        vals = [fn(nu, z) for z in zs]
    rows = [
        (z.real, z.imag, complex(v).real, complex(v).imag)
        for z, v in zip(zs, vals)
    ]
    manifest = _manifest(args, f"transform {args.op}", inputs, t0)
    io.write_csv(args.out or "vals.csv",
                 ("z_re", "z_im", "val_re", "val_im"), rows, manifest)
    return 0


def _cmd_taylor(args) -> int:
    t0 = time.monotonic()
    try:
        op, path = args.of.split(":", 1)
    except ValueError:
        raise InputError("--of takes the form {cauchy|inner|clark}:measure.json")
    nu = io.load_measure(path)
    fn = {
        "cauchy": lambda z: cauchy_transform(nu, z),
        "inner": lambda z: singular_inner(nu, z),
        "clark": lambda z: clark_to_b(nu, z),
    }.get(op)
    if fn is None:
        raise InputError(f"unknown taylor target {op!r}")
    series = taylor_of(fn, args.N, args.r)
    manifest = _manifest(args, "taylor", [path], t0)
    io.write_coefficients(args.out or "taylor.csv", series.coeffs, manifest)
    return 0


def _cmd_seqspace(args) -> int:
    t0 = time.monotonic()
    mode = args.mode
    needed = {"pair": ("f", "g"), "toeplitz": ("symbol", "f"), "rsd": ("f",)}
    for flag in needed.get(mode, ()):
        if not getattr(args, flag):
            raise InputError(f"seqspace {mode} needs --{flag}")
    if mode == "pair":
        f = from_array(io.read_coefficients(args.f))
        g2 = from_array(io.read_coefficients(args.g))
        val = pairing(f, g2)
        _emit(args, {"kind": "pairing", "value": io.json_ready(complex(val))},
              _manifest(args, "seqspace pair", [args.f, args.g], t0))
        return 0
    if mode == "toeplitz":
        h = from_array(io.read_coefficients(args.symbol))
        f = from_array(io.read_coefficients(args.f))
        res = toeplitz_coanalytic(h, f, args.N)
        manifest = _manifest(args, "seqspace toeplitz", [args.symbol, args.f], t0)
        io.write_coefficients(args.out or "toeplitz.csv",
                              res.series.coeffs, manifest)
        print(f"tail_error: {res.tail_error:.6e}")
        return 0
    if mode == "rsd":
        f = from_array(io.read_coefficients(args.f))
        window = None
        if args.window:
            a, b = args.window.split(":")
            window = (int(a), int(b))
        v = rsd_classify(f, window=window)
        payload = {"kind": "rsd_verdict"}
        payload.update(io.json_ready(dataclasses.asdict(v)))
        _emit(args, payload, _manifest(args, "seqspace rsd", [args.f], t0))
        return 0
    # the remaining modes need a radial weight for the moment sequence
    if not args.G:
        raise InputError(f"seqspace {mode} needs --G (radial weight)")
    g = io.load_radial(args.G)
    if mode in ("norm", "identity") and not args.f:
        raise InputError(f"seqspace {mode} needs --f (coefficient CSV)")
    f = from_array(io.read_coefficients(args.f)) if args.f else None
    if mode == "norm":
        m = moments_of_g(g, max(f.degree_bound, 1))
        payload = {
            "kind": "norms",
            "h2": h2_norm(m, f),
            "h2_star": h2_star_norm(m, f),
            "h1_star": h1_star_norm(m, f),
        }
        _emit(args, io.json_ready(payload),
              _manifest(args, "seqspace norm", [args.G, args.f], t0))
        return 0
    if mode == "identity":
        gap = norm_identity_check(g, f)
        _emit(args, {"kind": "norm_identity", "relative_gap": gap},
              _manifest(args, "seqspace identity", [args.G, args.f], t0))
        return 0
    if mode == "embed":
        m = moments_of_g(g, args.N)
        rep = embedding_check(m, args.p, samples=args.samples, seed=args.seed)
        payload = {"kind": "embedding_report"}
        payload.update(io.json_ready(dataclasses.asdict(rep)))
        _emit(args, payload, _manifest(args, "seqspace embed", [args.G], t0,
                                       seed=args.seed))
        return 0
    raise InputError(f"unknown seqspace mode {mode!r}")


def _cmd_oracle(args) -> int:
    t0 = time.monotonic()
    mode = args.mode
    needed = {"cyclic": ("measure", "weight"), "permanence": ("measure", "weight"),
              "classify": ("measure", "weight"), "hb-exist": ("b",),
              "hb-dense": ("b",), "thmC": ("measure",)}
    for flag in needed.get(mode, ()):
        if not getattr(args, flag.replace("-", "_")):
            raise InputError(f"oracle {mode} needs --{flag}")
    if mode in ("cyclic", "permanence"):
        nu = io.load_measure(args.measure)
        w = io.load_weight(args.weight)
        fn = is_cyclic if mode == "cyclic" else has_permanence
        v = fn(nu, w, level=args.level, tol=args.tol)
        payload = {"kind": f"{mode}_verdict"}
        payload.update(_verdict_json(v))
        _emit(args, payload,
              _manifest(args, f"oracle {mode}", [args.measure, args.weight], t0))
        return 3 if v.verdict == "inconclusive" else 0
    if mode == "classify":
        nu = io.load_measure(args.measure)
        w = io.load_weight(args.weight)
        zeros = io.read_complex_grid(args.zeros) if args.zeros else np.array([])
        res = classify_invariant_subspace(tuple(zeros), nu, w, level=args.level)
        payload = {
            "kind": "classified_subspace",
            "restricted": io.measure_to_json(res.restricted),
            "dropped_atoms": io.json_ready(list(res.dropped_atoms)),
            "ambiguous_atoms": io.json_ready(list(res.ambiguous_atoms)),
            "partial_parts": len(res.partial_parts),
        }
        inputs = [args.measure, args.weight] + ([args.zeros] if args.zeros else [])
        _emit(args, payload, _manifest(args, "oracle classify", inputs, t0))
        return 0
    if mode in ("hb-exist", "hb-dense"):
        b = io.load_b_symbol(args.b)
        if mode == "hb-exist":
            v = hb_existence(b, level=args.level)
        else:
            v = hb_density(b, level=args.level, tol=args.tol)
        payload = {"kind": "hb_verdict"}
        payload.update(_verdict_json(v))
        _emit(args, payload, _manifest(args, f"oracle {mode}", [args.b], t0))
        return 3 if v.verdict == "inconclusive" else 0
    if mode == "thmC":
        g = io.load_measure(args.measure)
        rep = theorem_c_check(g, n_max=args.N, level=args.level)
        payload = {
            "kind": "consistency_report",
            "status": rep.status,
            "rsd": io.json_ready(dataclasses.asdict(rep.rsd)),
            "carrier_verdict": rep.carrier.verdict,
        }
        _emit(args, payload, _manifest(args, "oracle thmC", [args.measure], t0))
        return 0
    raise InputError(f"unknown oracle mode {mode!r}")


def _parse_levels(text: str) -> tuple[int, ...]:
    if ".." in text:
        a, b = text.split("..", 1)
        return tuple(range(int(a), int(b) + 1))
    return tuple(int(v) for v in text.split(","))


def _cmd_obstacle(args) -> int:
    t0 = time.monotonic()
    nu = io.load_measure(args.measure)
    w = io.load_weight(args.weight)
    levels = _parse_levels(args.levels)
    seq = [
        build_obstacle_sequence(nu, w, n, core_level=args.level,
                                mass_tol=args.tol)
        for n in levels
    ]
    payload = {
        "kind": "obstacle_sequence",
        "levels": list(levels),
        "functions": [io.obstacle_to_json(f) for f in seq],
    }
    if args.test_degree is not None:
        rows = weak_star_error(seq, nu, args.test_degree)
        payload["weak_star"] = [
            {"level": r.level, "max_error": r.max_error,
             "mass_error": r.mass_error}
            for r in rows
        ]
    _emit(args, io.json_ready(payload),
          _manifest(args, "obstacle", [args.measure, args.weight], t0))
    return 0


def _cmd_witness(args) -> int:
    t0 = time.monotonic()
    nu = io.load_measure(args.measure)
    w = io.load_weight(args.weight)
    zs = io.read_complex_grid(args.z)
    levels = _parse_levels(args.levels)
    table = cyclic_witness(nu, w, levels, zs, core_level=args.level,
                           mass_tol=args.tol)
    payload = {
        "kind": "witness_table",
        "levels": list(table.levels),
        "points": [io.json_ready(complex(p)) for p in table.points],
        "errors": [list(row) for row in table.errors],
    }
    _emit(args, io.json_ready(payload),
          _manifest(args, "witness", [args.measure, args.weight, args.z], t0))
    return 0


def _cmd_hat(args) -> int:
    t0 = time.monotonic()
    if args.mode == "build":
        F = io.load_majorant(args.F)
        prof = build_profile(F, eps=args.eps)
        series = hat_boundary_integral_bound(prof)
        manifest = _manifest(args, "hat build", [args.F], t0)
        path = args.out or "profile.json"
        payload = {"kind": "wizard_profile"}
        payload.update(io.profile_to_json(prof))
        payload["checks"] = {
            "delta_sum_gap": delta_sum_gap(prof),
            "exponent_identity_gap": exponent_identity_gap(
                prof, min(40, len(prof.gammas) - 1)),
            "boundary_series_total": series.total_bound,
        }
        io.save_json(path, io.json_ready(payload), manifest)
        return 0
    # verify
    if args.profile:
        prof = io.load_profile(args.profile)
        p_of = wizard_p(prof)
        lip = profile_slope_bound(prof)
        peak = float(profile_value(prof, np.array([1.0]))[0])
        inputs = [args.profile]
    elif args.power:
        p_of = power_p(args.scale, args.power)
        lip = args.scale * args.power  # slope maximal at the fold x = 1
        peak = args.scale
        inputs = []
    else:
        raise InputError("hat verify needs --profile or --power")
    domain = HatDomain(p_of=p_of, a=0.0, b=2.0, lip=lip)
    z0 = (args.z0_re if args.z0_re is not None else 1.0,
          args.z0_im if args.z0_im is not None else peak / 2.0)
    ts = tuple(args.t) if args.t else (0.5, 0.9)
    rows = verify_bt_bound(domain, z0, ts, args.walks, args.seed)
    manifest = _manifest(args, "hat verify", inputs, t0, seed=args.seed)
    io.write_csv(
        args.out or "bt_table.csv",
        ("t", "estimate", "std_error", "bound", "passed"),
        [(r.t, r.estimate, r.std_error, r.bound, int(r.passed)) for r in rows],
        manifest,
    )
    worst = [r for r in rows if not r.passed]
    print(f"{len(rows)} rows, {len(rows) - len(worst)} passed")
    return 0


def _cmd_demo(args) -> int:
    t0 = time.monotonic()
    if args.name != "example-1-5":
        raise InputError(f"unknown demo {args.name!r}; available: example-1-5")
    w = exp_inv_dist(points=(0.0,))
    v0 = is_cyclic(point_mass(0.0, 1.0), w, level=args.level, tol=args.tol)
    vpi = is_cyclic(point_mass(math.pi, 1.0), w, level=args.level, tol=args.tol)
    payload = {
        "kind": "demo",
        "name": args.name,
        "atom_at_0": _verdict_json(v0),
        "atom_at_pi": _verdict_json(vpi),
    }
    _emit(args, payload, _manifest(args, "demo", [], t0))
    if v0.verdict != "yes" or vpi.verdict != "no":
        raise NumericalFailure(
            f"demo expected yes/no, computed {v0.verdict}/{vpi.verdict}"
        )
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disclab",
        description="numerical lab for boundary weights and disk function theory",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, level=14, tol=None):
        p.add_argument("--level", type=int, default=level)
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)
        p.add_argument("--out")

    p = sub.add_parser("core", help="core/residual analysis of a weight")
    p.add_argument("--weight", required=True)
    common(p, tol=1e-8)
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("moments", help="moment sequence of a radial weight")
    p.add_argument("--G", required=True)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("legendre", help="envelopes and conjugation")
    p.add_argument("mode", choices=("lower", "upper", "invert"))
    p.add_argument("--f", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_legendre)

    p = sub.add_parser("transform", help="disk transforms of a measure")
    p.add_argument("op", choices=("cauchy", "poisson", "herglotz", "inner",
                                  "outer", "clark"))
    p.add_argument("--measure")
    p.add_argument("--weight")
    p.add_argument("--at", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("taylor", help="Taylor coefficients by sampling")
    p.add_argument("--of", required=True,
                   help="{cauchy|inner|clark}:measure.json")
    p.add_argument("--N", type=int, default=256)
    p.add_argument("--r", type=float, default=0.95)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_taylor)

    p = sub.add_parser("seqspace", help="coefficient sequence spaces")
    p.add_argument("mode", choices=("norm", "pair", "toeplitz", "rsd",
                                    "identity", "embed"))
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--G")
    p.add_argument("--symbol")
    p.add_argument("--window")
    p.add_argument("--p", type=float, default=0.75)
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_seqspace)

    p = sub.add_parser("oracle", help="cyclicity/density decision oracles")
    p.add_argument("mode", choices=("cyclic", "permanence", "classify",
                                    "hb-exist", "hb-dense", "thmC"))
    p.add_argument("--measure")
    p.add_argument("--weight")
    p.add_argument("--b")
    p.add_argument("--zeros")
    p.add_argument("--N", type=int, default=512)
    common(p, tol=1e-10)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("obstacle", help="dyadic obstacle approximations")
    p.add_argument("--measure", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--levels", default="4..14")
    p.add_argument("--test-degree", type=int, default=None)
    common(p, tol=1e-10)
    p.set_defaults(func=_cmd_obstacle)

    p = sub.add_parser("witness", help="cyclicity witness table")
    p.add_argument("--measure", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--levels", default="4..14")
    common(p, tol=1e-10)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("hat", help="wizard-hat profiles and decay bounds")
    p.add_argument("mode", choices=("build", "verify"))
    p.add_argument("--F")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--profile")
    p.add_argument("--power", type=float)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--walks", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--t", type=float, action="append")
    p.add_argument("--z0-re", type=float, dest="z0_re")
    p.add_argument("--z0-im", type=float, dest="z0_im")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_hat)

    p = sub.add_parser("demo", help="built-in reproductions")
    p.add_argument("name")
    common(p, tol=1e-8)
    p.set_defaults(func=_cmd_demo)

    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code or 0
        return 2 if code not in (0,) else 0
    try:
        return args.func(args)
    except Inconclusive as exc:
        doc = {"kind": "inconclusive", "message": str(exc),
               "payload": io.json_ready(exc.payload)}
        print(json.dumps(doc, indent=2, sort_keys=True), file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"disclab: input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"disclab: input error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"disclab: numerical failure: {exc}", file=sys.stderr)
        return 4


def main(argv=None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
