"""Command line front end.

One executable, `eternal-kit`, with a subcommand per capability:

    branch      equilibrium branches (n, h) -> (lambda, profile data)
    spectrum    linearization eigenvalues and Morse index
    resonance   exact no-identical-resonance certificates
    evolve      complex-time rays, blow-up detection
    boundary    analyticity boundary scan r*(s)
    ode         scalar polynomial ODEs in complex time
    portrait    compactified phase portraits and tree extraction
    trees       planar tree census (counts, enumeration, codes)
    waves       traveling-wave parameters and resonant speeds

Every subcommand writes a flat table, CSV by default or JSON with
--format json; floats are printed with 17 significant digits so output
is byte-reproducible.  --out FILE writes the table to FILE and a run
descriptor (arguments, tolerances, outputs; no timestamp) to
FILE.run.json, so a run can be re-executed and compared byte for byte.
Exit codes: 0 success, 1 domain error, 2 convergence or truncation
failure, 64 usage error.  The environment variable ETERNAL_KIT_TOL, when
set, becomes the default for each subcommand's main tolerance flag.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, elliptic, evolve, portraits, resonance, scalar_ode, spectrum, waves
from .errors import (
    ConvergenceError,
    DegenerateFieldError,
    DomainError,
    TruncationError,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _emit(args, columns, rows, meta):
    if args.format == "json":
        payload = {"columns": list(columns), "rows": [list(r) for r in rows], "meta": meta}
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str) + "\n"
    else:
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        descriptor = {
            "tool": "eternal-kit",
            "version": __version__,
            "subcommand": args.subcommand,
            "argv": args._argv,
            "params": {
                k: v for k, v in sorted(vars(args).items())
                if not k.startswith("_") and k not in ("func", "out")
            },
            "outputs": [args.out],
            "meta": meta,
        }
        with open(args.out + ".run.json", "w") as fh:
            fh.write(json.dumps(descriptor, sort_keys=True, separators=(",", ":"), default=str) + "\n")
    else:
        sys.stdout.write(text)
        if meta and args.format == "csv":
            for k in sorted(meta):
                print(f"{k}={meta[k]}", file=sys.stderr)


def _parse_complex(re_str, im: float = 0.0) -> complex:
    return complex(float(re_str), float(im))


def _initial_field(args, lam):
    if args.profile:
        n_str, h_str = args.profile.split(",")
        bp = elliptic.branch_point(int(n_str), float(h_str))
        return evolve.cosine_field(bp.profile, N=args.modes), bp.lam
    if args.mono is not None:
        return evolve.monochromatic_field(complex(args.mono), N=args.modes), lam
    w0 = _parse_complex(args.constant, args.imag)
    return evolve.constant_field(w0, N=args.modes), lam


# ---------------------------------------------------------------------------
# subcommands


def _cmd_branch(args):
    if args.fig1:
        ns = args.n or [1, 2, 3]
        hs = np.linspace(-args.h_max, args.h_max, args.points)
    else:
        ns = args.n or [1]
        if args.h is not None:
            hs = np.array([args.h])
        else:
            hs = np.linspace(-args.h_max, args.h_max, args.points)
    rows = []
    for n in ns:
        for h in hs:
            bp = elliptic.branch_point(n, float(h), tail_tol=args.tail_tol)
            rows.append((n, float(h), bp.theta, bp.lam, bp.W_at_0, n))
    return ["n", "h", "theta", "lambda", "w_at_0", "morse_index"], rows, {}


def _cmd_spectrum(args):
    if args.lam is not None:
        mus = spectrum.homogeneous_spectrum(args.lam, count=args.count,
                                            equilibrium=args.equilibrium)
        morse = spectrum.morse_index_homogeneous(args.lam) if args.equilibrium == "upper" else None
        rows = [(k, float(mu), "" if morse is None else morse) for k, mu in enumerate(mus)]
        return ["k", "mu", "morse_index"], rows, {"lambda": args.lam}
    bp = elliptic.branch_point(args.n, args.h, tail_tol=args.tail_tol)
    rep = spectrum.eigen(bp.profile)
    rows = [(k, float(mu), rep.morse_index)
            for k, mu in enumerate(rep.eigenvalues[: args.count])]
    meta = {"lambda": bp.lam, "morse_index": rep.morse_index,
            "refinement_defect": rep.refinement_defect}
    return ["k", "mu", "morse_index"], rows, meta


def _resonance_row(n):
    cert = resonance.identical_resonance_check(n)
    wit = ";".join(f"j={j} m={m}" for j, m in cert.witnesses)
    return (cert.n, cert.verdict, cert.asserted, cert.search_bound,
            "+".join(str(o) for o in cert.orders), cert.order1_vacuous, wit)


def _cmd_resonance(args):
    if args.n is not None:
        ns, asserted_upto = [args.n], args.n
    else:
        ns = list(range(1, args.n_max + 2))
        asserted_upto = args.n_max
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_resonance_row, ns))
    else:
        rows = [_resonance_row(n) for n in ns]
    rows = [r[:2] + (r[2] and r[0] <= asserted_upto,) + r[3:] for r in rows]
    cols = ["n", "verdict", "asserted", "search_bound", "orders", "order1_vacuous", "witnesses"]
    return cols, rows, {}


def _cmd_evolve(args):
    lam = args.lam
    field0, lam = _initial_field(args, lam)
    field0.theta = args.theta
    rec = evolve.detect_blowup(
        field0, lam, args.r_max,
        norm_threshold=args.norm_threshold, err_target=args.err_target,
    )
    h = rec.history
    rows = [
        (float(r), float(h1), float(sup), float(w0.real), float(w0.imag))
        for r, h1, sup, w0 in zip(h["r"], h["h1"], h["sup"], h["w0"])
    ]
    meta = {
        "diverged": rec.diverged, "reason": rec.reason,
        "r_star_lower": rec.r_star_lower, "final_h1": rec.final_h1,
        "h1_growth_ok": rec.h1_growth_ok, "sectorial": rec.sectorial,
        "near_resonant_lambda": rec.near_resonant_lambda, "lambda": lam,
    }
    return ["r", "h1", "sup", "re_w0", "im_w0"], rows, meta


def _cmd_boundary(args):
    lam = args.lam
    field0, lam = _initial_field(args, lam)
    svals = np.linspace(args.s_min, args.s_max, args.points)
    scan = evolve.analyticity_boundary(
        field0, svals, lam,
        r_cap=args.r_cap, err_target=args.err_target,
    )
    rows = [
        (b.s, "" if b.r_star is None else float(b.r_star), b.defined, b.censored, b.reason)
        for b in scan.samples
    ]
    meta = {"lambda": lam, "r_cap": scan.r_cap}
    if scan.corner:
        meta["corner_r"], meta["corner_s"] = scan.corner
    return ["s", "r_star", "defined", "censored", "reason"], rows, meta


def _ode_field(args):
    if args.cyclotomic:
        return scalar_ode.PolyField.cyclotomic(args.cyclotomic)
    if args.roots:
        rts = [complex(float(p.split(",")[0]), float(p.split(",")[1]))
               for p in args.roots.split(";")]
        return scalar_ode.PolyField(rts)
    return scalar_ode.PolyField.quadratic()


def _cmd_ode(args):
    if args.fig2:
        return _fig2_rows()
    fld = _ode_field(args)
    if args.lattice:
        lat = scalar_ode.period_lattice(fld)
        rows = [(j, g.real, g.imag) for j, g in enumerate(lat.generators)]
        meta = {"closure": lat.closure,
                "degenerate_subsets": str(lat.degenerate_subsets)}
        return ["j", "re_generator", "im_generator"], rows, meta
    w0 = _parse_complex(args.w0.split(",")[0], float(args.w0.split(",")[1]))
    path = [1j * args.t_end] if args.imag_time else [args.t_end]
    traj = scalar_ode.integrate(fld, w0, path, t_eval_per_unit=args.samples_per_unit)
    rows = [
        (float(s), float(t.real), float(t.imag), float(w.real), float(w.imag))
        for s, t, w in zip(traj.sigma, traj.t, traj.w)
    ]
    meta = {"diverged": traj.diverged,
            "sup_crossings": str([float(s) for s, _t in traj.sup_crossings]),
            "chart_swaps": traj.chart_swaps}
    return ["sigma", "re_t", "im_t", "re_w", "im_w"], rows, meta


def _fig2_rows():
    fld = scalar_ode.PolyField.quadratic()
    rows = []
    for v in (0.0, 0.25, 0.75, 1.5, 3.0, -0.25, -0.75, -1.5, -3.0):
        pieces = []
        for sgn in (-1.0, 1.0):
            traj = scalar_ode.integrate(fld, 1j * v, [sgn * 2.5], t_eval_per_unit=40)
            pts = list(zip(sgn * traj.sigma, traj.w))
            pieces.extend(pts[::-1] if sgn < 0 else pts[1:] if pieces else pts)
        for t, w in pieces:
            rows.append(("blue", v, float(t), float(w.real), float(w.imag)))
    for u in (0.3, 0.6, 0.9, 1.5, 2.0, -0.3, -0.6, -0.9, -1.5, -2.0):
        traj = scalar_ode.integrate(fld, complex(u), [1j * math.pi], t_eval_per_unit=60)
        for s, w in zip(traj.sigma, traj.w):
            rows.append(("orange", u, float(s), float(w.real), float(w.imag)))
    return ["family", "member", "t", "re_w", "im_w"], rows, {}


def _portrait_field(args):
    if args.random_quartic:
        rng = np.random.default_rng(args.seed)
        pts = rng.normal(size=4) + 1j * rng.normal(size=4)
        return scalar_ode.PolyField(pts)
    if args.roots:
        rts = [complex(float(p.split(",")[0]), float(p.split(",")[1]))
               for p in args.roots.split(";")]
        return scalar_ode.PolyField(rts)
    return scalar_ode.PolyField.cyclotomic(args.cyclotomic or 3)


def _cmd_portrait(args):
    if args.fig3:
        return _fig3_rows()
    fld = _portrait_field(args)
    graph = portraits.trace_and_extract(fld)
    rows = []
    for j, (root, kind) in enumerate(zip(graph.roots, graph.classes)):
        rows.append(("root", j, _fmt(float(root.real)), _fmt(float(root.imag)), kind))
    for sep in graph.separatrices:
        tgt = "" if sep.target is None else sep.target
        rows.append(("saddle", sep.saddle, sep.kind, str(tgt),
                     "boundary" if sep.boundary_return else "interior"))
    if graph.tree is not None:
        for a in sorted(graph.tree.neighbors):
            for b in graph.tree.neighbors[a]:
                if a < b:
                    rows.append(("edge", a, str(b), "", ""))
        rows.append(("chord", 0, graph.chord_code, "", ""))
    meta = {"non_morse": graph.non_morse,
            "saddle_connections": len(graph.saddle_connections)}
    if args.random_quartic:
        meta["seed"] = args.seed
    return ["row", "index", "a", "b", "c"], rows, meta


def _fig3_rows():
    rows = []
    for d in (3, 4):
        fld = scalar_ode.PolyField.cyclotomic(d)
        graph = portraits.trace_and_extract(fld)
        for sep in graph.separatrices:
            for t, p in zip(sep.times, sep.points):
                rows.append((d, sep.saddle, "p", float(t), float(p.real),
                             float(p.imag), "separatrix"))
        for j, root in enumerate(fld.roots):
            traj = scalar_ode.integrate(fld, root + 0.25, [3.0], t_eval_per_unit=50)
            for s, w in zip(traj.sigma, traj.w):
                rows.append((d, j, "w", float(s), float(w.real), float(w.imag), "orbit"))
    return ["d", "saddle", "chart", "t", "re", "im", "kind"], rows, {}


def _cmd_trees(args):
    if args.codes is not None:
        diagrams = portraits.enumerate_diagrams(args.codes)
        rows = [(args.codes, dg.code()) for dg in diagrams]
        return ["d", "code"], rows, {"count": len(diagrams)}
    if args.d is not None:
        args.d_min = args.d_max = args.d
    rows = []
    for d in range(args.d_min, args.d_max + 1):
        cnt = portraits.count_portraits(d)
        if args.enumerate:
            enum = len(portraits.enumerate_diagrams(d))
            rows.append((d, cnt, enum, cnt == enum))
        else:
            rows.append((d, cnt))
    cols = ["d", "count", "enumerated", "match"] if args.enumerate else ["d", "count"]
    return cols, rows, {}


def _cmd_waves(args):
    if args.resonant is not None:
        rows = [(m, float(c)) for m, c in waves.resonant_speeds(args.resonant)]
        return ["m", "c_m"], rows, {"c_critical": waves.C_CRITICAL}
    if args.soliton:
        xs = np.linspace(-args.xi_max, args.xi_max, args.points)
        rows = [(float(x), float(waves.soliton(x))) for x in xs]
        return ["xi", "W"], rows, {}
    cs = np.linspace(args.c_min, args.c_max, args.points)
    rows = []
    for c in cs:
        wp = waves.wave_params(float(c))
        mu1, mu2 = wp.mu_plus
        rows.append((float(c), wp.mu_minus, wp.p, mu1.real, mu1.imag,
                     mu2.real, mu2.imag, wp.oscillatory))
    cols = ["c", "mu_minus", "p", "re_mu_plus_1", "im_mu_plus_1",
            "re_mu_plus_2", "im_mu_plus_2", "oscillatory"]
    return cols, rows, {"c_critical": waves.C_CRITICAL}


# ---------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="write table here plus OUT.run.json descriptor")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers where supported")


def _add_field_args(p):
    p.add_argument("--constant", default="0.0", help="Re of constant initial data")
    p.add_argument("--imag", type=float, default=0.0, help="Im of constant initial data")
    p.add_argument("--profile", default=None, help="N,H equilibrium initial data")
    p.add_argument("--mono", default=None, help="amplitude of e^(2 pi i x) initial data")
    p.add_argument("--modes", type=int, default=256)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)


def build_parser(env_tol: float | None = None) -> _Parser:
    parser = _Parser(prog="eternal-kit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"eternal-kit {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    tol = env_tol

    p = sub.add_parser("branch", help="equilibrium branch sweep")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--h-max", type=float, default=0.12)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--tail-tol", type=float, default=tol or 1e-13)
    p.add_argument("--fig1", action="store_true", help="branch diagram sweep (n = 1, 2, 3)")
    p.set_defaults(func=_cmd_branch)

    p = sub.add_parser("spectrum", help="linearization eigenvalues")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--h", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="homogeneous state instead of a branch profile")
    p.add_argument("--equilibrium", choices=("upper", "lower"), default="upper")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--tail-tol", type=float, default=tol or 1e-13)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("resonance", help="no-identical-resonance certificates")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=_cmd_resonance)

    p = sub.add_parser("evolve", help="complex-time ray with blow-up detection")
    _add_field_args(p)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=1.0)
    p.add_argument("--norm-threshold", type=float, default=1e8)
    p.add_argument("--err-target", type=float, default=tol or 1e-9)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("boundary", help="analyticity boundary scan")
    _add_field_args(p)
    p.add_argument("--s-min", type=float, default=0.0)
    p.add_argument("--s-max", type=float, default=0.5)
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--r-cap", type=float, default=2.0)
    p.add_argument("--err-target", type=float, default=tol or 1e-9)
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("ode", help="scalar polynomial ODE in complex time")
    p.add_argument("--quadratic", action="store_true")
    p.add_argument("--cyclotomic", type=int, default=None)
    p.add_argument("--roots", default=None, help='"re,im;re,im;..."')
    p.add_argument("--w0", default="0.0,0.0")
    p.add_argument("--t-end", type=float, default=5.0)
    p.add_argument("--imag-time", action="store_true")
    p.add_argument("--samples-per-unit", type=int, default=20)
    p.add_argument("--lattice", action="store_true", help="period lattice and closure")
    p.add_argument("--fig2", action="store_true", help="real/imaginary-time orbit families")
    p.set_defaults(func=_cmd_ode)

    p = sub.add_parser("portrait", help="compactified phase portrait")
    p.add_argument("--cyclotomic", type=int, default=None)
    p.add_argument("--roots", default=None)
    p.add_argument("--random-quartic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fig3", action="store_true", help="separatrix traces for d = 3, 4")
    p.set_defaults(func=_cmd_portrait)

    p = sub.add_parser("trees", help="planar tree census")
    p.add_argument("--d", type=int, default=None, help="single degree (same as --d-min D --d-max D)")
    p.add_argument("--d-min", type=int, default=2)
    p.add_argument("--d-max", type=int, default=12)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--codes", type=int, default=None, help="list canonical codes for this d")
    p.set_defaults(func=_cmd_trees)

    p = sub.add_parser("waves", help="traveling-wave parameters")
    p.add_argument("--c-min", type=float, default=0.0)
    p.add_argument("--c-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=13)
    p.add_argument("--resonant", type=int, default=None, help="list c_m for m <= this")
    p.add_argument("--soliton", action="store_true")
    p.add_argument("--xi-max", type=float, default=3.0)
    p.set_defaults(func=_cmd_waves)

    for sp in sub.choices.values():
        _add_common(sp)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    env_tol = None
    if os.environ.get("ETERNAL_KIT_TOL"):
        try:
            env_tol = float(os.environ["ETERNAL_KIT_TOL"])
        except ValueError:
            print("ETERNAL_KIT_TOL must be a float", file=sys.stderr)
            return 64
    parser = build_parser(env_tol)
    try:
        args = parser.parse_args(argv)
        if args.subcommand == "resonance" and args.n is None and args.n_max is None:
            raise _UsageError("resonance needs --n or --n-max")
        args._argv = argv
        columns, rows, meta = args.func(args)
        _emit(args, columns, rows, meta)
        return 0
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    except (DomainError, DegenerateFieldError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    except (TruncationError, ConvergenceError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
