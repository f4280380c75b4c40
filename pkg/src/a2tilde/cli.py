"""Command line entry point: ``a2tilde <group> <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import gf, grouppres, linkcheck, pds, plane, table, tripres
from .errors import (A2Error, NotEquivalentError, NotRelatedError,
                     RowMismatchError, TooLargeError)

OK, FAIL, USAGE, INTERNAL = 0, 1, 2, 3
MAX_Q = 13


class UsageError(Exception):
    pass


def _csv(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers: {text!r}")


def _q(text: str) -> int:
    q = int(text)
    try:
        gf.prime_power(q)
    except A2Error as e:
        raise argparse.ArgumentTypeError(str(e))
    return q


def _check_q(q: int, limit: int | None):
    if limit is not None and q > limit:
        raise UsageError(f"q={q} exceeds --max-q {limit}")


def _emit(args, data, text: str | None = None) -> None:
    if getattr(args, "format", "json") == "text" and text is not None:
        out = text.rstrip("\n") + "\n"
    else:
        out = json.dumps(data, sort_keys=True, indent=1) + "\n"
    dest = getattr(args, "out", None)
    if dest:
        Path(dest).write_text(out)
    else:
        sys.stdout.write(out)


def _load_tripres(path) -> tripres.TrianglePres:
    try:
        return tripres.TrianglePres.from_json(Path(path).read_text())
    except (OSError, json.JSONDecodeError, KeyError) as e:
        raise UsageError(f"cannot read triangle presentation {path}: {e}")


def _pds_arg(args) -> pds.DiffSet:
    _check_q(args.q, args.max_q)
    return pds.as_pds(args.set, args.q)


# -- gf -----------------------------------------------------------------------

def cmd_gf_info(args):
    ctx = gf.make_field(args.p, args.n, args.modulus)
    _check_q(ctx.q, args.max_q)
    exps = gf.trace_zero_exponents(ctx)
    data = dict(ctx.to_json(), q=ctx.q, trace_zero=exps)
    _emit(args, data, f"GF({ctx.q}^3) modulus={list(ctx.modulus)} "
                      f"zeta={list(ctx.zeta)}\ntrace zero: {exps}")
    return OK


# -- pds ----------------------------------------------------------------------

def cmd_pds_gen(args):
    _check_q(args.q, args.max_q)
    p, n = gf.prime_power(args.q)
    ctx = gf.make_field(p, n, args.modulus)
    if args.method == "trace":
        D = pds.singer_trace_pds(ctx)
    else:
        D = pds.halberstam_laxton_pds(ctx)
    _emit(args, dict(D.to_json(), field=ctx.to_json()), " ".join(map(str, D.elems)))
    return OK


def cmd_pds_verify(args):
    _check_q(args.q, args.max_q)
    chk = pds.verify_pds(args.set, args.q)
    data = {"ok": chk.ok, "size_ok": chk.size_ok, "duplicated": chk.duplicated,
            "missing": chk.missing}
    _emit(args, data, "ok" if chk.ok else
          f"not a PDS: duplicated={chk.duplicated} missing={chk.missing}")
    return OK if chk.ok else FAIL


def cmd_pds_multipliers(args):
    D = _pds_arg(args)
    rep = pds.multiplier_report(D)
    text = "\n".join(f"m={m} shift={s}" for m, s in sorted(rep.multipliers.items()))
    _emit(args, rep.to_json(), text)
    return OK


def cmd_pds_enum_fixed(args):
    _check_q(args.q, args.max_q)
    sets = pds.enumerate_pds_fixed_by_q(args.q)
    _emit(args, {"q": args.q, "count": len(sets), "sets": [list(D.elems) for D in sets]},
          "\n".join(" ".join(map(str, D.elems)) for D in sets))
    return OK


def cmd_pds_transform(args):
    _check_q(args.q, args.max_q)
    A, B = pds.as_pds(args.from_set, args.q), pds.as_pds(args.to_set, args.q)
    try:
        u, s = pds.find_transformation(A, B)
    except NotRelatedError as e:
        _emit(args, {"related": False, "message": str(e)}, str(e))
        return FAIL
    _emit(args, {"related": True, "u": u, "s": s}, f"to = {u}*from + {s}")
    return OK


# -- plane --------------------------------------------------------------------

def cmd_plane_check(args):
    pl = plane.build_plane(_pds_arg(args))
    ax = plane.check_axioms(pl)
    g = plane.bipartite_girth(plane.incidence_graph(pl))
    data = {"two_points_one_line": ax.two_points_one_line,
            "two_lines_one_point": ax.two_lines_one_point,
            "quadrangle": list(ax.quadrangle) if ax.quadrangle else None,
            "line_sizes_ok": ax.line_sizes_ok, "point_degrees_ok": ax.point_degrees_ok,
            "girth": g, "ok": ax.ok and g == 6}
    _emit(args, data, "ok" if data["ok"] else json.dumps(data))
    return OK if data["ok"] else FAIL


def cmd_plane_graph(args):
    pl = plane.build_plane(_pds_arg(args))
    g = plane.incidence_graph(pl)
    if not args.out:
        raise UsageError("plane graph needs --out FILE")
    plane.write_graph(g, args.out, args.graph_format)
    return OK


# -- tripres ------------------------------------------------------------------

def cmd_tripres_build(args):
    D = _pds_arg(args)
    decomp = tripres.orbit_decompose(D)
    ms = tripres.resolve_m_choice(decomp, args.m)
    if len(set(ms)) > 1:
        print("warning: mixing q- and q^2-orbits may give a presentation outside "
              "the arithmetic family", file=sys.stderr)
    T = tripres.construct(D, ms)
    _emit(args, T.to_json(), T.dumps())
    return OK


def cmd_tripres_verify(args):
    T = _load_tripres(args.file)
    res = tripres.verify(T)
    data = {"ok": res.ok, "condition": res.condition,
            "witness": res.witness, "message": res.message}
    _emit(args, data, "ok" if res.ok else f"condition {res.condition}: {res.message}")
    return OK if res.ok else FAIL


def cmd_tripres_variants(args):
    D = _pds_arg(args)
    vs = tripres.enumerate_variants(D)
    _emit(args, {"count": len(vs), "presentations": [T.to_json() for T in vs]},
          "\n".join(T.dumps() for T in vs))
    return OK


def cmd_tripres_all(args):
    _check_q(args.q, args.max_q)
    elems = args.set or table.TABLE[args.q][0]
    alpha = tripres.Alpha.standard(pds.as_pds(elems, args.q))
    try:
        found = tripres.brute_force_all(alpha, max_q=args.brute_max_q)
    except TooLargeError as e:
        raise UsageError(str(e))
    _emit(args, {"count": len(found), "presentations": [T.to_json() for T in found]},
          f"{len(found)} presentations")
    return OK


def cmd_tripres_equiv(args):
    A, B = _load_tripres(args.a), _load_tripres(args.b)
    try:
        w = tripres.equivalent(A, B)
    except NotEquivalentError as e:
        _emit(args, {"equivalent": False, "message": str(e)}, str(e))
        return FAIL
    _emit(args, dict(w.to_json(), equivalent=True), json.dumps(w.to_json()))
    return OK


# -- groups and links ---------------------------------------------------------

_BUILDERS = {
    "gammaT": grouppres.gamma_T,
    "gammaTp": grouppres.extend_by_p,
    "tilde": grouppres.extend_by_ps,
    "singer": lambda T: grouppres.singer_lattice(T.alpha.plane.base_line),
    "rhombus": grouppres.rhombus_presentation,
}


def cmd_group_emit(args):
    T = _load_tripres(args.input)
    pres = _BUILDERS[args.kind](T)
    text = grouppres.export(pres, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_link_check(args):
    T = _load_tripres(args.input)
    rep = linkcheck.check_link(T)
    _emit(args, rep.to_json(), "ok" if rep.ok else json.dumps(rep.to_json()))
    return OK if rep.ok else FAIL


def cmd_link_cycles(args):
    T = _load_tripres(args.input)
    cyc = linkcheck.six_cycles(linkcheck.build_link(T))
    data = {"count": len(cyc)}
    if not args.count_only:
        data["cycles"] = [[f"{a}{i}" for a, i in c] for c in cyc]
    _emit(args, data, str(len(cyc)) if args.count_only else
          "\n".join(" ".join(c) for c in data["cycles"]))
    return OK


# -- table and pipeline -------------------------------------------------------

def cmd_reproduce(args):
    rows = table.reproduce_paper_table(strict=False)
    ok = all(r.ok for r in rows)
    text = "\n".join(f"q={r.q:<3} {'PASS' if r.ok else 'FAIL'} "
                     f"{' '.join('<' + ','.join(map(str, o)) + '>' for o in r.computed)}"
                     for r in rows)
    _emit(args, {"ok": ok, "rows": [r.to_json() for r in rows]}, text)
    return OK if ok else FAIL


def cmd_pipeline(args):
    _check_q(args.q, args.max_q)
    out = args.out or f"pipeline_q{args.q}"
    man = table.pipeline(args.q, out)
    text = (f"q={args.q} f={man['f']} t={man['t']} ok={man['ok']} "
            f"({man['seconds']}s) -> {out}")
    print(json.dumps(man, sort_keys=True, indent=1) if args.format == "json" else text)
    return OK if man["ok"] else FAIL


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    common.add_argument("--max-q", type=int, default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="a2tilde", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--out", default=None)
    ap.add_argument("--max-q", type=int, default=MAX_Q,
                    help="largest q accepted (default 13)")
    top = ap.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, parents=(common,), **kw):
        p = sub.add_parser(name, parents=list(parents), **kw)
        p.set_defaults(func=func)
        return p

    g = top.add_parser("gf").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "info", cmd_gf_info)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--modulus", type=_csv)

    g = top.add_parser("pds").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "gen", cmd_pds_gen)
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--method", choices=("trace", "span"), default="trace")
    p.add_argument("--modulus", type=_csv)
    for name, func in (("verify", cmd_pds_verify), ("multipliers", cmd_pds_multipliers)):
        p = leaf(g, name, func)
        p.add_argument("--set", type=_csv, required=True)
        p.add_argument("--q", type=_q, required=True)
    p = leaf(g, "enum-fixed", cmd_pds_enum_fixed)
    p.add_argument("--q", type=_q, required=True)
    p = leaf(g, "transform", cmd_pds_transform)
    p.add_argument("--from", dest="from_set", type=_csv, required=True)
    p.add_argument("--to", dest="to_set", type=_csv, required=True)
    p.add_argument("--q", type=_q, required=True)

    g = top.add_parser("plane").add_subparsers(dest="cmd", required=True)
    for name, func in (("check", cmd_plane_check), ("graph", cmd_plane_graph)):
        p = leaf(g, name, func)
        p.add_argument("--set", type=_csv, required=True)
        p.add_argument("--q", type=_q, required=True)
    p.add_argument("--graph-format", choices=("dot", "edges"), default=None)

    g = top.add_parser("tripres").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "build", cmd_tripres_build)
    p.add_argument("--set", type=_csv, required=True)
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--m", default="q", help="q, q2 or MASK:<bits> (bit i: q^2 on orbit i)")
    p = leaf(g, "verify", cmd_tripres_verify)
    p.add_argument("--file", required=True)
    p = leaf(g, "variants", cmd_tripres_variants)
    p.add_argument("--set", type=_csv, required=True)
    p.add_argument("--q", type=_q, required=True)
    p = leaf(g, "all", cmd_tripres_all)
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--set", type=_csv)
    p.add_argument("--brute-max-q", type=int, default=3)
    p = leaf(g, "equiv", cmd_tripres_equiv)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    g = top.add_parser("group").add_subparsers(dest="cmd", required=True)
    gp = argparse.ArgumentParser(add_help=False)
    gp.add_argument("--out", default=argparse.SUPPRESS)
    p = leaf(g, "emit", cmd_group_emit, parents=(gp,))
    p.add_argument("--kind", choices=tuple(_BUILDERS), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("gap", "magma", "json"), default="gap")

    g = top.add_parser("link").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "check", cmd_link_check)
    p.add_argument("--in", dest="input", required=True)
    p = leaf(g, "cycles", cmd_link_cycles)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--count-only", action="store_true")

    leaf(top, "reproduce-paper", cmd_reproduce)
    p = leaf(top, "pipeline", cmd_pipeline)
    p.add_argument("--q", type=_q, required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except RowMismatchError as e:
        print(f"mismatch: {e}", file=sys.stderr)
        return FAIL
    except A2Error as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except AssertionError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
