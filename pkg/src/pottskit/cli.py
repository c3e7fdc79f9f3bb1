"""Command-line interface: ``pottskit eval | verify | graphs | star-triangle | tetra``.

Exit codes: 0 success or all checks passed, 1 a verification failed,
2 usage, parse or budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .biggs import star_ambient
from .corpus import MAX_CORPUS_EDGES, k3, multigraph_corpus, star3, triangle_fixtures
from .graph import GraphError, graph_from_json
from .invariants import bad_coloring, chromatic, complete_flow, flow, tutte
from .partition import (BoundarySpec, BudgetError, ModelError, boundary_partition,
                        boundary_table, model_from_json, normalized_partition,
                        partition_enumerate)
from .poly import as_rational, format_rational
from .startriangle import (StarTriangleError, f_map_with_beta, percolation_star_triangle,
                           star_triangle_general)
from .suites import SUITES, Options, run_suite
from .tetrahedron import TetraError, gamma_fixtures, tetra_map, verify_tetrahedron

EVAL_WHAT = ("Z", "Z-normalized", "boundary", "tutte", "chromatic", "flow",
             "complete-flow", "bad-coloring")


class UsageError(Exception):
    pass


def _emit(args, text, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load(path):
    try:
        src = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _int_list(s):
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {s!r}") from None


def _num(s):
    try:
        return as_rational(s)
    except (ValueError, ZeroDivisionError):
        try:
            return float(s)
        except ValueError:
            raise UsageError(f"not a number: {s!r}") from None


def _fmt(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(Fraction(x))
    if isinstance(x, complex) and x.imag == 0:
        x = x.real
    return repr(x)


# eval --------------------------------------------------------------------------

def cmd_eval(args):
    data = _load(args.file)
    if args.what in ("Z", "Z-normalized", "boundary"):
        m = model_from_json(data)
        if args.what == "Z":
            z = partition_enumerate(m, args.budget)
            return _emit(args, _fmt(z), {"what": "Z", "value": _fmt(z)})
        if args.what == "Z-normalized":
            z = normalized_partition(m, args.budget)
            return _emit(args, _fmt(z), {"what": "Z-normalized", "value": _fmt(z)})
        if not args.vertices:
            raise UsageError("boundary needs --vertices")
        verts = _int_list(args.vertices)
        if args.values:
            vals = _int_list(args.values)
            z = boundary_partition(m, BoundarySpec(verts, vals), args.budget)
            return _emit(args, _fmt(z), {"what": "boundary", "vertices": verts,
                                         "values": vals, "value": _fmt(z)})
        table = boundary_table(m, verts, args.budget)
        text = "\n".join(f"{','.join(map(str, A))}\t{_fmt(z)}" for A, z in table.items())
        return _emit(args, text, {"what": "boundary", "vertices": verts,
                                  "table": [[list(A), _fmt(z)] for A, z in table.items()]})
    g = graph_from_json(data)
    poly = {"tutte": tutte, "chromatic": chromatic, "flow": flow,
            "complete-flow": complete_flow, "bad-coloring": bad_coloring}[args.what](g)
    return _emit(args, str(poly), {"what": args.what, "polynomial": str(poly),
                                   "coefficients": poly.to_list()})


# verify ------------------------------------------------------------------------

def cmd_verify(args):
    opts = Options(args.max_edges, args.samples, args.seed, args.tol, args.budget)
    if args.max_edges is not None and not 0 <= args.max_edges <= MAX_CORPUS_EDGES:
        raise UsageError(f"--max-edges must lie in 0..{MAX_CORPUS_EDGES}")
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        rep = run_suite(name, opts)
        reports.append(rep)
        if args.format == "text":
            print(rep.to_text(), flush=True)
    if args.format == "json":
        payload = [r.to_json() for r in reports]
        print(json.dumps(payload if args.suite == "all" else payload[0], indent=2))
    return 0 if all(r.passed for r in reports) else 1


# graphs ------------------------------------------------------------------------

def fixtures():
    out = {"k3": k3(), "star": star3()}
    for name, (g, _) in gamma_fixtures().items():
        out[name] = g
    out["fourteen-base"] = star_ambient()
    out["fourteen-pendant"] = star_ambient([(0, 4)])
    out["fourteen-chord"] = star_ambient([(0, 4), (4, 1)])
    out.update(triangle_fixtures())
    return out


def cmd_graphs(args):
    if args.kind == "corpus":
        if not 0 <= args.max_edges <= MAX_CORPUS_EDGES:
            raise UsageError(f"corpus bound is at most {MAX_CORPUS_EDGES} edges")
        graphs = {f"g{i:04d}": g for i, g in enumerate(multigraph_corpus(args.max_edges))}
    else:
        graphs = fixtures()
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, g in graphs.items():
            (d / f"{name}.json").write_text(json.dumps(g.to_json()) + "\n")
        print(f"wrote {len(graphs)} graphs to {d}")
        return 0
    if args.format == "json":
        print(json.dumps({name: g.to_json() for name, g in graphs.items()}, indent=2))
    else:
        for name, g in graphs.items():
            print(f"{name}\tv={g.num_vertices}\te={len(g.edges)}\t{g.pairs}")
    return 0


# star-triangle -----------------------------------------------------------------

def cmd_star_triangle(args):
    vals = [_num(x) for x in args.values]
    if args.percolation:
        res = percolation_star_triangle(*vals, tol=args.tol)
        return _emit(args, " ".join(_fmt(x) for x in res),
                     {"p": [_fmt(x) for x in vals], "p_prime": [_fmt(x) for x in res]})
    if args.n == 2:
        res = f_map_with_beta(tuple(vals), _num(args.beta))
    else:
        res = star_triangle_general(tuple(vals), args.n, tol=args.tol)
    text = f"t' = {' '.join(_fmt(x) for x in res.t)}\nbeta' = {_fmt(res.beta_product)}"
    return _emit(args, text, {"t": [_fmt(x) for x in vals], "n": args.n,
                              "t_prime": [_fmt(x) for x in res.t],
                              "beta_prime": _fmt(res.beta_product)})


# tetra -------------------------------------------------------------------------

def cmd_tetra(args):
    if args.action == "verify":
        rep = verify_tetrahedron(args.samples, args.seed, args.lo, args.hi, args.dressing,
                                 dps=args.dps or None)
        ok = rep.accepted == args.samples and rep.max_residual <= args.tol
        text = (f"tetrahedron: {'PASS' if ok else 'FAIL'}  accepted {rep.accepted}, "
                f"rejected {rep.rejected}, max residual {rep.max_residual:.3e} "
                f"(F {rep.per_equation['F']:.3e}, phi {rep.per_equation['phi']:.3e})")
        _emit(args, text, dict(rep.to_json(), passed=ok, tol=args.tol, seed=args.seed))
        return 0 if ok else 1
    if len(args.values) != 6:
        raise UsageError("tetra map needs six values")
    t = tuple(float(x) for x in args.values)
    out = tetra_map(args.which, t, "inverse" if args.inverse else "forward", args.form)
    return _emit(args, " ".join(_fmt(x) for x in out), {"t": list(t), "result": [float(x) for x in out]})


# parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None,
                        help="maximum number of enumerated states")

    p = _Parser(prog="pottskit", description="Exact Potts model and Tutte polynomial toolkit.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a model or graph file")
    e.add_argument("file", help="model or graph JSON, '-' for stdin")
    e.add_argument("what", choices=EVAL_WHAT)
    e.add_argument("--vertices", help="boundary vertices, e.g. 0,2")
    e.add_argument("--values", help="boundary values; omit for the full table")
    e.set_defaults(fn=cmd_eval)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--max-edges", type=int, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None,
                   help="numeric tolerance for every check (default: per check, 1e-9 base)")
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("graphs", parents=[common], help="emit the graph corpus or fixtures")
    g.add_argument("kind", choices=("corpus", "fixtures"))
    g.add_argument("--max-edges", type=int, default=3)
    g.add_argument("--out", help="directory for one JSON file per graph")
    g.set_defaults(fn=cmd_graphs)

    s = sub.add_parser("star-triangle", parents=[common], help="star to triangle weights")
    s.add_argument("values", nargs=3, help="star weights t1 t2 t3 (or p1 p2 p3)")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--beta", default="1", help="product of the star betas (n = 2)")
    s.add_argument("--percolation", action="store_true")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(fn=cmd_star_triangle)

    t = sub.add_parser("tetra", help="tetrahedron equation tools")
    tsub = t.add_subparsers(dest="action", required=True, parser_class=_Parser)
    tv = tsub.add_parser("verify", parents=[common])
    tv.add_argument("--samples", type=int, default=100)
    tv.add_argument("--seed", type=int, default=42)
    tv.add_argument("--tol", type=float, default=1e-8)
    tv.add_argument("--lo", type=float, default=1.0)
    tv.add_argument("--hi", type=float, default=4.0)
    tv.add_argument("--dressing", choices=("sigma", "S"), default="sigma")
    tv.add_argument("--dps", type=int, default=30, help="working digits, 0 for doubles")
    tm = tsub.add_parser("map", parents=[common])
    tm.add_argument("which", type=int, choices=(123, 145, 246, 356))
    tm.add_argument("values", nargs="+")
    tm.add_argument("--inverse", action="store_true")
    tm.add_argument("--form", choices=("F", "phi"), default="F")
    t.set_defaults(fn=cmd_tetra)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except BudgetError as exc:
        print(f"error: {exc}; raise --budget to proceed", file=sys.stderr)
        return 2
    except (UsageError, ModelError, GraphError, StarTriangleError, TetraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
