"""``sumfree`` command line.

Exit status: 0 on success, 1 when ``verify`` finds a violation, 2 on input
or parse errors.  Reports go to standard output either as ``key=value``
lines (``--format plain``, the default) or as one JSON document
(``--format structured``).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from . import constructions as cons
from . import structure as st
from .grid_core import (
    GridInputError,
    SchurParams,
    density,
    find_violation,
    format_point_list,
    read_point_list,
    write_point_list,
)
from .solver import (
    SolveOptions,
    density_table,
    enumerate_optima,
    max_sum_free,
    resume,
)
from .trials import DEFAULT_SEED, run_all

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def decimal_str(r, digits=12) -> str:
    """Render a rational with ``digits`` significant digits."""
    r = Fraction(r)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(r.numerator) / Decimal(r.denominator)
    return format(d.normalize(), "f") if d == d.to_integral_value() else format(d, "g")


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"fraction": str(v), "decimal": decimal_str(v)}
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _plain(v):
    if isinstance(v, Fraction):
        return f"{v} ({decimal_str(v)})" if v.denominator != 1 else str(v)
    if isinstance(v, (list, tuple)):
        return json.dumps(_jsonable(v))
    if isinstance(v, dict):
        return json.dumps(_jsonable(v))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class Report:
    def __init__(self, command, inputs):
        self.command = command
        self.inputs = inputs
        self.results = {}
        self.checks = {}

    def emit(self, fmt, out):
        if fmt == "structured":
            doc = {
                "version": __version__,
                "command": self.command,
                "inputs": _jsonable(self.inputs),
                "results": _jsonable(self.results),
                "checks": _jsonable(self.checks),
            }
            out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            return
        for k, v in self.results.items():
            out.write(f"{k}={_plain(v)}\n")
        for k, v in self.checks.items():
            out.write(f"check.{k}={'pass' if v else 'fail'}\n")


def _params(args):
    return SchurParams(args.p, args.q if args.q is not None else args.p)


def _frac(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


# subcommands

def cmd_verify(args, out):
    S = read_point_list(args.file)
    params = _params(args)
    v = find_violation(S, params)
    rep = Report("verify", {"file": args.file, "p": params.p, "q": params.q})
    rep.results.update(n=S.n, dim=S.dim, size=S.size, sum_free=v is None)
    if v is not None:
        rep.results["violation"] = [v.x, v.y, v.z]
    rep.checks["sum_free"] = v is None
    rep.emit(args.format, out)
    return EXIT_OK if v is None else EXIT_VIOLATION


def _build_construction(args):
    kind = args.kind
    if kind == "cameron":
        return cons.cameron_optimal(args.n)
    if kind == "pq-stripe":
        return cons.pq_stripe(args.n, _params(args), args.a)
    if kind == "stripe":
        if args.L is None or args.U is None:
            raise GridInputError("stripe needs --L and --U")
        spec = cons.StripeSpec(args.n, args.L, args.U, args.strict_lower, args.strict_upper)
        return cons.stripe_set(spec)
    return cons.one_d_extremal(args.n, args.variant)


def cmd_construct(args, out):
    S = _build_construction(args)
    if args.output:
        write_point_list(S, args.output, summary=True)
        out.write(f"size={S.size} density={density(S)}\n")
    else:
        out.write(format_point_list(S, summary=True))
    return EXIT_OK


def _solve_report(res, inputs):
    rep = Report("solve", inputs)
    rep.results.update(
        optimum=res.optimum,
        density=Fraction(res.optimum, res.witness.n ** res.witness.dim),
        proven=res.proven,
        nodes=res.nodes,
        witness=res.witness.points(),
    )
    rep.results["bound_trace"] = res.bound_trace
    return rep


def cmd_solve(args, out):
    params = _params(args)
    if args.resume:
        res = resume(args.resume, time_limit=args.time_limit, checkpoint=args.checkpoint, threads=args.threads)
    else:
        opts = SolveOptions(time_limit=args.time_limit, threads=args.threads, checkpoint=args.checkpoint)
        res = max_sum_free(args.n, args.dim, params, opts)
    rep = _solve_report(res, {"n": args.n, "dim": args.dim, "p": params.p, "q": params.q})
    rep.emit(args.format, out)
    return EXIT_OK


def cmd_enumerate(args, out):
    params = _params(args)
    opt = enumerate_optima(args.n, args.dim, params, limit=args.limit)
    rep = Report("enumerate", {"n": args.n, "dim": args.dim, "p": params.p, "q": params.q, "limit": args.limit})
    rep.results.update(optimum=opt.optimum, count=len(opt), truncated=opt.truncated)
    for i, S in enumerate(opt.sets):
        rep.results[f"optimum.{i}"] = S.points()
    rep.emit(args.format, out)
    return EXIT_OK


def analyze_set(S, gamma, eps, beta) -> dict:
    """Structural summary of a 2-D set; shared by the CLI and the demos."""
    n = S.n
    ub = st.upper_boundary(S)
    w = st.classify_type(S)
    res = {
        "n": n,
        "size": S.size,
        "density": density(S),
        "boundary_points": ub.points,
        "boundary_lines": [{"p1": l.p1, "p2": l.p2, "m": l.m, "c": l.c} for l in ub.lines],
        "top_right_corner": st.top_right_corner(S),
        "type": w.kind,
        "type_conditions": w.conditions,
    }
    if w.line is not None:
        res["typical_line"] = {"p1": w.line.p1, "p2": w.line.p2, "m": w.line.m, "c": w.line.c}
        res["type_bound"] = st.type_bound(S, w)
    if ub.lines:
        res["type1_bound_evaluations"] = [
            st.er_type1_bound(n, l.p1[0], l.p1[1], l.m, l.c) for l in ub.lines
        ]
        res["type2_bound_evaluations"] = [st.er_type2_bound(n, l.m, l.c) for l in ub.lines]
        res["lines_close_to_8n/5"] = [st.line_close(l, Fraction(8 * n, 5), eps, n) for l in ub.lines]
    res["point_close_to_(4n/5,4n/5)"] = st.has_close_point(S, (Fraction(4 * n, 5),) * 2, beta)
    res["min_gamma"] = st.min_gamma(S)
    res["min_gamma_binding"] = st.min_gamma_binding(S)
    cont = st.stripe_containment(S, gamma)
    res["stripe_contained"] = cont["contained"]
    res["stripe_offenders"] = cont["offenders"]
    return res


def cmd_analyze(args, out):
    S = read_point_list(args.file)
    if S.dim != 2:
        raise GridInputError("analyze needs a 2-D point list")
    if S.size == 0:
        raise GridInputError("analyze needs a nonempty set")
    rep = Report("analyze", {"file": args.file, "gamma": args.gamma, "eps": args.eps, "beta": args.beta})
    rep.results.update(analyze_set(S, args.gamma, args.eps, args.beta))
    rep.checks["stripe_contained"] = rep.results["stripe_contained"]
    rep.emit(args.format, out)
    return EXIT_OK


def cmd_table(args, out):
    params = _params(args)
    rows = density_table(range(args.n_from, args.n_to + 1), args.dim, params, time_limit=args.time_limit)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "optimum", "density", "proven"])
    for r in rows:
        w.writerow([r.n, r.optimum, decimal_str(r.density), "true" if r.proven else "false"])
    return EXIT_OK


def cmd_bound(args, out):
    rep = Report("bound", {"n": args.n, "p": args.p, "q": args.q})
    q = args.p if args.q is None else args.q
    if q == args.p:
        rep.results["theorem2_bound"] = cons.theorem2_bound(args.n, args.p)
    rep.results["conjecture_bound"] = cons.conjecture_bound(args.n, SchurParams(args.p, q))
    rep.emit(args.format, out)
    return EXIT_OK


def cmd_lemmas(args, out):
    runs = run_all(args.trials, args.seed, args.n)
    rep = Report("lemmas", {"trials": args.trials, "seed": args.seed, "n": args.n})
    for r in runs:
        rep.results[f"{r.name}.trials"] = r.trials
        rep.results[f"{r.name}.violations"] = r.violations
        rep.checks[r.name] = r.ok
    rep.emit(args.format, out)
    return EXIT_OK if all(r.ok for r in runs) else EXIT_VIOLATION


def build_parser():
    ap = argparse.ArgumentParser(prog="sumfree", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("plain", "structured"), default="plain")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def pq(sp, default_p=1):
        sp.add_argument("--p", type=int, default=default_p)
        sp.add_argument("--q", type=int, default=None, help="defaults to --p")

    sp = sub.add_parser("verify", help="check a point list for sum-freeness")
    sp.add_argument("file")
    pq(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="emit an extremal construction")
    sp.add_argument("kind", choices=("cameron", "stripe", "pq-stripe", "one-d"))
    sp.add_argument("--n", type=int, required=True)
    pq(sp)
    sp.add_argument("--a", type=_frac, default=None)
    sp.add_argument("--L", type=_frac, default=None)
    sp.add_argument("--U", type=_frac, default=None)
    sp.add_argument("--strict-lower", action="store_true")
    sp.add_argument("--strict-upper", action="store_true")
    sp.add_argument("--variant", choices=cons.ONE_D_VARIANTS, default="odds")
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("solve", help="exact maximum sum-free set")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--dim", type=int, choices=(1, 2), default=2)
    pq(sp)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--checkpoint", default=None, help="write open subproblems here on timeout")
    sp.add_argument("--resume", default=None, help="continue from a checkpoint file")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("enumerate", help="list all maximum sets (small grids)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dim", type=int, choices=(1, 2), default=2)
    pq(sp)
    sp.add_argument("--limit", type=int, default=100)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("analyze", help="structural report for a 2-D point list")
    sp.add_argument("file")
    sp.add_argument("--gamma", type=_frac, default=Fraction(1, 10))
    sp.add_argument("--eps", type=_frac, default=Fraction(1, 10))
    sp.add_argument("--beta", type=_frac, default=Fraction(1, 10))
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("table", help="CSV table of optima")
    sp.add_argument("--dim", type=int, choices=(1, 2), default=2)
    sp.add_argument("--n-from", type=int, required=True)
    sp.add_argument("--n-to", type=int, required=True)
    pq(sp)
    sp.add_argument("--time-limit", type=float, default=None)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("bound", help="leading-term size bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, default=None)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("lemmas", help="randomised exclusion-bound property run")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--n", type=int, default=None, help="fixed n (default: random in [5, 30])")
    sp.set_defaults(func=cmd_lemmas)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.command == "solve" and args.n is None and not args.resume:
        sys.stderr.write("sumfree solve: --n is required unless --resume is given\n")
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (GridInputError, OSError) as exc:
        sys.stderr.write(f"sumfree {args.command}: error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
