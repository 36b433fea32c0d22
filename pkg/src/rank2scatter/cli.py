"""Command line: verify identities, complete diagrams, replay rewrite scripts, dump parses.

Exit status is 0 on success, 1 when a verification or replay fails and 2 on
usage, parse or constraint errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import catalog, dsl, products, rewrite, scattering
from .group import equals_mod, eval_product
from .lattice import LatticeError, SkewForm

DEFAULTS = {"degree": 12, "lambda": "-1", "output": "json", "seed": 0}


class UsageError(Exception):
    pass


def _common(p):
    p.add_argument("--degree", type=int, default=argparse.SUPPRESS, help="truncation degree D (default 12)")
    p.add_argument("--lambda", dest="lam", default=argparse.SUPPRESS, help="{e1, e2} as p/q (default -1)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--output", choices=("json", "text"), default=argparse.SUPPRESS)
    p.add_argument("--config", default=argparse.SUPPRESS, help="JSON file with keys lambda, degree, output")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _common(common)
    parser = argparse.ArgumentParser(prog="rank2scatter", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="check an identity modulo degree > D")
    v.add_argument("--identity", action="append", choices=catalog.IDS)
    v.add_argument("--n")
    v.add_argument("--nprime")
    v.add_argument("--c")
    v.add_argument("--l", type=int)
    v.add_argument("--random", type=int, metavar="COUNT", help="verify COUNT random instances (uses --seed)")
    v.add_argument("--lhs")
    v.add_argument("--rhs")
    v.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("scatter", parents=[common], help="complete initial walls to a consistent diagram")
    s.add_argument("--walls", required=True, help='anti-ordered product, e.g. "[0,1]^2 [1,0]^2"')

    r = sub.add_parser("reduce", parents=[common], help="replay a rewrite script with value checks")
    r.add_argument("--script", required=True)
    r.add_argument("--initial", help="starting product (overrides the script's 'initial' line)")

    pa = sub.add_parser("parse", parents=[common], help="dump the parsed product")
    pa.add_argument("text")
    return parser


def _settings(args):
    cfg = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config {path}: {e}") from None
        unknown = set(loaded) - {"lambda", "degree", "output", "seed"}
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(loaded)
    for key, attr in (("degree", "degree"), ("lambda", "lam"), ("output", "output"), ("seed", "seed")):
        if hasattr(args, attr):
            cfg[key] = getattr(args, attr)
    try:
        D = int(cfg["degree"])
        if D < 1:
            raise ValueError
    except (TypeError, ValueError):
        raise UsageError(f"degree must be a positive integer, got {cfg['degree']!r}") from None
    lam = dsl.parse_rational(str(cfg["lambda"]))
    if cfg["output"] not in ("json", "text"):
        raise UsageError(f"output must be json or text, got {cfg['output']!r}")
    return D, SkewForm(lam), cfg["output"], int(cfg["seed"])


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _verify_one(job):
    id, params, D, lam = job
    return catalog.verify(id, params, D, SkewForm(lam)).to_json()


def _text_result(r):
    head = r.get("identity", "product")
    if r["status"] == "pass":
        return f"{head} D={r['cutoff']}: pass"
    return f"{head} D={r['cutoff']}: fail at {r['ray']} (degree {r['degree']}) coefficient {r['coefficient']}"


def cmd_verify(args, D, form, output, seed, out):
    if args.lhs is not None or args.rhs is not None:
        if args.lhs is None or args.rhs is None or args.identity:
            raise UsageError("--lhs and --rhs go together and exclude --identity")
        lhs, rhs = dsl.parse(args.lhs), dsl.parse(args.rhs)
        res = equals_mod(eval_product(lhs, D, form), eval_product(rhs, D, form)).to_json()
        res = {"lhs": dsl.to_text(lhs), "rhs": dsl.to_text(rhs), "cutoff": D, **res}
        results = [res]
    else:
        if not args.identity:
            raise UsageError("give --identity ID or --lhs/--rhs")
        jobs = []
        for id in args.identity:
            if args.random:
                for p in catalog.enumerate_random_instances(id, args.random, seed, form, l=args.l):
                    jobs.append((id, p, D, form.lam))
                continue
            if id in catalog.FIXED and args.n is None:
                params = None
            else:
                if args.n is None or args.nprime is None:
                    raise UsageError(f"{id} needs --n and --nprime (and --c)")
                params = catalog.IdentityParams(
                    dsl.parse_vector(args.n), dsl.parse_vector(args.nprime),
                    dsl.parse_rational(args.c) if args.c else Fraction(1), args.l,
                )
            catalog.build(id, params, D, form)  # constraint errors surface before any work
            jobs.append((id, params, D, form.lam))
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                results = list(ex.map(_verify_one, jobs))
        else:
            results = [_verify_one(j) for j in jobs]
    ok = all(r["status"] == "pass" for r in results)
    if output == "json":
        _dump(results[0] if len(results) == 1 else {"status": "pass" if ok else "fail", "results": results}, out)
    else:
        for r in results:
            out.write(_text_result(r) + "\n")
    return 0 if ok else 1


def cmd_scatter(args, D, form, output, seed, out):
    walls = dsl.parse(args.walls)
    diagram = scattering.complete(walls, D, form)
    ok = scattering.check_consistency(diagram).equal
    if output == "json":
        _dump(diagram.to_json(), out)
    else:
        for p in diagram.directions():
            X = diagram.rays[p]
            terms = " + ".join(f"({c})X[{n[0]},{n[1]}]" for n, c in X)
            out.write(f"ray [{p[0]},{p[1]}]: {terms}\n")
    return 0 if ok else 1


def cmd_reduce(args, D, form, output, seed, out):
    try:
        with open(args.script) as fh:
            script = rewrite.parse_script(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read script: {e}") from None
    start = args.initial or script.initial
    if start is None:
        raise UsageError("no initial product: pass --initial or put an 'initial' line in the script")
    initial = dsl.parse(start)
    if not initial.is_finite():
        raise UsageError("the initial product of a rewrite must be finite")
    factors = initial.expand(10**9)
    try:
        trace = rewrite.replay(script.steps, factors, D, form)
    except rewrite.RewriteError as e:
        res = {"status": "fail", "index": e.index, "error": str(e)}
        if output == "json":
            _dump(res, out)
        else:
            out.write(f"fail: {e}\n")
        return 1
    res = trace.to_json()
    if script.target is not None:
        want = dsl.parse(script.target).expand(D)
        hit = products.canonical_factors(trace.final) == products.canonical_factors(want)
        res["target"] = script.target
        res["reached_target"] = hit
        if not hit:
            res["status"] = "fail"
    if output == "json":
        _dump(res, out)
    else:
        out.write(f"{res['initial']}\n")
        for st in res["steps"]:
            out.write(f"  {st['step']:<14} {st['product']}\n")
        out.write(f"{res['status']}\n")
    return 0 if res["status"] == "pass" else 1


def cmd_parse(args, D, form, output, seed, out):
    expr = dsl.parse(args.text)
    if output == "json":
        _dump({"canonical": dsl.to_text(expr), "items": products.to_json(expr), "expanded": [
            {"n": [n[0], n[1]], "c": str(c)} for n, c in expr.expand(D)]}, out)
    else:
        out.write(dsl.to_text(expr) + "\n")
    return 0


COMMANDS = {"verify": cmd_verify, "scatter": cmd_scatter, "reduce": cmd_reduce, "parse": cmd_parse}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        D, form, output, seed = _settings(args)
        return COMMANDS[args.command](args, D, form, output, seed, out)
    except (UsageError, dsl.DSLError, catalog.ConstraintError, LatticeError,
            products.ProductError, scattering.ScatteringError, rewrite.RewriteError) as e:
        sys.stderr.write(f"rank2scatter: error: {e}\n")
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
