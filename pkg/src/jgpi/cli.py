"""Command line front end.

Exit codes: 0 affirmative, 1 negative verdict, 2 usage or input error.
Every command prints JSON (``compare`` prints one JSON line per multidegree).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import expr as E
from .free import DegreeBoundError, JordanPoly, MultiDegree, degree_window, from_ast, max_degree_cap
from .linalg import fraction_str
from .models import (BnScalar, J2Nonscalar, ParityError, as_odd, find_witness, parse_gram,
                     witness_json)
from .tableaux import (DoubleTableau, PairProduct, StraighteningError, TableauError, build_gn,
                       is_doubly_standard, parse_tableau, phi_any, standard_basis_certificate,
                       straighten, straighten_residual)

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2
MODELS = ("j2-nonscalar", "bn-scalar", "bn-weak")
GENS = ("nonscalar-j2", "scalar-b", "scalar-bn")


class UsageError(ValueError):
    pass


def _poly(text: str) -> JordanPoly:
    return from_ast(E.parse_expression(text))


def _gram(spec, n):
    if spec in (None, "identity", "symbolic"):
        return spec or "identity"
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"gram file not found: {spec}")
    data = json.loads(path.read_text())
    return parse_gram(data, n)


def _model(args):
    gram = _gram(args.gram, args.n)
    if args.model == "j2-nonscalar":
        return J2Nonscalar()
    return BnScalar(args.n, gram)


def _gens(args):
    from .tideal import generator_set
    if args.gens == "scalar-bn" and args.n is None:
        raise UsageError("--gens scalar-bn needs --n")
    return generator_set(args.gens, args.n)


def _emit(args, payload):
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "a") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- commands -------------------------------------------------------------------

def cmd_parse(args) -> int:
    ast = E.parse_expression(args.expr)
    p = from_ast(ast)
    _emit(args, {
        "expression": E.format_expression(E.normalize(ast)),
        "expanded": str(p),
        "multidegrees": sorted(str(d) for d in p.multidegrees()),
    })
    return EXIT_OK


def cmd_check(args) -> int:
    from .tideal import instantiate
    p = _poly(args.expr)
    model = _model(args)
    if args.model == "bn-weak":
        instances = [as_odd(p)]
        if any(E.is_even(v) for v in p.variables()):
            raise UsageError("bn-weak takes vector (odd or placeholder) variables only")
    else:
        instances = instantiate(p)
    for inst in instances:
        if model.is_identity(inst):
            continue
        w = find_witness(inst, model, seed=args.seed)
        _emit(args, {"identity": False, "instance": str(inst),
                     "witness": witness_json(w) if w else None})
        return EXIT_NO
    _emit(args, {"identity": True, "instances": len(instances)})
    return EXIT_OK


def cmd_member(args) -> int:
    from .tideal import instantiate, is_member
    p = _poly(args.expr)
    gens = _gens(args)
    results = [{"instance": str(q), "member": is_member(q, gens)} for q in instantiate(p)]
    ok = all(r["member"] for r in results)
    _emit(args, {"member": ok, "gens": str(gens), "instances": results})
    return EXIT_OK if ok else EXIT_NO


def _compare_task(job):
    from .tideal import compare_components, generator_set
    gens_name, n, model_name, gram, degree = job
    gens = generator_set(gens_name, n)
    model = J2Nonscalar() if model_name == "j2-nonscalar" else BnScalar(n, gram)
    return compare_components(gens, model, MultiDegree(degree)).to_json()


def cmd_compare(args) -> int:
    if args.max_deg > max_degree_cap():
        raise UsageError(f"--max-deg {args.max_deg} exceeds the cap {max_degree_cap()} (set JGPI_MAX_DEG)")
    if args.model == "bn-weak":
        raise UsageError("compare needs a graded model")
    _gens(args)
    gram = _gram(args.gram, args.n)
    window = list(degree_window(args.max_deg, max(1, args.min_deg), args.max_odd))
    jobs = [(args.gens, args.n, args.model, gram, tuple(d)) for d in window]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_compare_task, jobs))
    else:
        reports = [_compare_task(j) for j in jobs]
    for r in reports:
        _emit(args, r)
    return EXIT_OK if all(r["equal"] for r in reports) else EXIT_NO


def cmd_normal_form(args) -> int:
    from .nonscalar import VerificationError, normal_form, normal_form_json
    p = _poly(args.expr)
    try:
        forms = normal_form(p)
    except VerificationError as exc:
        _emit(args, {"error": str(exc)})
        return EXIT_NO
    _emit(args, normal_form_json(forms))
    return EXIT_OK


def _read_source(source: str):
    path = Path(source)
    text = sys.stdin.read() if source == "-" else (path.read_text() if path.exists() else source)
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        if "pairs" in data:
            return PairProduct(tuple(tuple(p) for p in data["pairs"]), data.get("bare"))
        return DoubleTableau.from_json(data)
    return parse_tableau(text)


def _default_n(x, n):
    if n is not None:
        return n
    return max(1, sum(x.content().values()))


def cmd_tableau(args) -> int:
    if args.action == "basis-cert":
        if not args.content:
            raise UsageError("basis-cert needs --content")
        content = [int(c) for c in args.content.replace(",", " ").split()]
        n = args.n or max(1, len(content))
        cert = standard_basis_certificate(content, n, args.zero)
        _emit(args, cert.to_json())
        return EXIT_OK if cert.ok else EXIT_NO
    if not args.source:
        raise UsageError(f"tableau {args.action} needs an input tableau")
    x = _read_source(args.source)
    if args.action == "standard":
        if not isinstance(x, DoubleTableau):
            raise UsageError("standard takes a tableau")
        ok = is_doubly_standard(x)
        _emit(args, {"tableau": x.to_json(), "standard": ok})
        return EXIT_OK if ok else EXIT_NO
    n = _default_n(x, args.n)
    if args.action == "phi":
        _emit(args, {"input": str(x), "n": n, "phi": phi_any(x, n).to_json()})
        return EXIT_OK
    terms = straighten(x, n)
    residual = straighten_residual(x, terms, n)
    _emit(args, {"input": str(x), "n": n,
                 "terms": [{"coeff": fraction_str(c), "tableau": t.to_json()} for c, t in terms],
                 "residual": str(residual)})
    return EXIT_OK if not residual else EXIT_NO


def cmd_gn(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("gn needs --n >= 1")
    g = build_gn(args.n, "x" if args.weak else "z")
    out = {"n": args.n, "poly": str(g), "terms": len(g.terms)}
    code = EXIT_OK
    if args.verify:
        gz = build_gn(args.n)
        holds = BnScalar(args.n).is_identity(gz)
        w = find_witness(gz, BnScalar(args.n + 1), seed=args.seed)
        out["identity_in_Bn"] = holds
        out["witness_in_Bn+1"] = witness_json(w) if w else None
        code = EXIT_OK if holds and w else EXIT_NO
    _emit(args, out)
    return code


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=MODELS, default="j2-nonscalar")
    common.add_argument("--gens", choices=GENS, default="nonscalar-j2")
    common.add_argument("--n", type=int, default=None, help="dimension of V_n (omit for B)")
    common.add_argument("--gram", default="identity", help="FILE, 'identity' or 'symbolic'")
    common.add_argument("--max-deg", type=int, default=5)
    common.add_argument("--out", default=None, help="append output to FILE")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="jgpi", description="Graded identities of J2 and B_n")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and expand an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check", parents=[common], help="is EXPR a graded (or weak) identity?")
    p.add_argument("expr")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("member", parents=[common], help="is EXPR in the T-ideal of --gens?")
    p.add_argument("expr")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("compare", parents=[common], help="compare ideal and identities per multidegree")
    p.add_argument("--min-deg", type=int, default=1)
    p.add_argument("--max-odd", type=int, default=None, help="at most this many odd variables")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("normal-form", parents=[common], help="coordinates over A modulo I")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("tableau", parents=[common], help="double tableau operations")
    p.add_argument("action", choices=("phi", "standard", "straighten", "basis-cert"))
    p.add_argument("source", nargs="?", help="tableau JSON file, JSON text, '(1 2|1 3)' text or '-'")
    p.add_argument("--content", default=None, help="basis-cert content, e.g. '1 1 2 3'")
    p.add_argument("--zero", action="store_true", help="basis-cert for 0-tableaux")
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("gn", parents=[common], help="print g_n")
    p.add_argument("--weak", action="store_true", help="ungraded variables (f_n)")
    p.add_argument("--verify", action="store_true", help="identity in B_n, witness in B_{n+1}")
    p.set_defaults(func=cmd_gn)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (E.ParseError, UsageError, DegreeBoundError, TableauError, ParityError,
            json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StraighteningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
