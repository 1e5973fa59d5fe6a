"""Command-line entry point: field, sum, hyp, count and verify subcommands.

Characters are given as T-exponents and field elements as integer encodings.
Exit status: 0 on success (identity failures are findings, not errors),
1 on usage errors, 2 when exact arithmetic detects an internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import charsums as cs
from . import curves as cv
from .characters import HypothesisError
from .cyclo import EmbeddingMismatch
from .field import FieldError
from .hypergeom import f21_integral, fpq
from .verify import CHECK_IDS, InternalInconsistency, Sampling, UnknownCheck, group, sweep, to_csv, to_json, to_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _id_list(text: str) -> list[str]:
    ids = [t.strip() for t in text.split(",") if t.strip()]
    bad = [i for i in ids if i not in CHECK_IDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown check id(s): {', '.join(bad)}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jacobsthal", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--aux-primes", type=int, default=2, help="number of embedding primes (>= 1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_args(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--e", type=int, default=1)

    p = sub.add_parser("field", help="modulus, generator and embedding primes of F_q")
    field_args(p)

    p = sub.add_parser("sum", help="evaluate a generalized Jacobsthal sum")
    field_args(p)
    p.add_argument("--kind", choices=cs.SUM_KINDS, required=True)
    p.add_argument("--exps", type=_int_list, required=True)
    p.add_argument("--args", type=_int_list, required=True)

    p = sub.add_parser("hyp", help="evaluate Greene's n+1Fn by the binomial sum")
    field_args(p)
    p.add_argument("--upper", type=_int_list, required=True, help="T-exponents of A_0..A_n")
    p.add_argument("--lower", type=_int_list, required=True, help="T-exponents of B_1..B_n")
    p.add_argument("--x", type=int, required=True)

    p = sub.add_parser("count", help="count points on y^2 = f(x)")
    field_args(p)
    p.add_argument("--curve", choices=("em", "emprime", "trinomial", "general"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--coeffs", type=_int_list, help="coefficients of f, constant term first")

    p = sub.add_parser("verify", help="run identity checks over a range of fields")
    p.add_argument("--checks", type=_id_list, default=list(CHECK_IDS))
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, default=49)
    p.add_argument("--samples", type=int, default=None, help="override each check's sample count")
    p.add_argument("--budget", type=int, default=Sampling.budget, help="exhaustive below this many cells")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the report here instead of stdout")
    return parser


def _value_json(G, v) -> dict:
    out = {"value": v.to_json(-G.q * G.q, G.q * G.q)}
    if "integer" in out["value"]:
        out["integer"] = out["value"]["integer"]
    out["mirror"] = out["value"]["mirror"]
    return out


def cmd_field(args) -> dict:
    G = group(args.p, args.e, args.aux_primes)
    F = G.field
    return {"p": F.p, "e": F.e, "q": F.q, "modulus": list(F.spec.modulus), "generator": int(F.g),
            "aux_primes": list(G.ctx.primes), "roots": list(G.ctx.roots)}


def cmd_sum(args) -> dict:
    G = group(args.p, args.e, args.aux_primes)
    spec = cs.SumSpec(args.kind, tuple(args.exps), tuple(args.args))
    v = cs.evaluate(G, spec)
    cs.int_value(G, v)
    return {"kind": spec.kind, "field": [args.p, args.e], "exps": list(spec.exps), "args": list(spec.args),
            **_value_json(G, v)}


def cmd_hyp(args) -> dict:
    G = group(args.p, args.e, args.aux_primes)
    uppers = [G.T(j) for j in args.upper]
    lowers = [G.T(j) for j in args.lower]
    if not 0 <= args.x < G.q:
        raise UsageError(f"--x must be an element encoding in [0, {G.q})")
    v = fpq(G, uppers, lowers, args.x)
    out = {"field": [args.p, args.e], "upper": args.upper, "lower": args.lower, "x": args.x, **_value_json(G, v)}
    if len(uppers) == 2:
        out["integral_form_agrees"] = f21_integral(G, *uppers, *lowers, args.x) == v
    return out


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--curve {args.curve} needs " + ", ".join(f"--{n}" for n in missing))


def cmd_count(args) -> dict:
    G = group(args.p, args.e, args.aux_primes)
    kind = {"em": "Em", "emprime": "EmPrime", "trinomial": "Trinomial", "general": "General"}[args.curve]
    if kind in ("Em", "EmPrime"):
        _need(args, "m", "a", "b", "c")
        spec = cv.CurveSpec(kind, m=args.m, a=args.a, b=args.b, c=args.c)
    elif kind == "Trinomial":
        _need(args, "d", "a", "b")
        spec = cv.CurveSpec(kind, d=args.d, a=args.a, b=args.b)
    else:
        _need(args, "coeffs")
        spec = cv.CurveSpec(kind, coeffs=tuple(args.coeffs))
    f = spec.poly(G)
    out = {"curve": args.curve, "field": [args.p, args.e], "poly": f,
           "direct": cv.count_direct(G, f), "charsum": cv.count_charsum(G, f)}
    lo, hi = -G.q * G.q, G.q * G.q
    try:
        if kind in ("Em", "EmPrime"):
            H = cv.em_hyp_part(G, kind, spec.m, spec.b, spec.c, np.array([spec.a]))[0]
            out["closed_form"] = {
                "degree_r": (H + (G.q + cv.r_of(len(f) - 1))).to_json(lo, hi),
                "statement_r": (H + (G.q + cv.statement_r(spec.m))).to_json(lo, hi),
            }
        elif kind == "Trinomial":
            out["closed_form"] = {"affine": cv.count_trinomial_hyp(G, spec.d, spec.a, spec.b).to_json(lo, hi)}
    except HypothesisError as exc:
        out["closed_form"] = {"hypothesis_unmet": str(exc)}
    return out


def cmd_verify(args) -> dict | str:
    if args.q_min > args.q_max:
        raise UsageError("--q-min must not exceed --q-max")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    sampling = Sampling(budget=args.budget, samples=args.samples, seed=args.seed)
    return sweep(args.checks, args.q_min, args.q_max, sampling, args.aux_primes, args.workers)


COMMANDS = {"field": cmd_field, "sum": cmd_sum, "hyp": cmd_hyp, "count": cmd_count, "verify": cmd_verify}


def _render(result: dict, fmt: str, command: str) -> str:
    if command == "verify":
        return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](result)
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    if fmt == "csv":
        flat = {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in result.items()}
        return ",".join(flat) + "\n" + ",".join(str(v) for v in flat.values()) + "\n"
    return "".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}\n" for k, v in result.items())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.aux_primes < 1:
        print("jacobsthal: error: --aux-primes must be >= 1", file=sys.stderr)
        return 1
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, FieldError, UnknownCheck, HypothesisError, ValueError, ZeroDivisionError) as exc:
        print(f"jacobsthal: error: {exc}", file=sys.stderr)
        return 1
    except (EmbeddingMismatch, InternalInconsistency) as exc:
        print(f"jacobsthal: internal inconsistency: {exc}", file=sys.stderr)
        return 2
    text = _render(result, args.format, args.command)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main_entry():
    sys.exit(main())
