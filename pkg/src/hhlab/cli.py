"""Command-line front end: ``hhlab <command> [options]``."""

from __future__ import annotations

import argparse
import sys

from .exact import Field
from .families import load_config, make_params, parse_q
from .quadratic import QuadraticPresentation
from .reports import (
    render,
    run_center,
    run_cup,
    run_dual_print,
    run_hh_dims,
    run_koszul_check,
    run_resolution_check,
)

COMMANDS = ("koszul-check", "dual-print", "hh-dims", "cup", "center", "resolution-check")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hhlab", description="Exact computations for quantized quiver algebras.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--family", help="Lambda_q, Gamma_q, Lambda_mn or Gamma_mn")
    ap.add_argument("--m", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--field", help="Q, Q(t), GF(p) or cyclotomic(d)")
    ap.add_argument("--q", help='parameters: one value, "q0,q1,..." or rows "q00,q01;q10,q11"')
    ap.add_argument("--config", help="family config file; flags take precedence")
    ap.add_argument("--presentation", help="presentation file (koszul-check only)")
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--max-length", type=int)
    ap.add_argument("--view", choices=("kq", "op"), default="kq", help="dual-print view")
    ap.add_argument("--perturb", action="store_true", help="resolution-check: break d_1 on purpose")
    ap.add_argument("--format", choices=("table", "machine"), default="table")
    return ap


def params_from_args(args):
    vals = {}
    if args.config:
        with open(args.config) as fh:
            base = load_config(fh.read())
        vals = {"family": base.family, "m": base.m, "n": base.n if base.torus else None,
                "field": base.field, "q": [list(r) for r in base.q] if base.torus else list(base.q)}
    if args.family:
        vals["family"] = args.family
    if args.m is not None:
        vals["m"] = args.m
    if args.n is not None:
        vals["n"] = args.n
    if args.field:
        vals["field"] = Field.from_spec(args.field)
    field = vals.get("field") or Field.rationals()
    if args.q:
        text = args.q.strip()
        if "," in text or ";" in text:
            torus = vals.get("family", "").lower().endswith("mn")
            vals["q"] = parse_q(text, field, torus)
        else:
            vals["q"] = field.parse(text)
    if "family" not in vals or "m" not in vals:
        raise ValueError("--family and --m are required (or a --config file)")
    return make_params(vals["family"], vals["m"], vals.get("n"), vals.get("q"), field)


def dispatch(args):
    if args.command == "koszul-check" and args.presentation:
        with open(args.presentation) as fh:
            P = QuadraticPresentation.from_text(fh.read())
        return run_koszul_check(presentation=P)
    fp = params_from_args(args)
    if args.command == "koszul-check":
        return run_koszul_check(fp)
    if args.command == "dual-print":
        return run_dual_print(fp, args.view)
    if args.command == "hh-dims":
        return run_hh_dims(fp, args.max_degree)
    if args.command == "cup":
        return run_cup(fp, args.max_degree)
    if args.command == "center":
        return run_center(fp, args.max_length)
    return run_resolution_check(fp, args.max_degree, args.perturb)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, doc = dispatch(args)
    except (ValueError, KeyError, TypeError, ZeroDivisionError, OSError) as exc:
        status, doc = 1, {"command": args.command, "error": f"{type(exc).__name__}: {exc}", "status": "fail"}
    sys.stdout.write(render(doc, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
