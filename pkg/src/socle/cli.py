"""Command-line interface: ``socle <command> ...``."""

from __future__ import annotations

import argparse
import sys

from .groebner import reduced_gb
from .homological import NotGeneralizedCMError, ParameterSystemError, invariants, is_standard, s_vector
from .ideals import colon, intersect
from .invariants import krull_dim
from .poly import GREVLEX, LEX, ParseError, elimination, format_polynomial
from .report import HEADER, format_report, ir_table_csv
from .ringfile import corpus, load_ring
from .suite import CHECK_IDS, run_suite
from .verify import FitError, fit_sequence, hilbert_samuel_values, ir_sequence, theorem_a_bound


def _order(text):
    if text == "grevlex":
        return GREVLEX
    if text == "lex":
        return LEX
    if text.startswith("elim:"):
        return elimination(int(text.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(f"unknown order {text!r} (grevlex, lex, elim:K)")


def _field(args):
    return args.field


def _load(args):
    desc = load_ring(args.ring)
    return desc, desc.model(_field(args))


def _polys(ring, text):
    if not text:
        return []
    return [ring.parse(t) for t in text.split(",") if t.strip()]


def _print_gb(G, out):
    for g in G.generators:
        print(format_polynomial(g), file=out)


def _ideal_arg(desc, Rm, text):
    """A parameter-system name, ``m``, or a comma-separated list of polynomials."""
    if text == "m":
        return Rm.m()
    if text in desc.params:
        return Rm.lift(desc.parameter_system(text, Rm.ring).elements)
    return Rm.lift(_polys(Rm.ring, text))


def cmd_gb(args, out):
    desc, Rm = _load(args)
    gens = list(Rm.J.gens) + _polys(Rm.ring, args.gens)
    _print_gb(reduced_gb(gens, args.order, ring=Rm.ring), out)
    return 0


def cmd_colon(args, out):
    desc, Rm = _load(args)
    A = _ideal_arg(desc, Rm, args.a)
    B = _ideal_arg(desc, Rm, args.b)
    _print_gb(colon(A, B).gb(), out)
    return 0


def cmd_intersect(args, out):
    desc, Rm = _load(args)
    A = _ideal_arg(desc, Rm, args.a)
    B = _ideal_arg(desc, Rm, args.b)
    _print_gb(intersect(A, B).gb(), out)
    return 0


def cmd_invariants(args, out):
    desc, Rm = _load(args)
    b = invariants(Rm)
    h = ",".join("inf" if x == float("inf") else str(x) for x in b.h)
    print(f"ring={desc.name}", file=out)
    print(f"d={b.d}", file=out)
    print(f"depth={b.depth}", file=out)
    print(f"s=({','.join(map(str, b.s))})", file=out)
    print(f"h=({h})", file=out)
    print(f"n0={b.n0 if b.generalized_cm else '-'}", file=out)
    print(f"generalized_cm={'true' if b.generalized_cm else 'false'}", file=out)
    return 0


def cmd_ir_seq(args, out):
    desc, Rm = _load(args)
    q = desc.parameter_system(args.params, Rm.ring)
    irs = ir_sequence(Rm, q, args.max_n)
    d = krull_dim(Rm)
    s = s_vector(Rm)
    rows = [(n, ir, theorem_a_bound(n, d, s)) for n, ir in enumerate(irs)]
    out.write(ir_table_csv(rows))
    return 0


def cmd_hilbert(args, out):
    desc, Rm = _load(args)
    X = _ideal_arg(desc, Rm, args.ideal)
    values = hilbert_samuel_values(Rm, X, args.max_n)
    print("n,length", file=out)
    for n, v in enumerate(values):
        print(f"{n},{v}", file=out)
    try:
        fit = fit_sequence(values, krull_dim(Rm))
        coeffs = ",".join(str(c) for c in fit.coeffs)
        print(f"# fit e=({coeffs}) stable_from={fit.stab_index}", file=out)
    except FitError as exc:
        print(f"# no fit: {exc}", file=out)
    return 0


def cmd_standard_check(args, out):
    desc, Rm = _load(args)
    q = desc.parameter_system(args.params, Rm.ring)
    try:
        ok = is_standard(Rm, q.elements)
    except NotGeneralizedCMError as exc:
        print(f"standard=false reason={exc}", file=out)
        return 0
    print(f"standard={'true' if ok else 'false'}", file=out)
    return 0


def cmd_verify(args, out):
    if args.ring:
        descs = [load_ring(r) for r in args.ring]
    else:
        descs = corpus()
    include = None if args.all or not args.check else set(args.check)
    records = run_suite(descs, field_spec=_field(args), N=args.max_n, window=args.window,
                        include=include, jobs=args.jobs)
    text = format_report(records, timing=not args.no_timing)
    text = text.replace(HEADER, f"{HEADER} (n = 0..{args.max_n}, fit window n = 0..{args.window})", 1)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.csv:
        rows = [(r.ring, r.params, r.n, r.lhs, r.rhs) for r in records if r.check == "theorem-a" and r.asserted]
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("ring,params,n,ir,bound,slack\n")
            for ring, params, n, ir, bound in rows:
                fh.write(f"{ring},{params},{n},{ir},{bound},{bound - ir}\n")
    failed = [r for r in records if r.failed]
    if failed:
        print(f"{len(failed)} of {len(records)} checks failed", file=sys.stderr)
        return 1
    return 0


def cmd_corpus(args, out):
    for d in corpus():
        params = ",".join(d.params) or "-"
        print(f"{d.name} vars={' '.join(d.variables)} params={params}", file=out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="socle", description=__doc__)
    p.add_argument("--field", default=None,
                   help="override the ring's field: 'rational' or 'prime P'")
    sub = p.add_subparsers(dest="command", required=True)

    def ring_cmd(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("ring", help="corpus id or path to a .ring file")
        sp.set_defaults(func=func)
        return sp

    sp = ring_cmd("gb", cmd_gb, "reduced Groebner basis of J (plus extra generators)")
    sp.add_argument("--gens", default="", help="extra comma-separated generators")
    sp.add_argument("--order", type=_order, default=GREVLEX, help="grevlex, lex or elim:K")

    for name, func, help_text in (("colon", cmd_colon, "(J + A) : (J + B)"),
                                  ("intersect", cmd_intersect, "(J + A) ∩ (J + B)")):
        sp = ring_cmd(name, func, help_text)
        sp.add_argument("--a", required=True, help="params name, 'm', or polynomials")
        sp.add_argument("--b", default="m", help="params name, 'm', or polynomials (default m)")

    ring_cmd("invariants", cmd_invariants, "dimension, depth, s- and h-vectors, n0")

    sp = ring_cmd("ir-seq", cmd_ir_seq, "CSV of ir(q^(n+1)) against the upper bound")
    sp.add_argument("--params", required=True)
    sp.add_argument("--max-n", type=int, default=4)

    sp = ring_cmd("hilbert", cmd_hilbert, "lengths of R/X^(n+1) and their fitted coefficients")
    sp.add_argument("--ideal", required=True, help="params name, 'm', or polynomials")
    sp.add_argument("--max-n", type=int, default=6)

    sp = ring_cmd("standard-check", cmd_standard_check, "is the parameter system standard")
    sp.add_argument("--params", required=True)

    sp = sub.add_parser("verify", help="run the verification suite")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--check", action="append", choices=CHECK_IDS)
    sp.add_argument("--ring", action="append", help="restrict to a corpus id or ring file")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--window", type=int, default=6, help="last n used for polynomial fits")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", "-o", help="write the report here instead of stdout")
    sp.add_argument("--csv", help="also write the theorem-a table as CSV")
    sp.add_argument("--no-timing", action="store_true", help="print ms=0 for byte-stable reports")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("corpus", help="list the shipped rings")
    sp.add_argument("action", choices=["list"])
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, ParameterSystemError, FitError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
