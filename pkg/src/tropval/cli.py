"""Command-line front end.

Every command prints ``key=value`` output so results can be diffed and
scripted.  Exit status is 0 on success, 1 on a domain error (zero polynomial,
invalid valuation parameter, bad table) and 2 on a syntax error.
"""
from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path
from typing import Sequence

from . import hyper
from .expr import ExprSyntaxError, parse_expr, to_poly, to_rational
from .trop_core import Trop, format_rat, parse_scalar, trop_leq
from .trop_poly import canonicalize, factor, func_equiv, poly_add, poly_eval
from .trop_ratfunc import rat_eq, rat_eval
from .valuations import (
    FFValuation,
    Kind,
    QmaxValuation,
    abstract_curve,
    check_valuation_axioms,
    closed_pairs,
    equivalence_ratio,
    ff_classify,
    parse_valuation_spec,
    qmax_classify,
)

# Which library operations each subcommand exposes.  Kept in sync with the
# handlers below and checked by the test-suite.
COMMAND_OPERATIONS: dict[str, tuple[str, ...]] = {
    "canon": ("canonicalize", "t_order", "poly_degree"),
    "factor": ("factor",),
    "eval": ("poly_eval", "poly_add", "poly_mul", "trop_add", "trop_mul", "trop_inv", "parse_expr"),
    "equiv": ("func_equiv", "rat_eq", "trop_leq"),
    "ratify": ("rat_normalize", "rat_add", "rat_mul", "rat_inv", "expand"),
    "valuate": ("qmax_val_eval", "ff_val_eval", "check_valuation_axioms"),
    "classify": ("qmax_classify", "ff_classify", "equivalent"),
    "curve": ("abstract_curve",),
    "hcheck": (
        "check_hypergroup", "check_hyperring", "check_hyperfield", "rval_axiom_check",
        "rval_add", "rval_mul", "rval_contains", "krasner", "signs",
    ),
    "quotient": ("quotient_hyperring",),
    "iso": ("iso_search",),
}


class DomainError(Exception):
    pass


def _quote(v) -> str:
    s = str(v)
    return f'"{s}"' if (" " in s or not s) else s


def _emit(records: list[list[tuple[str, object]]], fmt: str) -> str:
    if fmt == "compact":
        return "\n".join(" ".join(f"{k}={_quote(v)}" for k, v in rec) for rec in records) + "\n"
    blocks = ["\n".join(f"{k}={_quote(v)}" for k, v in rec) for rec in records]
    return "\n\n".join(blocks) + "\n"


def _coeff_list(coeffs) -> str:
    return "[" + ",".join(str(c) for c in coeffs) + "]"


def _poly_arg(text: str):
    e = parse_expr(text)
    try:
        return to_poly(e)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _scalar_arg(text: str) -> Trop:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


# -- handlers ---------------------------------------------------------------


def cmd_canon(args) -> list:
    c = canonicalize(_poly_arg(args.expr))
    if c.is_zero:
        return [[("coeffs", "[]"), ("torder", "none"), ("degree", "none")]]
    return [[("coeffs", _coeff_list(c.coeffs)), ("torder", c.t_order), ("degree", c.degree)]]


def cmd_factor(args) -> list:
    f = _poly_arg(args.expr)
    if canonicalize(f).is_zero:
        raise DomainError("the zero polynomial has no factorization")
    fac = factor(f)
    roots = "[" + ",".join(format_rat(r) for r in fac.roots) + "]"
    return [[("unit", fac.unit), ("tpower", fac.t_power), ("roots", roots)]]


def cmd_eval(args) -> str:
    x = _scalar_arg(args.at)
    e = parse_expr(args.expr)
    try:
        p = to_poly(e)
    except ValueError:
        try:
            return f"{rat_eval(to_rational(e), x)}\n"
        except ZeroDivisionError as exc:
            raise DomainError(str(exc)) from None
    return f"{poly_eval(p, x)}\n"


def cmd_equiv(args) -> str:
    a, b = parse_expr(args.left), parse_expr(args.right)
    if args.leq:
        try:
            fa, fb = to_poly(a), to_poly(b)
        except ValueError:
            raise DomainError("--leq compares polynomials only") from None
        if len(fa.coeffs) <= 1 and len(fb.coeffs) <= 1:
            sa, sb = poly_eval(fa, Trop(0)), poly_eval(fb, Trop(0))
            return f"{str(trop_leq(sa, sb)).lower()}\n"
        return f"{str(func_equiv(poly_add(fa, fb), fb)).lower()}\n"
    try:
        result = func_equiv(to_poly(a), to_poly(b))
    except ValueError:
        result = rat_eq(to_rational(a), to_rational(b))
    return f"{str(result).lower()}\n"


def cmd_ratify(args) -> list:
    try:
        r = to_rational(parse_expr(args.expr))
    except ZeroDivisionError as exc:
        raise DomainError(str(exc)) from None
    return [[
        ("num", _coeff_list(r.num.coeffs)),
        ("den", _coeff_list(r.den.coeffs)),
        ("expr", str(r)),
    ]]


def _valuation_from_args(args):
    try:
        if args.spec:
            return parse_valuation_spec(args.spec)
        if args.kind is None or args.param is None:
            raise DomainError("give --spec or both --kind and --param")
        spec = f"kind={args.kind}; base={args.base}; param={args.param}"
        return parse_valuation_spec(spec)
    except ValueError as exc:
        raise DomainError(f"invalid valuation: {exc}") from None


def cmd_valuate(args) -> str:
    v = _valuation_from_args(args)
    if args.check:
        carrier = "qmax" if isinstance(v, QmaxValuation) else "qmax(T)"
        rep = check_valuation_axioms(v.kind, v, closed_pairs(random.Random(args.seed), args.check, carrier))
        return "\n".join(rep.lines()) + "\n"
    if args.expr is None:
        raise DomainError("an expression is required unless --check is given")
    e = parse_expr(args.expr)
    if isinstance(v, QmaxValuation):
        try:
            p = to_poly(e)
        except ValueError:
            p = None
        c = canonicalize(p) if p is not None else None
        if c is None or len(c.coeffs) > 1:
            raise DomainError("a valuation on qmax takes a constant expression")
        return f"{v(c.coeffs[0] if c.coeffs else Trop())}\n"
    try:
        r = to_rational(e)
    except ZeroDivisionError as exc:
        raise DomainError(str(exc)) from None
    return f"{v(r)}\n"


def cmd_classify(args) -> list:
    kind = Kind(args.kind)
    carrier = args.carrier.replace(" ", "")
    try:
        if carrier == "qmax":
            classes = qmax_classify(kind)
        elif carrier.lower() == "qmax(t)":
            classes = ff_classify(kind)
        else:
            raise DomainError(f"carrier must be qmax or qmax(T), got {args.carrier!r}")
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.param is not None:
        try:
            s = parse_scalar(args.param)
            if s.is_bottom:
                raise ValueError("a valuation parameter must be finite")
            q = s.value
            probe = (QmaxValuation if carrier == "qmax" else FFValuation)(kind, q)
        except ValueError as exc:
            raise DomainError(f"invalid parameter: {exc}") from None
        for cls in classes:
            rho = equivalence_ratio(probe, cls.representative)
            if rho is not None:
                return [[("param", format_rat(q)), ("class", cls.label), ("rho", format_rat(rho))]]
        raise DomainError("parameter falls in no class")  # unreachable for valid input
    return [[("label", c.label), ("param", format_rat(c.param))] for c in classes]


def cmd_curve(args) -> list:
    curve = abstract_curve()
    recs = [
        [("point", p.name), ("valuation", p.valuation), ("closed", str(p.closed).lower()), ("ideal", p.ideal)]
        for p in curve.points
    ]
    recs.append([("points", len(curve.points)), ("closed_points", len(curve.closed_points))])
    return recs


def _load_structure(args):
    if args.builtin:
        return {"krasner": hyper.krasner, "signs": hyper.signs}[args.builtin]()
    if not args.file:
        raise DomainError("give a table file or --builtin")
    try:
        return hyper.load_table(Path(args.file).read_text())
    except OSError as exc:
        raise DomainError(f"cannot read {args.file}: {exc.strerror}") from None
    except ValueError as exc:
        raise DomainError(f"{args.file}: {exc}") from None


def cmd_hcheck(args) -> str:
    if args.rval:
        try:
            samples = [parse_scalar(s) for s in args.rval.split(",")]
            rep = hyper.rval_axiom_check(samples)
        except ValueError as exc:
            raise DomainError(str(exc)) from None
    else:
        h = _load_structure(args)
        check = {
            "hypergroup": hyper.check_hypergroup,
            "hyperring": hyper.check_hyperring,
            "hyperfield": hyper.check_hyperfield,
        }[args.level]
        rep = check(h)
    return "\n".join(rep.lines() + [f"ok={str(rep.ok).lower()}"]) + "\n"


def cmd_quotient(args) -> str:
    try:
        gens = [int(g) for g in args.gens.split(",") if g.strip()]
    except ValueError:
        raise DomainError(f"generators must be integers, got {args.gens!r}") from None
    if args.all_units:
        gens = [g for g in range(1, args.modulus) if math.gcd(g, args.modulus) == 1]
    try:
        h = hyper.quotient_hyperring(args.modulus, gens)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return hyper.dump_table(h)


def cmd_iso(args) -> str:
    hs = []
    for f in (args.first, args.second):
        if f in ("krasner", "signs"):
            hs.append(getattr(hyper, f)())
            continue
        try:
            hs.append(hyper.load_table(Path(f).read_text()))
        except OSError as exc:
            raise DomainError(f"cannot read {f}: {exc.strerror}") from None
        except ValueError as exc:
            raise DomainError(f"{f}: {exc}") from None
    try:
        phi = hyper.iso_search(*hs)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if phi is None:
        return "iso=none\n"
    pairs = ",".join(f"{k}->{phi[k]}" for k in sorted(phi, key=hyper.label_key))
    return f"iso={pairs}\n"


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tropval",
        description="Exact tropical algebra over Q_max. In expressions '+' is max and '*' is ordinary addition.",
    )
    p.add_argument("--format", choices=("compact", "records"), default="compact")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("canon", help="canonical (concave hull) representative")
    s.add_argument("expr")
    s = sub.add_parser("factor", help="factor into linear polynomials")
    s.add_argument("expr")
    s = sub.add_parser("eval", help="evaluate an expression at a scalar")
    s.add_argument("expr")
    s.add_argument("--at", required=True, help="scalar such as 3/2 or -inf")
    s = sub.add_parser("equiv", help="functional equivalence (or order with --leq)")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--leq", action="store_true", help="test left <= right in the canonical order")
    s = sub.add_parser("ratify", help="normal form of a fraction in Q_max(T)")
    s.add_argument("expr")

    s = sub.add_parser("valuate", help="evaluate a valuation")
    s.add_argument("expr", nargs="?")
    s.add_argument("--spec", help="'kind=strict; base=qmax(T); param=-1'")
    s.add_argument("--kind", choices=[k.value for k in Kind])
    s.add_argument("--base", default="qmax(T)")
    s.add_argument("--param")
    s.add_argument("--check", type=int, metavar="N", help="check the axioms on N random closed pairs")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("classify", help="equivalence classes of valuations")
    s.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    s.add_argument("--carrier", default="qmax(T)")
    s.add_argument("--param", help="report the class containing this parameter")

    sub.add_parser("curve", help="the three-point projective line over F_1")

    s = sub.add_parser("hcheck", help="check hyperstructure axioms")
    s.add_argument("file", nargs="?")
    s.add_argument("--builtin", choices=("krasner", "signs"))
    s.add_argument("--level", choices=("hypergroup", "hyperring", "hyperfield"), default="hyperfield")
    s.add_argument("--rval", metavar="SAMPLES", help="comma-separated scalars for the valuative hyperfield")

    s = sub.add_parser("quotient", help="quotient hyperring (Z/n)/G as a table")
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--gens", default="", help="comma-separated generators of G")
    s.add_argument("--all-units", action="store_true", help="take G to be every unit")

    s = sub.add_parser("iso", help="search for an isomorphism between two tables")
    s.add_argument("first", help="table file, or krasner/signs")
    s.add_argument("second")
    return p


HANDLERS = {
    "canon": cmd_canon,
    "factor": cmd_factor,
    "eval": cmd_eval,
    "equiv": cmd_equiv,
    "ratify": cmd_ratify,
    "valuate": cmd_valuate,
    "classify": cmd_classify,
    "curve": cmd_curve,
    "hcheck": cmd_hcheck,
    "quotient": cmd_quotient,
    "iso": cmd_iso,
}


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(list(argv))
    try:
        result = HANDLERS[args.command](args)
    except ExprSyntaxError as exc:
        err.write(f"syntax error: {exc}\n")
        return 2
    except (DomainError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    out.write(result if isinstance(result, str) else _emit(result, args.format))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
