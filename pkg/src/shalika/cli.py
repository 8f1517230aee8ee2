"""Command line entry point.

Inline branch syntax: ``"2,1;2,3"`` lists Newton pairs innermost first,
``"u:2,1"`` is an unramified step with residue degree 2 and twist 1, and
``+`` separates branches.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import germs, orbital, qtdeform
from .combinat import to_partition
from .germs import DimensionError, SpecError
from .symfunc import DegreeCapExceeded, convert

EXIT_COMPUTE = 1
EXIT_PARSE = 2


class UsageError(ValueError):
    pass


def parse_partition(text: str) -> tuple:
    """``"4"``, ``"2,1,1"`` or ``"2,1^2"``."""
    parts = []
    try:
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            if "^" in tok:
                base, mult = tok.split("^")
                parts += [int(base)] * int(mult)
            else:
                parts.append(int(tok))
    except ValueError:
        raise UsageError(f"--parahoric: cannot parse partition {text!r}") from None
    if not parts or any(p < 1 for p in parts):
        raise UsageError(f"--parahoric: {text!r} is not a partition")
    return to_partition(parts)


def _parse_pairs(text: str, flag: str) -> list:
    out = []
    for tok in text.split(";"):
        tok = tok.strip()
        if not tok:
            continue
        try:
            a, b = (int(x) for x in tok.split(","))
        except ValueError:
            raise UsageError(f"{flag}: cannot parse pair {tok!r}") from None
        out.append((a, b))
    return out


def _contact(args) -> dict:
    out = {}
    for item in args.contact or []:
        try:
            key, val = item.split("=")
            i, j = (int(x) for x in key.split(","))
            out[(min(i, j), max(i, j))] = Fraction(val)
        except ValueError:
            raise UsageError(f"--contact: expected 'i,j=value', got {item!r}") from None
    return out


def load_spec(args) -> germs.GammaSpec:
    sources = [s for s in ("newton", "puiseux", "spec") if getattr(args, s, None)]
    if len(sources) != 1:
        raise UsageError("give exactly one of --newton, --puiseux, --spec")
    src = sources[0]
    try:
        if src == "newton":
            spec = germs.parse_gamma(args.newton)
        elif src == "puiseux":
            spec = germs.GammaSpec(tuple(germs.parse_puiseux(b) for b in args.puiseux.split("+")))
        else:
            with open(args.spec, encoding="utf-8") as fh:
                spec = germs.gamma_from_json(json.load(fh))
    except SpecError as exc:
        raise UsageError(f"--{src}: {exc}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--spec: {exc}") from None
    contact = _contact(args) or spec.contact
    dim = args.dim if args.dim is not None else spec.dim_override
    try:
        return germs.GammaSpec(spec.branches, contact, dim)
    except SpecError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload, table_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _fmt_lam(lam) -> str:
    return ",".join(map(str, lam))


# ---------------------------------------------------------------------------
# subcommands


def cmd_msf(args):
    f = germs.master_symfun(load_spec(args))
    if args.latex:
        print(f.to_latex())
        return 0
    _emit(args, f.to_json(), [f"e[{_fmt_lam(lam)}]\t{c}" for lam, c in f.items()])
    return 0


def cmd_germs(args):
    spec = load_spec(args)
    f = germs.master_symfun(spec)
    if args.check:
        g = convert(germs.waldspurger_master(spec), "e")
        if g != f:
            print("mismatch between the Dyck-path and transition-matrix routes", file=sys.stderr)
            return EXIT_COMPUTE
        print("ok: both routes agree", file=sys.stderr)
    table = germs.germ_tables(f).table(args.kind)
    _emit(
        args,
        {"kind": args.kind, "degree": f.degree, "coeffs": [[list(l), str(c)] for l, c in sorted(table.items())]},
        [f"{_fmt_lam(l)}\t{c}" for l, c in sorted(table.items())],
    )
    return 0


def _poly(p, args) -> str:
    return p.render(ascending=args.order == "asc", times="" if args.order == "asc" else "*")


def cmd_orbital(args):
    spec = load_spec(args)
    if args.all:
        rep = orbital.OrbitalReport.build(spec)
        if args.json:
            print(json.dumps(rep.to_json(), sort_keys=True))
        else:
            print(f"dim\t{rep.dim_sp}")
            for lam, p in rep.by_parahoric.items():
                print(f"{_fmt_lam(lam)}\t{_poly(p, args)}")
        return 0
    if not args.parahoric:
        raise UsageError("orbital needs --parahoric PARTITION or --all")
    lam = parse_partition(args.parahoric)
    if sum(lam) != spec.n:
        raise UsageError(f"--parahoric: {_fmt_lam(lam)} is not a partition of {spec.n}")
    p = orbital.orbital_integral(spec, lam)
    _emit(args, {"parahoric": list(lam), "polynomial": p.to_json()}, [_poly(p, args)])
    return 0


def cmd_jacobian(args):
    p = orbital.jacobian_count(load_spec(args))
    _emit(args, {"jacobian_count": p.to_json()}, [_poly(p, args)])
    return 0


def cmd_components(args):
    spec = load_spec(args)
    nu = orbital.top_frobenius(spec)
    c = orbital.component_count(spec)
    _emit(args, {"components": c, "top_frobenius": list(nu)}, [f"components\t{c}", f"top_frobenius\th[{_fmt_lam(nu)}]"])
    return 0


def cmd_delta(args):
    spec = load_spec(args)
    d = orbital.dim_sp(spec)
    _emit(args, {"dim_sp": d}, [str(d)])
    return 0


def _torus(args):
    if args.torus:
        try:
            m, n = (int(x) for x in args.torus.split(","))
        except ValueError:
            raise UsageError(f"--torus: expected 'm,n', got {args.torus!r}") from None
        return m, n
    spec = load_spec(args)
    if len(spec.branches) != 1 or len(spec.branches[0].steps) != 1 or not spec.branches[0].is_ramified:
        raise UsageError("superpoly handles torus knots only: one branch with one ramified step")
    s = spec.branches[0].steps[0]
    return s.q, s.p


def cmd_superpoly(args):
    m, n = _torus(args)
    try:
        if args.qt:
            coeffs = qtdeform.torus_msf_qt(m, n)
            _emit(
                args,
                {"m": m, "n": n, "coeffs": [[list(l), c.to_json()] for l, c in sorted(coeffs.items())]},
                [f"{_fmt_lam(l)}\t{c}" for l, c in sorted(coeffs.items())],
            )
            return 0
        sp = qtdeform.superpolynomial(m, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(
        args,
        {"m": m, "n": n, "a_coeffs": [[k, v.to_json()] for k, v in sp.items()]},
        [f"a^{k}\t{v}" for k, v in sp.items()],
    )
    return 0


def cmd_convert(args):
    sources = [s for s in ("newton", "puiseux", "cabling") if getattr(args, s, None)]
    if len(sources) != 1:
        raise UsageError("give exactly one of --newton, --puiseux, --cabling")
    try:
        if args.newton:
            pairs = _parse_pairs(args.newton, "--newton")
            for p, q in pairs:
                germs.Ramified(p, q)
        elif args.puiseux:
            pairs = germs.puiseux_to_newton([Fraction(x) for x in args.puiseux.split(",") if x.strip()])
        else:
            pairs = germs.cabling_to_newton(_parse_pairs(args.cabling, "--cabling"))
    except (SpecError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{sources[0]}: {exc}") from None
    if args.to == "newton":
        out = [list(x) for x in pairs]
    elif args.to == "cabling":
        out = [list(x) for x in germs.newton_to_cabling(pairs)]
    else:
        out = [str(r) for r in germs.newton_to_puiseux(pairs)]
    print(json.dumps(out, separators=(",", ":")))
    return 0


# ---------------------------------------------------------------------------


def _add_spec_args(p):
    p.add_argument("--newton", help='inline branches, e.g. "2,1;2,3", "u:2,1", "2,3+2,3"')
    p.add_argument("--puiseux", help='Puiseux exponents, e.g. "7/4,3/2"; "+" separates branches')
    p.add_argument("--spec", help="JSON file with a gamma specification")
    p.add_argument("--contact", action="append", help="contact valuation 'i,j=value' between branches")
    p.add_argument("--dim", type=int, help="override the dimension")
    p.add_argument("--json", action="store_true", help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shalika", description="Shalika germs and orbital integrals for GL_n.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("msf", help="master symmetric function in the e basis")
    _add_spec_args(p)
    p.add_argument("--latex", action="store_true", help="typeset output")
    p.set_defaults(func=cmd_msf)

    p = sub.add_parser("germs", help="Shalika, Steinberg or Dyck germs")
    _add_spec_args(p)
    p.add_argument("--kind", choices=("shalika", "steinberg", "dyck"), default="shalika")
    p.add_argument("--check", action="store_true", help="compare with the transition-matrix route")
    p.set_defaults(func=cmd_germs)

    for name, fn, hlp in (
        ("orbital", cmd_orbital, "orbital integrals of parahoric characteristic functions"),
        ("jacobian", cmd_jacobian, "point count of the compactified Jacobian"),
    ):
        p = sub.add_parser(name, help=hlp)
        _add_spec_args(p)
        p.add_argument("--order", choices=("desc", "asc"), default="desc", help="term order of polynomials")
        if name == "orbital":
            p.add_argument("--parahoric", help='partition, e.g. "4" or "1^4"')
            p.add_argument("--all", action="store_true", help="all parahorics plus summary")
        p.set_defaults(func=fn)

    p = sub.add_parser("components", help="component count and top Frobenius character")
    _add_spec_args(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("delta", help="dimension of the affine Springer fiber")
    _add_spec_args(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("superpoly", help="q,t data of torus knots")
    _add_spec_args(p)
    p.add_argument("--torus", help="'m,n' torus knot")
    p.add_argument("--qt", action="store_true", help="print the H-tilde coefficient map instead")
    p.set_defaults(func=cmd_superpoly)

    p = sub.add_parser("convert", help="convert between Newton, Puiseux and cabling data")
    p.add_argument("--newton")
    p.add_argument("--puiseux")
    p.add_argument("--cabling")
    p.add_argument("--to", choices=("newton", "puiseux", "cabling"), required=True)
    p.set_defaults(func=cmd_convert)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DimensionError, DegreeCapExceeded, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
