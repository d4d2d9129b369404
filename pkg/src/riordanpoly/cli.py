"""Command line front end.

Every subcommand reads its arrays from ``--f``/``--g`` (coefficient lists or
named series) or from ``--family``, computes exactly and prints rationals as
``p/q``.  Exit status: 0 on success, 1 on usage errors, 2 when a mathematical
precondition fails (the error name and location go to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import appell as AP
from . import catalog as C
from . import polyseq as PS
from . import riordan as RA
from . import series as S
from .errors import DomainError, IdentityViolation, UnknownToken
from .riordan import RiordanSpec, Triangle
from .series import Series, format_rational

SUBCOMMANDS = ("triangle", "polys", "act", "product", "inverse", "asequence",
               "umbral", "appell", "recover", "verify")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class Inputs:
    """A resolved array together with the family it came from, if any."""

    spec: RiordanSpec
    family: C.FamilyEntry | None = None


def _build_parser() -> _Parser:
    p = _Parser(prog="riordanpoly", description="Exact Riordan arrays and their polynomial sequences.")
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("--f", action="append", default=[], help="f as 'c0,c1,...' or a named series")
    p.add_argument("--g", action="append", default=[], help="g as 'c0,c1,...' or a named series")
    p.add_argument("--family", action="append", default=[], help="catalog family name")
    p.add_argument("--rows", type=int, default=None, help="number of rows / polynomials")
    p.add_argument("--order", type=int, default=None, help="series truncation order")
    p.add_argument("--weight", default=None, help="exp, geometric, inv_square, a_minus_log:<a>, custom:<list>")
    p.add_argument("--t0", default=None, help="evaluate the polynomials at this rational point")
    p.add_argument("--h", default=None, help="series acted on by 'act'")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--input", default=None, help="triangle file for 'recover' (stdin when omitted)")
    p.add_argument("--output", default=None, help="write here instead of stdout")
    p.add_argument("--factorial", action="store_true", help="print n! s_n for weighted families")
    p.add_argument("--show-f", action="store_true", help="text triangles: add the f-column")
    p.add_argument("--suite", default="all", help="verify: all, families, identities or a check name")
    return p


def _nonneg(value: int | None, default: int, flag: str) -> int:
    if value is None:
        return default
    if value < 0:
        raise UsageError(f"{flag} must be nonnegative")
    return value


def _specs(args, N: int) -> list[Inputs]:
    """All arrays named on the command line, each truncated to order ``N``."""
    out = [Inputs(C.get_family(name, N + 1).spec, C.get_family(name, N + 1)) for name in args.family]
    if len(args.f) != len(args.g):
        raise UsageError("--f and --g must be given the same number of times")
    for f, g in zip(args.f, args.g):
        try:
            out.append(Inputs(RiordanSpec(S.parse_series(f, N), S.parse_series(g, N))))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise UsageError(f"cannot parse series: {exc}") from None
    if not out:
        raise UsageError("give --f and --g, or --family")
    return out


def _one_spec(args, N: int) -> Inputs:
    specs = _specs(args, N)
    if len(specs) != 1:
        raise UsageError(f"{args.command} takes exactly one array")
    return specs[0]


def _series_out(s: Series, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"coeffs": [format_rational(c) for c in s.coeffs], "order": s.trunc_order}) + "\n"
    if fmt == "csv":
        return ",".join(format_rational(c) for c in s.coeffs) + "\n"
    return S.format_series(s) + "\n"


def _spec_out(spec: RiordanSpec, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({
            "f": [format_rational(c) for c in spec.f.coeffs],
            "g": [format_rational(c) for c in spec.g.coeffs],
            "order": spec.trunc_order,
        }) + "\n"
    if fmt == "csv":
        return f"f,{S.format_series(spec.f)}\ng,{S.format_series(spec.g)}\n"
    return f"f = {S.format_series(spec.f, trim=True)}\ng = {S.format_series(spec.g, trim=True)}\n"


def _triangle_out(t: Triangle, fmt: str, aux=None) -> str:
    if fmt == "json":
        return t.to_json() + "\n"
    if fmt == "csv":
        return t.to_csv()
    return t.to_text(aux)


def _polys_out(polys, fmt: str, t0: Fraction | None = None) -> str:
    seq = PS.PolySeq(tuple(polys))
    if t0 is not None:
        values = [PS.evaluate(p, t0) for p in seq.polys]
        if fmt == "json":
            return json.dumps({"t0": format_rational(t0), "values": [format_rational(v) for v in values]}) + "\n"
        if fmt == "csv":
            return ",".join(format_rational(v) for v in values) + "\n"
        return "".join(f"p_{n}({format_rational(t0)}) = {format_rational(v)}\n" for n, v in enumerate(values))
    if fmt == "json":
        return seq.to_json() + "\n"
    if fmt == "csv":
        return seq.as_triangle().to_csv()
    return seq.to_text()


def _cmd_triangle(args) -> str:
    R = _nonneg(args.rows, 6, "--rows")
    src = _one_spec(args, R)
    t = RA.build_triangle(src.spec, R)
    aux = None
    if args.show_f and args.format == "text":
        aux = RA.build_triangle(RA.shift_up(src.spec), R + 1).column(0)
    return _triangle_out(t, args.format, aux)


def _cmd_polys(args) -> str:
    R = _nonneg(args.rows, 6, "--rows")
    src = _one_spec(args, max(R - 1, 0))
    if args.weight:
        polys = AP.weighted_sequence(src.spec, AP.Weight.from_token(args.weight, max(R - 1, 0)), R).polys
    elif src.family is not None:
        polys = src.family.sequence(R)
    else:
        polys = PS.sequence_from_spec(src.spec, R).polys
    t0 = None
    if args.t0 is not None:
        t0 = Fraction(args.t0)
        if not args.weight and (src.family is None or src.family.weight is None) and R:
            if not PS.bivariate_gf_check(src.spec, t0, R - 1):
                raise IdentityViolation("row sums disagree with f/(g - t x)")
    return _polys_out(polys, args.format, t0)


def _cmd_act(args) -> str:
    N = _nonneg(args.order, 8, "--order")
    if args.h is None:
        raise UsageError("act needs --h")
    src = _one_spec(args, N)
    return _series_out(RA.act(src.spec, S.parse_series(args.h, N)), args.format)


def _cmd_product(args) -> str:
    N = _nonneg(args.order if args.order is not None else (args.rows - 1 if args.rows else None), 8, "--order")
    specs = _specs(args, N)
    if len(specs) < 2:
        raise UsageError("product needs at least two arrays")
    acc = specs[0].spec
    for item in specs[1:]:
        acc = RA.product(acc, item.spec)
    if args.rows is not None:
        return _triangle_out(RA.build_triangle(acc, args.rows), args.format)
    return _spec_out(acc, args.format)


def _cmd_inverse(args) -> str:
    R = _nonneg(args.rows, 8, "--rows")
    src = _one_spec(args, max(R - 1, 0))
    inv = RA.inverse(src.spec, R)
    if args.format == "text":
        return _spec_out(inv, "text") + "\n" + RA.build_triangle(inv, R).to_text()
    return _spec_out(inv, args.format)


def _cmd_asequence(args) -> str:
    N = _nonneg(args.order, 8, "--order")
    if args.family:
        g = C.get_family(args.family[0], N + 1).spec.g
    elif args.g:
        g = S.parse_series(args.g[0], N)
    else:
        raise UsageError("asequence needs --g or --family")
    return _series_out(RA.a_sequence(g, N), args.format)


def _cmd_umbral(args) -> str:
    R = _nonneg(args.rows, 6, "--rows")
    specs = _specs(args, max(R - 1, 0))
    if len(specs) != 2:
        raise UsageError("umbral takes exactly two arrays")
    p, q = (PS.sequence_from_spec(item.spec, R) for item in specs)
    return _polys_out(PS.umbral_compose(p, q).polys, args.format)


def _cmd_appell(args) -> str:
    R = _nonneg(args.rows, 6, "--rows")
    N = max(R - 1, 0)
    src = _one_spec(args, N)
    if args.weight:
        w = AP.Weight.from_token(args.weight, N)
    elif src.family is not None and src.family.weight is not None:
        w = src.family.weight
    else:
        raise UsageError("appell needs --weight (or a weighted family)")
    seq = AP.weighted_sequence(src.spec, w, R)
    return _polys_out(seq.as_polys(args.factorial), args.format,
                      Fraction(args.t0) if args.t0 is not None else None)


def _cmd_recover(args) -> str:
    if args.input is None or args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    try:
        t = Triangle.parse(text)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"cannot read triangle: {exc}") from None
    return _spec_out(RA.recover_spec(t), args.format)


def _cmd_verify(args) -> tuple[str, bool]:
    suite = args.suite
    lines, ok = [], True
    names = args.family or C.family_names()
    if suite in ("all", "families") or args.family:
        for name in names:
            R = args.rows or C.golden_size(name)
            report = C.verify_family(name, R)
            ok &= report.ok
            lines.append(("PASS " if report.ok else "FAIL ") + str(report))
    checks = []
    if suite in ("all", "identities") and not args.family:
        checks = list(C.IDENTITY_CHECKS)
    elif suite in C.IDENTITY_CHECKS:
        checks = [suite]
    elif suite not in ("all", "families", "identities"):
        raise UsageError(f"unknown suite {suite!r}")
    for name in checks:
        result = C.IDENTITY_CHECKS[name]()
        ok &= result.ok
        lines.append(str(result))
    passed = sum(line.startswith("PASS") for line in lines)
    lines.append(f"{passed}/{len(lines)} checks passed")
    return "\n".join(lines) + "\n", ok


COMMANDS = {
    "triangle": _cmd_triangle,
    "polys": _cmd_polys,
    "act": _cmd_act,
    "product": _cmd_product,
    "inverse": _cmd_inverse,
    "asequence": _cmd_asequence,
    "umbral": _cmd_umbral,
    "appell": _cmd_appell,
    "recover": _cmd_recover,
}


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        if args.command == "verify":
            text, ok = _cmd_verify(args)
            _emit(text, args.output)
            return 0 if ok else 2
        _emit(COMMANDS[args.command](args), args.output)
        return 0
    except DomainError as exc:
        where = f" at {exc.location}" if exc.location is not None else ""
        print(f"error: {type(exc).__name__}{where}: {exc}", file=sys.stderr)
        return 2
    except (UsageError, UnknownToken) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
