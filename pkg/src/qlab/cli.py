"""qlab command-line interface.

Subcommands: list, coeffs, enum, verify, asympt.  Output is deterministic
byte-for-byte for a fixed invocation; exit codes are 0 (success / all
identities pass), 1 (verification failure), 2 (usage error).  The
environment variable QLAB_ORDER_CAP (default 5000) guards runaway orders.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from qlab import asymptotics, catalog, combinatorics, identities
from qlab.series import SeriesError, ZetaPolynomial, parse_zeta

DEFAULT_ORDER_CAP = 5000


class UsageError(Exception):
    pass


def _order_cap():
    raw = os.environ.get("QLAB_ORDER_CAP", "")
    try:
        return int(raw) if raw else DEFAULT_ORDER_CAP
    except ValueError:
        return DEFAULT_ORDER_CAP


def _check_order(order):
    if order is None:
        return None
    if order < 0:
        raise UsageError("--order must be >= 0")
    cap = _order_cap()
    if order > cap:
        raise UsageError("order %d exceeds QLAB_ORDER_CAP=%d" % (order, cap))
    return order


def _parse_n_values(args):
    if args.n is not None and args.n_range is not None:
        raise UsageError("--n and --n-range are mutually exclusive")
    if args.n is not None:
        try:
            return [int(x) for x in str(args.n).split(",")]
        except ValueError:
            raise UsageError("--n expects an integer or comma-separated integers")
    if args.n_range is not None:
        try:
            a, b = args.n_range.split("..")
            a, b = int(a), int(b)
        except ValueError:
            raise UsageError("--n-range expects A..B")
        if b < a:
            raise UsageError("--n-range expects A <= B")
        return list(range(a, b + 1))
    return None


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coeff_str(c):
    return str(Fraction(c))


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def _cmd_list(args):
    entries = catalog.catalog_json()
    if args.format == "json":
        text = json.dumps(entries, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "arity", "definition"])
        for e in entries:
            w.writerow([e["name"], e["arity"], e["definition"]])
        text = buf.getvalue()
    else:
        lines = ["%-8s %-13s %s" % (e["name"], e["arity"], e["definition"])
                 for e in entries]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_coeffs(args):
    if not args.series:
        raise UsageError("coeffs requires --series NAME")
    order = _check_order(args.order)
    if order is None:
        raise UsageError("coeffs requires --order N")
    zeta = parse_zeta(args.zeta) if args.zeta else None
    try:
        s = catalog.series(args.series, order, zeta)
    except KeyError as exc:
        raise UsageError(str(exc))
    if s.is_bivariate():
        if args.format == "json":
            payload = {
                "series": args.series,
                "order": order,
                "coefficients": [
                    {"q": e,
                     "zeta": {str(k): _coeff_str(v) for k, v in sorted(c.items())}
                     if isinstance(c, ZetaPolynomial) else {"0": _coeff_str(c)}}
                    for e, c in s.coefficients()],
            }
            text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        else:
            lines = ["%d\t%r" % (e, c) for e, c in s.coefficients()]
            text = "\n".join(lines) + "\n"
        _emit(text, args.out)
        return 0
    if s.valuation >= 0:
        coeffs = [s.coefficient(e) for e in range(0, order + 1)]
        if args.format == "json":
            text = json.dumps([_coeff_str(c) for c in coeffs]) + "\n"
        elif args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n", "coefficient"])
            for e, c in enumerate(coeffs):
                w.writerow([e, _coeff_str(c)])
            text = buf.getvalue()
        else:
            text = "".join("%d\t%s\n" % (e, _coeff_str(c)) for e, c in enumerate(coeffs))
    else:
        if args.format == "json":
            text = json.dumps(s.to_json_dict(), sort_keys=True) + "\n"
        elif args.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["n", "coefficient"])
            for e in range(s.valuation, order + 1):
                w.writerow([e, _coeff_str(s.coefficient(e))])
            text = buf.getvalue()
        else:
            text = "".join("%d\t%s\n" % (e, _coeff_str(s.coefficient(e)))
                           for e in range(s.valuation, order + 1))
    _emit(text, args.out)
    return 0


def _cmd_enum(args):
    if not args.family:
        raise UsageError("enum requires --family NAME")
    n_values = _parse_n_values(args)
    if n_values is None:
        raise UsageError("enum requires --n N or --n-range A..B")
    if any(n < 0 for n in n_values):
        raise UsageError("n must be >= 0")
    try:
        blocks = [(n, combinatorics.enumerate_family(args.family, n))
                  for n in n_values]
    except KeyError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        payload = [{"n": n, "count": len(objs),
                    "objects": sorted(str(o) for o in objs)}
                   for n, objs in blocks]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "object"])
        for n, objs in blocks:
            for o in sorted(str(x) for x in objs):
                w.writerow([n, o])
        text = buf.getvalue()
    else:
        lines = []
        for n, objs in blocks:
            lines.append("# %s(%d): %d objects" % (args.family, n, len(objs)))
            lines.extend(sorted(str(o) for o in objs))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_verify(args):
    order = _check_order(args.order)
    if args.all or args.identity is None:
        reports = identities.verify_all(order=order, bivariate_order=args.bivariate_order)
    else:
        try:
            reports = [identities.verify(args.identity, order)]
        except identities.UnknownIdentity:
            raise UsageError("unknown identity %r; known ids: %s"
                             % (args.identity, ", ".join(identities.identity_ids())))
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "order", "status"])
        for r in reports:
            w.writerow([r.identity, r.order, "pass" if r.passed else "fail"])
        text = buf.getvalue()
    else:
        lines = []
        for r in reports:
            if r.passed:
                lines.append("PASS %-22s order %d" % (r.identity, r.order))
            else:
                m = r.mismatch
                where = "q^%d" % m.q_exponent
                if m.zeta_exponent is not None:
                    where += " zeta^%d" % m.zeta_exponent
                lines.append("FAIL %-22s order %d at %s: %s != %s"
                             % (r.identity, r.order, where, m.lhs, m.rhs))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def _cmd_asympt(args):
    precision = args.precision or 30
    if args.eval:
        if args.t is None:
            raise UsageError("asympt --eval requires --t VALUE")
        try:
            value = asymptotics.eval_numeric(args.eval, args.t, precision)
        except KeyError:
            raise UsageError("unknown evaluator %r; known: %s"
                             % (args.eval, ", ".join(asymptotics.eval_names())))
        text_value = mp.nstr(value, precision)
        if args.format == "json":
            text = json.dumps({"name": args.eval, "t": args.t,
                               "value": text_value}, sort_keys=True) + "\n"
        else:
            text = "%s(e^-%s) = %s\n" % (args.eval, args.t, text_value)
        _emit(text, args.out)
        return 0
    if not args.family:
        raise UsageError("asympt requires --family {pod,pev,g,p} or --eval NAME")
    n_values = _parse_n_values(args) or [100, 400, 1600]
    try:
        rows = asymptotics.ratio_table(args.family, n_values, precision)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        payload = [{"n": r.n, "coefficient": str(r.coefficient),
                    "main_term": mp.nstr(r.main_term, precision),
                    "ratio": mp.nstr(r.ratio, precision)} for r in rows]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "coefficient", "main_term", "ratio"])
        for r in rows:
            w.writerow([r.n, str(r.coefficient),
                        mp.nstr(r.main_term, precision), mp.nstr(r.ratio, precision)])
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qlab",
        description="Exact q-series laboratory: coefficients, enumeration, "
                    "identity verification, asymptotics.")
    sub = parser.add_subparsers(dest="command")

    def common(p, fmt_default="plain"):
        p.add_argument("--format", choices=["plain", "json", "csv"],
                       default=fmt_default)
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("list", help="list the series catalog")
    common(p)

    p = sub.add_parser("coeffs", help="expand a cataloged series")
    p.add_argument("--series", required=False)
    p.add_argument("--order", type=int)
    p.add_argument("--zeta", default=None,
                   help="specialize a two-variable series: 1, -1, q^j, -q^j")
    common(p)

    p = sub.add_parser("enum", help="enumerate a combinatorial family")
    p.add_argument("--family", required=False,
                   help="one of %s" % ", ".join(sorted(combinatorics.ENUM_FAMILIES)))
    p.add_argument("--n", default=None)
    p.add_argument("--n-range", default=None)
    common(p)

    p = sub.add_parser("verify", help="verify registered identities")
    p.add_argument("--identity", default=None)
    p.add_argument("--all", action="store_true")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--bivariate-order", type=int, default=None)
    common(p)

    p = sub.add_parser("asympt", help="asymptotic ratio tables and evaluation")
    p.add_argument("--family", default=None)
    p.add_argument("--eval", default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--n", default=None)
    p.add_argument("--n-range", default=None)
    p.add_argument("--precision", type=int, default=None)
    common(p, fmt_default="csv")

    return parser


_COMMANDS = {
    "list": _cmd_list,
    "coeffs": _cmd_coeffs,
    "enum": _cmd_enum,
    "verify": _cmd_verify,
    "asympt": _cmd_asympt,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        parser.print_usage(sys.stderr)
        return 2
    except (SeriesError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
