"""g4lines command-line interface.

Exit codes: 0 ok, 1 validation failure / mismatch / cap, 2 parse error,
3 bound violation, 4 incomplete scan (skips).
"""

import argparse
import logging
import sys
from fractions import Fraction
from math import gcd, lcm

from . import formats
from .exactfield import FieldTooSmall, field_create
from .geometry import GeometryError, ProjLine, check_automorphism, quadric_rank_vertex
from .groups import DEFAULT_GROUP_CAP, GroupCapExceeded, close_group
from .linalg import DEFAULT_ORDER_CAP, OrderExceedsCap, proj_order
from .lines import CYCLIC_TYPES, IncompleteRoots, find_galois_lines, two_trigonal_rho_candidates

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUND, EXIT_SKIPPED = 0, 1, 2, 3, 4
SCAN_TYPES = ("s3", "k4", "cyclic")

log = logging.getLogger("g4lines")


class _Abort(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _types(text):
    types = tuple(t.strip().lower() for t in text.split(",") if t.strip())
    bad = [t for t in types if t not in SCAN_TYPES]
    if bad or not types:
        raise argparse.ArgumentTypeError(f"types must be a nonempty subset of {','.join(SCAN_TYPES)}")
    return types


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _load(path):
    try:
        return formats.load(path)
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))


def _session(conductor, *objs):
    if conductor is None:
        conductor = lcm(*(formats._conductor(o) for o in objs))
    return field_create(conductor)


def _parse(fn, obj, field):
    try:
        return fn(obj, field)
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))
    except GeometryError as exc:
        raise _Abort(EXIT_FAIL, f"invalid curve: {exc}")


def _load_curve_group(args):
    cobj, gobj = _load(args.curve), _load(args.group)
    try:
        field = _session(args.conductor, cobj, gobj)
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))
    C = _parse(formats.decode_curve, cobj, field)
    gens = _parse(formats.decode_group, gobj, field)
    return field, C, gens


def _verify(C, gens, out=None):
    ok = True
    for i, g in enumerate(gens):
        cert = check_automorphism(g, C)
        if cert.ok:
            print(f"generator {i}: automorphism (g*Q = ({cert.c}) Q, mu = {cert.mu})", file=out)
        else:
            ok = False
            print(f"generator {i}: FAILED: {cert.reason}", file=out)
    return ok


# -- commands ---------------------------------------------------------------------

def cmd_check(args):
    field, C, gens = _load_curve_group(args)
    r, vertex = quadric_rank_vertex(C)
    print(f"rank Q = {r}")
    if vertex is not None:
        print(f"vertex = ({' : '.join(map(str, vertex))})")
    return EXIT_OK if _verify(C, gens) else EXIT_FAIL


def _close(gens, args):
    try:
        G = close_group(gens, args.group_cap)
        for g in G.elements:
            proj_order(g, args.order_cap)
    except GroupCapExceeded as exc:
        raise _Abort(EXIT_FAIL, str(exc))
    except OrderExceedsCap as exc:
        raise _Abort(EXIT_FAIL, str(exc))
    return G


def cmd_close(args):
    gobj = _load(args.group)
    try:
        field = _session(args.conductor, gobj)
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))
    gens = _parse(formats.decode_group, gobj, field)
    G = _close(gens, args)
    print(f"order {G.order}")
    if args.dump:
        formats.dump(formats.encode_group(gens, dump=G.elements), args.dump)
    return EXIT_OK


def cmd_find(args):
    field, C, gens = _load_curve_group(args)
    if not _verify(C, gens, sys.stderr):
        print("refusing to scan: some generators are not automorphisms")
        return EXIT_FAIL
    G = _close(gens, args)
    report = find_galois_lines(C, G, args.types, strict=False)
    text = formats.dumps(formats.encode_report(report, field))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    print(", ".join(f"{k}: {v}" for k, v in report.counts.items()))
    for v in report.violations:
        print(f"violation: {v}")
    for s in report.skipped:
        print(f"skipped: {s}")
    for u in report.unresolved:
        print(f"unresolved: {u}")
    if report.violations:
        return EXIT_BOUND
    if report.skipped:
        return EXIT_SKIPPED
    return EXIT_OK


_TYPE_TAGS = {"s3": ("S3",), "k4": ("K4",), "cyclic": CYCLIC_TYPES}


def _read_line_set(obj, field, types=None):
    """Lines of a lines file, or of a report's records restricted to ``types``."""
    if "records" in obj:
        rep = formats.decode_report(obj, field)
        tags = None if types is None else {t for k in types for t in _TYPE_TAGS[k]}
        return [r.line for r in rep.records if tags is None or r.type in tags]
    return formats.decode_lines(obj, field)[1]


def conjugate_line(l, a):
    rows = [[x.galois_conjugate(a) for x in r] for r in l.dual.basis]
    return ProjLine.from_forms(*rows)


def cmd_diff(args):
    fobj, eobj = _load(args.found), _load(args.expected)
    try:
        nf, ne = formats._conductor(fobj), formats._conductor(eobj)
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))
    if nf != ne:
        print(f"conductor mismatch: {nf} vs {ne}")
        return EXIT_FAIL
    field = field_create(nf)
    try:
        found = set(_read_line_set(fobj, field, args.types))
        expected = set(_read_line_set(eobj, field))
    except formats.ParseError as exc:
        raise _Abort(EXIT_PARSE, str(exc))
    if found == expected:
        print(f"match: {len(found)} lines")
        return EXIT_OK
    # the scan is Galois-stable; the table may use another embedding of zeta
    for a in range(2, field.n):
        if gcd(a, field.n) == 1 and {conjugate_line(l, a) for l in expected} == found:
            print(f"match up to zeta -> zeta^{a}: {len(found)} lines")
            return EXIT_OK
    for l in sorted(expected - found, key=repr):
        print(f"missing: {l!r}")
    for l in sorted(found - expected, key=repr):
        print(f"extra: {l!r}")
    return EXIT_FAIL


def cmd_rho(args):
    field = field_create(args.conductor or 3)
    try:
        c = field(Fraction(args.c))
        roots = [field(Fraction(d)) for d in args.roots_d.split(",")] if args.roots_d else None
    except (ValueError, ZeroDivisionError) as exc:
        raise _Abort(EXIT_PARSE, f"bad rational: {exc}")
    try:
        rhos = two_trigonal_rho_candidates(c, roots)
    except (FieldTooSmall, IncompleteRoots, ValueError) as exc:
        raise _Abort(EXIT_FAIL, str(exc))
    print(f"{len(rhos)} candidates")
    for g in rhos:
        print([[str(x) for x in r] for r in g.rep])
    if args.output and rhos:
        formats.dump(formats.encode_group(rhos), args.output)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="g4lines", description="Galois lines of genus-4 canonical curves.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, caps=True):
        sp.add_argument("--conductor", type=_positive, default=None,
                        help="session field Q(zeta_n); default: lcm of the input conductors")
        if caps:
            sp.add_argument("--group-cap", type=_positive, default=DEFAULT_GROUP_CAP)
            sp.add_argument("--order-cap", type=_positive, default=DEFAULT_ORDER_CAP)

    sp = sub.add_parser("check", help="validate a curve and verify generators")
    sp.add_argument("curve")
    sp.add_argument("group")
    common(sp, caps=False)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("close", help="close a generator set and print the group order")
    sp.add_argument("group")
    sp.add_argument("--dump", help="write all canonical elements to this file")
    common(sp)
    sp.set_defaults(func=cmd_close)

    sp = sub.add_parser("find", help="scan for Galois lines")
    sp.add_argument("curve")
    sp.add_argument("group")
    sp.add_argument("--types", type=_types, default=("s3", "k4"))
    sp.add_argument("--output", help="write the JSON report here")
    common(sp)
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("diff", help="compare two line sets")
    sp.add_argument("found")
    sp.add_argument("expected")
    sp.add_argument("--types", type=_types, default=None,
                    help="only compare report records of these types")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("rho", help="trace-zero involution candidates on the two-trigonal family")
    sp.add_argument("c", help="rational parameter c")
    sp.add_argument("--roots-d", help="comma-separated roots of d^3 + c d^2 - 9d - c")
    sp.add_argument("--conductor", type=_positive, default=None)
    sp.add_argument("--output", help="write the candidates as a group file")
    sp.set_defaults(func=cmd_rho)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Abort as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
