"""Candidate generation and certification of Galois lines."""

import logging
from fractions import Fraction
from math import lcm
from dataclasses import dataclass, field as dc_field

from .exactfield import FieldTooSmall, nth_root_candidates
from .geometry import (
    DegenerateSpan,
    HomForm,
    ProjLine,
    binary_roots,
    fixed_locus,
    intersection_gcd,
    is_fixed_point,
    line_curve_intersection_length,
    linear_pullback,
    solve_in_span,
)
from .groups import (
    enumerate_cyclic_elements,
    enumerate_k4_subgroups,
    enumerate_s3_subgroups,
    iso_type,
    k4_signature_filter,
    s3_signature_filter,
)
from .linalg import ProjTransform, eigen_structure, proj_order, trace

log = logging.getLogger(__name__)

S3_BOUND = 10
K4_BOUND = 15
CYCLIC_TYPES = ("C4", "C5", "C6")


class BoundViolation(AssertionError):
    pass


class MissingTraceZero(ValueError):
    pass


class IncompleteRoots(ValueError):
    pass


@dataclass
class GaloisLineRecord:
    line: ProjLine
    stabilizer: list          # indices into the group
    degree: int
    type: str
    provenance: str
    intersection_length: int = 0

    def key(self):
        return self.line.key()


@dataclass
class ScanReport:
    types: tuple
    records: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)
    unresolved: list = dc_field(default_factory=list)

    def count(self, t):
        if t == "cyclic":
            return sum(1 for r in self.records if r.type in CYCLIC_TYPES)
        return sum(1 for r in self.records if r.type == t)

    @property
    def counts(self):
        out = {}
        if "s3" in self.types:
            out["S3"] = self.count("S3")
        if "k4" in self.types:
            out["K4"] = self.count("K4")
        if "cyclic" in self.types:
            out["cyclic"] = self.count("cyclic")
        return out

    def check_bounds(self):
        if self.violations:
            raise BoundViolation("; ".join(self.violations))


# --------------------------------------------------------------------------

def projection_invariant(l, g, C):
    """pi_l o g == pi_l on C: (L1 o g) L2 - (L2 o g) L1 is a multiple of Q."""
    L1, L2 = l.dual.basis
    gL1 = HomForm.linear(linear_pullback(g, L1))
    gL2 = HomForm.linear(linear_pullback(g, L2))
    D = gL1 * HomForm.linear(L2) - gL2 * HomForm.linear(L1)
    return solve_in_span(D, [C.Q]) is not None


def stabilizer_of_line(l, G, C):
    return [i for i, g in enumerate(G.elements) if projection_invariant(l, g, C)]


def certify_line(l, G, C, provenance=""):
    length = line_curve_intersection_length(l, C)
    degree = 6 - length
    if degree < 4:
        return None
    stab = stabilizer_of_line(l, G, C)
    if len(stab) != degree:
        return None
    kind = iso_type([G.elements[i] for i in stab])
    return GaloisLineRecord(l, stab, degree, kind, provenance, length)


def _join(points):
    p1, p2 = points
    return ProjLine.from_points(p1, p2)


def find_galois_lines(C, G, types=("s3", "k4"), strict=True, check_geometry=True):
    """Scan the group for S_3-, K_4- and (optionally) cyclic Galois lines."""
    types = tuple(t for t in ("s3", "k4", "cyclic") if t in set(types))
    report = ScanReport(types)
    found = {}

    def consider(line, provenance, want):
        key = line.key()
        if key in found:
            return
        rec = certify_line(line, G, C, provenance)
        if rec is not None and rec.type in want:
            found[key] = rec

    if "s3" in types:
        for n, sub in enumerate(enumerate_s3_subgroups(G)):
            try:
                sig = s3_signature_filter(sub)
            except FieldTooSmall as exc:
                report.skipped.append(f"s3 subgroup {n}: {exc}")
                continue
            if sig is None:
                continue
            try:
                line = _join(sig.points)
            except DegenerateSpan:
                log.warning("s3 subgroup %d: fixed points coincide", n)
                continue
            consider(line, f"s3 subgroup {n}", ("S3",))

    if "k4" in types:
        for n, sub in enumerate(enumerate_k4_subgroups(G)):
            try:
                sig = k4_signature_filter(sub)
            except FieldTooSmall as exc:
                report.skipped.append(f"k4 subgroup {n}: {exc}")
                continue
            if sig is None:
                continue
            try:
                line = _join(sig.points)
            except DegenerateSpan:
                log.warning("k4 subgroup %d: fixed points coincide", n)
                continue
            consider(line, f"k4 subgroup {n}", ("K4",))

    if "cyclic" in types:
        for i in enumerate_cyclic_elements(G):
            g = G.elements[i]
            try:
                es = eigen_structure(g.transpose())
            except FieldTooSmall as exc:
                report.skipped.append(f"element {i}: {exc}")
                continue
            for e, sp in es.pairs:
                if sp.dim == 2:
                    consider(ProjLine(sp), f"element {i} eigenvalue {e}", CYCLIC_TYPES)
                elif sp.dim == 3:
                    report.unresolved.append(f"element {i}: 3-dimensional eigenspace for {e}")

    report.records = sorted(found.values(), key=lambda r: _line_sort_key(r.line))

    if check_geometry:
        for rec in report.records:
            if rec.type != "K4":
                continue
            try:
                ok = k4_trace_zero_geometry_check(rec, C, G)
            except FieldTooSmall as exc:
                report.skipped.append(f"geometry check for {rec.line}: {exc}")
                continue
            if not ok:
                report.violations.append(f"trace-zero geometry fails for {rec.line}")

    if report.count("S3") > S3_BOUND:
        report.violations.append(f"{report.count('S3')} S3-lines exceed the bound {S3_BOUND}")
    if report.count("K4") > K4_BOUND:
        report.violations.append(f"{report.count('K4')} K4-lines exceed the bound {K4_BOUND}")
    if strict:
        report.check_bounds()
    return report


def _line_sort_key(line):
    return tuple((x.num, x.den) for row in line.dual.basis for x in row)


# --------------------------------------------------------------------------

def k4_trace_zero_geometry_check(rec, C, G):
    """The trace-zero involution fixes exactly rec.line and a line missing C."""
    invs = [G.elements[i] for i in rec.stabilizer]
    rho = None
    for g in invs:
        if g.is_identity():
            continue
        if proj_order(g)[0] == 2 and not trace(g.matrix):
            rho = g
            break
    if rho is None:
        raise MissingTraceZero("K4 stabilizer has no trace-zero involution")
    fl = fixed_locus(rho)
    if fl.dims != [2, 2]:
        return False
    lines = fl.lines()
    if rec.line not in lines:
        return False
    other = lines[0] if lines[1] == rec.line else lines[1]
    if line_curve_intersection_length(rec.line, C) != 2:
        return False
    if line_curve_intersection_length(other, C) != 0:
        return False
    # point-level witness when the two points are field-rational
    form, A, B = intersection_gcd(rec.line, C)
    pts = binary_roots(form, A, B)
    if pts is not None:
        if len(pts) != 2:
            return False
        for p in pts:
            if not C.contains_point(p) or not is_fixed_point(rho, p):
                return False
    return True


def rational_poly_roots(coeffs):
    """Rational roots of a polynomial (coefficients low degree first), with multiplicity.

    Returns (roots, complete) where complete says the roots exhaust the degree.
    """
    poly = [Fraction(x) for x in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    degree = len(poly) - 1
    roots = []
    while len(poly) > 1:
        if poly[0] == 0:
            r = Fraction(0)
        else:
            den = lcm(*(x.denominator for x in poly))
            ints = [int(x * den) for x in poly]
            r = next(
                (Fraction(s * a, b)
                 for a in _divisors(ints[0]) for b in _divisors(ints[-1]) for s in (1, -1)
                 if _peval(poly, Fraction(s * a, b)) == 0),
                None,
            )
            if r is None:
                break
        roots.append(r)
        # synthetic division by (x - r)
        q = [Fraction(0)] * (len(poly) - 1)
        acc = Fraction(0)
        for i in range(len(poly) - 1, 0, -1):
            acc = acc * r + poly[i]
            q[i - 1] = acc
        poly = q
    return roots, len(roots) == degree


def _divisors(k):
    k = abs(k)
    return [d for d in range(1, k + 1) if k % d == 0]


def _peval(poly, x):
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def two_trigonal_rho_candidates(c, roots_d=None):
    """Trace-zero involution candidates for the curve Q = XW - YZ,
    F = Z(W - Z)(W + Z) - (Y^3 + cXY^2 - 9X^2Y - cX^3)."""
    field = c.field
    if field.unit_order % 3:
        raise FieldTooSmall("session field must contain a primitive cube root of unity")
    if roots_d is None:
        if not c.is_rational():
            raise IncompleteRoots("cubic in d has non-rational coefficients; supply roots_d")
        cq = c.to_fraction()
        rd, complete = rational_poly_roots([-cq, -9, cq, 1])
        if not complete:
            raise IncompleteRoots("cubic in d has non-rational roots; supply roots_d")
        roots_d = [field(r) for r in rd]
    else:
        roots_d = [field(d) for d in roots_d]
        for d in roots_d:
            if d ** 3 + c * d * d - d * 9 - c:
                raise ValueError(f"{d} is not a root of d^3 + c d^2 - 9 d - c")
    lam_target = c * c + 27
    if not lam_target:
        return []
    lams = nth_root_candidates(lam_target, 3)
    lams = [x for x in lams if x ** 3 == lam_target]
    if len(lams) < 3:
        raise FieldTooSmall("cube roots of c^2 + 27 are not all visible in the session field")
    out = []
    zero = field.zero()
    for d in sorted(set(roots_d), key=lambda x: (x.num, x.den)):
        if not d * d + 3:
            continue
        for lam in lams:
            rows = [
                [zero, zero, -d, field.one()],
                [zero, zero, field(3), d],
                [-lam * d, lam, zero, zero],
                [lam * 3, lam * d, zero, zero],
            ]
            out.append(ProjTransform(rows))
    return out
