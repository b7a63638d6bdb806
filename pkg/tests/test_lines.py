import random

import pytest

from g4lines.datasets import (
    eta_g, eta_h, k4_standard, k4_standard_curve, s3_standard, s3_standard_curve, sigma1, tau1,
    two_trigonal_curve,
)
from g4lines.exactfield import FieldTooSmall, field_create
from g4lines.geometry import CurveModel, HomForm, ProjLine, check_automorphism, linear_pullback, pullback
from g4lines.groups import close_group
from g4lines.linalg import ProjTransform, is_trace_zero_involution, mat_inverse, rank
from g4lines.lines import (
    BoundViolation, IncompleteRoots, ScanReport, certify_line, find_galois_lines,
    k4_trace_zero_geometry_check, projection_invariant, rational_poly_roots,
    stabilizer_of_line, two_trigonal_rho_candidates,
)

F3 = field_create(3)


def line(field, *forms):
    return ProjLine.from_forms(*[[field(x) for x in f] for f in forms])


def test_projection_invariance_l1(F15, bring, tables):
    C, _ = bring
    l1 = tables[0]["l1"]
    assert projection_invariant(l1, sigma1(F15), C)
    assert projection_invariant(l1, tau1(F15), C)


def test_projection_invariance_moved_line(F15, bring):
    C, G = bring
    swap = G.generators[1]
    assert not projection_invariant(line(F15, [1, 0, 0, 0], [0, 1, 0, 0]), swap, C)


def test_stabilizers(bring, tables):
    C, G = bring
    s = stabilizer_of_line(tables[0]["l1"], G, C)
    assert len(s) == 6
    rec = certify_line(tables[0]["l1"], G, C)
    assert (rec.type, rec.degree, rec.intersection_length) == ("S3", 6, 0)
    rec = certify_line(tables[1]["l'15"], G, C)
    assert (rec.type, rec.degree, rec.intersection_length) == ("K4", 4, 2)


def test_trigonal_line_not_recorded(F15, bring):
    C, G = bring
    l = line(F15, [1, 0, 0, 0], [0, 1, 0, 0])
    assert certify_line(l, G, C) is None
    stab = stabilizer_of_line(l, G, C)
    assert 3 % len(stab) == 0
    C2 = two_trigonal_curve(F3)
    G2 = close_group([eta_g(F3), eta_h(F3)])
    assert certify_line(line(F3, [0, 0, 1, 0], [0, 0, 0, 1]), G2, C2) is None


def test_bring_scan_matches_tables(bring_report, tables):
    rep = bring_report
    assert rep.counts == {"S3": 10, "K4": 15}
    assert {r.line for r in rep.records if r.type == "S3"} == set(tables[0].values())
    assert {r.line for r in rep.records if r.type == "K4"} == set(tables[1].values())
    assert not rep.violations and not rep.skipped
    for r in rep.records:
        assert len(r.stabilizer) == r.degree == 6 - r.intersection_length


def test_k4_geometry_on_tables(bring, bring_report):
    C, G = bring
    k4 = [r for r in bring_report.records if r.type == "K4"]
    assert len(k4) == 15
    assert all(k4_trace_zero_geometry_check(r, C, G) for r in k4)


def test_k4_geometry_negative():
    # same K_4 symmetry, but Z = W = 0 now meets the curve at X = 0
    Q = HomForm.parse(F3, 2, [(1, (1, 1, 0, 0)), (-1, (0, 0, 2, 0)), (1, (0, 0, 0, 2))])
    F = HomForm.parse(F3, 3, [(1, (3, 0, 0, 0)), (1, (1, 0, 2, 0)), (1, (0, 1, 0, 2))])
    C = CurveModel(Q, F)
    G = close_group(k4_standard(F3))
    assert all(check_automorphism(g, C).ok for g in G.generators)
    rec = certify_line(line(F3, [1, 0, 0, 0], [0, 1, 0, 0]), G, C)
    assert rec is not None and rec.type == "K4"
    assert not k4_trace_zero_geometry_check(rec, C, G)
    rep = find_galois_lines(C, G, ("k4",), strict=False)
    assert rep.violations
    with pytest.raises(BoundViolation):
        find_galois_lines(C, G, ("k4",))


def test_bound_check():
    rep = ScanReport(("s3",), violations=["11 S3-lines exceed the bound 10"])
    with pytest.raises(BoundViolation):
        rep.check_bounds()


def test_standard_scans():
    rep = find_galois_lines(s3_standard_curve(F3), close_group(s3_standard(F3)), ("s3", "k4"))
    assert rep.counts == {"S3": 1, "K4": 0}
    assert rep.records[0].line == line(F3, [1, 0, 0, 0], [0, 1, 0, 0])
    F1 = field_create(1)
    rep = find_galois_lines(k4_standard_curve(F1), close_group(k4_standard(F1)), ("s3", "k4"))
    assert rep.counts == {"S3": 0, "K4": 1}
    assert rep.records[0].line == line(F1, [1, 0, 0, 0], [0, 1, 0, 0])


def _random_transform(rng, field):
    while True:
        M = [[field.from_coeffs([rng.randint(-2, 2) for _ in range(field.phi)]) for _ in range(4)]
             for _ in range(4)]
        if rank(M) == 4:
            return M


def _conjugated_scan(C, gens, lines, P, types):
    P_inv = mat_inverse(P)
    Cp = CurveModel(pullback(P_inv, C.Q), pullback(P_inv, C.F))
    Gp = close_group([g.conjugate(P_inv, P) for g in gens])
    expected = {ProjLine.from_forms(*(linear_pullback(P_inv, L) for L in l.dual.basis)) for l in lines}
    rep = find_galois_lines(Cp, Gp, types)
    return {r.line for r in rep.records}, expected


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_scan_equivariance(seed):
    rng = random.Random(seed)
    base = line(F3, [1, 0, 0, 0], [0, 1, 0, 0])
    P = _random_transform(rng, F3)
    found, expected = _conjugated_scan(s3_standard_curve(F3), s3_standard(F3), [base], P, ("s3",))
    assert found == expected
    found, expected = _conjugated_scan(k4_standard_curve(F3), k4_standard(F3), [base], P, ("k4",))
    assert found == expected


def test_rational_poly_roots():
    assert sorted(rational_poly_roots([0, -9, 0, 1])[0]) == [-3, 0, 3]
    assert rational_poly_roots([-1, -9, 1, 1]) == ([], False)
    assert rational_poly_roots([4, -4, 1]) == ([2, 2], True)


def test_rho_family_c0():
    rhos = two_trigonal_rho_candidates(F3(0))
    assert len(rhos) == 9
    C = two_trigonal_curve(F3)
    for g in rhos:
        assert check_automorphism(g, C).ok
        assert is_trace_zero_involution(g)
    expected = ProjTransform([[F3(x) for x in r] for r in
                              ([0, 0, -3, 1], [0, 0, 3, 3], [-9, 3, 0, 0], [9, 9, 0, 0])])
    assert expected in rhos


def test_rho_errors():
    with pytest.raises(FieldTooSmall):
        two_trigonal_rho_candidates(field_create(5)(0))
    with pytest.raises(IncompleteRoots):
        two_trigonal_rho_candidates(F3(1))
    with pytest.raises(ValueError):
        two_trigonal_rho_candidates(F3(0), roots_d=[1])


def test_two_trigonal_scan():
    C = two_trigonal_curve(F3)
    G = close_group([eta_g(F3), eta_h(F3)] + two_trigonal_rho_candidates(F3(0)))
    rep = find_galois_lines(C, G, ("s3", "k4"))
    assert rep.count("K4") <= 9
