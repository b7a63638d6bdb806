import random

import pytest

from g4lines.datasets import k4_standard, s3_standard
from g4lines.exactfield import field_create
from g4lines.linalg import (
    ProjTransform, SingularMatrix, Subspace, canonicalize, char_poly, diag, eigen_structure,
    identity, is_trace_zero_involution, kernel, mat_inverse, mat_mul, mat_scale, mat_vec,
    poly_from_roots, proj_order, rank, rref,
)

F3 = field_create(3)
F15 = field_create(15)
W = F3.zeta()


def rand_num(rng, field=F3, spread=3):
    return field.from_coeffs([rng.randint(-spread, spread) for _ in range(field.phi)])


def rand_matrix(rng, rows, cols, field=F3, deficient=False):
    M = [[rand_num(rng, field) for _ in range(cols)] for _ in range(rows)]
    if deficient and rows > 1:
        # make the last row a combination of the others
        a, b = rand_num(rng, field), rand_num(rng, field)
        M[-1] = [a * x + b * y for x, y in zip(M[0], M[1 % (rows - 1)])]
    return M


def rand_invertible(rng, field=F3):
    while True:
        M = rand_matrix(rng, 4, 4, field)
        if rank(M) == 4:
            return M


def ints(rows, field=F3):
    return [[field(x) for x in r] for r in rows]


def test_kernel_example():
    sp = kernel(ints([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert sp == Subspace(ints([[0, 0, 1, 0], [0, 0, 0, 1]]))


def test_rref_kernel_exactness():
    rng = random.Random(7)
    for trial in range(500):
        r, c = rng.randint(1, 4), rng.randint(2, 5)
        M = rand_matrix(rng, r, c, deficient=trial % 2 == 0)
        rows, rk, pivots = rref(M)
        assert rk == len(pivots) == rank(M)
        assert list(pivots) == sorted(pivots)
        sp = kernel(M)
        dim = 0 if sp is None else sp.dim
        assert rk + dim == c
        if sp is not None:
            for v in sp.basis:
                assert all(x == 0 for x in mat_vec(M, v))


def test_canonicalization_idempotent_and_scale_invariant():
    rng = random.Random(11)
    for _ in range(500):
        M = rand_matrix(rng, 4, 4)
        c = rand_num(rng)
        if not c:
            continue
        K = canonicalize(M)
        assert canonicalize(K) == K
        assert canonicalize(mat_scale(M, c)) == K
        first = next(x for row in K for x in row if x)
        assert first == 1


def test_projtransform_equality_is_projective():
    g = ProjTransform(diag(F3, [1, 1, W, W * W]))
    h = ProjTransform(mat_scale(g.rep, F3(5) * W))
    assert g == h and hash(g) == hash(h)


def test_singular_rejected():
    with pytest.raises(SingularMatrix):
        ProjTransform.checked(ints([[1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_char_poly_examples():
    I = identity(F3)
    assert char_poly(I) == poly_from_roots([F3.one()] * 4)
    d = diag(F3, [1, 1, W, W * W])
    assert char_poly(d) == poly_from_roots([F3(1), F3(1), W, W * W])
    tau = s3_standard(F3)[1]
    assert char_poly(tau.rep) == poly_from_roots([F3(1), F3(1), F3(1), F3(-1)])


def test_char_poly_conjugation_invariant():
    rng = random.Random(3)
    for _ in range(30):
        A = rand_matrix(rng, 4, 4)
        P = rand_invertible(rng)
        B = mat_mul(mat_mul(mat_inverse(P), A), P)
        assert char_poly(A) == char_poly(B)


def test_inverse():
    rng = random.Random(5)
    for _ in range(20):
        A = rand_invertible(rng, F15)
        assert mat_mul(A, mat_inverse(A)) == identity(F15)


def test_proj_order_examples():
    z5 = F15.root_of_unity(5)
    assert proj_order(ProjTransform(diag(F15, [1, z5, z5 ** 2, z5 ** 3]))) == (5, 1)
    assert proj_order(ProjTransform(diag(F3, [1, 1, -1, -1]))) == (2, 1)
    m, lam = proj_order(ProjTransform(diag(F3, [2, 2, 2, 2])))
    assert m == 1 and lam == 2


def test_eigen_structure_examples():
    es = eigen_structure(s3_standard(F3)[0])
    assert sorted((sp.dim for _, sp in es.pairs), reverse=True) == [2, 1, 1]
    assert {e for e, _ in es.pairs} == {F3(1), W, W * W}
    es = eigen_structure(ProjTransform(diag(F3, [1, 1, -1, 1])))
    assert {(e, sp.dim) for e, sp in es.pairs} == {(F3(1), 3), (F3(-1), 1)}
    # scaled copy: same eigenspaces, normalized eigenvalues
    scaled = eigen_structure(ProjTransform(mat_scale(diag(F3, [1, 1, W, W * W]), F3(2))))
    plain = eigen_structure(ProjTransform(diag(F3, [1, 1, W, W * W])))
    assert {sp for _, sp in scaled.pairs} == {sp for _, sp in plain.pairs}
    assert {e for e, _ in scaled.pairs} == {F3(1), W, W * W}


def test_eigenpairs_satisfy_definition():
    rng = random.Random(9)
    g = s3_standard(F3)[0]
    for _ in range(10):
        P = rand_invertible(rng)
        h = g.conjugate(P, mat_inverse(P))
        es = eigen_structure(h)
        assert es.multiplicities == (2, 1, 1)
        m, _ = proj_order(h)
        for e, sp in es.pairs:
            assert e ** m == 1
            for v in sp.basis:
                assert list(mat_vec(es.matrix, v)) == [e * x for x in v]


def test_trace_zero_involution():
    a, b, rho = k4_standard(F3)
    assert is_trace_zero_involution(rho)
    assert not is_trace_zero_involution(a)
    assert not is_trace_zero_involution(s3_standard(F3)[1])
