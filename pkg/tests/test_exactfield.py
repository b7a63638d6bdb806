from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from g4lines.exactfield import (
    FieldMismatch, FieldTooSmall, NotASubfield, cyclotomic_polynomial, embed,
    field_create, inv, nth_root_candidates,
)

F15 = field_create(15)
F3 = field_create(3)

small = st.integers(-6, 6)
elements = st.builds(
    lambda num, den: F15.from_coeffs([Fraction(a, den) for a in num]),
    st.lists(small, min_size=8, max_size=8), st.integers(1, 6),
)
nonzero = elements.filter(bool)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(1) == (-1, 1)
    phi15 = cyclotomic_polynomial(15)
    assert len(phi15) - 1 == 8 and phi15[-1] == 1
    # Phi_15 divides x^15 - 1 exactly
    for n in (15, 12, 60):
        assert F15.zeta() ** 15 == 1
        assert field_create(n).zeta() ** n == 1


def test_zeta_order():
    z = F15.zeta()
    assert all(z ** k != 1 for k in range(1, 15))
    assert F15.root_of_unity(5) ** 5 == 1
    assert F15.multiplicative_order(F15.root_of_unity(5)) == 5


def test_q_zeta3_identities():
    w = F3.zeta()
    assert 1 + w + w * w == 0
    assert (1 + 2 * w) ** 2 == -3
    assert inv(1 + w) == -w
    assert (1 + w).inv() * (1 + w) == 1


def test_embed():
    assert embed(F3.zeta(), F15) == F15.zeta(5)
    assert embed(F3(Fraction(7, 2)), F15) == Fraction(7, 2)
    z5 = embed(field_create(5).zeta(), F15)
    assert z5 == F15.zeta(3)
    assert F15.multiplicative_order(z5) == 5
    with pytest.raises(NotASubfield):
        embed(field_create(4).zeta(), F15)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F3.zeta() + F15.zeta()


def test_nth_root_candidates():
    w = F3.zeta()
    assert set(nth_root_candidates(F3(27), 3)) == {F3(3), 3 * w, 3 * w * w}
    assert set(nth_root_candidates(F3(1), 2)) == {F3(1), F3(-1)}
    # 1 + 2w squares to -3 but is not rational times a root of unity
    assert nth_root_candidates(F3(-3), 2) == []
    with pytest.raises(FieldTooSmall):
        nth_root_candidates(F3(2), 5)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        F15.zero().inv()


def test_canonical_storage():
    x = F15.from_coeffs([Fraction(2, 4)] + [0] * 7)
    assert x.den == 2 and x.num[0] == 1
    assert F15.zero().den == 1


@settings(max_examples=1000, deadline=None)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + 0 == a and a * 1 == a


@settings(max_examples=1000, deadline=None)
@given(nonzero)
def test_inverse_round_trip(a):
    assert a * a.inv() == 1
    assert a.inv().inv() == a


@settings(max_examples=200, deadline=None)
@given(elements, elements, st.sampled_from([1, 2, 4, 7, 8, 11, 13, 14]))
def test_galois_conjugation_is_a_homomorphism(a, b, k):
    assert (a * b).galois_conjugate(k) == a.galois_conjugate(k) * b.galois_conjugate(k)
    assert (a + b).galois_conjugate(k) == a.galois_conjugate(k) + b.galois_conjugate(k)
