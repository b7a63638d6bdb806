"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi-1) modulo the n-th
cyclotomic polynomial.  Internally a number is a tuple of integer numerators
over a single positive common denominator, kept in lowest terms, so equality
and hashing are component-wise.  ``fractions.Fraction`` is the public face of
the rational coefficients.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


class FieldError(ArithmeticError):
    pass


class FieldMismatch(FieldError):
    pass


class NotASubfield(FieldError):
    pass


class FieldTooSmall(FieldError):
    """The requested root / eigenvalue is not visible in the session field."""


# --------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Exact division in Q[x]; b must be nonzero."""
    a = [Fraction(c) for c in a]
    b = _trim(b)
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[:len(b) - 1])


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, low degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        q, r = _poly_divmod(num, cyclotomic_polynomial(d))
        assert not r, "cyclotomic division left a remainder"
        num = q
    assert all(c.denominator == 1 for c in num)
    return tuple(int(c) for c in num)


def _int_root(a, m):
    """Exact m-th root of the integer a >= 0, or None."""
    if a < 0:
        return None
    if a < 2:
        return a
    r = int(round(a ** (1.0 / m))) if a.bit_length() < 1000 else 1 << (a.bit_length() // m)
    # Newton polish
    while True:
        nr = ((m - 1) * r + a // r ** (m - 1)) // m
        if nr >= r:
            break
        r = nr
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** m == a:
            return c
    return None


def rational_roots(r, m):
    """All rational x with x**m == r (r a Fraction)."""
    r = Fraction(r)
    if r == 0:
        return [Fraction(0)]
    sign = 1 if r > 0 else -1
    if sign < 0 and m % 2 == 0:
        return []
    p = _int_root(abs(r.numerator), m)
    q = _int_root(r.denominator, m)
    if p is None or q is None:
        return []
    x = Fraction(sign * p, q)
    if m % 2 == 0:
        return [x, -x]
    return [x]


# --------------------------------------------------------------------------

class CyclotomicField:
    """Q(zeta_n).  Use :func:`field_create`; instances are cached singletons."""

    def __init__(self, n):
        self.n = n
        self.cyclo_poly = cyclotomic_polynomial(n)
        self.phi = len(self.cyclo_poly) - 1
        # x^k mod Phi_n for k in [phi, 2*phi - 2], used by multiplication
        phi = self.phi
        self._reduce = {}
        cur = [0] * phi
        if phi:
            cur = [-c for c in self.cyclo_poly[:phi]]  # x^phi
        for k in range(phi, 2 * phi - 1):
            self._reduce[k] = tuple(cur)
            # multiply by x
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.cyclo_poly)]
        self._zeta_pows = None
        # roots of unity in Q(zeta_n) have order dividing unit_order
        self.unit_order = n if n % 2 == 0 else 2 * n

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (field_create, (self.n,))

    # construction helpers
    def zero(self):
        return CycloNum(self, (0,) * self.phi, 1)

    def one(self):
        return self.rational(1)

    def rational(self, r):
        r = Fraction(r)
        return CycloNum(self, (r.numerator,) + (0,) * (self.phi - 1), r.denominator)

    def __call__(self, x):
        if isinstance(x, CycloNum):
            if x.field is self:
                return x
            return embed(x, self)
        return self.rational(x)

    def from_coeffs(self, coeffs):
        """Element with the given power-basis coefficients (rationals)."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.phi:
            raise ValueError(f"expected {self.phi} coefficients, got {len(coeffs)}")
        return CycloNum.from_fractions(self, coeffs)

    def from_poly(self, coeffs):
        """Evaluate sum c_k zeta^k for an arbitrary-length coefficient list."""
        acc = [Fraction(0)] * self.phi
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                for i, z in enumerate(self._zeta_power_coeffs(k)):
                    if z:
                        acc[i] += c * z
        return CycloNum.from_fractions(self, acc)

    def _zeta_power_coeffs(self, k):
        if self._zeta_pows is None:
            pows = []
            cur = [0] * self.phi
            cur[0] = 1 if self.phi else 0
            for _ in range(self.n):
                pows.append(tuple(cur))
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [c - top * p for c, p in zip(cur, self.cyclo_poly)]
            self._zeta_pows = pows
        return self._zeta_pows[k % self.n]

    def zeta(self, k=1):
        """zeta_n ** k."""
        return CycloNum(self, self._zeta_power_coeffs(k), 1)

    def root_of_unity(self, m, k=1):
        """A fixed primitive m-th root of unity raised to k.

        Raises FieldTooSmall when m does not divide the order of the
        root-of-unity group of the field.
        """
        N = self.unit_order
        if N % m:
            raise FieldTooSmall(f"Q(zeta_{self.n}) has no primitive {m}-th root of unity")
        e = (N // m) * k
        if self.n % 2 == 0:
            return self.zeta(e)
        # zeta_{2n} = -zeta_n^((n+1)/2)
        e %= N
        z = self.zeta(e * (self.n + 1) // 2)
        return -z if e % 2 else z

    def multiplicative_order(self, x, cap=None):
        """Order of x as a root of unity, or None."""
        cap = cap or self.unit_order
        one = self.one()
        p = x
        for k in range(1, cap + 1):
            if p == one:
                return k
            p = p * x
        return None


@lru_cache(maxsize=None)
def field_create(n):
    if n < 1:
        raise ValueError("conductor must be a positive integer")
    return CyclotomicField(n)


class CycloNum:
    """Immutable element of a cyclotomic field."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den=1):
        g = gcd(den, *num)
        if den < 0:
            g = -g
        if g != 1 and g != 0:
            num = tuple(c // g for c in num)
            den //= g
        elif not isinstance(num, tuple):
            num = tuple(num)
        if not any(num):
            den = 1
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_fractions(cls, field, coeffs):
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(field, tuple(int(c * den) for c in coeffs), den)

    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- predicates -------------------------------------------------------
    def is_zero(self):
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.num, self.den))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return CycloNum(self.field, tuple(a + b for a, b in zip(self.num, o.num)), self.den)
        d1, d2 = self.den, o.den
        return CycloNum(self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, o.num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloNum(self.field, tuple(a * other for a in self.num), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        phi = self.field.phi
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:phi]
        red = self.field._reduce
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(red[k]):
                    if r:
                        res[i] += c * r
        return CycloNum(self.field, tuple(res), self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return self.field.rational(Fraction(self.den, self.num[0]))
        # invariant: r_i = s_i * a  (mod Phi)
        r0, r1 = [Fraction(c) for c in self.field.cyclo_poly], _trim(self.num)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is a nonzero constant (Phi_n irreducible)
        c = Fraction(r1[0])
        s = [x / c for x in s1]
        s += [Fraction(0)] * (self.field.phi - len(s))
        return CycloNum.from_fractions(self.field, s) * self.den

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        acc = self.field.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def galois_conjugate(self, a):
        """Image under the automorphism zeta -> zeta^a (gcd(a, n) = 1)."""
        if gcd(a, self.field.n) != 1:
            raise ValueError("exponent must be coprime to the conductor")
        return self.field.from_poly(_spread(self.coeffs, a))

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
        s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return s


def _spread(coeffs, a):
    out = [Fraction(0)] * ((len(coeffs) - 1) * a + 1)
    for k, c in enumerate(coeffs):
        out[k * a] += c
    return out


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([Fraction(x) - y for x, y in zip(a, b)])


def inv(a):
    return a.inv()


def embed(a, target):
    """Embed a in Q(zeta_m) into Q(zeta_n) via zeta_m -> zeta_n^(n/m)."""
    m, n = a.field.n, target.n
    if a.field is target:
        return a
    if n % m:
        raise NotASubfield(f"Q(zeta_{m}) is not a subfield of Q(zeta_{n})")
    return target.from_poly(_spread(a.coeffs, n // m))


def nth_root_candidates(lam, m):
    """Roots mu of mu**m == lam of the form r * zeta_n^k with r rational.

    This is deliberately partial: an empty list does not mean no root exists
    in the field.  Raises FieldTooSmall when the field has no primitive m-th
    root of unity.
    """
    if lam.is_zero():
        raise ValueError("nth_root_candidates needs a nonzero argument")
    F = lam.field
    if F.unit_order % m:
        raise FieldTooSmall(f"Q(zeta_{F.n}) has no primitive {m}-th root of unity")
    found = []
    seen = set()
    for k in range(F.n):
        t = lam * F.zeta(-k * m)
        if not t.is_rational():
            continue
        for r in rational_roots(t.to_fraction(), m):
            mu = F.zeta(k) * r
            if mu not in seen:
                seen.add(mu)
                found.append(mu)
    return found
