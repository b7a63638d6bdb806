"""Homogeneous forms on P^3, the (2,3) curve model, lines and fixed loci."""

from dataclasses import dataclass

from .linalg import (
    Subspace,
    eigen_structure,
    kernel,
    kernel_basis,
    mat_vec,
    rank,
    rref,
    vec_mat,
)

VARS = "XYZW"


class GeometryError(ValueError):
    pass


class InvalidCurve(GeometryError):
    pass


class DegenerateSpan(GeometryError):
    pass


class LineOnCurve(GeometryError):
    pass


def _unit(i, n=4):
    return tuple(1 if j == i else 0 for j in range(n))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class HomForm:
    """Homogeneous polynomial in X, Y, Z, W with cyclotomic coefficients."""

    __slots__ = ("degree", "terms", "field")

    def __init__(self, field, degree, terms):
        self.field = field
        self.degree = degree
        clean = {}
        for e, c in terms.items():
            if sum(e) != degree:
                raise ValueError(f"monomial {e} does not have degree {degree}")
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def linear(cls, coeffs):
        coeffs = tuple(coeffs)
        field = coeffs[0].field
        return cls(field, 1, {_unit(i): c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, field, degree, pairs):
        terms = {}
        for c, e in pairs:
            terms[tuple(e)] = terms.get(tuple(e), field.zero()) + field(c)
        return cls(field, degree, terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def monomials(self):
        return sorted(self.terms, reverse=True)

    def linear_coeffs(self):
        assert self.degree == 1
        z = self.field.zero()
        return tuple(self.terms.get(_unit(i), z) for i in range(4))

    def __eq__(self, other):
        return isinstance(other, HomForm) and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        if self.degree != other.degree and self and other:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return HomForm(self.field, max(self.degree, other.degree), terms)

    def __neg__(self):
        return HomForm(self.field, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return HomForm(self.field, self.degree, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HomForm):
            return self.scale(self.field(other))
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                t = c1 * c2
                terms[e] = terms[e] + t if e in terms else t
        return HomForm(self.field, self.degree + other.degree, terms)

    def __call__(self, point):
        acc = self.field.zero()
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            acc = acc + t
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.monomials():
            mon = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARS, e) if k)
            parts.append(f"({self.terms[e]})*{mon}")
        return " + ".join(parts)


def variable(field, i):
    return HomForm(field, 1, {_unit(i): field.one()})


def _power_cache(lin_forms):
    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            if k == 0:
                f = lin_forms[i].field
                cache[key] = HomForm(f, 0, {(0, 0, 0, 0): f.one()})
            else:
                cache[key] = power(i, k - 1) * lin_forms[i]
        return cache[key]
    return power


def substitute(P, lin_forms):
    """P(L_0, ..., L_3) for linear forms L_i."""
    power = _power_cache(lin_forms)
    field = P.field
    out = HomForm(field, P.degree, {})
    for e, c in P.terms.items():
        t = None
        for i, k in enumerate(e):
            if k:
                t = power(i, k) if t is None else t * power(i, k)
        out = out + t.scale(c)
    return out


def pullback(g, P):
    """P(g x), with g acting on column vectors."""
    M = g.rep if hasattr(g, "rep") else g
    rows = [HomForm.linear(row) for row in M]
    return substitute(P, rows)


def linear_pullback(g, L):
    """Row-vector form: (L o g) = L * matrix."""
    M = g.rep if hasattr(g, "rep") else g
    return vec_mat(tuple(L), M)


# --------------------------------------------------------------------------
# linear solves against spanning sets of forms

def solve_in_span(target, spanning):
    """Coefficients a with target = sum a_i spanning_i, or None."""
    field = target.field
    monos = set(target.terms)
    for f in spanning:
        monos |= set(f.terms)
    monos = sorted(monos, reverse=True)
    zero = field.zero()
    if not monos:
        return [zero] * len(spanning)
    k = len(spanning)
    aug = [
        tuple(f.terms.get(m, zero) for f in spanning) + (target.terms.get(m, zero),)
        for m in monos
    ]
    R, rk, piv = rref(aug)
    if k in piv:
        return None
    sol = [zero] * k
    for i, pc in enumerate(piv):
        sol[pc] = R[i][k]
    return sol


@dataclass
class AutomorphismCertificate:
    ok: bool
    c: object = None        # g*Q = c Q
    mu: object = None       # g*F = G Q + mu F
    G: object = None
    reason: str = ""


class CurveModel:
    """Genus-4 canonical curve cut out by a quadric Q and a cubic F."""

    def __init__(self, Q, F):
        if Q.degree != 2 or F.degree != 3:
            raise InvalidCurve("need a quadric and a cubic")
        self.Q = Q
        self.F = F
        self.field = Q.field
        self.gram = gram_matrix(Q)
        self.gram_rank = rank(self.gram)
        if self.gram_rank < 3:
            raise InvalidCurve(f"quadric has rank {self.gram_rank} < 3")
        self._QX = [variable(self.field, i) * Q for i in range(4)]
        if solve_in_span(F, self._QX) is not None:
            raise InvalidCurve("cubic lies in the ideal generated by the quadric")

    def __repr__(self):
        return f"CurveModel(Q={self.Q!r}, F={self.F!r})"

    def contains_point(self, p):
        return not self.Q(p) and not self.F(p)


def gram_matrix(Q):
    field = Q.field
    half = field.rational(1) / 2
    G = [[field.zero()] * 4 for _ in range(4)]
    for e, c in Q.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            G[i][i] = c
        else:
            G[i][j] = c * half
            G[j][i] = c * half
    return tuple(tuple(r) for r in G)


def quadric_rank_vertex(C):
    """(rank, vertex) of the quadric; vertex is a point tuple for rank 3."""
    if C.gram_rank == 4:
        return 4, None
    sp = kernel(C.gram)
    return C.gram_rank, sp.basis[0]


def check_automorphism(g, C):
    gQ = pullback(g, C.Q)
    sol = solve_in_span(gQ, [C.Q])
    if sol is None:
        return AutomorphismCertificate(False, reason="pullback of Q is not proportional to Q")
    c = sol[0]
    gF = pullback(g, C.F)
    sol = solve_in_span(gF, [C.F] + C._QX)
    if sol is None:
        return AutomorphismCertificate(False, c=c, reason="pullback of F is not in (Q, F)")
    mu = sol[0]
    G = HomForm.linear(sol[1:])
    return AutomorphismCertificate(True, c=c, mu=mu, G=G)


# --------------------------------------------------------------------------
# lines

class ProjLine:
    """A line in P^3: ``dual`` holds two linear forms in RREF, ``span`` two points."""

    __slots__ = ("dual", "span")

    def __init__(self, dual):
        if dual.dim != 2:
            raise DegenerateSpan("a line needs exactly two independent forms")
        self.dual = dual
        self.span = kernel(dual.basis)

    @classmethod
    def from_forms(cls, L1, L2):
        rows = [tuple(L.linear_coeffs()) if isinstance(L, HomForm) else tuple(L) for L in (L1, L2)]
        if rank(rows) != 2:
            raise DegenerateSpan("linear forms are dependent")
        return cls(Subspace(rows))

    @classmethod
    def from_points(cls, P1, P2):
        rows = [tuple(P1), tuple(P2)]
        if rank(rows) != 2:
            raise DegenerateSpan("points coincide projectively")
        dual = kernel_basis(rows, 4)
        return cls(Subspace(dual))

    def key(self):
        return self.dual.basis

    def forms(self):
        return [HomForm.linear(r) for r in self.dual.basis]

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.dual == other.dual

    def __hash__(self):
        return hash(self.dual)

    def __repr__(self):
        return " = ".join(repr(f) for f in self.forms()) + " = 0"

    def contains_point(self, p):
        return all(not sum((a * x for a, x in zip(r, p)), p[0].field.zero()) for r in self.dual.basis)


def line_from_points(P1, P2):
    return ProjLine.from_points(P1, P2)


def line_from_forms(L1, L2):
    return ProjLine.from_forms(L1, L2)


# --------------------------------------------------------------------------
# binary forms: coefficient lists [c_0, ..., c_d] for sum c_i s^(d-i) t^i

def restrict_to_line(P, A, B):
    """Binary form P(sA + tB) of degree deg P."""
    field = P.field
    d = P.degree
    lin = [(a, b) for a, b in zip(A, B)]
    out = [field.zero()] * (d + 1)
    for e, c in P.terms.items():
        poly = [c]
        for i, k in enumerate(e):
            for _ in range(k):
                a, b = lin[i]
                new = [field.zero()] * (len(poly) + 1)
                for j, x in enumerate(poly):
                    if x:
                        new[j] = new[j] + x * a
                        new[j + 1] = new[j + 1] + x * b
                poly = new
        for j, x in enumerate(poly):
            out[j] = out[j] + x
    return out


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_rem(a, b):
    a = list(a)
    lead_inv = b[-1].inv()
    while len(a) >= len(b):
        c = a[-1] * lead_inv
        shift = len(a) - len(b)
        for j, y in enumerate(b):
            a[shift + j] = a[shift + j] - c * y
        a.pop()
        a = _trim(a)
    return a


def poly_gcd(a, b):
    """Monic gcd in K[t] (coefficients low degree first)."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    if not a:
        return a
    inv = a[-1].inv()
    return [x * inv for x in a]


def _split_infinity(form):
    """Dehomogenize at s = 1: returns (p(t), multiplicity of the root s = 0)."""
    p = _trim(form)
    d = len(form) - 1
    return p, d - (len(p) - 1)


def line_curve_intersection_length(l, C):
    """Scheme length of C cap l (0..3)."""
    A, B = l.span.basis
    q = restrict_to_line(C.Q, A, B)
    f = restrict_to_line(C.F, A, B)
    q_zero = not any(q)
    f_zero = not any(f)
    if q_zero and f_zero:
        raise LineOnCurve("line lies on the curve's quadric and cubic")
    if q_zero:
        return 3
    if f_zero:
        return 2
    pq, iq = _split_infinity(q)
    pf, if_ = _split_infinity(f)
    g = poly_gcd(pq, pf)
    return (len(g) - 1) + min(iq, if_)


def intersection_gcd(l, C):
    """(binary gcd form, span basis A, B); the gcd as [c_0..c_k] of s^(k-i) t^i."""
    A, B = l.span.basis
    q = restrict_to_line(C.Q, A, B)
    f = restrict_to_line(C.F, A, B)
    if not any(q) and not any(f):
        raise LineOnCurve("line lies on the curve")
    if not any(q):
        return list(f), A, B
    if not any(f):
        return list(q), A, B
    pq, iq = _split_infinity(q)
    pf, if_ = _split_infinity(f)
    g = poly_gcd(pq, pf)
    inf = min(iq, if_)
    # p(t) = sum g_i t^i  ->  binary form of degree deg g + inf
    k = len(g) - 1 + inf
    zero = A[0].field.zero()
    coeffs = [zero] * (k + 1)
    for i, c in enumerate(g):
        coeffs[i] = c
    return coeffs, A, B


def binary_roots(form, A, B):
    """Points of P^3 for the field-rational roots of a binary form of degree <= 2.

    Returns None when some root is not found in the field (partial search).
    """
    from .exactfield import nth_root_candidates

    p, inf = _split_infinity(form)
    pts = []
    if inf:
        pts.append(tuple(B))  # s = 0
    deg = len(p) - 1
    if deg == 0:
        return pts
    if deg == 1:
        t = -p[0] / p[1]
        pts.append(tuple(a + t * b for a, b in zip(A, B)))
        return pts
    if deg == 2:
        a2, a1, a0 = p[2], p[1], p[0]
        disc = a1 * a1 - a2 * a0 * 4
        if not disc:
            t = -a1 / (a2 * 2)
            pts.append(tuple(a + t * b for a, b in zip(A, B)))
            return pts
        roots = nth_root_candidates(disc, 2)
        if not roots:
            return None
        r = roots[0]
        for sgn in (1, -1):
            t = (-a1 + r * sgn) / (a2 * 2)
            pts.append(tuple(a + t * b for a, b in zip(A, B)))
        return pts
    return None


# --------------------------------------------------------------------------

class FixedLocus:
    """Eigenspaces of a transform viewed as projective subspaces."""

    def __init__(self, components):
        self.components = list(components)

    def points(self):
        return [c for c in self.components if c.dim == 1]

    def lines(self):
        return [ProjLine(c.orthogonal()) for c in self.components if c.dim == 2]

    def planes(self):
        return [c for c in self.components if c.dim == 3]

    @property
    def dims(self):
        return sorted(c.dim for c in self.components)

    def __repr__(self):
        return f"FixedLocus(dims={self.dims})"


def fixed_locus(g):
    es = eigen_structure(g)
    return FixedLocus(sp for _, sp in es.pairs)


def is_fixed_point(g, p):
    v = mat_vec(g.matrix, p)
    return rank([tuple(p), v]) == 1
