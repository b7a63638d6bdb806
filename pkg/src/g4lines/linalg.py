"""Exact small-matrix linear algebra over a cyclotomic field.

Matrices are tuples of row tuples of CycloNum.  Everything here is exact;
``ProjTransform`` is the hashable PGL_4 element used throughout the package.
"""

from itertools import combinations_with_replacement

from .exactfield import FieldTooSmall, nth_root_candidates


class LinAlgError(ArithmeticError):
    pass


class SingularMatrix(LinAlgError):
    pass


class OrderExceedsCap(LinAlgError):
    pass


class NotAnInvolution(LinAlgError):
    pass


DEFAULT_ORDER_CAP = 120


# --------------------------------------------------------------------------
# plain matrices

def as_matrix(rows, field=None):
    rows = tuple(tuple(field(x) if field is not None else x for x in r) for r in rows)
    return rows


def identity(field, n=4):
    one, zero = field.one(), field.zero()
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diag(field, entries):
    n = len(entries)
    zero = field.zero()
    return tuple(tuple(field(entries[i]) if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(A, B):
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = None
            for a, b in zip(row, col):
                if a and b:
                    t = a * b
                    acc = t if acc is None else acc + t
            new.append(acc if acc is not None else row[0].field.zero())
        out.append(tuple(new))
    return tuple(out)


def mat_vec(A, v):
    zero = v[0].field.zero()
    out = []
    for row in A:
        acc = zero
        for a, x in zip(row, v):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def vec_mat(v, A):
    """Row vector times matrix."""
    return mat_vec(transpose(A), v)


def transpose(A):
    return tuple(zip(*A))


def mat_scale(A, c):
    return tuple(tuple(x * c for x in row) for row in A)


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def rref(M):
    """Gauss-Jordan reduction.  Returns (reduced rows, rank, pivot columns)."""
    rows = [list(r) for r in M]
    if not rows:
        return (), 0, ()
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), r, tuple(pivots)


def rank(M):
    return rref(M)[1]


def kernel_basis(M, ncols=None):
    """Basis of {v : M v = 0} as a list of tuples (not reduced)."""
    R, rk, piv = rref(M)
    n = ncols if ncols is not None else len(M[0])
    field = M[0][0].field
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero()] * n
        v[f] = field.one()
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(tuple(v))
    return basis


def kernel(M):
    basis = kernel_basis(M)
    if not basis:
        return None
    return Subspace(basis)


def mat_inverse(A):
    n = len(A)
    field = A[0][0].field
    aug = [tuple(row) + I_row for row, I_row in zip(A, identity(field, n))]
    R, rk, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in R)


def det(A):
    # last coefficient of the characteristic polynomial
    cp = char_poly(A)
    return cp[0] if len(A) % 2 == 0 else -cp[0]


def char_poly(M):
    """Coefficients of det(tI - M), low degree first (Faddeev-LeVerrier)."""
    n = len(M)
    field = M[0][0].field
    coeffs = [field.zero()] * (n + 1)
    coeffs[n] = field.one()
    Mk = tuple(tuple(field.zero() for _ in range(n)) for _ in range(n))
    c = field.one()
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{n-k+1} I)
        inner = tuple(tuple(Mk[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n))
        Mk = mat_mul(M, inner)
        c = -trace(Mk) / k
        coeffs[n - k] = c
    return tuple(coeffs)


def poly_from_roots(roots):
    """Coefficients (low degree first) of prod (t - r)."""
    field = roots[0].field
    p = [field.one()]
    for r in roots:
        new = [field.zero()] * (len(p) + 1)
        for i, c in enumerate(p):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - r * c
        p = new
    return tuple(p)


def is_scalar(A):
    a = A[0][0]
    if not a:
        return False
    n = len(A)
    for i in range(n):
        for j in range(n):
            if i == j:
                if A[i][j] != a:
                    return False
            elif A[i][j]:
                return False
    return True


# --------------------------------------------------------------------------

class Subspace:
    """Row space of a matrix, stored in reduced row echelon form."""

    __slots__ = ("basis", "pivots")

    def __init__(self, rows):
        R, rk, piv = rref(rows)
        if rk == 0:
            raise ValueError("Subspace needs at least one nonzero vector")
        self.basis = R[:rk]
        self.pivots = piv

    @property
    def dim(self):
        return len(self.basis)

    @property
    def field(self):
        return self.basis[0][0].field

    def key(self):
        return self.basis

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace({[list(r) for r in self.basis]})"

    def contains(self, v):
        return rank(self.basis + (tuple(v),)) == self.dim

    def orthogonal(self):
        """Annihilator {w : <w, b> = 0 for all basis b}."""
        return kernel(self.basis)

    def intersection_is_trivial(self, other):
        return rank(self.basis + other.basis) == self.dim + other.dim


# --------------------------------------------------------------------------

def _canonical(A):
    for row in A:
        for x in row:
            if x:
                if x == 1:
                    return A
                s = x.inv()
                return tuple(tuple(y * s if y else y for y in r) for r in A)
    raise SingularMatrix("zero matrix")


class ProjTransform:
    """An element of PGL_4 over the session field.

    ``matrix`` is the canonical representative (first nonzero entry equal to
    1) and defines equality and hashing.  ``rep`` is the representative the
    object was built from; products and inverses carry it along, so groups
    generated by finite-order matrices keep root-of-unity scalars, which
    keeps eigenvalue normalization inside the field.
    """

    __slots__ = ("matrix", "rep", "_order", "_eigen")

    def __init__(self, rep, _canon=None):
        rep = tuple(tuple(r) for r in rep)
        self.rep = rep
        self.matrix = _canon if _canon is not None else _canonical(rep)
        self._order = None
        self._eigen = None

    @classmethod
    def checked(cls, rep):
        g = cls(rep)
        if not det(g.matrix):
            raise SingularMatrix("projective transformation needs an invertible matrix")
        return g

    @property
    def field(self):
        return self.matrix[0][0].field

    def __eq__(self, other):
        return isinstance(other, ProjTransform) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other):
        return ProjTransform(mat_mul(self.rep, other.rep))

    def inverse(self):
        return ProjTransform(mat_inverse(self.rep))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = ProjTransform(identity(self.field, len(self.rep)))
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_identity(self):
        return is_scalar(self.matrix)

    def conjugate(self, P, P_inv=None):
        """P^-1 g P."""
        P_inv = P_inv if P_inv is not None else mat_inverse(P)
        return ProjTransform(mat_mul(P_inv, mat_mul(self.rep, P)))

    def trace(self):
        return trace(self.matrix)

    def transpose(self):
        return ProjTransform(transpose(self.rep))

    def __repr__(self):
        return f"ProjTransform({[list(r) for r in self.matrix]})"


def canonicalize(M):
    return _canonical(tuple(tuple(r) for r in M))


def proj_order(g, cap=DEFAULT_ORDER_CAP):
    """Smallest m <= cap with rep^m scalar; returns (m, lambda)."""
    if g._order is not None:
        return g._order
    P = g.rep
    for m in range(1, cap + 1):
        if is_scalar(P):
            g._order = (m, P[0][0])
            return g._order
        P = mat_mul(P, g.rep)
    raise OrderExceedsCap(f"no power up to {cap} is scalar")


class EigenStructure:
    """Eigenvalue / eigenspace pairs of a finite-order projective matrix.

    ``matrix`` is the normalized matrix the eigenvalues belong to, and
    ``exponents`` gives each eigenvalue as scale * zeta_m^k.
    """

    def __init__(self, matrix, pairs, order, scale, exponents):
        self.matrix = matrix
        self.pairs = pairs
        self.order = order
        self.scale = scale
        self.exponents = exponents

    @property
    def multiplicities(self):
        return tuple(sorted((sp.dim for _, sp in self.pairs), reverse=True))

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"EigenStructure({[(e, sp.dim) for e, sp in self.pairs]})"


def _eigenspaces(M, values):
    n = len(M)
    pairs = []
    for e in values:
        shifted = tuple(tuple(M[i][j] - (e if i == j else 0) for j in range(n)) for i in range(n))
        sp = kernel(shifted)
        if sp is not None:
            pairs.append((e, sp))
    return pairs


def _power_sums_ok(pairs, n):
    return sum(sp.dim for _, sp in pairs) == n


def eigen_structure(g, cap=DEFAULT_ORDER_CAP):
    """Eigen-decomposition of a finite-order element, up to projective scale.

    First tries to rescale the representative to an honest m-th root of the
    identity; if no m-th root of the power scalar is found, enumerates
    exponent multisets {e*zeta_m^k_i} against the characteristic polynomial.
    """
    if g._eigen is not None:
        return g._eigen
    m, lam = proj_order(g, cap)
    field = g.field
    n = len(g.rep)
    zeta_m = field.root_of_unity(m)
    powers = [zeta_m ** k for k in range(m)]

    for mu in nth_root_candidates(lam, m):
        Mn = mat_scale(g.rep, mu.inv())
        pairs = _eigenspaces(Mn, powers)
        if _power_sums_ok(pairs, n):
            exps = tuple(powers.index(e) for e, _ in pairs)
            g._eigen = EigenStructure(Mn, pairs, m, field.one(), exps)
            return g._eigen

    M = g.matrix
    cp = char_poly(M)
    for ks in combinations_with_replacement(range(m), n):
        if ks[0] != 0:
            break
        roots = [powers[k] for k in ks]
        base = poly_from_roots(roots)
        for j in range(1, n + 1):
            s = base[n - j]
            if not s:
                continue
            target = cp[n - j] / s
            if not target:
                continue
            cands = [target] if j == 1 else nth_root_candidates(target, j)
            for e in cands:
                if poly_from_roots([e * r for r in roots]) == cp:
                    values = []
                    for k in sorted(set(ks)):
                        values.append(powers[k])
                    Mn = mat_scale(M, e.inv())
                    pairs = _eigenspaces(Mn, values)
                    if _power_sums_ok(pairs, n):
                        exps = tuple(powers.index(v) for v, _ in pairs)
                        g._eigen = EigenStructure(Mn, pairs, m, e, exps)
                        return g._eigen
            break
    raise FieldTooSmall("eigenvalues are not visible in the session field")


def is_trace_zero_involution(g, cap=DEFAULT_ORDER_CAP):
    m, _ = proj_order(g, cap)
    if m != 2:
        raise NotAnInvolution(f"projective order is {m}, not 2")
    return not trace(g.matrix)
