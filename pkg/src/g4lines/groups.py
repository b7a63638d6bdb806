"""Finite subgroups of PGL_4: closure, S_3 / K_4 enumeration, signature filters."""

from dataclasses import dataclass, field as dc_field

from .exactfield import FieldTooSmall
from .linalg import ProjTransform, eigen_structure, identity, proj_order, trace

DEFAULT_GROUP_CAP = 1000


class GroupCapExceeded(RuntimeError):
    pass


class UnclassifiedOrder(ValueError):
    pass


class FiniteMatrixGroup:
    """Elements in insertion (BFS) order; index 0 is the identity."""

    def __init__(self, elements, generators):
        self.elements = list(elements)
        self.generators = list(generators)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._mul = {}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def mul(self, i, j):
        """Index of elements[i] * elements[j]."""
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self.index[self.elements[i] * self.elements[j]]
            self._mul[key] = r
        return r

    def order_of(self, i):
        return proj_order(self.elements[i])[0]

    def elements_of_order(self, m):
        return [i for i in range(len(self.elements)) if self.order_of(i) == m]


def close_group(gens, cap=DEFAULT_GROUP_CAP):
    """Breadth-first closure of the generators inside PGL_4."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    e = ProjTransform(identity(field))
    elements = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise GroupCapExceeded(f"group order exceeds cap {cap}")
        frontier = nxt
    return FiniteMatrixGroup(elements, gens)


def is_abelian(elements):
    els = list(elements)
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if a * b != b * a:
                return False
    return True


def iso_type(elements, strict=False):
    """Tag for a small group: C2..C6, K4, S3; 'other(n)' otherwise."""
    els = list(elements)
    n = len(els)
    if n in (2, 3, 5):
        return f"C{n}"
    orders = [proj_order(g)[0] for g in els]
    if n == 4:
        return "C4" if 4 in orders else "K4"
    if n == 6:
        return "C6" if is_abelian(els) else "S3"
    if strict:
        raise UnclassifiedOrder(f"no tag for order {n}")
    return f"other({n})"


@dataclass
class SubgroupRecord:
    elements: list           # indices into the ambient group
    group: FiniteMatrixGroup
    iso_type: str
    _signature: object = dc_field(default=None, repr=False)

    @property
    def transforms(self):
        return [self.group.elements[i] for i in self.elements]

    @property
    def key(self):
        return frozenset(self.elements)

    @property
    def signature(self):
        """Sorted eigenvalue-multiplicity patterns of the elements (None if not visible)."""
        if self._signature is None:
            try:
                pats = [eigen_structure(g).multiplicities for g in self.transforms]
            except FieldTooSmall:
                return None
            self._signature = tuple(sorted(pats))
        return self._signature

    def conjugate_key(self, gi):
        """Key of g^-1 H g for g = elements[gi]."""
        G = self.group
        g = G.elements[gi]
        gin = G.index[g.inverse()]
        return frozenset(G.mul(G.mul(gin, h), gi) for h in self.elements)


def enumerate_s3_subgroups(G):
    ident = 0
    threes = G.elements_of_order(3)
    twos = G.elements_of_order(2)
    out, seen = [], set()
    for s in threes:
        s2 = G.mul(s, s)
        for t in twos:
            # t s t^-1 == s^-1, with t^-1 = t
            if G.mul(G.mul(t, s), t) != s2:
                continue
            els = [ident, s, s2, t, G.mul(t, s), G.mul(t, s2)]
            key = frozenset(els)
            if key in seen:
                continue
            seen.add(key)
            out.append(SubgroupRecord(els, G, "S3"))
    return out


def enumerate_k4_subgroups(G):
    twos = G.elements_of_order(2)
    out, seen = [], set()
    for a_pos, a in enumerate(twos):
        for b in twos[a_pos + 1:]:
            ab = G.mul(a, b)
            if ab != G.mul(b, a):
                continue
            els = [0, a, b, ab]
            key = frozenset(els)
            if key in seen:
                continue
            seen.add(key)
            out.append(SubgroupRecord(els, G, "K4"))
    return out


def enumerate_cyclic_elements(G, orders=(4, 5, 6)):
    return [i for i in range(G.order) if G.order_of(i) in orders]


@dataclass
class S3Signature:
    sigma: ProjTransform
    points: tuple


@dataclass
class K4Signature:
    tau1: ProjTransform
    tau2: ProjTransform
    rho: ProjTransform
    points: tuple


def _involution_pattern(g):
    return eigen_structure(g).multiplicities


def s3_signature_filter(sub):
    """Order-3 element with simple-eigenvalue ratio a primitive cube root, or None.

    The involutions must also have eigenvalue pattern (3, 1), as in the
    normal form where tau swaps two coordinates.
    """
    G = sub.group
    sigma_idx = [i for i in sub.elements if G.order_of(i) == 3]
    tau_idx = [i for i in sub.elements if G.order_of(i) == 2]
    if not sigma_idx or len(tau_idx) != 3:
        return None
    sigma = G.elements[min(sigma_idx)]
    es = eigen_structure(sigma)
    if es.multiplicities != (2, 1, 1):
        return None
    simple = [(e, sp) for e, sp in es.pairs if sp.dim == 1]
    ratio = simple[0][0] / simple[1][0]
    field = sigma.field
    w = field.root_of_unity(3)
    if ratio != w and ratio != w * w:
        return None
    for t in tau_idx:
        if _involution_pattern(G.elements[t]) != (3, 1):
            return None
    pts = tuple(sorted((sp.basis[0] for _, sp in simple), key=_vec_key))
    return S3Signature(sigma, pts)


def k4_signature_filter(sub):
    """Exactly one trace-zero involution and two with pattern (3, 1), or None."""
    G = sub.group
    invs = [G.elements[i] for i in sorted(sub.elements) if i != 0]
    zero = [g for g in invs if not trace(g.matrix)]
    other = [g for g in invs if trace(g.matrix)]
    if len(zero) != 1 or len(other) != 2:
        return None
    pts = []
    for g in other:
        es = eigen_structure(g)
        if es.multiplicities != (3, 1):
            return None
        pts.append(next(sp.basis[0] for _, sp in es.pairs if sp.dim == 1))
    return K4Signature(other[0], other[1], zero[0], tuple(pts))


def _vec_key(v):
    return tuple((x.num, x.den) for x in v)
