"""Built-in example data: the Bring (S_5) curve, the two-trigonal family at c = 0,
and the standard S_3 / K_4 normal forms.

Entries involving a primitive fifth root of unity are written as small
polynomials in ``z`` and evaluated at z = zeta_15^3 (or zeta_n^(n/5) in a larger
session field).
"""

import re
from pathlib import Path
from fractions import Fraction

from .exactfield import field_create
from .geometry import CurveModel, HomForm
from .linalg import ProjTransform

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(z(?:\^(\d+))?)?")


def zpoly(expr):
    """Parse e.g. '-2z - z^2 + 3' into coefficients [c0, c1, ...] of powers of z."""
    s = expr.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty expression")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {expr!r} at {s[pos:]!r}")
        sign, digits, zpart, exp = m.groups()
        if not digits and not zpart:
            raise ValueError(f"cannot parse {expr!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = (int(exp) if exp else 1) if zpart else 0
        coeffs[k] = coeffs.get(k, 0) + c
        pos = m.end()
    return [coeffs.get(k, 0) for k in range(max(coeffs) + 1)]


def zeta5_number(field, expr, scale=1):
    """Evaluate a z-polynomial with z a primitive 5th root of unity in ``field``."""
    z = field.root_of_unity(5)
    acc = field.zero()
    for k, c in enumerate(zpoly(expr)):
        if c:
            acc = acc + z ** k * c
    return acc * Fraction(scale)


def _linear(field, expr_by_var):
    return tuple(zeta5_number(field, expr_by_var.get(v, "0")) for v in "XYZW")


# -- Bring curve --------------------------------------------------------------

def bring_curve(field):
    Q = HomForm.parse(field, 2, [(1, (1, 0, 0, 1)), (1, (0, 1, 1, 0))])
    F = HomForm.parse(field, 3, [
        (1, (2, 0, 1, 0)), (-1, (1, 2, 0, 0)), (-1, (0, 0, 2, 1)), (1, (0, 1, 0, 2)),
    ])
    return CurveModel(Q, F)


SIGMA1 = [
    ["-2z-z^2-2z^3", "-z^2-3z^3-z^4", "-z-z^2-3z^4", "z-z^2-z^3+z^4"],
    ["-z^2-3z^3-z^4", "-2z-2z^2-z^4", "-z+z^2+z^3-z^4", "-3z-z^3-z^4"],
    ["-z-z^2-3z^4", "-z+z^2+z^3-z^4", "-z-2z^3-2z^4", "-z-3z^2-z^3"],
    ["z-z^2-z^3+z^4", "-3z-z^3-z^4", "-z-3z^2-z^3", "-2z^2-z^3-2z^4"],
]

TAU1 = [
    ["2z+3z^2+3z^3+2z^4", "2z+z^2+2z^3", "2z+2z^2+z^4", "-3z-z^3-z^4"],
    ["2z^2+z^3+2z^4", "3z+2z^2+2z^3+3z^4", "-z-3z^2-z^3", "2z+2z^2+z^4"],
    ["z+2z^3+2z^4", "-z^2-3z^3-z^4", "3z+2z^2+2z^3+3z^4", "2z+z^2+2z^3"],
    ["-z-z^2-3z^4", "z+2z^3+2z^4", "2z^2+z^3+2z^4", "2z+3z^2+3z^3+2z^4"],
]


def sigma1(field):
    return ProjTransform([[zeta5_number(field, e, Fraction(1, 5)) for e in row] for row in SIGMA1])


def tau1(field):
    return ProjTransform([[zeta5_number(field, e, Fraction(1, 5)) for e in row] for row in TAU1])


def bring_diagonal(field):
    # scaled by z so that the matrix has determinant 1
    z = field.root_of_unity(5)
    zero = field.zero()
    d = [z, z ** 2, z ** 3, z ** 4]
    return ProjTransform([[d[i] if i == j else zero for j in range(4)] for i in range(4)])


def bring_swap(field):
    one, zero = field.one(), field.zero()
    return ProjTransform([[one if i + j == 3 else zero for j in range(4)] for i in range(4)])


def bring_generators(field):
    return [bring_diagonal(field), bring_swap(field), sigma1(field), tau1(field)]


# Expected lines as {variable: coefficient} for the two forms L1 = L2 = 0.
TABLE1 = {
    "l1": ({"X": "z^2+z^3", "Y": "z^2+z^3", "Z": "1"}, {"X": "-z^2-z^3", "Y": "1", "W": "1"}),
    "l2": ({"X": "-z-z^2-z^3", "Y": "z^3+z^4", "Z": "1"}, {"X": "z^2+z^3+z^4", "Y": "z^2", "W": "1"}),
    "l3": ({"X": "-z-z^3-z^4", "Y": "z^2+z^4", "Z": "1"}, {"X": "z+z^2+z^4", "Y": "z", "W": "1"}),
    "l4": ({"X": "-z-z^2-z^4", "Y": "z+z^3", "Z": "1"}, {"X": "z+z^3+z^4", "Y": "z^4", "W": "1"}),
    "l5": ({"X": "-z^2-z^3-z^4", "Y": "z+z^2", "Z": "1"}, {"X": "z+z^2+z^3", "Y": "z^3", "W": "1"}),
    "l6": ({"X": "z+z^4", "Y": "z+z^4", "Z": "1"}, {"X": "-z-z^4", "Y": "1", "W": "1"}),
    "l7": ({"X": "z^2+z^4", "Y": "-z-z^2-z^4", "Z": "1"}, {"X": "-z-z^3", "Y": "z^3", "W": "1"}),
    "l8": ({"X": "z+z^3", "Y": "-z-z^3-z^4", "Z": "1"}, {"X": "-z^2-z^4", "Y": "z^2", "W": "1"}),
    "l9": ({"X": "z+z^2", "Y": "-z-z^2-z^3", "Z": "1"}, {"X": "-z^3-z^4", "Y": "z^4", "W": "1"}),
    "l10": ({"X": "z^3+z^4", "Y": "-z^2-z^3-z^4", "Z": "1"}, {"X": "-z-z^2", "Y": "z", "W": "1"}),
}

TABLE2 = {
    "l'1": ({"Y": "z^3", "Z": "1"}, {"X": "z^4", "W": "1"}),
    "l'2": ({"X": "z^3+z^4", "Y": "z^2+z^4", "Z": "1"}, {"X": "z+z^2+z^4", "Y": "-2z-z^3-z^4", "W": "1"}),
    "l'3": ({"X": "-z-z^3-z^4", "Y": "-z^2-z^3-z^4", "Z": "1"}, {"X": "-z-z^2", "Y": "-z+z^3+z^4", "W": "1"}),
    "l'4": ({"X": "-z^2-z^3-z^4", "Y": "-z-z^2-z^4", "Z": "1"}, {"X": "-z-z^3", "Y": "z^2-z^3+z^4", "W": "1"}),
    "l'5": ({"X": "z^2+z^4", "Y": "z+z^2", "Z": "1"}, {"X": "z+z^2+z^3", "Y": "-z^2-2z^3-z^4", "W": "1"}),
    "l'6": ({"Y": "z^4", "Z": "1"}, {"X": "z^2", "W": "1"}),
    "l'7": ({"X": "-z-z^2-z^3", "Y": "-z-z^3-z^4", "Z": "1"}, {"X": "-z^2-z^4", "Y": "z-z^2+z^3", "W": "1"}),
    "l'8": ({"X": "z+z^3", "Y": "z^3+z^4", "Z": "1"}, {"X": "z^2+z^3+z^4", "Y": "-z-2z^2-z^3", "W": "1"}),
    "l'9": ({"Y": "z", "Z": "1"}, {"X": "z^3", "W": "1"}),
    "l'10": ({"X": "z+z^2", "Y": "z+z^3", "Z": "1"}, {"X": "z+z^3+z^4", "Y": "-z-z^2-2z^4", "W": "1"}),
    "l'11": ({"X": "-z-z^2-z^4", "Y": "-z-z^2-z^3", "Z": "1"}, {"X": "-z^3-z^4", "Y": "z+z^2-z^4", "W": "1"}),
    "l'12": ({"Y": "z^2", "Z": "1"}, {"X": "z", "W": "1"}),
    "l'13": ({"X": "z^2+z^3", "Y": "z+z^4", "Z": "1"}, {"X": "-z-z^4", "Y": "2z+z^2+z^3+2z^4", "W": "1"}),
    "l'14": ({"X": "z+z^4", "Y": "z^2+z^3", "Z": "1"}, {"X": "-z^2-z^3", "Y": "z+2z^2+2z^3+z^4", "W": "1"}),
    "l'15": ({"Y": "1", "Z": "1"}, {"X": "1", "W": "1"}),
}


def table_lines(field, table):
    from .geometry import ProjLine
    out = {}
    for name, (f1, f2) in table.items():
        out[name] = ProjLine.from_forms(_linear(field, f1), _linear(field, f2))
    return out


# -- two-trigonal curve, c = 0 ----------------------------------------------------

def two_trigonal_curve(field, c=0):
    c = field(c)
    Q = HomForm.parse(field, 2, [(1, (1, 0, 0, 1)), (-1, (0, 1, 1, 0))])
    # Z(W - Z)(W + Z) - (Y^3 + c X Y^2 - 9 X^2 Y - c X^3)
    F = HomForm.parse(field, 3, [
        (1, (0, 0, 1, 2)), (-1, (0, 0, 3, 0)),
        (-1, (0, 3, 0, 0)), (-c, (1, 2, 0, 0)), (9, (2, 1, 0, 0)), (c, (3, 0, 0, 0)),
    ])
    return CurveModel(Q, F)


def eta_g(field):
    w = field.root_of_unity(3)
    one, zero = field.one(), field.zero()
    d = [one, one, w, w]
    return ProjTransform([[d[i] if i == j else zero for j in range(4)] for i in range(4)])


def eta_h(field):
    rows = [[1, 1, 0, 0], [-3, 1, 0, 0], [0, 0, 1, 1], [0, 0, -3, 1]]
    return ProjTransform([[field(x) for x in r] for r in rows])


# -- standard normal forms ---------------------------------------------------------

def s3_standard(field):
    """sigma = diag(1, 1, w, w^2) and tau swapping Z and W."""
    w = field.root_of_unity(3)
    one, zero = field.one(), field.zero()
    d = [one, one, w, w * w]
    sigma = ProjTransform([[d[i] if i == j else zero for j in range(4)] for i in range(4)])
    swap = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    tau = ProjTransform([[field(x) for x in r] for r in swap])
    return [sigma, tau]


def k4_standard(field):
    out = []
    for d in ([1, 1, -1, 1], [1, 1, 1, -1], [1, 1, -1, -1]):
        out.append(ProjTransform([[field(d[i]) if i == j else field(0) for j in range(4)] for i in range(4)]))
    return out


def s3_standard_curve(field):
    """Q = XY - ZW, F = X^3 + 2Y^3 - XY^2 + Z^3 + W^3: invariant under the S_3 normal form."""
    Q = HomForm.parse(field, 2, [(1, (1, 1, 0, 0)), (-1, (0, 0, 1, 1))])
    F = HomForm.parse(field, 3, [
        (1, (3, 0, 0, 0)), (2, (0, 3, 0, 0)), (-1, (1, 2, 0, 0)), (1, (0, 0, 3, 0)), (1, (0, 0, 0, 3)),
    ])
    return CurveModel(Q, F)


def k4_standard_curve(field):
    """Q = XY - Z^2 + W^2, F = X^3 + Y^3 + XW^2 + 2YZ^2: invariant under the K_4 normal form."""
    Q = HomForm.parse(field, 2, [(1, (1, 1, 0, 0)), (-1, (0, 0, 2, 0)), (1, (0, 0, 0, 2))])
    F = HomForm.parse(field, 3, [
        (1, (3, 0, 0, 0)), (1, (0, 3, 0, 0)), (1, (1, 0, 0, 2)), (2, (0, 1, 2, 0)),
    ])
    return CurveModel(Q, F)


def session_field(n):
    return field_create(n)


# -- shipped JSON files ------------------------------------------------------------

DATA_DIR = Path(__file__).parent / "data"


def data_path(name):
    return DATA_DIR / name


def _table_file(field, table):
    from . import formats
    entries = []
    for name, forms in table.items():
        rows = [_linear(field, f) for f in forms]
        entries.append({"name": name, "dual": formats.encode_matrix(rows)})
    return {"conductor": field.n, "lines": entries}


def write_datasets(outdir=DATA_DIR):
    """Regenerate the shipped curve, group and expected-line files."""
    from . import formats
    from .lines import two_trigonal_rho_candidates

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    F15 = field_create(15)
    files = {
        "bring-s5.curve.json": formats.encode_curve(bring_curve(F15)),
        "bring-s5.group.json": formats.encode_group(bring_generators(F15)),
        "bring-s5.table1.json": _table_file(F15, TABLE1),
        "bring-s5.table2.json": _table_file(F15, TABLE2),
    }
    F3 = field_create(3)
    rhos = two_trigonal_rho_candidates(F3(0))
    files["two-trigonal-c0.curve.json"] = formats.encode_curve(two_trigonal_curve(F3, 0))
    files["two-trigonal-c0.group.json"] = formats.encode_group([eta_g(F3), eta_h(F3)] + rhos)
    files["standard-s3.curve.json"] = formats.encode_curve(s3_standard_curve(F3))
    files["standard-s3.group.json"] = formats.encode_group(s3_standard(F3))
    F1 = field_create(1)
    files["standard-k4.curve.json"] = formats.encode_curve(k4_standard_curve(F1))
    files["standard-k4.group.json"] = formats.encode_group(k4_standard(F1))
    for name, obj in files.items():
        formats.dump(obj, outdir / name)
    return sorted(files)
