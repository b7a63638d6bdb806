"""JSON encodings for numbers, matrices, forms, curves, groups, lines and reports.

Numbers are {"c": ["p/q", ...]} in power-basis order.  Files carry their own
"conductor"; decoders embed everything into a caller-supplied session field.
"""

import json
from fractions import Fraction

from .exactfield import NotASubfield, embed, field_create
from .geometry import CurveModel, HomForm, ProjLine
from .linalg import ProjTransform
from .lines import GaloisLineRecord, ScanReport


class ParseError(ValueError):
    pass


# -- primitives -------------------------------------------------------------------

def encode_num(x):
    return {"c": [str(c) for c in x.coeffs]}


def decode_num(obj, field):
    try:
        raw = obj["c"]
        coeffs = [Fraction(str(c)) for c in raw]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {obj!r}: {exc}") from None
    if len(coeffs) != field.phi:
        raise ParseError(f"expected {field.phi} coefficients, got {len(coeffs)}")
    return field.from_coeffs(coeffs)


def encode_matrix(M):
    return [[encode_num(x) for x in row] for row in M]


def decode_matrix(obj, field, shape=(4, 4)):
    if not isinstance(obj, list) or len(obj) != shape[0]:
        raise ParseError(f"expected {shape[0]} rows")
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ParseError(f"expected rows of length {shape[1]}")
        rows.append([decode_num(x, field) for x in row])
    return rows


def encode_form(P):
    return [[encode_num(P.terms[e]), list(e)] for e in P.monomials()]


def decode_form(obj, field, degree):
    pairs = []
    try:
        for coef, exps in obj:
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 or min(exps) < 0:
                raise ParseError(f"bad exponent vector {exps}")
            pairs.append((decode_num(coef, field), exps))
        return HomForm.parse(field, degree, pairs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad form: {exc}") from None


def _lift(values, src, dst):
    if src is dst:
        return values
    try:
        return [embed(v, dst) for v in values]
    except NotASubfield as exc:
        raise ParseError(str(exc)) from None


# -- files ----------------------------------------------------------------------

def _conductor(obj):
    try:
        n = int(obj["conductor"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or bad 'conductor'") from None
    if n < 1:
        raise ParseError("conductor must be positive")
    return n


def _target(obj, field):
    src = field_create(_conductor(obj))
    return src, (field if field is not None else src)


def _embed_form(P, dst):
    if P.field is dst:
        return P
    return HomForm(dst, P.degree, {e: embed(c, dst) for e, c in P.terms.items()})


def encode_curve(C):
    return {"conductor": C.Q.field.n, "Q": encode_form(C.Q), "F": encode_form(C.F)}


def decode_curve(obj, field=None):
    src, dst = _target(obj, field)
    try:
        Q = decode_form(obj["Q"], src, 2)
        F = decode_form(obj["F"], src, 3)
    except KeyError as exc:
        raise ParseError(f"curve file lacks {exc}") from None
    try:
        return CurveModel(_embed_form(Q, dst), _embed_form(F, dst))
    except NotASubfield as exc:
        raise ParseError(str(exc)) from None


def encode_group(gens, dump=None):
    field = gens[0].field
    out = {"conductor": field.n, "generators": [encode_matrix(g.rep) for g in gens]}
    if dump is not None:
        out["elements"] = [encode_matrix(g.matrix) for g in dump]
    return out


def decode_group(obj, field=None):
    src, dst = _target(obj, field)
    gens = obj.get("generators") if isinstance(obj, dict) else None
    if not isinstance(gens, list) or not gens:
        raise ParseError("group file needs a nonempty 'generators' list")
    out = []
    for m in gens:
        rows = [_lift(r, src, dst) for r in decode_matrix(m, src)]
        try:
            out.append(ProjTransform.checked(rows))
        except ArithmeticError as exc:
            raise ParseError(f"generator is not invertible: {exc}") from None
    return out


def encode_line(l):
    return {"dual": encode_matrix(l.dual.basis)}


def decode_line(obj, src, dst):
    try:
        rows = decode_matrix(obj["dual"], src, (2, 4))
    except (KeyError, TypeError):
        raise ParseError("line entry needs 'dual'") from None
    rows = [_lift(r, src, dst) for r in rows]
    try:
        return ProjLine.from_forms(*rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def encode_lines(lines, field, names=None):
    entries = []
    for i, l in enumerate(lines):
        e = {}
        if names is not None:
            e["name"] = names[i]
        e.update(encode_line(l))
        entries.append(e)
    return {"conductor": field.n, "lines": entries}


def decode_lines(obj, field=None):
    """Returns (names, lines); names default to positional labels."""
    src, dst = _target(obj, field)
    entries = obj.get("lines")
    if not isinstance(entries, list):
        raise ParseError("lines file needs a 'lines' list")
    names, lines = [], []
    for i, e in enumerate(entries):
        names.append(str(e.get("name", i)) if isinstance(e, dict) else str(i))
        lines.append(decode_line(e, src, dst))
    return names, lines


def encode_report(rep, field):
    return {
        "conductor": field.n,
        "types": list(rep.types),
        "counts": rep.counts,
        "records": [
            {
                "dual": encode_matrix(r.line.dual.basis),
                "type": r.type,
                "degree": r.degree,
                "intersection_length": r.intersection_length,
                "stabilizer": list(r.stabilizer),
                "provenance": r.provenance,
            }
            for r in rep.records
        ],
        "violations": list(rep.violations),
        "skipped": list(rep.skipped),
        "unresolved": list(rep.unresolved),
    }


def decode_report(obj, field=None):
    src, dst = _target(obj, field)
    try:
        rep = ScanReport(tuple(obj["types"]))
        for r in obj["records"]:
            rep.records.append(GaloisLineRecord(
                decode_line(r, src, dst), list(r["stabilizer"]), int(r["degree"]),
                r["type"], r.get("provenance", ""), int(r.get("intersection_length", 0)),
            ))
        rep.violations = list(obj.get("violations", []))
        rep.skipped = list(obj.get("skipped", []))
        rep.unresolved = list(obj.get("unresolved", []))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad report: {exc}") from None
    return rep


# -- text ------------------------------------------------------------------------

def dumps(obj, width=100):
    """Deterministic JSON; containers that fit in ``width`` columns stay on one line."""
    return _render(obj, 0, width) + "\n"


def _render(obj, level, width):
    flat = json.dumps(obj, separators=(", ", ": "))
    if not isinstance(obj, (list, dict)) or len(flat) + level <= width or not obj:
        return flat
    pad = " " * (level + 1)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_render(v, level + 1, width)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * level + "}"
    items = [pad + _render(v, level + 1, width) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * level + "]"


def loads(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    return obj


def load(path):
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def dump(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))
