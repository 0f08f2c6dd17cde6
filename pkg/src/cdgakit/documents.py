"""JSON document format: exact scalars as strings, versioned kinds.

A document is {"format_version": "1", "kind": <kind>, "payload": {...}}.
All scalars are serialized as exact rational strings ("3/4", "-2"), so
files are human-diffable and byte-stable. parse and serialize round-trip.
"""

import json

from fractions import Fraction

from .linalg import Matrix, Subspace, scalar_to_str, scalar_from_str
from .complexes import Complex, ChainMap
from .cdga import CDGA
from .cosimplicial import CosimplicialCDGA, CosimplicialModule
from .filtration import FilteredComplex, FrobStructure
from .connection import ConnectionAlgebra, laurent

FORMAT_VERSION = "1"

KINDS = ("complex", "cdga", "cosimplicial", "filtered_complex", "frobenius",
         "bar_request", "th_request", "connection_algebra", "section_request",
         "report")


class InputError(Exception):
    """Malformed document; location is a rough JSON-path string."""

    def __init__(self, message, location="$"):
        self.location = location
        super().__init__("%s (at %s)" % (message, location))


def _expect(cond, message, location):
    if not cond:
        raise InputError(message, location)


# matrices and vectors

def matrix_to_json(m):
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[scalar_to_str(x) for x in row] for row in m.entries]}


def matrix_from_json(obj, loc):
    _expect(isinstance(obj, dict) and "rows" in obj and "cols" in obj,
            "matrix needs rows/cols/entries", loc)
    rows, cols = obj["rows"], obj["cols"]
    entries = obj.get("entries", [])
    _expect(len(entries) == rows, "entry row count mismatch", loc)
    parsed = []
    for i, row in enumerate(entries):
        _expect(len(row) == cols, "entry column count mismatch",
                "%s.entries[%d]" % (loc, i))
        parsed.append([scalar_from_str(x) for x in row])
    return Matrix(parsed, rows, cols)


def vector_to_json(v):
    return [scalar_to_str(x) for x in v]


def vector_from_json(obj, loc):
    _expect(isinstance(obj, list), "vector must be a list", loc)
    return tuple(scalar_from_str(x) for x in obj)


# complexes

def complex_to_json(c):
    return {"lower_bound": c.lower_bound, "dims": list(c.dims),
            "d": [matrix_to_json(m) for m in c.d]}


def complex_from_json(obj, loc):
    _expect(isinstance(obj, dict), "complex must be an object", loc)
    dims = obj.get("dims")
    _expect(isinstance(dims, list) and all(isinstance(x, int) for x in dims),
            "dims must be a list of integers", loc + ".dims")
    ds = [matrix_from_json(m, "%s.d[%d]" % (loc, i))
          for i, m in enumerate(obj.get("d", []))]
    try:
        return Complex(dims, ds, lower_bound=obj.get("lower_bound", 0))
    except ValueError as e:
        raise InputError(str(e), loc)


def chain_map_to_json(f):
    return {"components": {str(deg): matrix_to_json(f.component(deg))
                           for deg in f.source.degrees()}}


def chain_map_from_json(obj, source, target, loc):
    comps = {}
    for key, m in obj.get("components", {}).items():
        comps[int(key)] = matrix_from_json(m, "%s.components[%s]" % (loc, key))
    try:
        return ChainMap(source, target, comps)
    except (ValueError, AssertionError) as e:
        raise InputError("invalid chain map: %s" % e, loc)


# cdgas

def cdga_to_json(a):
    mult = {}
    for i in range(a.top + 1):
        for j in range(a.top + 1 - i):
            mult["%d,%d" % (i, j)] = matrix_to_json(a.mult[(i, j)])
    out = {"complex": complex_to_json(a.complex), "mult": mult,
           "unit": vector_to_json(a.unit)}
    out["augmentation"] = (vector_to_json(a.augmentation)
                           if a.is_augmented() else None)
    return out


def cdga_from_json(obj, loc):
    cx = complex_from_json(obj.get("complex"), loc + ".complex")
    mult = {}
    for key, m in obj.get("mult", {}).items():
        try:
            i, j = (int(x) for x in key.split(","))
        except ValueError:
            raise InputError("mult keys are 'i,j'", "%s.mult[%s]" % (loc, key))
        mult[(i, j)] = matrix_from_json(m, "%s.mult[%s]" % (loc, key))
    unit = vector_from_json(obj.get("unit"), loc + ".unit")
    aug = obj.get("augmentation")
    if aug is not None:
        aug = vector_from_json(aug, loc + ".augmentation")
    try:
        return CDGA(cx, mult, unit, aug)
    except (ValueError, AssertionError) as e:
        raise InputError("invalid cdga: %s" % e, loc)


# cosimplicial cdgas

def cosimplicial_to_json(c):
    return {
        "algebras": [cdga_to_json(a) for a in c.algebras],
        "cofaces": [[chain_map_to_json(f) for f in row] for row in c.cofaces],
        "codegeneracies": [[chain_map_to_json(f) for f in row]
                           for row in c.codegeneracies],
    }


def cosimplicial_from_json(obj, loc):
    algebras = [cdga_from_json(a, "%s.algebras[%d]" % (loc, n))
                for n, a in enumerate(obj.get("algebras", []))]
    _expect(algebras, "cosimplicial object needs at least one level", loc)
    N = len(algebras) - 1
    cofaces = []
    for n, row in enumerate(obj.get("cofaces", [])):
        _expect(n < N, "too many coface rows", loc + ".cofaces")
        cofaces.append([chain_map_from_json(
            f, algebras[n].complex, algebras[n + 1].complex,
            "%s.cofaces[%d][%d]" % (loc, n, i)) for i, f in enumerate(row)])
    codegens = []
    for n, row in enumerate(obj.get("codegeneracies", [])):
        codegens.append([chain_map_from_json(
            f, algebras[n + 1].complex, algebras[n].complex,
            "%s.codegeneracies[%d][%d]" % (loc, n, i))
            for i, f in enumerate(row)])
    try:
        return CosimplicialCDGA(algebras, cofaces, codegens)
    except Exception as e:
        raise InputError("invalid cosimplicial object: %s" % e, loc)


# filtrations and Frobenius

def subspace_to_json(s):
    return [vector_to_json(v) for v in s.basis]


def filtered_to_json(fc):
    filt = {}
    for deg in fc.complex.degrees():
        filt[str(deg)] = [subspace_to_json(fc.w(p, deg))
                          for p in range(fc.p_min, fc.p_max + 1)]
    return {"complex": complex_to_json(fc.complex), "p_min": fc.p_min,
            "p_max": fc.p_max, "filtration": filt}


def filtered_from_json(obj, loc):
    cx = complex_from_json(obj.get("complex"), loc + ".complex")
    p_min, p_max = obj.get("p_min"), obj.get("p_max")
    _expect(isinstance(p_min, int) and isinstance(p_max, int),
            "p_min/p_max must be integers", loc)
    filt = {}
    for key, chains in obj.get("filtration", {}).items():
        deg = int(key)
        amb = cx.dim(deg)
        subs = []
        for p_off, vecs in enumerate(chains):
            basis = [vector_from_json(v, "%s.filtration[%s][%d]"
                                      % (loc, key, p_off)) for v in vecs]
            subs.append(Subspace(amb, basis))
        filt[deg] = subs
    try:
        return FilteredComplex(cx, filt, p_min, p_max)
    except Exception as e:
        raise InputError("invalid filtration: %s" % e, loc)


def frobenius_to_json(fs, cx):
    return {"q": fs.q, "complex": complex_to_json(cx),
            "operators": {str(deg): matrix_to_json(m)
                          for deg, m in sorted(fs.operators.items())}}


def frobenius_from_json(obj, loc):
    cx = complex_from_json(obj.get("complex"), loc + ".complex")
    q = obj.get("q")
    _expect(isinstance(q, int) and q >= 2, "q must be an integer >= 2",
            loc + ".q")
    ops = {int(k): matrix_from_json(m, "%s.operators[%s]" % (loc, k))
           for k, m in obj.get("operators", {}).items()}
    try:
        return FrobStructure(q, ops, cx), cx
    except Exception as e:
        raise InputError("invalid operator family: %s" % e, loc)


# connection algebras

def laurent_to_json(x):
    return {str(e): scalar_to_str(c) for e, c in sorted(x.items())}


def laurent_from_json(obj, loc):
    _expect(isinstance(obj, dict), "Laurent scalar must be an object", loc)
    return laurent({int(e): scalar_from_str(c) for e, c in obj.items()})


def connection_to_json(ca):
    mult = {}
    for (i, j), vec in sorted(ca.mult.items()):
        mult["%d,%d" % (i, j)] = [laurent_to_json(x) for x in vec]
    return {"rank": ca.rank, "labels": list(ca.labels), "mult": mult,
            "unit": [laurent_to_json(x) for x in ca.unit],
            "gamma": [[laurent_to_json(x) for x in row] for row in ca.gamma]}


def connection_from_json(obj, loc):
    rank = obj.get("rank")
    _expect(isinstance(rank, int) and rank >= 1, "rank must be a positive "
            "integer", loc + ".rank")
    mult = {}
    for key, vec in obj.get("mult", {}).items():
        i, j = (int(x) for x in key.split(","))
        mult[(i, j)] = [laurent_from_json(x, "%s.mult[%s]" % (loc, key))
                        for x in vec]
    unit = [laurent_from_json(x, loc + ".unit") for x in obj.get("unit", [])]
    gamma = obj.get("gamma", [])
    _expect(len(gamma) == rank and all(len(r) == rank for r in gamma),
            "gamma must be rank x rank", loc + ".gamma")
    gamma = [[laurent_from_json(x, loc + ".gamma") for x in row]
             for row in gamma]
    return ConnectionAlgebra(rank, mult, unit, gamma,
                             labels=obj.get("labels"))


# documents

def wrap(kind, payload):
    _expect(kind in KINDS, "unknown kind %r" % kind, "$.kind")
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def check_envelope(doc):
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    ver = doc.get("format_version")
    _expect(ver == FORMAT_VERSION,
            "unsupported format_version %r (this tool reads %r)"
            % (ver, FORMAT_VERSION), "$.format_version")
    kind = doc.get("kind")
    _expect(kind in KINDS, "unknown kind %r, expected one of %s"
            % (kind, ", ".join(KINDS)), "$.kind")
    _expect(isinstance(doc.get("payload"), dict), "payload must be an object",
            "$.payload")
    return kind, doc["payload"]


_PARSERS = {
    "complex": complex_from_json,
    "cdga": cdga_from_json,
    "cosimplicial": cosimplicial_from_json,
    "filtered_complex": filtered_from_json,
    "frobenius": frobenius_from_json,
    "connection_algebra": connection_from_json,
}


def parse(doc):
    """Document dict -> (kind, value). Request kinds return their payload
    with embedded objects parsed."""
    kind, payload = check_envelope(doc)
    if kind in _PARSERS:
        return kind, _PARSERS[kind](payload, "$.payload")
    if kind == "bar_request":
        _expect(isinstance(payload.get("word_cap"), int),
                "word_cap must be an integer", "$.payload.word_cap")
        out = dict(payload)
        out["cdga"] = cdga_from_json(payload.get("cdga"), "$.payload.cdga")
        return kind, out
    if kind == "th_request":
        out = dict(payload)
        out["cosimplicial"] = cosimplicial_from_json(
            payload.get("cosimplicial"), "$.payload.cosimplicial")
        return kind, out
    if kind == "section_request":
        out = dict(payload)
        out["algebra"] = connection_from_json(payload.get("algebra"),
                                              "$.payload.algebra")
        _expect(isinstance(payload.get("window"), int) and
                payload["window"] >= 0, "window must be a nonnegative integer",
                "$.payload.window")
        return kind, out
    return kind, payload  # report


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror), path)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON in %s: %s" % (path, e), path)
    return parse(doc)


def dumps(doc):
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
