import json
import os
from fractions import Fraction

import pytest

from cdgakit import documents as docs
from cdgakit.linalg import Matrix, Subspace
from cdgakit.complexes import Complex
from cdgakit.cdga import ground_field
from cdgakit.cosimplicial import constant_cosimplicial
from cdgakit.filtration import FilteredComplex
from cdgakit.connection import obstruction_instance

from conftest import sphere_even, acyclic_zero

F = Fraction

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def test_complex_round_trip():
    c = Complex([2, 1], [Matrix([[F(1), F(-1, 2)]], 1, 2)], lower_bound=-1)
    doc = docs.wrap("complex", docs.complex_to_json(c))
    kind, back = docs.parse(json.loads(docs.dumps(doc)))
    assert kind == "complex"
    assert back.dims == c.dims and back.lower_bound == -1
    assert back.d[0].entries == c.d[0].entries


def test_cdga_round_trip():
    a = sphere_even(2)
    kind, back = docs.parse(docs.wrap("cdga", docs.cdga_to_json(a)))
    assert back.complex.dims == a.complex.dims
    assert back.mult[(0, 2)].entries == a.mult[(0, 2)].entries
    assert back.unit == a.unit and back.augmentation == a.augmentation


def test_cosimplicial_round_trip():
    c = constant_cosimplicial(ground_field(augmented=True), 2)
    kind, back = docs.parse(docs.wrap("cosimplicial",
                                      docs.cosimplicial_to_json(c)))
    assert back.truncation == 2
    assert back.identity_violations() == []


def test_filtered_round_trip():
    cx = Complex([2], [])
    w0 = Subspace(2, [(F(1), F(0))])
    full = Subspace(2, [(F(1), F(0)), (F(0), F(1))])
    fc = FilteredComplex(cx, {0: [w0, full]}, 0, 1)
    kind, back = docs.parse(docs.wrap("filtered_complex",
                                      docs.filtered_to_json(fc)))
    assert back.p_min == 0 and back.p_max == 1
    assert back.w(0, 0).basis == w0.basis


def test_connection_round_trip():
    ca = obstruction_instance()
    kind, back = docs.parse(docs.wrap("connection_algebra",
                                      docs.connection_to_json(ca)))
    assert back.rank == 2
    assert back.mult[(1, 1)] == ca.mult[(1, 1)]
    assert back.gamma == ca.gamma


def test_unknown_kind_rejected():
    with pytest.raises(docs.InputError) as e:
        docs.parse({"format_version": "1", "kind": "mystery", "payload": {}})
    assert "kind" in str(e.value)


def test_future_version_rejected():
    with pytest.raises(docs.InputError) as e:
        docs.parse({"format_version": "99", "kind": "complex",
                    "payload": {"dims": [1], "d": []}})
    assert "format_version" in str(e.value)


def test_malformed_matrix_location_diagnostics():
    bad = {"format_version": "1", "kind": "complex",
           "payload": {"dims": [1, 1],
                       "d": [{"rows": 1, "cols": 1, "entries": []}]}}
    with pytest.raises(docs.InputError) as e:
        docs.parse(bad)
    assert "$.payload.d[0]" in str(e.value)


def test_dumps_deterministic():
    doc = docs.wrap("report", {"b": 1, "a": [2, 3]})
    assert docs.dumps(doc) == docs.dumps(json.loads(docs.dumps(doc)))


def test_scalars_are_exact_strings():
    c = Complex([1, 1], [Matrix([[F(-2, 3)]], 1, 1)])
    payload = docs.complex_to_json(c)
    assert payload["d"][0]["entries"][0][0] == "-2/3"


def test_fixture_corpus_parses():
    for name in sorted(os.listdir(FIX)):
        if not name.endswith(".json") or name.startswith(("map_", "bad_")):
            continue
        docs.load(os.path.join(FIX, name))
